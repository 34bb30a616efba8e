#ifndef SPECSEQ_FAULTS_HPP
#define SPECSEQ_FAULTS_HPP

namespace specseq::faults {

/// Deliberate kernel mutations used to prove the verification campaigns
/// have teeth. Compiled out entirely unless SPECSEQ_ENABLE_FAULTS is
/// defined; the hooks then read a thread-local switch.
enum class Kind {
    none,
    z_shift,            // Z^{p,q}_r computed with depth r+1
    b_shift,            // B^{p,q}_r pulled from F^{p-r+1} instead of F^{p-r}
    totalize_sign,      // d'' blocks negated in odd columns of the total d
    quotient_skip,      // page denominators drop the Z^{p+1,q-1}_{r-1} term
    degeneration_early, // degeneration page = first r with d_r = 0
};

#ifdef SPECSEQ_ENABLE_FAULTS

inline thread_local Kind active = Kind::none;

inline bool is(Kind k) { return active == k; }

class Scoped {
public:
    explicit Scoped(Kind k) : prev_(active) { active = k; }
    ~Scoped() { active = prev_; }
    Scoped(const Scoped&) = delete;
    Scoped& operator=(const Scoped&) = delete;

private:
    Kind prev_;
};

#else

constexpr bool is(Kind) { return false; }

#endif

} // namespace specseq::faults

#endif
