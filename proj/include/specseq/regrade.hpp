#ifndef SPECSEQ_REGRADE_HPP
#define SPECSEQ_REGRADE_HPP

#include <map>
#include <utility>
#include <vector>

#include "specseq/bicomplex.hpp"

namespace specseq {

/// Bigraded module U^{s,t} with differential components δ₊ of bidegree
/// (1,1) and δ₋ of bidegree (1,-1), plus any further components of the
/// ambient differential, kept with their bidegrees.
template <typename F>
class BigradedModule {
public:
    explicit BigradedModule(F field) : field_(std::move(field)) {}

    const F& field() const { return field_; }

    std::size_t dim(int s, int t) const {
        auto it = support_.find({s, t});
        return it == support_.end() ? 0 : it->second;
    }

    void set_dim(int s, int t, std::size_t d) {
        if (d == 0)
            support_.erase({s, t});
        else
            support_[{s, t}] = d;
    }

    Matrix<F> delta_plus(int s, int t) const {
        auto it = plus_.find({s, t});
        if (it != plus_.end())
            return it->second;
        return Matrix<F>(field_, dim(s + 1, t + 1), dim(s, t));
    }

    Matrix<F> delta_minus(int s, int t) const {
        auto it = minus_.find({s, t});
        if (it != minus_.end())
            return it->second;
        return Matrix<F>(field_, dim(s + 1, t - 1), dim(s, t));
    }

    void set_delta_plus(int s, int t, Matrix<F> m) {
        if (m.is_zero())
            plus_.erase({s, t});
        else
            plus_.insert_or_assign({s, t}, std::move(m));
    }

    void set_delta_minus(int s, int t, Matrix<F> m) {
        if (m.is_zero())
            minus_.erase({s, t});
        else
            minus_.insert_or_assign({s, t}, std::move(m));
    }

    struct ExtraComponent {
        int ds, dt;
        std::map<std::pair<int, int>, Matrix<F>> maps;
    };

    std::vector<ExtraComponent>& extra() { return extra_; }
    const std::vector<ExtraComponent>& extra() const { return extra_; }
    const std::map<std::pair<int, int>, std::size_t>& support() const { return support_; }

    bool operator==(const BigradedModule& o) const {
        if (field_ != o.field_ || support_ != o.support_)
            return false;
        for (const auto& [k, d] : support_) {
            if (delta_plus(k.first, k.second) != o.delta_plus(k.first, k.second))
                return false;
            if (delta_minus(k.first, k.second) != o.delta_minus(k.first, k.second))
                return false;
        }
        return true;
    }
    bool operator!=(const BigradedModule& o) const { return !(*this == o); }

private:
    F field_;
    std::map<std::pair<int, int>, std::size_t> support_;
    std::map<std::pair<int, int>, Matrix<F>> plus_, minus_;
    std::vector<ExtraComponent> extra_;
};

enum class RegradeMode { strict, lenient };

/// Index change A^{p,q} := U^{p+q,p-q}, i.e. p = (s+t)/2, q = (s-t)/2;
/// δ₊ becomes d1 and δ₋ becomes d2. Strict mode rejects any nonzero
/// differential component beyond δ±; lenient mode drops them.
template <typename F>
DoubleComplex<F> regrade_bidifferential(const BigradedModule<F>& u,
                                        RegradeMode mode = RegradeMode::strict) {
    if (mode == RegradeMode::strict)
        for (const auto& comp : u.extra())
            for (const auto& [k, m] : comp.maps)
                if (!m.is_zero())
                    throw std::invalid_argument(
                        "regrade: differential has a nonzero component of bidegree (" +
                        std::to_string(comp.ds) + "," + std::to_string(comp.dt) +
                        ") beyond the two regradable ones");

    DoubleComplex<F> c(u.field());
    for (const auto& [k, d] : u.support()) {
        const int s = k.first, t = k.second;
        if ((s + t) % 2 != 0)
            throw std::invalid_argument("regrade: parity violation at (s,t)=(" +
                                        std::to_string(s) + "," + std::to_string(t) +
                                        "), s+t must be even");
        const int p = (s + t) / 2, q = (s - t) / 2;
        if (p < 0 || q < 0)
            throw std::invalid_argument("regrade: cell (s,t)=(" + std::to_string(s) +
                                        "," + std::to_string(t) +
                                        ") regrades to negative (p,q)");
        c.set_dim(p, q, d);
    }
    for (const auto& [k, d] : u.support()) {
        const int s = k.first, t = k.second;
        const int p = (s + t) / 2, q = (s - t) / 2;
        c.set_d1(p, q, u.delta_plus(s, t));
        c.set_d2(p, q, u.delta_minus(s, t));
    }
    auto rep = validate(c);
    if (!rep.valid())
        throw std::invalid_argument(
            "regrade: input differentials violate the double complex axioms (" +
            std::string(to_string(rep.issues.front().kind)) + " at (" +
            std::to_string(rep.issues.front().p) + "," +
            std::to_string(rep.issues.front().q) + "))");
    return c;
}

/// Inverse index change s = p+q, t = p-q; d1 back to δ₊, d2 back to δ₋.
template <typename F>
BigradedModule<F> unregrade(const DoubleComplex<F>& c) {
    BigradedModule<F> u(c.field());
    for (const auto& [k, d] : c.support())
        u.set_dim(k.first + k.second, k.first - k.second, d);
    for (const auto& [k, d] : c.support()) {
        const int p = k.first, q = k.second;
        u.set_delta_plus(p + q, p - q, c.d1(p, q));
        u.set_delta_minus(p + q, p - q, c.d2(p, q));
    }
    return u;
}

} // namespace specseq

#endif
