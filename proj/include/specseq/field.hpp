#ifndef SPECSEQ_FIELD_HPP
#define SPECSEQ_FIELD_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <variant>

#include "specseq/errors.hpp"

namespace specseq {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

/// The field of rational numbers with arbitrary-precision arithmetic.
/// Scalars are always kept in lowest terms with positive denominator,
/// so scalar equality is plain value equality.
struct Rationals {
    using Scalar = BigRational;

    static Scalar zero() { return Scalar(0); }
    static Scalar one() { return Scalar(1); }
    static Scalar from_int(long v) { return Scalar(v); }

    static Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
    static Scalar sub(const Scalar& a, const Scalar& b) { return a - b; }
    static Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
    static Scalar neg(const Scalar& a) { return -a; }
    static Scalar inv(const Scalar& a) {
        if (a == 0)
            throw std::domain_error("division by zero");
        return 1 / a;
    }
    static bool is_zero(const Scalar& a) { return a == 0; }
    static bool eq(const Scalar& a, const Scalar& b) { return a == b; }

    bool operator==(const Rationals&) const { return true; }
    bool operator!=(const Rationals&) const { return false; }

    static std::string name() { return "Q"; }
};

/// The prime field F_p with p < 2^31. Scalars are residues in [0, p)
/// stored as 64-bit integers, so a product never overflows.
class PrimeField {
public:
    using Scalar = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p < 2 || p >= (std::uint64_t{1} << 31) || !is_prime(p))
            throw std::invalid_argument("PrimeField: modulus must be a prime < 2^31");
    }

    std::uint64_t modulus() const { return p_; }

    Scalar zero() const { return 0; }
    Scalar one() const { return 1; }
    Scalar from_int(long v) const {
        long r = v % static_cast<long>(p_);
        if (r < 0)
            r += static_cast<long>(p_);
        return static_cast<Scalar>(r);
    }

    Scalar add(Scalar a, Scalar b) const {
        Scalar s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
    Scalar mul(Scalar a, Scalar b) const { return (a * b) % p_; }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
    Scalar inv(Scalar a) const {
        if (a == 0)
            throw std::domain_error("division by zero");
        // extended Euclid on (a, p)
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        internal_check(r == 1, "PrimeField::inv: gcd(a, p) != 1");
        return t < 0 ? static_cast<Scalar>(t + static_cast<std::int64_t>(p_))
                     : static_cast<Scalar>(t);
    }
    bool is_zero(Scalar a) const { return a == 0; }
    bool eq(Scalar a, Scalar b) const { return a == b; }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

    std::string name() const { return "F" + std::to_string(p_); }

    static bool is_prime(std::uint64_t n) {
        if (n < 2)
            return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

private:
    std::uint64_t p_;
};

/// Runtime description of a scalar field, as it appears in input files.
struct FieldSpec {
    enum class Kind { rationals, prime_field };
    Kind kind = Kind::rationals;
    std::uint64_t p = 0; // prime modulus, prime_field only

    static FieldSpec rationals() { return {Kind::rationals, 0}; }
    static FieldSpec prime(std::uint64_t p) { return {Kind::prime_field, p}; }

    bool operator==(const FieldSpec&) const = default;
};

template <typename F>
FieldSpec field_spec_of(const F& f) {
    if constexpr (std::is_same_v<F, Rationals>)
        return FieldSpec::rationals();
    else
        return FieldSpec::prime(f.modulus());
}

/// Calls fn with the concrete field value described by `spec`.
template <typename Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::rationals)
        return fn(Rationals{});
    return fn(PrimeField(spec.p));
}

} // namespace specseq

#endif
