#ifndef SPECSEQ_GENERATORS_HPP
#define SPECSEQ_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "specseq/bicomplex.hpp"

namespace specseq {

/// Deterministic bounded draw. mt19937_64 output is fixed by the standard,
/// and the modulo keeps the result implementation-independent (unlike
/// uniform_int_distribution); the tiny bias is irrelevant for test data.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

template <typename F>
DoubleComplex<F> make_dot(F field, int p, int q) {
    DoubleComplex<F> c(std::move(field));
    c.set_dim(p, q, 1);
    return c;
}

/// The unit square: four 1-dim cells with
///   d1_{p,q} = [1], d2_{p,q} = [1], d2_{p+1,q} = [1], d1_{p,q+1} = [-1],
/// the minimal complex with d1·d2 ≠ 0.
template <typename F>
DoubleComplex<F> make_square(F field, int p, int q) {
    DoubleComplex<F> c(field);
    c.set_dim(p, q, 1);
    c.set_dim(p + 1, q, 1);
    c.set_dim(p, q + 1, 1);
    c.set_dim(p + 1, q + 1, 1);
    Matrix<F> one(field, {{1}});
    Matrix<F> minus_one(field, {{-1}});
    c.set_d1(p, q, one);
    c.set_d2(p, q, one);
    c.set_d2(p + 1, q, one);
    c.set_d1(p, q + 1, minus_one);
    return c;
}

/// Staircase zigzag with `length` one-dimensional cells on two adjacent
/// antidiagonals, every arrow the 1×1 identity. The walk alternates
/// lower cell → right neighbor (a d1 arrow) and upper cell → cell below
/// (receiving a d2 arrow); anticommutators land in absent cells, so any
/// staircase is a valid complex on its own.
template <typename F>
DoubleComplex<F> make_staircase(F field, int p, int q, std::size_t length,
                                bool start_lower) {
    DoubleComplex<F> c(field);
    Matrix<F> one(field, {{1}});
    int cp = p, cq = q;
    bool lower = start_lower;
    c.set_dim(cp, cq, 1);
    for (std::size_t i = 1; i < length; ++i) {
        if (lower) {
            c.set_dim(cp + 1, cq, 1);
            c.set_d1(cp, cq, one);
            cp += 1;
        } else {
            c.set_dim(cp, cq - 1, 1);
            c.set_d2(cp, cq - 1, one);
            cq -= 1;
        }
        lower = !lower;
    }
    return c;
}

enum class ZigzagShape { HZ, VZ, L3 };

/// HZ(p,q): A^{p,q} → A^{p+1,q} with d1 iso.
/// VZ(p,q): A^{p,q} → A^{p,q+1} with d2 iso.
/// L3(p,q): A^{p,q+1} → A^{p+1,q+1} ← A^{p+1,q} with d1 and d2 isos.
template <typename F>
DoubleComplex<F> make_zigzag(F field, ZigzagShape shape, int p, int q) {
    switch (shape) {
    case ZigzagShape::HZ: return make_staircase(std::move(field), p, q, 2, true);
    case ZigzagShape::VZ: return make_staircase(std::move(field), p, q + 1, 2, false);
    case ZigzagShape::L3: return make_staircase(std::move(field), p, q + 1, 3, true);
    }
    throw std::invalid_argument("make_zigzag: unknown shape");
}

struct Atom {
    enum class Kind { dot, square, staircase };
    Kind kind;
    int p, q;
    std::size_t length;   // staircase only
    bool start_lower;     // staircase only
};

template <typename F>
DoubleComplex<F> build_atom(const F& field, const Atom& a) {
    switch (a.kind) {
    case Atom::Kind::dot: return make_dot(field, a.p, a.q);
    case Atom::Kind::square: return make_square(field, a.p, a.q);
    case Atom::Kind::staircase:
        return make_staircase(field, a.p, a.q, a.length, a.start_lower);
    }
    throw std::invalid_argument("build_atom: unknown kind");
}

/// Bounding box of an atom's support relative to its anchor cell.
struct AtomBox {
    int p_hi, q_lo, q_hi;
};

inline AtomBox atom_box(const Atom& a) {
    switch (a.kind) {
    case Atom::Kind::dot: return {0, 0, 0};
    case Atom::Kind::square: return {1, 0, 1};
    case Atom::Kind::staircase: {
        const int steps = static_cast<int>(a.length) - 1;
        const int right = a.start_lower ? (steps + 1) / 2 : steps / 2;
        return {right, right - steps, 0};
    }
    }
    return {0, 0, 0};
}

/// Generator recipe: window, per-cell dimension cap, atom mix weights.
struct Recipe {
    std::string name;
    int window_p = 4, window_q = 4;
    std::size_t max_dim = 3;
    std::size_t min_atoms = 1, max_atoms = 4;
    unsigned weight_dot = 1, weight_square = 1, weight_staircase = 1;
    std::size_t staircase_min_len = 2, staircase_max_len = 5;
    /// Chance (in tenths) that the first atom is forced to be a square;
    /// used by the dd-lemma-targeted recipe to keep campaigns non-vacuous.
    unsigned force_square_tenths = 0;
    bool with_iso = true;

    static Recipe mixed() {
        Recipe r;
        r.name = "mixed";
        return r;
    }

    static Recipe squares_dots() {
        Recipe r;
        r.name = "squares+dots";
        r.weight_staircase = 0;
        r.force_square_tenths = 8;
        return r;
    }

    static Recipe zigzags() {
        Recipe r;
        r.name = "mixed zigzags";
        r.weight_square = 0;
        r.weight_staircase = 3;
        return r;
    }
};

struct Blueprint {
    std::vector<Atom> atoms;
    bool with_iso = true;
    std::uint64_t iso_seed = 0;
};

inline Rationals::Scalar random_unit(const Rationals& field, std::mt19937_64& rng) {
    static const long units[] = {1, -1, 2, -2, 3};
    return field.from_int(units[bounded(rng, 5)]);
}

inline PrimeField::Scalar random_unit(const PrimeField& field, std::mt19937_64& rng) {
    return 1 + bounded(rng, field.modulus() - 1);
}

/// Random invertible matrix built from elementary column operations, so
/// invertibility holds by construction.
template <typename F>
Matrix<F> random_invertible(const F& field, std::size_t n, std::mt19937_64& rng) {
    auto m = Matrix<F>::identity(field, n);
    if (n == 0)
        return m;
    const std::size_t ops = n + bounded(rng, 4);
    for (std::size_t t = 0; t < ops; ++t) {
        const auto kind = bounded(rng, 3);
        const std::size_t i = bounded(rng, n);
        if (kind == 0 && n >= 2) {
            std::size_t j = bounded(rng, n - 1);
            if (j >= i)
                ++j;
            const auto c = random_unit(field, rng);
            for (std::size_t row = 0; row < n; ++row)
                m.at(row, i) = field.add(m.at(row, i), field.mul(c, m.at(row, j)));
        } else if (kind == 1 && n >= 2) {
            std::size_t j = bounded(rng, n - 1);
            if (j >= i)
                ++j;
            for (std::size_t row = 0; row < n; ++row)
                std::swap(m.at(row, i), m.at(row, j));
        } else {
            const auto c = random_unit(field, rng);
            for (std::size_t row = 0; row < n; ++row)
                m.at(row, i) = field.mul(c, m.at(row, i));
        }
    }
    return m;
}

template <typename F>
BigradedIso<F> random_iso_for(const DoubleComplex<F>& c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    BigradedIso<F> iso;
    for (const auto& [k, d] : c.support())
        iso.maps.insert_or_assign(k, random_invertible(c.field(), d, rng));
    return iso;
}

template <typename F>
DoubleComplex<F> build_blueprint(const F& field, const Blueprint& bp) {
    DoubleComplex<F> c(field);
    for (const auto& a : bp.atoms)
        c = direct_sum(c, build_atom(field, a));
    if (bp.with_iso)
        c = change_basis(c, random_iso_for(c, bp.iso_seed));
    return c;
}

template <typename F>
std::pair<DoubleComplex<F>, Blueprint> random_complex_blueprint(const F& field,
                                                                const Recipe& recipe,
                                                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Blueprint bp;
    bp.with_iso = recipe.with_iso;

    std::map<CellKey, std::size_t> used;
    auto fits = [&](const Atom& a) {
        auto box = atom_box(a);
        if (a.p < 0 || a.q + box.q_lo < 0)
            return false;
        if (a.p + box.p_hi > recipe.window_p || a.q + box.q_hi > recipe.window_q)
            return false;
        auto probe = build_atom(field, a);
        for (const auto& [k, d] : probe.support())
            if (used[k] + d > recipe.max_dim)
                return false;
        return true;
    };
    auto place = [&](Atom a) {
        auto box = atom_box(a);
        const int pmax = recipe.window_p - box.p_hi;
        const int qmin = -box.q_lo, qmax = recipe.window_q - box.q_hi;
        if (pmax < 0 || qmax < qmin)
            return;
        for (int attempt = 0; attempt < 8; ++attempt) {
            a.p = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(pmax + 1)));
            a.q = qmin + static_cast<int>(
                             bounded(rng, static_cast<std::uint64_t>(qmax - qmin + 1)));
            if (!fits(a))
                continue;
            auto placed = build_atom(field, a);
            for (const auto& [k, d] : placed.support())
                used[k] += d;
            bp.atoms.push_back(a);
            return;
        }
    };

    const std::size_t n_atoms =
        recipe.min_atoms + bounded(rng, recipe.max_atoms - recipe.min_atoms + 1);
    for (std::size_t i = 0; i < n_atoms; ++i) {
        Atom a{Atom::Kind::dot, 0, 0, 0, true};
        if (i == 0 && bounded(rng, 10) < recipe.force_square_tenths) {
            a.kind = Atom::Kind::square;
        } else {
            const unsigned total =
                recipe.weight_dot + recipe.weight_square + recipe.weight_staircase;
            auto pick = bounded(rng, total);
            if (pick < recipe.weight_dot)
                a.kind = Atom::Kind::dot;
            else if (pick < recipe.weight_dot + recipe.weight_square)
                a.kind = Atom::Kind::square;
            else
                a.kind = Atom::Kind::staircase;
        }
        if (a.kind == Atom::Kind::staircase) {
            a.length = recipe.staircase_min_len +
                       bounded(rng, recipe.staircase_max_len - recipe.staircase_min_len + 1);
            a.start_lower = bounded(rng, 2) == 0;
        }
        place(a);
    }
    bp.iso_seed = rng();
    return {build_blueprint(field, bp), bp};
}

template <typename F>
DoubleComplex<F> random_complex(const F& field, const Recipe& recipe, std::uint64_t seed) {
    return random_complex_blueprint(field, recipe, seed).first;
}

} // namespace specseq

#endif
