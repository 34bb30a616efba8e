#ifndef SPECSEQ_SUBSPACE_HPP
#define SPECSEQ_SUBSPACE_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "specseq/errors.hpp"
#include "specseq/matrix.hpp"

namespace specseq {

/// Subspace of F^n held as a reduced column-echelon basis: pivot rows
/// strictly increasing, pivot entries 1, pivot rows zero in every other
/// column. The form is canonical, so two Subspace values describe the
/// same set of vectors iff they compare equal entry by entry.
template <typename F>
class Subspace {
public:
    using Scalar = typename F::Scalar;
    using Vec = std::vector<Scalar>;

    static Subspace zero_space(F field, std::size_t ambient) {
        return Subspace(Matrix<F>(std::move(field), ambient, 0));
    }

    static Subspace full(F field, std::size_t ambient) {
        return Subspace(Matrix<F>::identity(std::move(field), ambient));
    }

    /// Span of the columns of a generator matrix (canonicalized).
    static Subspace span(const Matrix<F>& generators) {
        auto r = rref(generators.transpose());
        return Subspace(r.mat.row_range(0, r.rank).transpose());
    }

    static Subspace span_of(F field, std::size_t ambient, const std::vector<Vec>& gens) {
        return span(Matrix<F>::from_columns(std::move(field), ambient, gens));
    }

    const F& field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return basis_.rows(); }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix<F>& basis() const { return basis_; }
    Vec basis_vector(std::size_t j) const { return basis_.column(j); }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    explicit Subspace(Matrix<F> canonical_basis) : basis_(std::move(canonical_basis)) {}
    Matrix<F> basis_;
};

template <typename F>
Subspace<F> image(const Matrix<F>& m) {
    return Subspace<F>::span(m);
}

template <typename F>
Subspace<F> kernel(const Matrix<F>& m) {
    const F& field = m.field();
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : r.pivots)
        is_pivot[c] = true;
    std::vector<typename Matrix<F>::Vec> gens;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        typename Matrix<F>::Vec v(m.cols(), field.zero());
        v[free] = field.one();
        for (std::size_t row = 0; row < r.pivots.size(); ++row)
            v[r.pivots[row]] = field.neg(r.mat.at(row, free));
        gens.push_back(std::move(v));
    }
    return Subspace<F>::span_of(field, m.cols(), gens);
}

template <typename F>
Subspace<F> sum(const Subspace<F>& u, const Subspace<F>& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw std::invalid_argument("sum: ambient dimension mismatch");
    return Subspace<F>::span(u.basis().hstack(v.basis()));
}

/// Intersection via the stacked-generator kernel: solutions of
/// U·x = V·y are read off from ker [U | -V].
template <typename F>
Subspace<F> intersect(const Subspace<F>& u, const Subspace<F>& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw std::invalid_argument("intersect: ambient dimension mismatch");
    auto stacked = u.basis().hstack(-v.basis());
    auto k = kernel(stacked);
    std::vector<typename Matrix<F>::Vec> gens;
    for (std::size_t j = 0; j < k.dim(); ++j) {
        auto kv = k.basis_vector(j);
        typename Matrix<F>::Vec x(kv.begin(), kv.begin() + static_cast<std::ptrdiff_t>(u.dim()));
        gens.push_back(u.basis().apply(x));
    }
    return Subspace<F>::span_of(u.field(), u.ambient_dim(), gens);
}

/// {x : m·x ∈ W}. Solutions of m·x = B_W·y projected to x.
template <typename F>
Subspace<F> preimage(const Matrix<F>& m, const Subspace<F>& w) {
    if (w.ambient_dim() != m.rows())
        throw std::invalid_argument("preimage: ambient dimension mismatch");
    auto stacked = m.hstack(-w.basis());
    auto k = kernel(stacked);
    std::vector<typename Matrix<F>::Vec> gens;
    for (std::size_t j = 0; j < k.dim(); ++j) {
        auto kv = k.basis_vector(j);
        gens.emplace_back(kv.begin(), kv.begin() + static_cast<std::ptrdiff_t>(m.cols()));
    }
    return Subspace<F>::span_of(m.field(), m.cols(), gens);
}

/// Coordinates of x in the echelon basis of u, if x lies in u.
template <typename F>
std::optional<typename Matrix<F>::Vec> coordinates_in(const Subspace<F>& u,
                                                      const typename Matrix<F>::Vec& x) {
    const F& field = u.field();
    if (x.size() != u.ambient_dim())
        throw std::invalid_argument("coordinates_in: vector size mismatch");
    const auto& b = u.basis();
    typename Matrix<F>::Vec coeff(u.dim(), field.zero());
    typename Matrix<F>::Vec residue = x;
    for (std::size_t j = 0; j < u.dim(); ++j) {
        std::size_t pivot_row = 0;
        while (field.is_zero(b.at(pivot_row, j)))
            ++pivot_row;
        coeff[j] = residue[pivot_row];
        if (field.is_zero(coeff[j]))
            continue;
        for (std::size_t i = 0; i < residue.size(); ++i)
            if (!field.is_zero(b.at(i, j)))
                residue[i] = field.sub(residue[i], field.mul(coeff[j], b.at(i, j)));
    }
    for (const auto& e : residue)
        if (!field.is_zero(e))
            return std::nullopt;
    return coeff;
}

template <typename F>
bool member(const Subspace<F>& u, const typename Matrix<F>::Vec& x) {
    return coordinates_in(u, x).has_value();
}

/// V ⊆ U ?
template <typename F>
bool contains(const Subspace<F>& u, const Subspace<F>& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw std::invalid_argument("contains: ambient dimension mismatch");
    for (std::size_t j = 0; j < v.dim(); ++j)
        if (!member(u, v.basis_vector(j)))
            return false;
    return true;
}

/// The data of G/H for H ⊆ G ⊆ F^n: a linear map `reduce` from F^n onto
/// coordinates in G/H whose restriction to G has kernel exactly H, plus
/// representative vectors whose classes form a basis.
template <typename F>
struct QuotientMap {
    std::size_t dim;
    std::vector<typename Matrix<F>::Vec> representatives;
    Matrix<F> reduce_matrix; // dim × ambient

    typename Matrix<F>::Vec reduce(const typename Matrix<F>::Vec& v) const {
        return reduce_matrix.apply(v);
    }
};

template <typename F>
QuotientMap<F> quotient_map(const Subspace<F>& g, const Subspace<F>& h) {
    const F& field = g.field();
    if (g.ambient_dim() != h.ambient_dim())
        throw std::invalid_argument("quotient_map: ambient dimension mismatch");
    if (!contains(g, h))
        throw std::invalid_argument("quotient_map: h is not contained in g");
    const std::size_t n = g.ambient_dim();
    const std::size_t qdim = g.dim() - h.dim();
    if (g.dim() == 0)
        return QuotientMap<F>{0, {}, Matrix<F>(field, 0, n)};

    // Extend a basis of h to one of g: pivot columns of [B_h | B_g] pick a
    // maximal independent set, and the h columns always survive.
    auto candidates = h.basis().hstack(g.basis());
    auto r = rref(candidates);
    internal_check(r.rank == g.dim(), "quotient_map: basis extension rank drift");
    auto m = candidates.columns(r.pivots);
    auto l = left_inverse(m);

    std::vector<typename Matrix<F>::Vec> reps;
    for (std::size_t j = h.dim(); j < g.dim(); ++j)
        reps.push_back(m.column(j));
    return QuotientMap<F>{qdim, std::move(reps), l.row_range(h.dim(), qdim)};
}

/// A vector of S outside both W1 and W2, when one exists. Exists iff
/// S ⊄ W1 and S ⊄ W2: a vector space over any field, 𝔽_2 included, is
/// never the union of two proper subspaces.
template <typename F>
std::optional<typename Matrix<F>::Vec> pick_outside_two(const Subspace<F>& s,
                                                        const Subspace<F>& w1,
                                                        const Subspace<F>& w2) {
    const F& field = s.field();
    std::optional<typename Matrix<F>::Vec> x1, x2;
    for (std::size_t j = 0; j < s.dim() && (!x1 || !x2); ++j) {
        auto v = s.basis_vector(j);
        if (!x1 && !member(w1, v))
            x1 = v;
        if (!x2 && !member(w2, v))
            x2 = v;
    }
    if (!x1 || !x2)
        return std::nullopt;
    if (!member(w2, *x1))
        return x1;
    if (!member(w1, *x2))
        return x2;
    typename Matrix<F>::Vec both(s.ambient_dim());
    for (std::size_t i = 0; i < both.size(); ++i)
        both[i] = field.add((*x1)[i], (*x2)[i]);
    internal_check(!member(w1, both) && !member(w2, both),
                   "pick_outside_two: combined vector escaped neither subspace");
    return both;
}

} // namespace specseq

#endif
