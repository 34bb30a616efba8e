#ifndef SPECSEQ_FILTRATION_HPP
#define SPECSEQ_FILTRATION_HPP

#include <map>
#include <tuple>
#include <vector>

#include "specseq/bicomplex.hpp"
#include "specseq/faults.hpp"
#include "specseq/subspace.hpp"

namespace specseq {

/// Page subscript r ∈ ℤ ∪ {∞}; ∞ is a distinguished value, never a
/// stand-in large integer.
struct PageR {
    int r = 0;
    bool inf = false;

    constexpr PageR(int v) : r(v) {}
    static constexpr PageR infinity() {
        PageR x(0);
        x.inf = true;
        return x;
    }
    PageR operator-(int d) const {
        internal_check(!inf, "PageR: arithmetic on infinity");
        return PageR(r - d);
    }
    bool operator==(const PageR&) const = default;
};

/// Totalization of a double complex: A^k = ⊕_{p+q=k} A^{p,q} with blocks
/// ordered by ascending p, so every F^pA^k is a coordinate tail. All
/// subspaces produced by the engine live in these coordinates.
template <typename F>
class FilteredTotal {
public:
    struct Block {
        int p, q;
        std::size_t offset, dim;
    };

    const F& field() const { return field_; }

    /// Largest k with A^k ≠ 0.
    int width() const { return width_; }

    std::size_t total_dim(int k) const {
        if (k < 0 || k > width_)
            return 0;
        return dims_[static_cast<std::size_t>(k)];
    }

    const std::vector<Block>& blocks(int k) const {
        static const std::vector<Block> none;
        if (k < 0 || k > width_)
            return none;
        return blocks_[static_cast<std::size_t>(k)];
    }

    /// d: A^k → A^{k+1}.
    Matrix<F> differential(int k) const {
        if (k < 0 || k > width_)
            return Matrix<F>(field_, total_dim(k + 1), total_dim(k));
        return d_[static_cast<std::size_t>(k)];
    }

    std::size_t cell_dim(int p, int q) const {
        auto it = cells_.find({p, q});
        return it == cells_.end() ? 0 : it->second.dim;
    }

    std::size_t block_offset(int p, int q) const {
        auto it = cells_.find({p, q});
        return it == cells_.end() ? 0 : it->second.offset;
    }

    /// F^pA^k: everything in blocks with first index ≥ p.
    Subspace<F> filtration(int p, int k) const {
        const std::size_t n = total_dim(k);
        if (p <= 0)
            return Subspace<F>::full(field_, n);
        std::size_t offset = n;
        for (const auto& b : blocks(k))
            if (b.p >= p) {
                offset = b.offset;
                break;
            }
        Matrix<F> tail(field_, n, n - offset);
        for (std::size_t j = 0; j + offset < n; ++j)
            tail.at(offset + j, j) = field_.one();
        return Subspace<F>::span(tail);
    }

    typename Matrix<F>::Vec embed_block(int p, int q,
                                        const typename Matrix<F>::Vec& v) const {
        internal_check(v.size() == cell_dim(p, q), "embed_block: size mismatch");
        typename Matrix<F>::Vec out(total_dim(p + q), field_.zero());
        const std::size_t off = block_offset(p, q);
        for (std::size_t i = 0; i < v.size(); ++i)
            out[off + i] = v[i];
        return out;
    }

    typename Matrix<F>::Vec project_block(int p, int q,
                                          const typename Matrix<F>::Vec& v) const {
        internal_check(v.size() == total_dim(p + q), "project_block: size mismatch");
        typename Matrix<F>::Vec out(cell_dim(p, q), field_.zero());
        const std::size_t off = block_offset(p, q);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = v[off + i];
        return out;
    }

    /// The (p,q) → (p+1,q) component of d, read back out of the total
    /// differential.
    Matrix<F> d1_block(int p, int q) const {
        return component(p, q, p + 1, q);
    }

    /// The (p,q) → (p,q+1) component of d.
    Matrix<F> d2_block(int p, int q) const {
        return component(p, q, p, q + 1);
    }

    template <typename G>
    friend FilteredTotal<G> totalize(const DoubleComplex<G>& c);

private:
    explicit FilteredTotal(F field) : field_(std::move(field)) {}

    Matrix<F> component(int sp, int sq, int tp, int tq) const {
        Matrix<F> out(field_, cell_dim(tp, tq), cell_dim(sp, sq));
        const auto d = differential(sp + sq);
        const std::size_t so = block_offset(sp, sq), to = block_offset(tp, tq);
        for (std::size_t i = 0; i < out.rows(); ++i)
            for (std::size_t j = 0; j < out.cols(); ++j)
                out.at(i, j) = d.at(to + i, so + j);
        return out;
    }

    struct CellLoc {
        std::size_t offset, dim;
    };

    F field_;
    int width_ = 0;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<Block>> blocks_;
    std::vector<Matrix<F>> d_;
    std::map<CellKey, CellLoc> cells_;
};

template <typename F>
FilteredTotal<F> totalize(const DoubleComplex<F>& c) {
    FilteredTotal<F> ft(c.field());
    const int w = c.max_total_degree();
    ft.width_ = w;
    ft.dims_.assign(static_cast<std::size_t>(w) + 1, 0);
    ft.blocks_.resize(static_cast<std::size_t>(w) + 1);
    for (int k = 0; k <= w; ++k) {
        std::size_t offset = 0;
        for (int p = 0; p <= k; ++p) {
            const int q = k - p;
            const std::size_t d = c.dim(p, q);
            if (d == 0)
                continue;
            ft.blocks_[static_cast<std::size_t>(k)].push_back({p, q, offset, d});
            ft.cells_[{p, q}] = {offset, d};
            offset += d;
        }
        ft.dims_[static_cast<std::size_t>(k)] = offset;
    }
    for (int k = 0; k <= w; ++k) {
        Matrix<F> d(ft.field_, ft.total_dim(k + 1), ft.total_dim(k));
        for (const auto& src : ft.blocks(k)) {
            auto put = [&](const Matrix<F>& m, int tp, int tq, bool negate) {
                if (m.is_zero() || ft.cell_dim(tp, tq) == 0)
                    return;
                const std::size_t to = ft.block_offset(tp, tq);
                for (std::size_t i = 0; i < m.rows(); ++i)
                    for (std::size_t j = 0; j < m.cols(); ++j)
                        d.at(to + i, src.offset + j) =
                            negate ? ft.field_.neg(m.at(i, j)) : m.at(i, j);
            };
            put(c.d1(src.p, src.q), src.p + 1, src.q, false);
            put(c.d2(src.p, src.q), src.p, src.q + 1,
                faults::is(faults::Kind::totalize_sign) && src.p % 2 == 1);
        }
        ft.d_.push_back(std::move(d));
    }
    return ft;
}

/// Z^{p,q}_r = {ξ ∈ F^pA^{p+q} : dξ ∈ F^{p+r}A^{p+q+1}};
/// r = ∞ gives F^pA^{p+q} ∩ ker d. Negative filtration indices mean the
/// whole space, so negative r degrades gracefully to F^pA^{p+q}.
template <typename F>
Subspace<F> z_space(const FilteredTotal<F>& ft, int p, int q, PageR r) {
    const int k = p + q;
    auto fp = ft.filtration(p, k);
    if (r.inf)
        return intersect(fp, kernel(ft.differential(k)));
    const int depth = r.r + (faults::is(faults::Kind::z_shift) ? 1 : 0);
    return intersect(fp, preimage(ft.differential(k), ft.filtration(p + depth, k + 1)));
}

/// B^{p,q}_r = F^pA^{p+q} ∩ d(F^{p−r}A^{p+q−1}); r = ∞ gives F^p ∩ Im d.
template <typename F>
Subspace<F> b_space(const FilteredTotal<F>& ft, int p, int q, PageR r) {
    const int k = p + q;
    auto fp = ft.filtration(p, k);
    const auto d = ft.differential(k - 1);
    if (r.inf)
        return intersect(fp, image(d));
    auto source =
        ft.filtration(p - r.r + (faults::is(faults::Kind::b_shift) ? 1 : 0), k - 1);
    return intersect(fp, image(d * source.basis()));
}

/// Memo table for the Z/B lattice. Thread-confined: each thread of a
/// parallel campaign owns its own table; values are canonical, so tables
/// built independently agree entry for entry.
template <typename F>
class ZBTable {
public:
    explicit ZBTable(const FilteredTotal<F>& ft) : ft_(&ft) {}

    const FilteredTotal<F>& total() const { return *ft_; }

    const Subspace<F>& z(int p, int q, PageR r) {
        auto key = std::make_tuple(p, q, r.inf, r.inf ? 0 : r.r);
        auto it = z_.find(key);
        if (it == z_.end())
            it = z_.emplace(key, z_space(*ft_, p, q, r)).first;
        return it->second;
    }

    const Subspace<F>& b(int p, int q, PageR r) {
        auto key = std::make_tuple(p, q, r.inf, r.inf ? 0 : r.r);
        auto it = b_.find(key);
        if (it == b_.end())
            it = b_.emplace(key, b_space(*ft_, p, q, r)).first;
        return it->second;
    }

private:
    using Key = std::tuple<int, int, bool, int>;
    const FilteredTotal<F>* ft_;
    std::map<Key, Subspace<F>> z_, b_;
};

} // namespace specseq

#endif
