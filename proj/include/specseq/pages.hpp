#ifndef SPECSEQ_PAGES_HPP
#define SPECSEQ_PAGES_HPP

#include <map>
#include <vector>

#include "specseq/filtration.hpp"

namespace specseq {

using PageDims = std::map<CellKey, std::size_t>;

inline bool same_dims(const PageDims& a, const PageDims& b) {
    auto dim_of = [](const PageDims& m, CellKey k) {
        auto it = m.find(k);
        return it == m.end() ? std::size_t{0} : it->second;
    };
    for (const auto& [k, d] : a)
        if (d != dim_of(b, k))
            return false;
    for (const auto& [k, d] : b)
        if (d != dim_of(a, k))
            return false;
    return true;
}

/// One cell of a page: E^{p,q}_r as a quotient with explicit
/// representatives in A^{p+q} coordinates, plus the matrix of
/// d_r: E^{p,q}_r → E^{p+r,q-r+1}_r.
template <typename F>
struct PageCell {
    std::size_t dim;
    std::vector<typename Matrix<F>::Vec> representatives;
    Matrix<F> reduce;
    Matrix<F> d;
};

template <typename F>
struct Page {
    int r = 0;
    std::map<CellKey, PageCell<F>> cells;

    std::size_t dim(int p, int q) const {
        auto it = cells.find({p, q});
        return it == cells.end() ? 0 : it->second.dim;
    }

    PageDims dims() const {
        PageDims out;
        for (const auto& [k, cell] : cells)
            out[k] = cell.dim;
        return out;
    }

    bool all_d_zero() const {
        for (const auto& [k, cell] : cells)
            if (!cell.d.is_zero())
                return false;
        return true;
    }
};

/// E^{p,q}_r = Z^{p,q}_r / (Z^{p+1,q-1}_{r-1} + B^{p,q}_{r-1}); d_r is
/// induced by the total differential on representatives. Cells outside
/// the support carry E = 0 (everything in F^p there already lies in
/// F^{p+1}), so the support cells are the whole story.
template <typename F>
Page<F> page(ZBTable<F>& tbl, int r) {
    const auto& ft = tbl.total();
    const F& field = ft.field();
    Page<F> out;
    out.r = r;

    auto denom_at = [&](int p, int q) {
        if (faults::is(faults::Kind::quotient_skip))
            return tbl.b(p, q, r - 1);
        return sum(tbl.z(p + 1, q - 1, r - 1), tbl.b(p, q, r - 1));
    };

    std::map<CellKey, QuotientMap<F>> quotients;
    auto quotient_at = [&](int p, int q) -> const QuotientMap<F>& {
        auto it = quotients.find({p, q});
        if (it == quotients.end())
            it = quotients.emplace(CellKey{p, q},
                                   quotient_map(tbl.z(p, q, r), denom_at(p, q))).first;
        return it->second;
    };

    for (int k = 0; k <= ft.width(); ++k)
        for (const auto& blk : ft.blocks(k)) {
            const int p = blk.p, q = blk.q;
            const auto& qm = quotient_at(p, q);
            const auto& target = quotient_at(p + r, q - r + 1);

            const auto d = ft.differential(k);
            auto denom = denom_at(p, q);
            auto target_denom = denom_at(p + r, q - r + 1);
            internal_check(contains(tbl.z(p + r, q - r + 1, r),
                                    image(d * tbl.z(p, q, r).basis())),
                           "page: d does not map Z_r into the target Z_r");
            internal_check(contains(target_denom, image(d * denom.basis())),
                           "page: d_r is not well defined on the quotient");

            Matrix<F> dr(field, target.dim, qm.dim);
            for (std::size_t j = 0; j < qm.dim; ++j) {
                auto img = target.reduce(d.apply(qm.representatives[j]));
                for (std::size_t i = 0; i < target.dim; ++i)
                    dr.at(i, j) = img[i];
            }
            out.cells.emplace(CellKey{p, q},
                              PageCell<F>{qm.dim, qm.representatives,
                                          qm.reduce_matrix, std::move(dr)});
        }
    return out;
}

template <typename F>
Page<F> page(const FilteredTotal<F>& ft, int r) {
    ZBTable<F> tbl(ft);
    return page(tbl, r);
}

/// Dims of the next page computed as cohomology of the previous one:
/// dim ker(d_r out of the cell) minus rank(d_r into the cell). Serves as
/// the independent oracle for page(ft, r+1).
template <typename F>
PageDims page_via_cohomology(const Page<F>& prev) {
    PageDims out;
    for (const auto& [k, cell] : prev.cells) {
        const std::size_t out_rank = rank(cell.d);
        std::size_t in_rank = 0;
        auto src = prev.cells.find({k.first - prev.r, k.second + prev.r - 1});
        if (src != prev.cells.end())
            in_rank = rank(src->second.d);
        out[k] = cell.dim - out_rank - in_rank;
    }
    return out;
}

struct InfinityPage {
    PageDims dims;
};

/// E^{p,q}_∞ = (F^p ∩ ker d) / (F^{p+1} ∩ ker d + F^p ∩ Im d).
template <typename F>
InfinityPage infinity_page(ZBTable<F>& tbl) {
    const auto& ft = tbl.total();
    InfinityPage out;
    for (int k = 0; k <= ft.width(); ++k)
        for (const auto& blk : ft.blocks(k)) {
            const int p = blk.p, q = blk.q;
            auto denom = sum(tbl.z(p + 1, q - 1, PageR::infinity()),
                             tbl.b(p, q, PageR::infinity()));
            out.dims[{p, q}] =
                tbl.z(p, q, PageR::infinity()).dim() - denom.dim();
        }
    return out;
}

template <typename F>
InfinityPage infinity_page(const FilteredTotal<F>& ft) {
    ZBTable<F> tbl(ft);
    return infinity_page(tbl);
}

template <typename F>
std::size_t cohomology_dim(const FilteredTotal<F>& ft, int k) {
    return kernel(ft.differential(k)).dim() - rank(ft.differential(k - 1));
}

/// Page cutoff: d_s vanishes structurally for s > width()+1 because its
/// source or target filtration degenerates, so checking s up to the
/// cutoff decides "d_s = 0 for all s ≥ r" exactly.
template <typename F>
int page_cutoff(const FilteredTotal<F>& ft) {
    return ft.width() + 1;
}

/// Smallest r with d_s = 0 for every s ≥ r.
template <typename F>
int degeneration_page(ZBTable<F>& tbl) {
    const int cutoff = page_cutoff(tbl.total());
    int r_deg = 0;
    for (int s = 0; s <= cutoff; ++s) {
        const bool dead = page(tbl, s).all_d_zero();
        if (faults::is(faults::Kind::degeneration_early) && dead)
            return r_deg;
        if (!dead)
            r_deg = s + 1;
    }
    return r_deg;
}

template <typename F>
int degeneration_page(const FilteredTotal<F>& ft) {
    ZBTable<F> tbl(ft);
    return degeneration_page(tbl);
}

} // namespace specseq

#endif
