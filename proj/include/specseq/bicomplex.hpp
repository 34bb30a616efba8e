#ifndef SPECSEQ_BICOMPLEX_HPP
#define SPECSEQ_BICOMPLEX_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "specseq/errors.hpp"
#include "specseq/matrix.hpp"

namespace specseq {

using CellKey = std::pair<int, int>; // (p, q)

/// Bounded double complex: bigraded spaces A^{p,q} with a horizontal
/// differential d1 of bidegree (1,0) and a vertical differential d2 of
/// bidegree (0,1), subject to d1²=0, d2²=0, d1·d2+d2·d1=0.
/// Zero maps are not stored; accessors materialize them on demand.
template <typename F>
class DoubleComplex {
public:
    explicit DoubleComplex(F field) : field_(std::move(field)) {}

    const F& field() const { return field_; }

    std::size_t dim(int p, int q) const {
        auto it = support_.find({p, q});
        return it == support_.end() ? 0 : it->second;
    }

    void set_dim(int p, int q, std::size_t d) {
        if (d == 0)
            support_.erase({p, q});
        else
            support_[{p, q}] = d;
    }

    /// d1_{p,q}: A^{p,q} → A^{p+1,q}.
    Matrix<F> d1(int p, int q) const {
        auto it = d1_.find({p, q});
        if (it != d1_.end())
            return it->second;
        return Matrix<F>(field_, dim(p + 1, q), dim(p, q));
    }

    /// d2_{p,q}: A^{p,q} → A^{p,q+1}.
    Matrix<F> d2(int p, int q) const {
        auto it = d2_.find({p, q});
        if (it != d2_.end())
            return it->second;
        return Matrix<F>(field_, dim(p, q + 1), dim(p, q));
    }

    void set_d1(int p, int q, Matrix<F> m) {
        if (m.field() != field_)
            throw std::invalid_argument("set_d1: field mismatch");
        if (m.is_zero())
            d1_.erase({p, q});
        else
            d1_.insert_or_assign({p, q}, std::move(m));
    }

    void set_d2(int p, int q, Matrix<F> m) {
        if (m.field() != field_)
            throw std::invalid_argument("set_d2: field mismatch");
        if (m.is_zero())
            d2_.erase({p, q});
        else
            d2_.insert_or_assign({p, q}, std::move(m));
    }

    const std::map<CellKey, std::size_t>& support() const { return support_; }
    const std::map<CellKey, Matrix<F>>& stored_d1() const { return d1_; }
    const std::map<CellKey, Matrix<F>>& stored_d2() const { return d2_; }

    int max_p() const {
        int m = 0;
        for (const auto& [k, d] : support_)
            m = std::max(m, k.first);
        return m;
    }

    int max_q() const {
        int m = 0;
        for (const auto& [k, d] : support_)
            m = std::max(m, k.second);
        return m;
    }

    /// Largest total degree k with A^k ≠ 0.
    int max_total_degree() const {
        int m = 0;
        for (const auto& [k, d] : support_)
            m = std::max(m, k.first + k.second);
        return m;
    }

    bool operator==(const DoubleComplex& o) const {
        if (field_ != o.field_ || support_ != o.support_)
            return false;
        for (const auto& [k, d] : support_) {
            if (d1(k.first, k.second) != o.d1(k.first, k.second))
                return false;
            if (d2(k.first, k.second) != o.d2(k.first, k.second))
                return false;
        }
        return true;
    }
    bool operator!=(const DoubleComplex& o) const { return !(*this == o); }

private:
    F field_;
    std::map<CellKey, std::size_t> support_;
    std::map<CellKey, Matrix<F>> d1_, d2_;
};

enum class ValidationIssueKind {
    negative_index,
    shape_mismatch,
    d1_not_square_zero,
    d2_not_square_zero,
    anticommutator_nonzero,
};

inline const char* to_string(ValidationIssueKind k) {
    switch (k) {
    case ValidationIssueKind::negative_index: return "negative_index";
    case ValidationIssueKind::shape_mismatch: return "shape_mismatch";
    case ValidationIssueKind::d1_not_square_zero: return "d1_not_square_zero";
    case ValidationIssueKind::d2_not_square_zero: return "d2_not_square_zero";
    case ValidationIssueKind::anticommutator_nonzero: return "anticommutator_nonzero";
    }
    return "unknown";
}

struct ValidationIssue {
    ValidationIssueKind kind;
    int p, q;
    std::string detail;
    std::vector<std::pair<std::size_t, std::size_t>> positions;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool valid() const { return issues.empty(); }
};

template <typename F>
ValidationReport validate(const DoubleComplex<F>& c) {
    ValidationReport rep;
    for (const auto& [k, d] : c.support())
        if (k.first < 0 || k.second < 0)
            rep.issues.push_back({ValidationIssueKind::negative_index, k.first, k.second,
                                  "supported cell with negative index", {}});

    auto check_shape = [&](const char* name, const CellKey& k, const Matrix<F>& m,
                           std::size_t want_rows, std::size_t want_cols) {
        if (m.rows() == want_rows && m.cols() == want_cols)
            return true;
        rep.issues.push_back(
            {ValidationIssueKind::shape_mismatch, k.first, k.second,
             std::string(name) + " is " + std::to_string(m.rows()) + "x" +
                 std::to_string(m.cols()) + ", expected " + std::to_string(want_rows) +
                 "x" + std::to_string(want_cols),
             {}});
        return false;
    };

    bool shapes_ok = true;
    for (const auto& [k, m] : c.stored_d1())
        shapes_ok &= check_shape("d1", k, m, c.dim(k.first + 1, k.second),
                                 c.dim(k.first, k.second));
    for (const auto& [k, m] : c.stored_d2())
        shapes_ok &= check_shape("d2", k, m, c.dim(k.first, k.second + 1),
                                 c.dim(k.first, k.second));
    if (!shapes_ok)
        return rep;

    for (const auto& [k, d] : c.support()) {
        const int p = k.first, q = k.second;
        auto dd1 = c.d1(p + 1, q) * c.d1(p, q);
        if (!dd1.is_zero())
            rep.issues.push_back({ValidationIssueKind::d1_not_square_zero, p, q,
                                  "d1∘d1 ≠ 0", dd1.nonzero_positions()});
        auto dd2 = c.d2(p, q + 1) * c.d2(p, q);
        if (!dd2.is_zero())
            rep.issues.push_back({ValidationIssueKind::d2_not_square_zero, p, q,
                                  "d2∘d2 ≠ 0", dd2.nonzero_positions()});
        auto anti = c.d2(p + 1, q) * c.d1(p, q) + c.d1(p, q + 1) * c.d2(p, q);
        if (!anti.is_zero())
            rep.issues.push_back({ValidationIssueKind::anticommutator_nonzero, p, q,
                                  "d1·d2 + d2·d1 ≠ 0", anti.nonzero_positions()});
    }
    return rep;
}

template <typename F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return r;
}

template <typename F>
DoubleComplex<F> direct_sum(const DoubleComplex<F>& a, const DoubleComplex<F>& b) {
    if (a.field() != b.field())
        throw std::invalid_argument("direct_sum: field mismatch");
    DoubleComplex<F> r(a.field());
    for (const auto& [k, d] : a.support())
        r.set_dim(k.first, k.second, d);
    for (const auto& [k, d] : b.support())
        r.set_dim(k.first, k.second, r.dim(k.first, k.second) + d);
    for (const auto& [k, d] : r.support()) {
        const int p = k.first, q = k.second;
        r.set_d1(p, q, block_diag(a.d1(p, q), b.d1(p, q)));
        r.set_d2(p, q, block_diag(a.d2(p, q), b.d2(p, q)));
    }
    return r;
}

/// Cellwise invertible change of coordinates g_{p,q} on A^{p,q}; cells
/// without an explicit matrix keep the identity.
template <typename F>
struct BigradedIso {
    std::map<CellKey, Matrix<F>> maps;
};

template <typename F>
DoubleComplex<F> change_basis(const DoubleComplex<F>& c, const BigradedIso<F>& g) {
    auto g_at = [&](int p, int q) {
        auto it = g.maps.find({p, q});
        if (it == g.maps.end())
            return Matrix<F>::identity(c.field(), c.dim(p, q));
        const auto& m = it->second;
        if (m.rows() != c.dim(p, q) || m.cols() != c.dim(p, q))
            throw std::invalid_argument("change_basis: iso shape mismatch");
        if (!is_invertible(m))
            throw std::invalid_argument("change_basis: iso not invertible");
        return m;
    };
    DoubleComplex<F> r(c.field());
    for (const auto& [k, d] : c.support())
        r.set_dim(k.first, k.second, d);
    for (const auto& [k, d] : c.support()) {
        const int p = k.first, q = k.second;
        auto gi = inverse(g_at(p, q));
        r.set_d1(p, q, g_at(p + 1, q) * c.d1(p, q) * gi);
        r.set_d2(p, q, g_at(p, q + 1) * c.d2(p, q) * gi);
    }
    return r;
}

} // namespace specseq

#endif
