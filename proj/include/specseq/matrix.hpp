#ifndef SPECSEQ_MATRIX_HPP
#define SPECSEQ_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "specseq/errors.hpp"
#include "specseq/field.hpp"

namespace specseq {

/// Dense matrix over a field F, row-major, acting on column vectors.
/// Values are immutable in spirit: every operation returns a new matrix.
template <typename F>
class Matrix {
public:
    using Scalar = typename F::Scalar;
    using Vec = std::vector<Scalar>;

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols),
          entries_(rows * cols, this->field_.zero()) {}

    /// Row-major initializer, mainly for tests: Matrix(F, {{1,2},{3,4}}).
    Matrix(F field, std::initializer_list<std::initializer_list<long>> rows)
        : field_(std::move(field)), rows_(rows.size()),
          cols_(rows.size() ? rows.begin()->size() : 0) {
        entries_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw std::invalid_argument("Matrix: ragged initializer");
            for (long v : r)
                entries_.push_back(field_.from_int(v));
        }
    }

    static Matrix identity(F field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = m.field_.one();
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    Scalar& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!field_.is_zero(e))
                return false;
        return true;
    }

    /// Positions (i, j) of nonzero entries, row-major order.
    std::vector<std::pair<std::size_t, std::size_t>> nonzero_positions() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.is_zero(at(i, j)))
                    out.emplace_back(i, j);
        return out;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t.at(j, i) = at(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        check_same_field(o);
        if (cols_ != o.rows_)
            throw std::invalid_argument("Matrix multiply: shape mismatch");
        Matrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Scalar& a = at(i, k);
                if (field_.is_zero(a))
                    continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Scalar& b = o.at(k, j);
                    if (!field_.is_zero(b))
                        r.at(i, j) = field_.add(r.at(i, j), field_.mul(a, b));
                }
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(field_, rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i)
            r.entries_[i] = field_.add(entries_[i], o.entries_[i]);
        return r;
    }

    Matrix operator-() const {
        Matrix r(field_, rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i)
            r.entries_[i] = field_.neg(entries_[i]);
        return r;
    }

    Vec apply(const Vec& x) const {
        if (x.size() != cols_)
            throw std::invalid_argument("Matrix apply: size mismatch");
        Vec y(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.is_zero(at(i, j)) && !field_.is_zero(x[j]))
                    y[i] = field_.add(y[i], field_.mul(at(i, j), x[j]));
        return y;
    }

    Vec column(std::size_t j) const {
        Vec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = at(i, j);
        return c;
    }

    /// [this | o] side by side.
    Matrix hstack(const Matrix& o) const {
        check_same_field(o);
        if (rows_ != o.rows_)
            throw std::invalid_argument("hstack: row mismatch");
        Matrix r(field_, rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j)
                r.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

    /// [this; o] stacked vertically.
    Matrix vstack(const Matrix& o) const {
        check_same_field(o);
        if (cols_ != o.cols_)
            throw std::invalid_argument("vstack: column mismatch");
        Matrix r(field_, rows_ + o.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r.at(i, j) = at(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r.at(rows_ + i, j) = o.at(i, j);
        return r;
    }

    Matrix columns(const std::vector<std::size_t>& idx) const {
        Matrix r(field_, rows_, idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j)
            for (std::size_t i = 0; i < rows_; ++i)
                r.at(i, j) = at(i, idx[j]);
        return r;
    }

    Matrix row_range(std::size_t first, std::size_t count) const {
        Matrix r(field_, count, cols_);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r.at(i, j) = at(first + i, j);
        return r;
    }

    static Matrix from_columns(F field, std::size_t rows, const std::vector<Vec>& cols) {
        Matrix r(field, rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows)
                throw std::invalid_argument("from_columns: size mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                r.at(i, j) = cols[j][i];
        }
        return r;
    }

    bool operator==(const Matrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
               entries_ == o.entries_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    void check_same_field(const Matrix& o) const {
        if (field_ != o.field_)
            throw std::invalid_argument("Matrix: field mismatch");
    }
    void check_same_shape(const Matrix& o) const {
        check_same_field(o);
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }

    F field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> entries_;
};

template <typename F>
struct RrefResult {
    Matrix<F> mat;
    std::vector<std::size_t> pivots; // pivot column of each nonzero row, increasing
    std::size_t rank;
};

/// Reduced row echelon form by Gauss-Jordan elimination. Pivot choice is
/// the first nonzero entry in the leftmost eligible column, so the result
/// is deterministic; no magnitude heuristics are needed over exact fields.
/// If `carry` is nonnull, the same row operations are applied to it
/// (it must have the same number of rows).
template <typename F>
RrefResult<F> rref(Matrix<F> m, Matrix<F>* carry = nullptr) {
    const F& field = m.field();
    const std::size_t rows = m.rows(), cols = m.cols();
    if (carry && carry->rows() != rows)
        throw std::invalid_argument("rref: carry row mismatch");
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = rows;
        for (std::size_t i = row; i < rows; ++i)
            if (!field.is_zero(m.at(i, col))) {
                piv = i;
                break;
            }
        if (piv == rows)
            continue;
        if (piv != row) {
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m.at(piv, j), m.at(row, j));
            if (carry)
                for (std::size_t j = 0; j < carry->cols(); ++j)
                    std::swap(carry->at(piv, j), carry->at(row, j));
        }
        const auto inv = field.inv(m.at(row, col));
        for (std::size_t j = col; j < cols; ++j)
            if (!field.is_zero(m.at(row, j)))
                m.at(row, j) = field.mul(m.at(row, j), inv);
        if (carry)
            for (std::size_t j = 0; j < carry->cols(); ++j)
                if (!field.is_zero(carry->at(row, j)))
                    carry->at(row, j) = field.mul(carry->at(row, j), inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || field.is_zero(m.at(i, col)))
                continue;
            const auto f = m.at(i, col);
            for (std::size_t j = col; j < cols; ++j)
                if (!field.is_zero(m.at(row, j)))
                    m.at(i, j) = field.sub(m.at(i, j), field.mul(f, m.at(row, j)));
            if (carry)
                for (std::size_t j = 0; j < carry->cols(); ++j)
                    if (!field.is_zero(carry->at(row, j)))
                        carry->at(i, j) = field.sub(carry->at(i, j),
                                                    field.mul(f, carry->at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    const std::size_t rank = pivots.size();
    return RrefResult<F>{std::move(m), std::move(pivots), rank};
}

template <typename F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).rank;
}

/// Left inverse L of a matrix with full column rank: L * m = identity.
template <typename F>
Matrix<F> left_inverse(const Matrix<F>& m) {
    auto eye = Matrix<F>::identity(m.field(), m.rows());
    auto r = rref(m, &eye);
    if (r.rank != m.cols())
        throw std::invalid_argument("left_inverse: matrix does not have full column rank");
    return eye.row_range(0, m.cols());
}

/// Inverse of a square invertible matrix.
template <typename F>
Matrix<F> inverse(const Matrix<F>& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse: matrix not square");
    return left_inverse(m);
}

template <typename F>
bool is_invertible(const Matrix<F>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

} // namespace specseq

#endif
