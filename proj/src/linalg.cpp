#include "conservkit/linalg.hpp"

#include "conservkit/errors.hpp"

#include <algorithm>
#include <string>

namespace conservkit {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
}

}  // namespace

Vector Vector::unit(std::size_t dim, std::size_t i) {
    Vector v(dim);
    v[i] = 1;
    return v;
}

bool Vector::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return x.is_zero(); });
}

Vector& Vector::operator+=(const Vector& rhs) {
    require_same_dim(dim(), rhs.dim(), "vector addition");
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] += rhs.entries_[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& rhs) {
    require_same_dim(dim(), rhs.dim(), "vector subtraction");
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= rhs.entries_[i];
    return *this;
}

Vector& Vector::operator*=(const Rational& s) {
    for (auto& x : entries_) x *= s;
    return *this;
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw InputError("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        require_same_dim(columns[c].dim(), rows, "from_columns");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

Matrix Matrix::from_rows(std::span<const Vector> rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        require_same_dim(rows[r].dim(), cols, "from_rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(std::vector<Rational>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)));
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x.is_zero(); });
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vector Matrix::flatten() const { return Vector(data_); }

Matrix Matrix::unflatten(const Vector& v, std::size_t rows, std::size_t cols) {
    require_same_dim(v.dim(), rows * cols, "unflatten");
    Matrix m(rows, cols);
    std::copy(v.entries().begin(), v.entries().end(), m.data_.begin());
    return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require_same_dim(rows_, rhs.rows_, "matrix addition");
    require_same_dim(cols_, rhs.cols_, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    require_same_dim(rows_, rhs.rows_, "matrix subtraction");
    require_same_dim(cols_, rhs.cols_, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
    for (auto& x : data_) x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_dim(a.cols(), b.rows(), "matrix product");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

Vector operator*(const Matrix& m, const Vector& v) {
    require_same_dim(m.cols(), v.dim(), "matrix-vector product");
    Vector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero() && !v[c].is_zero()) out[r] += m(r, c) * v[c];
    return out;
}

RrefResult rref(Matrix m) {
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
        std::size_t found = pivot_row;
        while (found < m.rows() && m(found, col).is_zero()) ++found;
        if (found == m.rows()) continue;
        if (found != pivot_row)
            for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(found, c), m(pivot_row, c));

        const Rational inv = m(pivot_row, col).inverse();
        for (std::size_t c = col; c < m.cols(); ++c) m(pivot_row, c) *= inv;

        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == pivot_row || m(r, col).is_zero()) continue;
            const Rational factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (!m(pivot_row, c).is_zero()) m(r, c) -= factor * m(pivot_row, c);
        }
        pivots.push_back(col);
        ++pivot_row;
    }
    return {std::move(m), std::move(pivots)};
}

std::vector<Vector> nullspace(const Matrix& m) {
    const auto [reduced, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
    require_same_dim(b.dim(), m.rows(), "solve");
    Matrix augmented(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) augmented(r, c) = m(r, c);
        augmented(r, m.cols()) = b[r];
    }
    const auto [reduced, pivots] = rref(std::move(augmented));
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;

    Vector x(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = reduced(r, m.cols());
    return x;
}

std::optional<Matrix> invert(const Matrix& m) {
    if (!m.is_square()) throw InputError("invert: matrix is not square");
    const std::size_t n = m.rows();
    Matrix augmented(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) augmented(r, c) = m(r, c);
        augmented(r, n + r) = 1;
    }
    const auto [reduced, pivots] = rref(std::move(augmented));
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;

    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = reduced(r, n + c);
    return inv;
}

bool RowReducer::add(Vector row) {
    require_same_dim(row.dim(), cols_, "RowReducer::add");
    // Each held row is zero at the pivots of the rows held before it, so one
    // pass in insertion order clears every pivot column of the new row.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational factor = row[pivots_[r]];
        if (factor.is_zero()) continue;
        for (std::size_t c = pivots_[r]; c < cols_; ++c)
            if (!rows_[r][c].is_zero()) row[c] -= factor * rows_[r][c];
    }
    std::size_t pivot = 0;
    while (pivot < cols_ && row[pivot].is_zero()) ++pivot;
    if (pivot == cols_) return false;
    const Rational inv = row[pivot].inverse();
    for (std::size_t c = pivot; c < cols_; ++c) row[c] *= inv;
    rows_.push_back(std::move(row));
    pivots_.push_back(pivot);
    return true;
}

}  // namespace conservkit
