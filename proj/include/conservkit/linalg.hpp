#pragma once

#include "conservkit/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace conservkit {

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t dim) : entries_(dim) {}
    Vector(std::initializer_list<Rational> entries) : entries_(entries) {}
    explicit Vector(std::vector<Rational> entries) : entries_(std::move(entries)) {}

    // The i-th standard basis vector (0-based).
    static Vector unit(std::size_t dim, std::size_t i);

    std::size_t dim() const noexcept { return entries_.size(); }
    const Rational& operator[](std::size_t i) const { return entries_[i]; }
    Rational& operator[](std::size_t i) { return entries_[i]; }
    std::span<const Rational> entries() const noexcept { return entries_; }

    bool is_zero() const;

    Vector& operator+=(const Vector& rhs);
    Vector& operator-=(const Vector& rhs);
    Vector& operator*=(const Rational& s);
    friend Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
    friend Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
    friend Vector operator*(const Rational& s, Vector v) { return v *= s; }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<Rational> entries_;
};

// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::span<const Vector> columns, std::size_t rows);
    static Matrix from_rows(std::span<const Vector> rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    bool is_zero() const;

    Matrix transpose() const;
    // Row-major flattening into a rows*cols vector.
    Vector flatten() const;
    static Matrix unflatten(const Vector& v, std::size_t rows, std::size_t cols);

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(const Rational& s);
    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
    friend Matrix operator*(const Rational& s, Matrix m) { return m *= s; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& m, const Vector& v);

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

RrefResult rref(Matrix m);

// Canonical kernel basis: one vector per free column (in increasing order),
// with that free variable set to 1 and the other free variables set to 0.
std::vector<Vector> nullspace(const Matrix& m);

std::size_t rank(const Matrix& m);

// Particular solution with every free variable set to 0, or nullopt when
// the system is inconsistent. Throws InputError if b.dim() != m.rows().
std::optional<Vector> solve(const Matrix& m, const Vector& b);

// Throws InputError on a non-square matrix; nullopt when singular.
std::optional<Matrix> invert(const Matrix& m);

// Incrementally collects linear constraints, keeping only independent rows
// (each stored with a unit pivot). Useful when a system has far more
// candidate rows than unknowns.
class RowReducer {
public:
    explicit RowReducer(std::size_t cols) : cols_(cols) {}

    // Returns true when the row was independent of those already held.
    bool add(Vector row);

    std::size_t cols() const noexcept { return cols_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    Matrix matrix() const { return Matrix::from_rows(rows_, cols_); }

private:
    std::size_t cols_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace conservkit
