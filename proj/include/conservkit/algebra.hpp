#pragma once

#include "conservkit/linalg.hpp"
#include "conservkit/rational.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace conservkit {

// Structure constants of a finite-dimensional algebra:
// e_i * e_j = sum_k c(i, j, k) e_k, indices 0-based.
class StructureTensor {
public:
    StructureTensor() = default;
    // The zero algebra of the given dimension.
    explicit StructureTensor(std::size_t dim) : dim_(dim), c_(dim * dim * dim) {}

    std::size_t dim() const noexcept { return dim_; }

    const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return c_[(i * dim_ + j) * dim_ + k];
    }
    Rational& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return c_[(i * dim_ + j) * dim_ + k];
    }

    // Coordinates of e_i * e_j.
    Vector basis_product(std::size_t i, std::size_t j) const;

    friend bool operator==(const StructureTensor&, const StructureTensor&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Rational> c_;
};

// Bilinear extension of the table. Throws InputError on dimension mismatch.
Vector product(const StructureTensor& alg, const Vector& x, const Vector& y);

// Index of the multiplication alpha^k_{ij} on V_n in the alpha-basis, which is
// ordered (k, i, j) lexicographically with k outermost. All indices 0-based.
struct MultiplicationKey {
    std::size_t k;
    std::size_t i;
    std::size_t j;

    std::size_t index(std::size_t n) const { return (k * n + i) * n + j; }
    static MultiplicationKey from_index(std::size_t index, std::size_t n) {
        return {index / (n * n), (index / n) % n, index % n};
    }
};

// The algebra W(n) of all bilinear multiplications on an n-dimensional space
// V_n under the Kantor product
//   (A . B)(x, y) = A(v, B(x, y)) - B(A(v, x), y) - B(x, A(v, y)),
// where v = v_{fixed_vector} (0-based). Expressed in the alpha-basis.
StructureTensor build_kantor(std::size_t n, std::size_t fixed_vector = 0);

// Columns of p are the new basis vectors written in the old basis.
class BasisChange {
public:
    // Throws InputError when p is not square or is singular.
    explicit BasisChange(Matrix p);

    std::size_t dim() const noexcept { return p_.rows(); }
    const Matrix& matrix() const noexcept { return p_; }
    const Matrix& inverse() const noexcept { return p_inv_; }
    BasisChange inverted() const { return BasisChange(p_inv_); }

private:
    Matrix p_;
    Matrix p_inv_;
};

StructureTensor change_basis(const StructureTensor& alg, const BasisChange& change);

// The basis e_1..e_8 of W(2) in terms of the alpha-basis:
//   e1 = a1_11 - a2_12 - a2_21     e5 = 2 a1_11 + a2_12 + a2_21
//   e2 = a2_11                     e6 = 2 a2_22 + a1_12 + a1_21
//   e3 = a2_22 - a1_12 - a1_21     e7 = a1_12 - a1_21
//   e4 = a1_22                     e8 = a2_12 - a2_21
const BasisChange& e_basis();

// Hand-transcribed published multiplication table of W(2) in the e-basis.
// Used only as a diff target; the tensor derived from the Kantor product is
// authoritative.
const StructureTensor& published_table();

// W(2) in the e-basis, derived from the Kantor product with v = v_1.
const StructureTensor& kantor_w2();
// W_2 = span{e1..e6} and S_2 = span{e1..e4} inside the derived W(2).
const StructureTensor& commutative_w2();
const StructureTensor& traceless_s2();

// Restriction of the product to span{e_s : s in span} (0-based indices).
// Throws ClosureError naming the first pair whose product leaves the span,
// and InputError on repeated or out-of-range indices.
StructureTensor subalgebra(const StructureTensor& alg, std::span<const std::size_t> span);

// Default labels e1..en.
std::vector<std::string> default_labels(std::size_t dim);

// A linear combination such as "-e1 + 3e4" or "0".
std::string render_combination(const Vector& v, const std::vector<std::string>& names);

// Multiplication table as aligned text, row label = left factor.
std::string render_table(const StructureTensor& alg, const std::vector<std::string>& names);

struct TableDiff {
    std::size_t i;
    std::size_t j;
    Vector lhs;
    Vector rhs;
};

// Every (i, j) where e_i * e_j differs between the two tables, in row-major order.
std::vector<TableDiff> diff_tables(const StructureTensor& a, const StructureTensor& b);

}  // namespace conservkit
