#include "conservkit/algebra.hpp"

#include "conservkit/errors.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace conservkit {

Vector StructureTensor::basis_product(std::size_t i, std::size_t j) const {
    Vector v(dim_);
    for (std::size_t k = 0; k < dim_; ++k) v[k] = (*this)(i, j, k);
    return v;
}

Vector product(const StructureTensor& alg, const Vector& x, const Vector& y) {
    const std::size_t n = alg.dim();
    if (x.dim() != n || y.dim() != n) throw InputError("product: operand dimension does not match algebra");
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j].is_zero()) continue;
            const Rational xy = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k)
                if (!alg(i, j, k).is_zero()) out[k] += xy * alg(i, j, k);
        }
    }
    return out;
}

namespace {

// A multiplication on V_n, stored in the alpha-basis, applied to (x, y).
Vector apply_multiplication(const Vector& mult, const Vector& x, const Vector& y, std::size_t n) {
    Vector out(n);
    for (std::size_t idx = 0; idx < mult.dim(); ++idx) {
        if (mult[idx].is_zero()) continue;
        const auto key = MultiplicationKey::from_index(idx, n);
        out[key.k] += mult[idx] * x[key.i] * y[key.j];
    }
    return out;
}

Vector kantor_product(const Vector& a, const Vector& b, std::size_t n, const Vector& fixed) {
    Vector out(n * n * n);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t l = 0; l < n; ++l) {
            const Vector x = Vector::unit(n, t);
            const Vector y = Vector::unit(n, l);
            Vector value = apply_multiplication(a, fixed, apply_multiplication(b, x, y, n), n);
            value -= apply_multiplication(b, apply_multiplication(a, fixed, x, n), y, n);
            value -= apply_multiplication(b, x, apply_multiplication(a, fixed, y, n), n);
            for (std::size_t k = 0; k < n; ++k) out[MultiplicationKey{k, t, l}.index(n)] = value[k];
        }
    return out;
}

}  // namespace

StructureTensor build_kantor(std::size_t n, std::size_t fixed_vector) {
    if (n == 0) throw InputError("build_kantor: n must be positive");
    if (fixed_vector >= n) throw InputError("build_kantor: fixed vector index out of range");
    const std::size_t dim = n * n * n;
    const Vector fixed = Vector::unit(n, fixed_vector);
    StructureTensor alg(dim);
    for (std::size_t p = 0; p < dim; ++p)
        for (std::size_t q = 0; q < dim; ++q) {
            const Vector prod = kantor_product(Vector::unit(dim, p), Vector::unit(dim, q), n, fixed);
            for (std::size_t r = 0; r < dim; ++r) alg(p, q, r) = prod[r];
        }
    return alg;
}

BasisChange::BasisChange(Matrix p) : p_(std::move(p)) {
    if (!p_.is_square()) throw InputError("basis change matrix must be square");
    auto inv = invert(p_);
    if (!inv) throw InputError("basis change matrix is singular");
    p_inv_ = std::move(*inv);
}

StructureTensor change_basis(const StructureTensor& alg, const BasisChange& change) {
    const std::size_t n = alg.dim();
    if (change.dim() != n) throw InputError("change_basis: dimension mismatch");
    StructureTensor out(n);
    const Matrix& p = change.matrix();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vector coords = change.inverse() * product(alg, p.column(i), p.column(j));
            for (std::size_t k = 0; k < n; ++k) out(i, j, k) = coords[k];
        }
    return out;
}

const BasisChange& e_basis() {
    static const BasisChange change = [] {
        constexpr std::size_t n = 2;
        auto alpha = [](std::size_t k, std::size_t i, std::size_t j) {
            return MultiplicationKey{k - 1, i - 1, j - 1}.index(n);
        };
        Matrix p(8, 8);
        auto set = [&](std::size_t e, std::size_t idx, std::int64_t v) { p(idx, e - 1) = v; };
        set(1, alpha(1, 1, 1), 1), set(1, alpha(2, 1, 2), -1), set(1, alpha(2, 2, 1), -1);
        set(2, alpha(2, 1, 1), 1);
        set(3, alpha(2, 2, 2), 1), set(3, alpha(1, 1, 2), -1), set(3, alpha(1, 2, 1), -1);
        set(4, alpha(1, 2, 2), 1);
        set(5, alpha(1, 1, 1), 2), set(5, alpha(2, 1, 2), 1), set(5, alpha(2, 2, 1), 1);
        set(6, alpha(2, 2, 2), 2), set(6, alpha(1, 1, 2), 1), set(6, alpha(1, 2, 1), 1);
        set(7, alpha(1, 1, 2), 1), set(7, alpha(1, 2, 1), -1);
        set(8, alpha(2, 1, 2), 1), set(8, alpha(2, 2, 1), -1);
        return BasisChange(std::move(p));
    }();
    return change;
}

const StructureTensor& published_table() {
    // Each cell is coefficient * e_{index}; index 0 marks a zero product.
    struct Cell {
        int coef;
        int index;
    };
    static constexpr std::array<std::array<Cell, 8>, 8> rows{{
        {{{-1, 1}, {-3, 2}, {1, 3}, {3, 4}, {-1, 5}, {1, 6}, {1, 7}, {-1, 8}}},
        {{{3, 2}, {0, 0}, {2, 1}, {1, 3}, {0, 0}, {-1, 5}, {1, 8}, {0, 0}}},
        {{{-2, 3}, {-1, 1}, {-3, 4}, {0, 0}, {1, 6}, {0, 0}, {0, 0}, {-1, 7}}},
        {{{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}},
        {{{-2, 1}, {-3, 2}, {-1, 3}, {0, 0}, {-2, 5}, {-1, 6}, {-1, 7}, {-2, 8}}},
        {{{2, 3}, {1, 1}, {3, 4}, {0, 0}, {-1, 6}, {0, 0}, {0, 0}, {1, 7}}},
        {{{2, 3}, {1, 1}, {3, 4}, {0, 0}, {-1, 6}, {0, 0}, {0, 0}, {1, 7}}},
        {{{0, 0}, {1, 2}, {-1, 3}, {-2, 4}, {0, 0}, {-1, 6}, {-1, 7}, {0, 0}}},
    }};
    static const StructureTensor table = [] {
        StructureTensor t(8);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j)
                if (rows[i][j].index != 0)
                    t(i, j, static_cast<std::size_t>(rows[i][j].index - 1)) = rows[i][j].coef;
        return t;
    }();
    return table;
}

const StructureTensor& kantor_w2() {
    static const StructureTensor alg = change_basis(build_kantor(2, 0), e_basis());
    return alg;
}

const StructureTensor& commutative_w2() {
    static const StructureTensor alg = [] {
        const std::array<std::size_t, 6> span{0, 1, 2, 3, 4, 5};
        return subalgebra(kantor_w2(), span);
    }();
    return alg;
}

const StructureTensor& traceless_s2() {
    static const StructureTensor alg = [] {
        const std::array<std::size_t, 4> span{0, 1, 2, 3};
        return subalgebra(kantor_w2(), span);
    }();
    return alg;
}

StructureTensor subalgebra(const StructureTensor& alg, std::span<const std::size_t> span) {
    const std::size_t n = alg.dim();
    std::vector<std::size_t> position(n, n);
    for (std::size_t a = 0; a < span.size(); ++a) {
        if (span[a] >= n) throw InputError("subalgebra: index " + std::to_string(span[a] + 1) + " out of range");
        if (position[span[a]] != n)
            throw InputError("subalgebra: index " + std::to_string(span[a] + 1) + " repeated");
        position[span[a]] = a;
    }

    StructureTensor out(span.size());
    for (std::size_t a = 0; a < span.size(); ++a)
        for (std::size_t b = 0; b < span.size(); ++b)
            for (std::size_t k = 0; k < n; ++k) {
                const Rational& v = alg(span[a], span[b], k);
                if (v.is_zero()) continue;
                if (position[k] == n)
                    throw ClosureError(span[a], span[b],
                                       "span not closed: e" + std::to_string(span[a] + 1) + " * e" +
                                           std::to_string(span[b] + 1) + " has a component along e" +
                                           std::to_string(k + 1));
                out(a, b, position[k]) = v;
            }
    return out;
}

std::vector<std::string> default_labels(std::size_t dim) {
    std::vector<std::string> names;
    names.reserve(dim);
    for (std::size_t i = 1; i <= dim; ++i) names.push_back("e" + std::to_string(i));
    return names;
}

std::string render_combination(const Vector& v, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t k = 0; k < v.dim(); ++k) {
        if (v[k].is_zero()) continue;
        const bool negative = v[k].sign() < 0;
        const Rational mag = negative ? -v[k] : v[k];
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (mag.denominator() != 1)
            out += "(" + mag.str() + ")";
        else if (mag != Rational(1))
            out += mag.str();
        out += names[k];
    }
    return out.empty() ? "0" : out;
}

std::string render_table(const StructureTensor& alg, const std::vector<std::string>& names) {
    const std::size_t n = alg.dim();
    if (names.size() != n) throw InputError("render_table: need one label per basis vector");

    std::vector<std::vector<std::string>> cells(n + 1, std::vector<std::string>(n + 1));
    for (std::size_t j = 0; j < n; ++j) cells[0][j + 1] = names[j];
    for (std::size_t i = 0; i < n; ++i) {
        cells[i + 1][0] = names[i];
        for (std::size_t j = 0; j < n; ++j) cells[i + 1][j + 1] = render_combination(alg.basis_product(i, j), names);
    }

    std::vector<std::size_t> width(n + 1, 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c <= n; ++c) width[c] = std::max(width[c], row[c].size());

    std::ostringstream os;
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < n; ++c) os << row[c] << std::string(width[c] - row[c].size(), ' ') << " | ";
        os << row[n] << '\n';
    }
    return os.str();
}

std::vector<TableDiff> diff_tables(const StructureTensor& a, const StructureTensor& b) {
    if (a.dim() != b.dim()) throw InputError("diff_tables: dimension mismatch");
    std::vector<TableDiff> diffs;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Vector lhs = a.basis_product(i, j);
            Vector rhs = b.basis_product(i, j);
            if (lhs != rhs) diffs.push_back({i, j, std::move(lhs), std::move(rhs)});
        }
    return diffs;
}

}  // namespace conservkit
