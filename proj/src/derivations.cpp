#include "conservkit/derivations.hpp"

#include "conservkit/errors.hpp"
#include "conservkit/poly.hpp"

#include <map>
#include <string>

namespace conservkit {

LinearMapSpace::LinearMapSpace(std::size_t ambient, std::vector<Matrix> basis)
    : ambient_(ambient), basis_(std::move(basis)) {
    for (const auto& m : basis_)
        if (m.rows() != ambient_ || m.cols() != ambient_)
            throw InputError("linear map space: basis matrix has wrong shape");
    if (rank(coordinates()) != basis_.size()) throw InputError("linear map space: basis is linearly dependent");
}

LinearMapSpace LinearMapSpace::span_of(std::size_t ambient, std::span<const Matrix> generators) {
    RowReducer reducer(ambient * ambient);
    std::vector<Matrix> kept;
    for (const auto& g : generators) {
        if (g.rows() != ambient || g.cols() != ambient)
            throw InputError("linear map space: generator has wrong shape");
        if (reducer.add(g.flatten())) kept.push_back(g);
    }
    return {ambient, std::move(kept)};
}

LinearMapSpace LinearMapSpace::full(std::size_t ambient) {
    std::vector<Matrix> basis;
    for (std::size_t p = 0; p < ambient; ++p)
        for (std::size_t q = 0; q < ambient; ++q) {
            Matrix m(ambient, ambient);
            m(p, q) = 1;
            basis.push_back(std::move(m));
        }
    return {ambient, std::move(basis)};
}

Matrix LinearMapSpace::coordinates() const {
    Matrix coords(basis_.size(), ambient_ * ambient_);
    for (std::size_t r = 0; r < basis_.size(); ++r) {
        const Vector flat = basis_[r].flatten();
        for (std::size_t c = 0; c < flat.dim(); ++c) coords(r, c) = flat[c];
    }
    return coords;
}

bool LinearMapSpace::contains(const Matrix& m) const {
    if (m.rows() != ambient_ || m.cols() != ambient_) throw InputError("contains: matrix has wrong shape");
    RowReducer reducer(ambient_ * ambient_);
    for (const auto& b : basis_) reducer.add(b.flatten());
    return !reducer.add(m.flatten());
}

bool LinearMapSpace::contains(const LinearMapSpace& other) const {
    if (other.ambient_ != ambient_) throw InputError("contains: ambient dimension mismatch");
    RowReducer reducer(ambient_ * ambient_);
    for (const auto& b : basis_) reducer.add(b.flatten());
    for (const auto& m : other.basis_)
        if (reducer.add(m.flatten())) return false;
    return true;
}

bool LinearMapSpace::same_span(const LinearMapSpace& other) const {
    return size() == other.size() && contains(other);
}

LinearMapSpace intersect(const LinearMapSpace& a, const LinearMapSpace& b) {
    if (a.ambient() != b.ambient()) throw InputError("intersect: ambient dimension mismatch");
    const std::size_t n2 = a.ambient() * a.ambient();
    // Kernel of [A^T | -B^T]: coefficient pairs (s, t) with sum s_i A_i = sum t_j B_j.
    Matrix system(n2, a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vector flat = a.basis()[i].flatten();
        for (std::size_t r = 0; r < n2; ++r) system(r, i) = flat[r];
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        const Vector flat = b.basis()[j].flatten();
        for (std::size_t r = 0; r < n2; ++r) system(r, a.size() + j) = -flat[r];
    }
    std::vector<Matrix> generators;
    for (const auto& coeffs : nullspace(system)) {
        Matrix m(a.ambient(), a.ambient());
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!coeffs[i].is_zero()) m += coeffs[i] * a.basis()[i];
        generators.push_back(std::move(m));
    }
    return LinearMapSpace::span_of(a.ambient(), generators);
}

namespace {

std::vector<Matrix> as_matrices(const std::vector<Vector>& flat, std::size_t n) {
    std::vector<Matrix> out;
    out.reserve(flat.size());
    for (const auto& v : flat) out.push_back(Matrix::unflatten(v, n, n));
    return out;
}

}  // namespace

LinearMapSpace derivation_space(const StructureTensor& alg) {
    const std::size_t n = alg.dim();
    auto unknown = [n](std::size_t p, std::size_t q) { return p * n + q; };
    Matrix system(n * n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r) {
                const std::size_t row = (i * n + j) * n + r;
                for (std::size_t k = 0; k < n; ++k) {
                    // D(e_i e_j)_r
                    system(row, unknown(r, k)) += alg(i, j, k);
                    // -(D(e_i) e_j)_r - (e_i D(e_j))_r
                    system(row, unknown(k, i)) -= alg(k, j, r);
                    system(row, unknown(k, j)) -= alg(i, k, r);
                }
            }
    return {n, as_matrices(nullspace(system), n)};
}

Matrix derivation_from_params(const DerivationParams& p) {
    const Rational& a = p.alpha;
    const Rational& b = p.beta;
    Matrix d(8, 8);
    d(0, 1) = a;
    d(1, 1) = -b;
    d(2, 0) = Rational(2) * a;
    d(2, 2) = b;
    d(3, 2) = Rational(3) * a;
    d(3, 3) = Rational(2) * b;
    d(5, 4) = -a;
    d(5, 5) = b;
    d(6, 6) = b;
    d(6, 7) = a;
    return d;
}

std::vector<LeibnizViolation> leibniz_residual(const StructureTensor& alg, const Matrix& d) {
    const std::size_t n = alg.dim();
    if (d.rows() != n || d.cols() != n) throw InputError("leibniz_residual: map does not match algebra dimension");
    std::vector<Vector> images;
    images.reserve(n);
    for (std::size_t i = 0; i < n; ++i) images.push_back(d.column(i));

    std::vector<LeibnizViolation> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vector ei = Vector::unit(n, i);
            const Vector ej = Vector::unit(n, j);
            Vector residual = d * alg.basis_product(i, j);
            residual -= product(alg, images[i], ej);
            residual -= product(alg, ei, images[j]);
            if (!residual.is_zero()) out.push_back({i, j, std::move(residual)});
        }
    return out;
}

std::vector<Vector> locder_test_vectors(std::size_t dim) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < dim; ++i) out.push_back(Vector::unit(dim, i));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) out.push_back(Vector::unit(dim, i) + Vector::unit(dim, j));
    return out;
}

LinearMapSpace locder_sampling_constraints(const StructureTensor& alg, const LinearMapSpace& der,
                                           std::span<const Vector> extra_vectors) {
    const std::size_t n = alg.dim();
    if (der.ambient() != n) throw InputError("locder_sampling_constraints: dimension mismatch");

    std::vector<Vector> tests = locder_test_vectors(n);
    for (const auto& x : extra_vectors) {
        if (x.dim() != n) throw InputError("locder_sampling_constraints: extra vector has wrong dimension");
        tests.push_back(x);
    }

    RowReducer conditions(n * n);
    for (const auto& x : tests) {
        std::vector<Vector> images;
        for (const auto& d : der.basis()) images.push_back(d * x);
        // Left kernel of [D_1 x | ... | D_k x]: each w gives w^T B x = 0.
        const Matrix known = Matrix::from_columns(images, n);
        for (const auto& w : nullspace(known.transpose())) {
            Vector row(n * n);
            for (std::size_t p = 0; p < n; ++p) {
                if (w[p].is_zero()) continue;
                for (std::size_t q = 0; q < n; ++q)
                    if (!x[q].is_zero()) row[p * n + q] = w[p] * x[q];
            }
            conditions.add(std::move(row));
        }
    }
    return {n, as_matrices(nullspace(conditions.matrix()), n)};
}

namespace {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

MultiPoly determinant(const PolyMatrix& m, std::size_t nvars) {
    const std::size_t k = m.size();
    if (k == 0) return MultiPoly::constant(nvars, 1);
    if (k == 1) return m[0][0];
    MultiPoly total(nvars);
    for (std::size_t c = 0; c < k; ++c) {
        if (m[0][c].is_zero()) continue;
        PolyMatrix minor;
        minor.reserve(k - 1);
        for (std::size_t r = 1; r < k; ++r) {
            std::vector<MultiPoly> row;
            row.reserve(k - 1);
            for (std::size_t cc = 0; cc < k; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            minor.push_back(std::move(row));
        }
        MultiPoly term = m[0][c] * determinant(minor, nvars);
        if (c % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

// Calls f on each size-`choose` subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t choose, F&& f) {
    std::vector<std::size_t> idx(choose);
    for (std::size_t i = 0; i < choose; ++i) idx[i] = i;
    if (choose > n) return;
    while (true) {
        f(idx);
        std::size_t i = choose;
        while (i > 0 && idx[i - 1] == n - choose + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < choose; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

LinearMapSpace locder_minor_constraints(const StructureTensor& alg, const LinearMapSpace& der) {
    const std::size_t n = alg.dim();
    const std::size_t k = der.size();
    if (der.ambient() != n) throw InputError("locder_minor_constraints: dimension mismatch");
    if (k >= n)
        throw MethodError("minor method inapplicable: dim Der = " + std::to_string(k) +
                          " is not smaller than dim A = " + std::to_string(n));

    std::vector<MultiPoly> x;
    for (std::size_t q = 0; q < n; ++q) x.push_back(MultiPoly::variable(n, q));

    // columns[t][r] = (D_t x)_r, linear in x.
    std::vector<std::vector<MultiPoly>> columns(k, std::vector<MultiPoly>(n, MultiPoly(n)));
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t q = 0; q < n; ++q)
                if (!der.basis()[t](r, q).is_zero()) columns[t][r] += der.basis()[t](r, q) * x[q];

    RowReducer conditions(n * n);
    for_each_subset(n, k + 1, [&](const std::vector<std::size_t>& rows) {
        // Expanding along the B column: minor = sum_a (-1)^a (B x)_{rows[a]} * cofactor_a(x),
        // and (B x)_r = sum_q B(r, q) x_q, so B(r, q) carries the polynomial (-1)^a x_q cofactor_a.
        std::map<MultiPoly::monomial_type, Vector, GradLexLess> by_monomial;
        for (std::size_t a = 0; a < rows.size(); ++a) {
            PolyMatrix sub;
            for (std::size_t b = 0; b < rows.size(); ++b) {
                if (b == a) continue;
                std::vector<MultiPoly> row;
                for (std::size_t t = 0; t < k; ++t) row.push_back(columns[t][rows[b]]);
                sub.push_back(std::move(row));
            }
            MultiPoly cofactor = determinant(sub, n);
            if (cofactor.is_zero()) continue;
            if (a % 2 == 1) cofactor = -cofactor;
            for (std::size_t q = 0; q < n; ++q) {
                const MultiPoly coefficient_poly = x[q] * cofactor;
                for (const auto& [mono, c] : coefficient_poly.coefficients()) {
                    auto it = by_monomial.try_emplace(mono, n * n).first;
                    it->second[rows[a] * n + q] += c;
                }
            }
        }
        for (auto& [mono, row] : by_monomial) conditions.add(std::move(row));
    });
    return {n, as_matrices(nullspace(conditions.matrix()), n)};
}

LocDerVerdict certify_locder(const LinearMapSpace& der, const LinearMapSpace& outer) {
    if (der.ambient() != outer.ambient()) throw InputError("certify_locder: ambient dimension mismatch");
    if (der.same_span(outer)) return {LocDerVerdict::Tag::Equal, outer, std::nullopt};
    std::optional<Matrix> witness;
    for (const auto& m : outer.basis())
        if (!der.contains(m)) {
            witness = m;
            break;
        }
    return {LocDerVerdict::Tag::Inconclusive, outer, std::move(witness)};
}

DerivationParams twolocal_der_recover(const Vector& image_of_e2) {
    if (image_of_e2.dim() != 8) throw InputError("twolocal_der_recover: expected an 8-dimensional vector");
    for (std::size_t i = 2; i < 8; ++i)
        if (!image_of_e2[i].is_zero())
            throw RecoveryError("coordinate " + std::to_string(i + 1) +
                                " of Delta(e2) is nonzero; no derivation maps e2 there");
    return {image_of_e2[0], -image_of_e2[1]};
}

TwoLocalDerResult twolocal_der_check(std::span<const MapSample> samples) {
    for (const auto& s : samples)
        if (s.x.dim() != 8 || s.dx.dim() != 8) throw InputError("twolocal_der_check: samples must be 8-dimensional");
    const auto e2 = find_e2_sample(samples, 8);
    if (!e2) throw ProtocolError("no sample at x = e2");

    const DerivationParams params = twolocal_der_recover(samples[*e2].dx);
    const Matrix d = derivation_from_params(params);
    for (std::size_t s = 0; s < samples.size(); ++s) {
        Vector expected = d * samples[s].x;
        if (expected != samples[s].dx) return Counterexample{s, samples[s].x, std::move(expected), samples[s].dx};
    }
    return params;
}

}  // namespace conservkit
