#include "conservkit/automorphisms.hpp"

#include "conservkit/errors.hpp"

#include <functional>

namespace conservkit {

AutParams::AutParams(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    if (b_.is_zero()) throw ParameterError("automorphism parameter b must be nonzero");
}

std::optional<AutViolation> aut_check(const StructureTensor& alg, const Matrix& m) {
    const std::size_t n = alg.dim();
    if (m.rows() != n || m.cols() != n) throw InputError("aut_check: map does not match algebra dimension");
    if (!invert(m)) return AutViolation{true, 0, 0};

    std::vector<Vector> images;
    images.reserve(n);
    for (std::size_t i = 0; i < n; ++i) images.push_back(m.column(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m * alg.basis_product(i, j) != product(alg, images[i], images[j])) return AutViolation{false, i, j};
    return std::nullopt;
}

Matrix aut_family(const AutParams& p) {
    const Rational& a = p.a();
    const Rational& b = p.b();
    const Rational ab = a * b;
    Matrix m(8, 8);
    m(0, 0) = 1;
    m(0, 1) = a;
    m(1, 1) = b.inverse();
    m(2, 0) = Rational(2) * ab;
    m(2, 1) = a * ab;
    m(2, 2) = b;
    m(3, 0) = Rational(3) * ab * ab;
    m(3, 1) = a * ab * ab;
    m(3, 2) = Rational(3) * ab * b;
    m(3, 3) = b * b;
    m(4, 4) = 1;
    m(5, 4) = -ab;
    m(5, 5) = b;
    m(6, 6) = b;
    m(6, 7) = ab;
    m(7, 7) = 1;
    return m;
}

std::vector<std::vector<LaurentPoly>> aut_family_symbolic() {
    auto mono = [](std::int64_t c, int ea, int eb) { return LaurentPoly::term({ea, eb}, Rational(c)); };
    std::vector<std::vector<LaurentPoly>> f(8, std::vector<LaurentPoly>(8, LaurentPoly(2)));
    f[0][0] = mono(1, 0, 0);
    f[0][1] = mono(1, 1, 0);
    f[1][1] = mono(1, 0, -1);
    f[2][0] = mono(2, 1, 1);
    f[2][1] = mono(1, 2, 1);
    f[2][2] = mono(1, 0, 1);
    f[3][0] = mono(3, 2, 2);
    f[3][1] = mono(1, 3, 2);
    f[3][2] = mono(3, 1, 2);
    f[3][3] = mono(1, 0, 2);
    f[4][4] = mono(1, 0, 0);
    f[5][4] = mono(-1, 1, 1);
    f[5][5] = mono(1, 0, 1);
    f[6][6] = mono(1, 0, 1);
    f[6][7] = mono(1, 1, 1);
    f[7][7] = mono(1, 0, 0);
    return f;
}

std::vector<std::vector<LaurentPoly>> leading_block(const std::vector<std::vector<LaurentPoly>>& family,
                                                    std::size_t dim) {
    if (dim > family.size()) throw InputError("leading_block: block larger than family");
    std::vector<std::vector<LaurentPoly>> out(dim);
    for (std::size_t r = 0; r < dim; ++r) out[r].assign(family[r].begin(), family[r].begin() + static_cast<std::ptrdiff_t>(dim));
    return out;
}

FamilyCertificate family_verify_symbolic(const StructureTensor& alg,
                                         const std::vector<std::vector<LaurentPoly>>& family) {
    const std::size_t n = alg.dim();
    if (family.size() != n) throw InputError("family_verify_symbolic: family size does not match algebra");
    for (const auto& row : family)
        if (row.size() != n) throw InputError("family_verify_symbolic: family is not square");
    const std::size_t nvars = n == 0 ? 0 : family[0][0].nvars();

    FamilyCertificate cert;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // phi(e_i) phi(e_j), accumulated over nonzero entries of both columns.
            std::vector<LaurentPoly> rhs(n, LaurentPoly(nvars));
            for (std::size_t p = 0; p < n; ++p) {
                if (family[p][i].is_zero()) continue;
                for (std::size_t q = 0; q < n; ++q) {
                    if (family[q][j].is_zero()) continue;
                    const LaurentPoly coeff = family[p][i] * family[q][j];
                    for (std::size_t k = 0; k < n; ++k)
                        if (!alg(p, q, k).is_zero()) rhs[k] += alg(p, q, k) * coeff;
                }
            }
            for (std::size_t k = 0; k < n; ++k) {
                // phi(e_i e_j)_k
                LaurentPoly residual(nvars);
                for (std::size_t l = 0; l < n; ++l)
                    if (!alg(i, j, l).is_zero()) residual += alg(i, j, l) * family[k][l];
                residual -= rhs[k];
                ++cert.checked;
                if (!residual.is_zero()) cert.nonzero.push_back({i, j, k, std::move(residual)});
            }
        }
    return cert;
}

AutParams recover_aut_params(const Vector& image_of_e2) {
    if (image_of_e2.dim() != 8) throw InputError("recover_aut_params: expected an 8-dimensional vector");
    const Vector& v = image_of_e2;
    if (v[1].is_zero()) throw RecoveryError("coordinate 2 of Delta(e2) is zero; no admissible b");
    AutParams p(v[0], v[1].inverse());
    const Vector expected = aut_family(p) * Vector::unit(8, 1);
    for (std::size_t i = 2; i < 8; ++i)
        if (v[i] != expected[i])
            throw RecoveryError("coordinate " + std::to_string(i + 1) + " of Delta(e2) is " + v[i].str() +
                                ", expected " + expected[i].str() + " for a = " + p.a().str() +
                                ", b = " + p.b().str());
    return p;
}

namespace {

// What a single column of a family member pins down. Columns e1, e5 and e8
// only see the product ab, column e4 only sees b^2.
struct ColumnParams {
    std::optional<Rational> a;
    std::optional<Rational> b;
    std::optional<Rational> b_squared;
    std::optional<Rational> ab;
};

// Parameter-carrying entries only; constants and the zero pattern are left to
// the final entrywise comparison. Returns an explanation on failure.
std::optional<std::string> solve_column(const Matrix& m, std::size_t c, ColumnParams& out) {
    auto nonzero = [&](std::size_t r) -> std::optional<std::string> {
        if (m(r, c).is_zero())
            return "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") must be nonzero";
        return std::nullopt;
    };
    switch (c) {
        case 0: {
            out.ab = m(2, 0) / Rational(2);
            if (m(3, 0) != Rational(3) * *out.ab * *out.ab) return "entries (3,1), (4,1) violate 3(ab)^2 = (4,1)";
            return std::nullopt;
        }
        case 1: {
            if (auto err = nonzero(1)) return err;
            out.a = m(0, 1);
            out.b = m(1, 1).inverse();
            const Rational ab = *out.a * *out.b;
            if (m(2, 1) != *out.a * ab) return "entry (3,2) differs from a^2 b";
            if (m(3, 1) != *out.a * ab * ab) return "entry (4,2) differs from a^3 b^2";
            out.ab = ab;
            return std::nullopt;
        }
        case 2: {
            if (auto err = nonzero(2)) return err;
            out.b = m(2, 2);
            out.a = m(3, 2) / (Rational(3) * *out.b * *out.b);
            out.ab = *out.a * *out.b;
            return std::nullopt;
        }
        case 3: {
            if (auto err = nonzero(3)) return err;
            if (!m(3, 3).sqrt()) return "entry (4,4) is not the square of a rational";
            out.b_squared = m(3, 3);
            return std::nullopt;
        }
        case 4:
            out.ab = -m(5, 4);
            return std::nullopt;
        case 5:
            if (auto err = nonzero(5)) return err;
            out.b = m(5, 5);
            return std::nullopt;
        case 6:
            if (auto err = nonzero(6)) return err;
            out.b = m(6, 6);
            return std::nullopt;
        case 7:
            out.ab = m(6, 7);
            return std::nullopt;
        default:
            return "column out of range";
    }
}

struct AdditivityRelation {
    const char* name;
    std::function<bool(const std::vector<ColumnParams>&)> holds;
};

const std::vector<AdditivityRelation>& additivity_relations() {
    static const std::vector<AdditivityRelation> relations{
        {"b_e2 = b_e3 = b_e6 = b_e7 [test vectors e6+e7, e3+e6, e2+e6]",
         [](const auto& p) { return *p[1].b == *p[2].b && *p[2].b == *p[5].b && *p[5].b == *p[6].b; }},
        {"a_e1 b_e1 = a_e5 b_e5 = a_e8 b_e8 [test vectors e5+e8, e1+e8]",
         [](const auto& p) { return *p[0].ab == *p[4].ab && *p[4].ab == *p[7].ab; }},
        {"b_e4^2 = b_e2^2 [test vector e4+e6]",
         [](const auto& p) { return *p[3].b_squared == *p[1].b * *p[1].b; }},
        {"a_e2 b_e2 = a_e8 b_e8 [test vector e2+e8]",
         [](const auto& p) { return *p[1].ab == *p[7].ab; }},
        {"a_e2 b_e2^2 = a_e3 b_e3^2 [test vector e2+e3]",
         [](const auto& p) { return *p[1].ab * *p[1].b == *p[2].ab * *p[2].b; }},
        {"a_e1 b_e1 = a_e2 b_e2 [test vector e1+e8]",
         [](const auto& p) { return *p[0].ab == *p[1].ab; }},
    };
    return relations;
}

}  // namespace

AutVerdict local_aut_detect(const StructureTensor& alg, const Matrix& m) {
    if (alg.dim() != 8 || m.rows() != 8 || m.cols() != 8)
        throw InputError("local_aut_detect: expects W(2) and an 8 x 8 matrix");

    std::vector<ColumnParams> params(8);
    for (std::size_t c = 0; c < 8; ++c)
        if (auto failure = solve_column(m, c, params[c]))
            return NotAutomorphism{c, "no admissible (a, b) for column e" + std::to_string(c + 1) + ": " + *failure};

    for (const auto& relation : additivity_relations())
        if (!relation.holds(params)) return NotInFamily{relation.name};

    const AutParams candidate(*params[1].a, *params[1].b);
    const Matrix expected = aut_family(candidate);
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c)
            if (m(r, c) != expected(r, c))
                return NotInFamily{"entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") is " +
                                   m(r, c).str() + ", family member (a, b) = (" + candidate.a().str() + ", " +
                                   candidate.b().str() + ") has " + expected(r, c).str()};

    if (auto violation = aut_check(alg, m))
        return NotAutomorphism{violation->i, "family member fails multiplicativity at (e" +
                                                 std::to_string(violation->i + 1) + ", e" +
                                                 std::to_string(violation->j + 1) + ") in the given algebra"};
    return IsAutomorphism{candidate};
}

TwoLocalAutResult twolocal_aut_check(std::span<const MapSample> samples) {
    for (const auto& s : samples)
        if (s.x.dim() != 8 || s.dx.dim() != 8) throw InputError("twolocal_aut_check: samples must be 8-dimensional");
    const auto e2 = find_e2_sample(samples, 8);
    if (!e2) throw ProtocolError("no sample at x = e2");

    const AutParams params = recover_aut_params(samples[*e2].dx);
    const Matrix phi = aut_family(params);
    for (std::size_t s = 0; s < samples.size(); ++s) {
        Vector expected = phi * samples[s].x;
        if (expected != samples[s].dx) return Counterexample{s, samples[s].x, std::move(expected), samples[s].dx};
    }
    return params;
}

}  // namespace conservkit
