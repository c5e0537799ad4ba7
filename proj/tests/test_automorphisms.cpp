#include "conservkit/automorphisms.hpp"
#include "conservkit/errors.hpp"
#include "random_instances.hpp"

#include <doctest.h>

using namespace conservkit;

namespace {

AutParams random_params(std::mt19937_64& rng) {
    return {testing::small_rational(rng), testing::nonzero_rational(rng)};
}

// Direct multiplicativity check, independent of aut_check.
bool multiplicative_direct(const StructureTensor& alg, const Matrix& m) {
    const std::size_t n = alg.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vector lhs(n), rhs(n);
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t k = 0; k < n; ++k) lhs[k] += alg(i, j, l) * m(k, l);
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    const Rational w = m(p, i) * m(q, j);
                    if (w.is_zero()) continue;
                    for (std::size_t k = 0; k < n; ++k) rhs[k] += w * alg(p, q, k);
                }
            if (lhs != rhs) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("aut_check examples") {
    CHECK_FALSE(aut_check(kantor_w2(), Matrix::identity(8)).has_value());

    Matrix swap = Matrix::identity(8);
    swap(0, 0) = 0;
    swap(1, 1) = 0;
    swap(0, 1) = 1;
    swap(1, 0) = 1;
    const auto v = aut_check(kantor_w2(), swap);
    REQUIRE(v.has_value());
    CHECK_FALSE(v->singular);
    CHECK(v->i == 0);
    CHECK(v->j == 0);

    const auto singular = aut_check(kantor_w2(), Matrix(8, 8));
    REQUIRE(singular.has_value());
    CHECK(singular->singular);

    CHECK_FALSE(aut_check(kantor_w2(), aut_family({Rational(1, 2), 3})).has_value());
    CHECK_THROWS_AS(aut_check(kantor_w2(), Matrix::identity(3)), InputError);
}

TEST_CASE("aut_family examples") {
    CHECK(aut_family({0, 1}) == Matrix::identity(8));
    const Matrix m = aut_family({1, 1});
    CHECK(m.row(2) == Vector{2, 1, 1, 0, 0, 0, 0, 0});
    CHECK(m.row(3) == Vector{3, 1, 3, 1, 0, 0, 0, 0});
    CHECK(m.row(6) == Vector{0, 0, 0, 0, 0, 0, 1, 1});
    CHECK(m(1, 1) == Rational(1));
    CHECK(aut_family({0, 2})(1, 1) == Rational(1, 2));
    CHECK_THROWS_AS(AutParams(1, 0), ParameterError);
}

TEST_CASE("aut_family members are automorphisms (direct check)") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 25; ++t) {
        const Matrix m = aut_family(random_params(rng));
        CHECK(multiplicative_direct(kantor_w2(), m));
        CHECK(invert(m).has_value());
    }
}

TEST_CASE("symbolic family certification") {
    const auto family = aut_family_symbolic();
    const FamilyCertificate cert = family_verify_symbolic(kantor_w2(), family);
    CHECK(cert.checked == 512);
    CHECK(cert.nonzero.empty());

    // Symbolic entries evaluate to the numeric family.
    std::mt19937_64 rng(59);
    for (int t = 0; t < 10; ++t) {
        const AutParams p = random_params(rng);
        const Vector point{p.a(), p.b()};
        const Matrix numeric = aut_family(p);
        for (std::size_t r = 0; r < 8; ++r)
            for (std::size_t c = 0; c < 8; ++c) CHECK(family[r][c].evaluate(point) == numeric(r, c));
    }

    // Replacing ab by a at (7,8) breaks multiplicativity.
    auto faulty = family;
    faulty[6][7] = LaurentPoly::variable(2, 0);
    CHECK_FALSE(family_verify_symbolic(kantor_w2(), faulty).nonzero.empty());

    const FamilyCertificate s2 = family_verify_symbolic(traceless_s2(), leading_block(family, 4));
    CHECK(s2.checked == 64);
    CHECK(s2.nonzero.empty());

    CHECK_THROWS_AS(family_verify_symbolic(traceless_s2(), family), InputError);
}

TEST_CASE("recover_aut_params") {
    CHECK(recover_aut_params(aut_family({Rational(2, 3), -4}).column(1)) == AutParams(Rational(2, 3), -4));
    CHECK(recover_aut_params(Vector::unit(8, 1)) == AutParams(0, 1));
    CHECK_THROWS_AS(recover_aut_params(Vector::unit(8, 0)), RecoveryError);
    Vector off = aut_family({1, 2}).column(1);
    off[4] = 1;
    CHECK_THROWS_AS(recover_aut_params(off), RecoveryError);
    CHECK_THROWS_AS(recover_aut_params(Vector(3)), InputError);
}

TEST_CASE("local_aut_detect examples") {
    const auto id = local_aut_detect(kantor_w2(), Matrix::identity(8));
    REQUIRE(std::holds_alternative<IsAutomorphism>(id));
    CHECK(std::get<IsAutomorphism>(id).params == AutParams(0, 1));

    const AutParams p(Rational(-3, 2), Rational(5, 7));
    const auto round = local_aut_detect(kantor_w2(), aut_family(p));
    REQUIRE(std::holds_alternative<IsAutomorphism>(round));
    CHECK(std::get<IsAutomorphism>(round).params == p);

    Matrix perturbed = aut_family(p);
    perturbed(0, 2) += 1;
    CHECK(std::holds_alternative<NotInFamily>(local_aut_detect(kantor_w2(), perturbed)));

    // Mismatched b between columns e2 and e6.
    Matrix mixed = aut_family({1, 2});
    mixed(5, 5) = 3;
    const auto verdict = local_aut_detect(kantor_w2(), mixed);
    REQUIRE(std::holds_alternative<NotInFamily>(verdict));
    CHECK(std::get<NotInFamily>(verdict).relation.find("e6+e7") != std::string::npos);

    // b^2 = 2 has no rational solution.
    Matrix irrational = Matrix::identity(8);
    irrational(3, 3) = 2;
    const auto no_sqrt = local_aut_detect(kantor_w2(), irrational);
    REQUIRE(std::holds_alternative<NotAutomorphism>(no_sqrt));
    CHECK(std::get<NotAutomorphism>(no_sqrt).column == 3);

    CHECK(std::holds_alternative<NotAutomorphism>(local_aut_detect(kantor_w2(), Matrix(8, 8))));
    CHECK_THROWS_AS(local_aut_detect(traceless_s2(), Matrix::identity(4)), InputError);
}

TEST_CASE("single-entry perturbations are never automorphisms") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 40; ++t) {
        const AutParams p = random_params(rng);
        Matrix m = aut_family(p);
        std::uniform_int_distribution<std::size_t> idx(0, 7);
        const std::size_t r = idx(rng), c = idx(rng);
        m(r, c) += testing::nonzero_rational(rng);
        CHECK_FALSE(std::holds_alternative<IsAutomorphism>(local_aut_detect(kantor_w2(), m)));
    }
}

TEST_CASE("family is closed under composition and inversion") {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 20; ++t) {
        const Matrix x = aut_family(random_params(rng)), y = aut_family(random_params(rng));
        const auto prod = local_aut_detect(kantor_w2(), x * y);
        REQUIRE(std::holds_alternative<IsAutomorphism>(prod));
        CHECK(aut_family(std::get<IsAutomorphism>(prod).params) == x * y);
        const auto inv = invert(x);
        REQUIRE(inv.has_value());
        CHECK(std::holds_alternative<IsAutomorphism>(local_aut_detect(kantor_w2(), *inv)));
    }
}

TEST_CASE("twolocal_aut_check") {
    const AutParams p(Rational(1, 3), -2);
    const Matrix phi = aut_family(p);
    std::mt19937_64 rng(71);
    std::vector<MapSample> samples;
    samples.push_back({Vector::unit(8, 1), phi * Vector::unit(8, 1)});
    for (int t = 0; t < 4; ++t) {
        const Vector x = testing::random_vector(rng, 8);
        samples.push_back({x, phi * x});
    }
    const auto ok = twolocal_aut_check(samples);
    REQUIRE(std::holds_alternative<AutParams>(ok));
    CHECK(std::get<AutParams>(ok) == p);

    samples[3].dx[7] += 1;
    const auto bad = twolocal_aut_check(samples);
    REQUIRE(std::holds_alternative<Counterexample>(bad));
    CHECK(std::get<Counterexample>(bad).sample_index == 3);

    const std::vector<MapSample> no_e2(samples.begin() + 1, samples.end());
    CHECK_THROWS_AS(twolocal_aut_check(no_e2), ProtocolError);
}
