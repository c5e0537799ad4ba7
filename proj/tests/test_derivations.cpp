#include "conservkit/derivations.hpp"
#include "conservkit/errors.hpp"
#include "random_instances.hpp"

#include <doctest.h>

using namespace conservkit;

namespace {

Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

// Positions (row, column), 1-based, that a derivation of W(2) may occupy.
const std::vector<std::pair<std::size_t, std::size_t>> kDerPattern = {
    {1, 2}, {2, 2}, {3, 1}, {3, 3}, {4, 3}, {4, 4}, {6, 5}, {6, 6}, {7, 7}, {7, 8}};

bool in_pattern(std::size_t r, std::size_t c) {
    for (const auto& [pr, pc] : kDerPattern)
        if (pr == r + 1 && pc == c + 1) return true;
    return false;
}

// Direct Leibniz check on coordinates, independent of leibniz_residual.
bool is_derivation_direct(const StructureTensor& alg, const Matrix& d) {
    const std::size_t n = alg.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Rational lhs, rhs;
                for (std::size_t m = 0; m < n; ++m) lhs += alg(i, j, m) * d(k, m);
                for (std::size_t p = 0; p < n; ++p) rhs += d(p, i) * alg(p, j, k) + d(p, j) * alg(i, p, k);
                if (lhs != rhs) return false;
            }
    return true;
}

StructureTensor unit_idempotent_plus_null() {
    // e1 e1 = e1, every other product zero.
    StructureTensor alg(2);
    alg(0, 0, 0) = 1;
    return alg;
}

std::vector<const StructureTensor*> named_algebras() {
    return {&kantor_w2(), &commutative_w2(), &traceless_s2()};
}

}  // namespace

TEST_CASE("Der(W(2)) is the two-parameter family") {
    const LinearMapSpace der = derivation_space(kantor_w2());
    CHECK(der.size() == 2);
    const std::vector<Matrix> family = {derivation_from_params({1, 0}), derivation_from_params({0, 1})};
    CHECK(der.same_span(LinearMapSpace(8, family)));
    for (const Matrix& d : der.basis())
        for (std::size_t r = 0; r < 8; ++r)
            for (std::size_t c = 0; c < 8; ++c)
                if (!in_pattern(r, c)) CHECK(d(r, c).is_zero());
}

TEST_CASE("derivation_space examples") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const LinearMapSpace der = derivation_space(StructureTensor(n));
        CHECK(der.size() == n * n);
        CHECK(der.same_span(LinearMapSpace::full(n)));
    }

    // Brute force over a small integer grid: every solution lies in span{E22}.
    const StructureTensor alg = unit_idempotent_plus_null();
    std::vector<Matrix> found;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c)
                for (int d = -1; d <= 1; ++d) {
                    const Matrix m{{a, b}, {c, d}};
                    if (is_derivation_direct(alg, m)) found.push_back(m);
                }
    const LinearMapSpace grid = LinearMapSpace::span_of(2, found);
    const LinearMapSpace der = derivation_space(alg);
    CHECK(der.size() == 1);
    CHECK(der.same_span(grid));
    CHECK(der.contains(Matrix{{0, 0}, {0, 1}}));
}

TEST_CASE("derivation_space agrees with a direct Leibniz check on random algebras") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 30; ++t) {
        const StructureTensor alg = testing::random_algebra(rng, 3, -1, 1);
        const LinearMapSpace der = derivation_space(alg);
        for (const Matrix& d : der.basis()) CHECK(is_derivation_direct(alg, d));
        // Anything outside the solution space fails the direct check.
        if (der.size() < 9) {
            Matrix probe;
            do probe = testing::random_int_matrix(rng, 3, 3, -2, 2);
            while (der.contains(probe));
            CHECK_FALSE(is_derivation_direct(alg, probe));
        }
    }
}

TEST_CASE("derivation_from_params") {
    CHECK(derivation_from_params({0, 0}).is_zero());
    const Matrix d = derivation_from_params({1, 0});
    CHECK(d(2, 0) == Rational(2));
    CHECK(d(0, 1) == Rational(1));
    CHECK(d(3, 2) == Rational(3));
    CHECK(d(5, 4) == Rational(-1));
    CHECK(d(6, 7) == Rational(1));

    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
        const Rational a = testing::small_rational(rng), b = testing::small_rational(rng);
        const Rational a2 = testing::small_rational(rng), b2 = testing::small_rational(rng);
        CHECK(derivation_from_params({a + a2, b + b2}) ==
              derivation_from_params({a, b}) + derivation_from_params({a2, b2}));
        CHECK(leibniz_residual(kantor_w2(), derivation_from_params({a, b})).empty());
    }
}

TEST_CASE("leibniz_residual") {
    CHECK(leibniz_residual(kantor_w2(), Matrix(8, 8)).empty());
    const auto identity = leibniz_residual(kantor_w2(), Matrix::identity(8));
    REQUIRE_FALSE(identity.empty());
    // I(e1 e1) - 2 e1 e1 = -e1 e1.
    CHECK(identity.front().i == 0);
    CHECK(identity.front().j == 0);
    CHECK(identity.front().residual == Rational(-1) * kantor_w2().basis_product(0, 0));
    CHECK_THROWS_AS(leibniz_residual(kantor_w2(), Matrix::identity(3)), InputError);
}

TEST_CASE("Der is closed under the commutator") {
    auto check_closure = [](const StructureTensor& alg) {
        const LinearMapSpace der = derivation_space(alg);
        for (const Matrix& x : der.basis())
            for (const Matrix& y : der.basis()) {
                const Matrix bracket = commutator(x, y);
                CHECK(leibniz_residual(alg, bracket).empty());
                CHECK(der.contains(bracket));
            }
    };
    for (const StructureTensor* alg : named_algebras()) check_closure(*alg);

    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) check_closure(testing::random_algebra(rng, 3));
    // Sparse instances have larger derivation spaces.
    for (int t = 0; t < 20; ++t) {
        StructureTensor alg(3);
        std::uniform_int_distribution<std::size_t> idx(0, 2);
        std::uniform_int_distribution<int> val(-1, 1);
        for (int s = 0; s < 3; ++s) alg(idx(rng), idx(rng), idx(rng)) = val(rng);
        check_closure(alg);
    }
}

TEST_CASE("locder test vectors") {
    const auto vs = locder_test_vectors(3);
    REQUIRE(vs.size() == 6);
    CHECK(vs[0] == Vector{1, 0, 0});
    CHECK(vs[3] == Vector{1, 1, 0});
    CHECK(vs[4] == Vector{1, 0, 1});
    CHECK(vs[5] == Vector{0, 1, 1});
    CHECK(locder_test_vectors(8).size() == 36);
}

TEST_CASE("outer approximations on W(2)") {
    const LinearMapSpace der = derivation_space(kantor_w2());
    const LinearMapSpace sampled = locder_sampling_constraints(kantor_w2(), der);
    const LinearMapSpace minors = locder_minor_constraints(kantor_w2(), der);
    CHECK(sampled.size() == 2);
    CHECK(minors.size() == 2);
    CHECK(sampled.same_span(der));
    CHECK(minors.same_span(der));

    const LocDerVerdict v = certify_locder(der, intersect(sampled, minors));
    CHECK(v.tag == LocDerVerdict::Tag::Equal);
    CHECK_FALSE(v.witness.has_value());
}

TEST_CASE("outer approximations on the subalgebras") {
    for (const StructureTensor* alg : {&commutative_w2(), &traceless_s2()}) {
        const LinearMapSpace der = derivation_space(*alg);
        CHECK(certify_locder(der, locder_sampling_constraints(*alg, der)).tag == LocDerVerdict::Tag::Equal);
        CHECK(certify_locder(der, locder_minor_constraints(*alg, der)).tag == LocDerVerdict::Tag::Equal);
    }
}

TEST_CASE("outer approximation edge cases") {
    // Der = 0: both constraints force B = 0.
    StructureTensor idem(1);
    idem(0, 0, 0) = 1;
    const LinearMapSpace none = derivation_space(idem);
    CHECK(none.size() == 0);
    CHECK(locder_sampling_constraints(idem, none).size() == 0);
    CHECK(locder_minor_constraints(idem, none).size() == 0);

    // Der = End(V) leaves no nontrivial minors.
    const StructureTensor zero(2);
    const LinearMapSpace all = derivation_space(zero);
    CHECK_THROWS_AS(locder_minor_constraints(zero, all), MethodError);
    CHECK(locder_sampling_constraints(zero, all).same_span(all));
}

TEST_CASE("outer approximations contain Der on random algebras") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 15; ++t) {
        const StructureTensor alg = testing::random_algebra(rng, 3);
        const LinearMapSpace der = derivation_space(alg);
        CHECK(locder_sampling_constraints(alg, der).contains(der));
        if (der.size() < 3) CHECK(locder_minor_constraints(alg, der).contains(der));
    }
}

TEST_CASE("certify_locder") {
    const LinearMapSpace der(2, {Matrix{{1, 0}, {0, 0}}});
    CHECK(certify_locder(der, der).tag == LocDerVerdict::Tag::Equal);
    const LocDerVerdict loose = certify_locder(der, LinearMapSpace::full(2));
    CHECK(loose.tag == LocDerVerdict::Tag::Inconclusive);
    REQUIRE(loose.witness.has_value());
    CHECK_FALSE(der.contains(*loose.witness));
}

TEST_CASE("twolocal_der_recover") {
    CHECK(twolocal_der_recover(Vector{3, -5, 0, 0, 0, 0, 0, 0}) == DerivationParams{3, 5});
    CHECK(twolocal_der_recover(Vector(8)) == DerivationParams{0, 0});
    CHECK_THROWS_AS(twolocal_der_recover(Vector{1, 1, 1, 0, 0, 0, 0, 0}), RecoveryError);
    CHECK_THROWS_AS(twolocal_der_recover(Vector{1, 1}), InputError);
}

TEST_CASE("twolocal_der_check") {
    const Matrix d = derivation_from_params({2, 7});
    std::vector<MapSample> samples;
    std::mt19937_64 rng(43);
    for (int t = 0; t < 3; ++t) {
        const Vector x = testing::random_vector(rng, 8);
        samples.push_back({x, d * x});
    }
    samples.push_back({Vector::unit(8, 1), d * Vector::unit(8, 1)});

    const auto ok = twolocal_der_check(samples);
    REQUIRE(std::holds_alternative<DerivationParams>(ok));
    CHECK(std::get<DerivationParams>(ok) == DerivationParams{2, 7});

    samples.push_back({Vector::unit(8, 0), d * Vector::unit(8, 0) + Vector::unit(8, 0)});
    const auto bad = twolocal_der_check(samples);
    REQUIRE(std::holds_alternative<Counterexample>(bad));
    CHECK(std::get<Counterexample>(bad).sample_index == 4);

    const std::vector<MapSample> no_e2(samples.begin(), samples.begin() + 3);
    CHECK_THROWS_AS(twolocal_der_check(no_e2), ProtocolError);
}
