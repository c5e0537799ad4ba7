#include "conservkit/errors.hpp"
#include "conservkit/linalg.hpp"
#include "random_instances.hpp"

#include <doctest.h>

using namespace conservkit;

TEST_CASE("rationals are normalized") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational(0, 7).denominator() == 1);
    CHECK(Rational::parse("-6/4") == Rational(-3, 2));
    CHECK(Rational::parse("+5").str() == "5");
    CHECK(Rational::parse("10/5").str() == "2");
}

TEST_CASE("rational parse errors") {
    CHECK_THROWS_AS(Rational::parse("1/0"), InputError);
    CHECK_THROWS_AS(Rational::parse(""), InputError);
    CHECK_THROWS_AS(Rational::parse("1.5"), InputError);
    CHECK_THROWS_AS(Rational::parse("3/-2"), InputError);
    CHECK_THROWS_AS(Rational::parse("/2"), InputError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
}

TEST_CASE("rational square roots") {
    CHECK(Rational(9, 4).sqrt() == Rational(3, 2));
    CHECK_FALSE(Rational(2).sqrt().has_value());
    CHECK_FALSE(Rational(-4).sqrt().has_value());
    CHECK(Rational(0).sqrt() == Rational(0));
}

TEST_CASE("rref examples") {
    SUBCASE("identity is already reduced") {
        const auto [m, pivots] = rref(Matrix::identity(3));
        CHECK(m == Matrix::identity(3));
        CHECK(pivots == std::vector<std::size_t>{0, 1, 2});
    }
    SUBCASE("rank-one 2x2") {
        const auto [m, pivots] = rref(Matrix{{2, 4}, {1, 2}});
        CHECK(m == Matrix{{1, 2}, {0, 0}});
        CHECK(pivots == std::vector<std::size_t>{0});
    }
    SUBCASE("zero matrix has no pivots") {
        const auto [m, pivots] = rref(Matrix(2, 3));
        CHECK(m.is_zero());
        CHECK(pivots.empty());
    }
}

TEST_CASE("nullspace examples") {
    CHECK(nullspace(Matrix::identity(4)).empty());
    CHECK(nullspace(Matrix(2, 3)).size() == 3);

    // x + y = 0: free columns 1 and 2 in increasing order.
    const auto basis = nullspace(Matrix{{1, 1, 0}});
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == Vector{-1, 1, 0});
    CHECK(basis[1] == Vector{0, 0, 1});
}

TEST_CASE("rank examples") {
    CHECK(rank(Matrix::identity(4)) == 4);
    CHECK(rank(Matrix(3, 5)) == 0);
    CHECK(rank(Matrix{{1, 2}, {2, 4}}) == 1);
}

TEST_CASE("solve examples") {
    const Vector b{Rational(3), Rational(-1, 2), Rational(7)};
    CHECK(solve(Matrix::identity(3), b) == b);
    // Free variable y set to zero.
    CHECK(solve(Matrix{{1, 1}}, Vector{2}) == Vector{2, 0});
    CHECK_FALSE(solve(Matrix{{0}}, Vector{1}).has_value());
    CHECK_THROWS_AS(solve(Matrix::identity(2), Vector{1, 2, 3}), InputError);
}

TEST_CASE("invert examples") {
    CHECK(invert(Matrix::identity(3)) == Matrix::identity(3));
    CHECK(invert(Matrix{{2, 0}, {0, 3}}) == Matrix{{Rational(1, 2), 0}, {0, Rational(1, 3)}});
    CHECK_FALSE(invert(Matrix{{1, 1}, {1, 1}}).has_value());
    CHECK_THROWS_AS(invert(Matrix(2, 3)), InputError);
}

TEST_CASE("elimination invariants on random matrices") {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 6);
        const std::size_t rows = dim(rng), cols = dim(rng);
        // Narrow entry range so rank deficiency is common.
        const Matrix m = testing::random_int_matrix(rng, rows, cols, -1, 1);

        const auto kernel = nullspace(m);
        for (const auto& v : kernel) CHECK((m * v).is_zero());
        CHECK(rank(m) + kernel.size() == cols);

        const auto reduced = rref(m).reduced;
        CHECK(rref(reduced).reduced == reduced);

        if (m.is_square()) {
            const auto inv = invert(m);
            CHECK(inv.has_value() == (rank(m) == rows));
            if (inv) {
                CHECK(m * *inv == Matrix::identity(rows));
                CHECK(*inv * m == Matrix::identity(rows));
            }
        }

        const Vector b = testing::random_vector(rng, rows);
        if (const auto x = solve(m, b)) CHECK(m * *x == b);
        // A right-hand side built from a known x is always consistent.
        const Vector reachable = m * testing::random_vector(rng, cols);
        const auto x = solve(m, reachable);
        REQUIRE(x.has_value());
        CHECK(m * *x == reachable);
    }
}

TEST_CASE("row reducer tracks rank") {
    RowReducer reducer(3);
    CHECK(reducer.add(Vector{1, 2, 3}));
    CHECK_FALSE(reducer.add(Vector{2, 4, 6}));
    CHECK(reducer.add(Vector{0, 1, 1}));
    CHECK_FALSE(reducer.add(Vector{1, 3, 4}));
    CHECK_FALSE(reducer.add(Vector(3)));
    CHECK(reducer.rank() == 2);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix m = testing::random_int_matrix(rng, 7, 5, -1, 1);
        RowReducer r(5);
        for (std::size_t i = 0; i < m.rows(); ++i) r.add(m.row(i));
        CHECK(r.rank() == rank(m));
        CHECK(nullspace(r.matrix()) == nullspace(m));
    }
}
