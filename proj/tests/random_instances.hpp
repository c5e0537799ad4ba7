#pragma once

#include "conservkit/algebra.hpp"
#include "conservkit/linalg.hpp"

#include <cstdint>
#include <random>

namespace conservkit::testing {

inline Rational small_rational(std::mt19937_64& rng, int span = 5) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, span);
    return Rational(num(rng), den(rng));
}

inline Rational nonzero_rational(std::mt19937_64& rng, int span = 5) {
    Rational r;
    do r = small_rational(rng, span);
    while (r.is_zero());
    return r;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t dim, int span = 5) {
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = small_rational(rng, span);
    return v;
}

inline Matrix random_int_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
    return m;
}

// Structure constants drawn uniformly from {lo..hi}.
inline StructureTensor random_algebra(std::mt19937_64& rng, std::size_t dim, int lo = -2, int hi = 2) {
    std::uniform_int_distribution<int> dist(lo, hi);
    StructureTensor alg(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) alg(i, j, k) = dist(rng);
    return alg;
}

}  // namespace conservkit::testing
