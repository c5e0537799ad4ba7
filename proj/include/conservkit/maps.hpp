#pragma once

#include "conservkit/linalg.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace conservkit {

// One observation (x, Delta(x)) of a possibly nonlinear map.
struct MapSample {
    Vector x;
    Vector dx;
};

// A sample whose observed image disagrees with the recovered map.
struct Counterexample {
    std::size_t sample_index;
    Vector x;
    Vector expected;
    Vector observed;
};

// Index of the first sample taken at x = e2, if any.
std::optional<std::size_t> find_e2_sample(std::span<const MapSample> samples, std::size_t dim);

}  // namespace conservkit
