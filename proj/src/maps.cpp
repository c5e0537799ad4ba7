#include "conservkit/maps.hpp"

namespace conservkit {

std::optional<std::size_t> find_e2_sample(std::span<const MapSample> samples, std::size_t dim) {
    const Vector e2 = Vector::unit(dim, 1);
    for (std::size_t s = 0; s < samples.size(); ++s)
        if (samples[s].x == e2) return s;
    return std::nullopt;
}

}  // namespace conservkit
