#pragma once

#include "conservkit/algebra.hpp"
#include "conservkit/automorphisms.hpp"
#include "conservkit/linalg.hpp"
#include "conservkit/maps.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace conservkit::io {

using json = nlohmann::json;

// All parse failures throw InputError with the offending field in the message.

// {"rows": r, "cols": c, "entries": [["p/q", ...], ...]}
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j, std::string_view field);

// {"dim": n, "c": [{"i": 1, "j": 1, "k": 1, "v": "-1"}, ...]}, 1-based and
// sparse; triples not listed are zero. Written in (i, j, k) order.
json algebra_to_json(const StructureTensor& alg);
StructureTensor algebra_from_json(const json& j);

// {"dim": 8, "samples": [{"x": [...], "dx": [...]}, ...]}
json samples_to_json(const std::vector<MapSample>& samples);
std::vector<MapSample> samples_from_json(const json& j);

// "a=1/2,b=3" (either order, whitespace ignored). Throws ParameterError when b = 0.
AutParams parse_aut_params(std::string_view text);

// "1..6" or "1,3,4": 1-based in, 0-based out.
std::vector<std::size_t> parse_span(std::string_view text);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

StructureTensor load_algebra(const std::filesystem::path& path);
Matrix load_matrix(const std::filesystem::path& path);
std::vector<MapSample> load_samples(const std::filesystem::path& path);

}  // namespace conservkit::io
