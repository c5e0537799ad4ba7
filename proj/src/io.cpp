#include "conservkit/io.hpp"

#include "conservkit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace conservkit::io {

namespace {

Rational rational_field(const json& j, const std::string& field) {
    if (!j.is_string()) throw InputError(field + ": expected a rational string such as \"-3/2\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const InputError& e) {
        throw InputError(field + ": " + e.what());
    }
}

std::size_t positive_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw InputError(where + "." + key + ": expected a positive integer");
    return v.get<std::size_t>();
}

const json& array_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw InputError(where + ": expected a JSON object");
    if (!obj.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_array()) throw InputError(where + "." + key + ": expected an array");
    return v;
}

std::string trim(std::string_view s) {
    std::string out;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
    return out;
}

std::size_t parse_index(const std::string& s, std::string_view context) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        throw InputError("malformed index '" + s + "' in '" + std::string(context) + "'");
    const std::size_t v = std::stoul(s);
    if (v == 0) throw InputError("indices are 1-based: '" + std::string(context) + "'");
    return v - 1;
}

}  // namespace

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (const auto& x : v.entries()) arr.push_back(x.str());
    return arr;
}

Vector vector_from_json(const json& j, std::string_view field) {
    const std::string where(field);
    if (!j.is_array()) throw InputError(where + ": expected an array of rational strings");
    Vector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = rational_field(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

json matrix_to_json(const Matrix& m) {
    json entries = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) entries.push_back(vector_to_json(m.row(r)));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Matrix matrix_from_json(const json& j) {
    const json& entries = array_field(j, "entries", "matrix");
    const std::size_t rows = positive_field(j, "rows", "matrix");
    const std::size_t cols = positive_field(j, "cols", "matrix");
    if (entries.size() != rows)
        throw InputError("matrix.entries: expected " + std::to_string(rows) + " rows, found " +
                         std::to_string(entries.size()));
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const Vector row = vector_from_json(entries[r], "matrix.entries[" + std::to_string(r) + "]");
        if (row.dim() != cols)
            throw InputError("matrix.entries[" + std::to_string(r) + "]: expected " + std::to_string(cols) +
                             " entries, found " + std::to_string(row.dim()));
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
    }
    return m;
}

json algebra_to_json(const StructureTensor& alg) {
    json c = json::array();
    const std::size_t n = alg.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!alg(i, j, k).is_zero())
                    c.push_back(json{{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"v", alg(i, j, k).str()}});
    return json{{"dim", n}, {"c", c}};
}

StructureTensor algebra_from_json(const json& j) {
    const json& c = array_field(j, "c", "algebra");
    const std::size_t n = positive_field(j, "dim", "algebra");
    StructureTensor alg(n);
    std::vector<bool> seen(n * n * n, false);
    for (std::size_t t = 0; t < c.size(); ++t) {
        const std::string where = "c[" + std::to_string(t) + "]";
        if (!c[t].is_object()) throw InputError(where + ": expected an object");
        std::size_t idx[3];
        const char* keys[3] = {"i", "j", "k"};
        for (int a = 0; a < 3; ++a) {
            idx[a] = positive_field(c[t], keys[a], where) - 1;
            if (idx[a] >= n)
                throw InputError(where + "." + keys[a] + ": index " + std::to_string(idx[a] + 1) +
                                 " exceeds declared dim " + std::to_string(n));
        }
        if (!c[t].contains("v")) throw InputError(where + ": missing \"v\"");
        const std::size_t flat = (idx[0] * n + idx[1]) * n + idx[2];
        if (seen[flat]) throw InputError(where + ": duplicate triple");
        seen[flat] = true;
        alg(idx[0], idx[1], idx[2]) = rational_field(c[t].at("v"), where + ".v");
    }
    return alg;
}

json samples_to_json(const std::vector<MapSample>& samples) {
    json arr = json::array();
    for (const auto& s : samples) arr.push_back(json{{"x", vector_to_json(s.x)}, {"dx", vector_to_json(s.dx)}});
    return json{{"dim", samples.empty() ? 0 : samples.front().x.dim()}, {"samples", arr}};
}

std::vector<MapSample> samples_from_json(const json& j) {
    const json& arr = array_field(j, "samples", "sample file");
    const std::size_t dim = positive_field(j, "dim", "sample file");
    std::vector<MapSample> out;
    for (std::size_t s = 0; s < arr.size(); ++s) {
        const std::string where = "samples[" + std::to_string(s) + "]";
        if (!arr[s].is_object() || !arr[s].contains("x") || !arr[s].contains("dx"))
            throw InputError(where + ": expected an object with \"x\" and \"dx\"");
        MapSample sample{vector_from_json(arr[s].at("x"), where + ".x"), vector_from_json(arr[s].at("dx"), where + ".dx")};
        if (sample.x.dim() != dim || sample.dx.dim() != dim)
            throw InputError(where + ": vectors must have dim " + std::to_string(dim));
        out.push_back(std::move(sample));
    }
    return out;
}

AutParams parse_aut_params(std::string_view text) {
    const std::string s = trim(text);
    std::optional<Rational> a, b;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("expected key=value in '" + s + "'");
        const std::string key = item.substr(0, eq);
        const Rational value = Rational::parse(item.substr(eq + 1));
        if (key == "a" && !a)
            a = value;
        else if (key == "b" && !b)
            b = value;
        else
            throw InputError("unexpected or repeated parameter '" + key + "' in '" + s + "'");
    }
    if (!a || !b) throw InputError("both a and b are required: '" + s + "'");
    return AutParams(*a, *b);
}

std::vector<std::size_t> parse_span(std::string_view text) {
    const std::string s = trim(text);
    std::vector<std::size_t> out;
    if (const auto dots = s.find(".."); dots != std::string::npos) {
        const std::size_t lo = parse_index(s.substr(0, dots), s);
        const std::size_t hi = parse_index(s.substr(dots + 2), s);
        if (hi < lo) throw InputError("empty range '" + s + "'");
        for (std::size_t i = lo; i <= hi; ++i) out.push_back(i);
        return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_index(item, s));
    if (out.empty()) throw InputError("empty span");
    return out;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << text;
}

StructureTensor load_algebra(const std::filesystem::path& path) {
    try {
        return algebra_from_json(read_json_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

Matrix load_matrix(const std::filesystem::path& path) {
    try {
        return matrix_from_json(read_json_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::vector<MapSample> load_samples(const std::filesystem::path& path) {
    try {
        return samples_from_json(read_json_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

}  // namespace conservkit::io
