#pragma once

// JSON encoding of matrices, complexes, maps, triangles, squares and verdicts.
// Matrix entries are decimal strings; readers also accept small integer
// expressions in named parameters ("-a^3", "1+a", "2*(a-b)").

#include <map>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "hocart/complex.hpp"
#include "hocart/squares.hpp"
#include "hocart/triangles.hpp"

namespace hocart::io {

using json = nlohmann::json;
using Bindings = std::map<std::string, Int>;

/// Malformed input (bad JSON shape, bad expression, inconsistent sizes).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Int evaluate(const std::string& expression, const Bindings& vars = {});

json to_json(const IntMatrix& m);
/// Shape-checked; an empty array stands for any matrix with zero rows.
IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols,
                           const Bindings& vars = {});

json to_json(const Ring& r);
Ring ring_from_json(const json& j);

json to_json(const Complex& c);
Complex complex_from_json(const json& j, const Bindings& vars = {});

json components_to_json(const std::map<int, IntMatrix>& comps);

json to_json(const ChainMap& f);
ChainMap map_from_json(const json& j, const Complex& source, const Complex& target,
                       const Bindings& vars = {});
/// Degree-(-1) components for a homotopy between maps s → t.
std::map<int, IntMatrix> homotopy_components_from_json(const json& j, const Complex& source,
                                                       const Complex& target,
                                                       const Bindings& vars = {});

/// {"x", "y", "z": complexes, "f", "g", "h": maps}.
json to_json(const Triangle& t);
Triangle triangle_from_json(const json& j, const Bindings& vars = {});

/// {"B", "C", "B_prime", "C_prime": complexes, "g", "g_prime", "b", "c": maps,
///  optional "homotopy": components of c∘g ≃ g'∘b}.
json to_json(const CommutativeSquare& s);
CommutativeSquare square_from_json(const json& j, const Bindings& vars = {});

json to_json(const Verdict& v);

/// Reads and parses a JSON file (FormatError on I/O or syntax errors).
json read_file(const std::string& path);

}  // namespace hocart::io
