#include "hocart/io.hpp"

#include <cctype>
#include <fstream>

namespace hocart::io {

namespace {

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, const Bindings& vars) : s_(text), vars_(vars) {}

  Int parse() {
    Int v = sum();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw FormatError("bad expression '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Int sum() {
    Int v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  Int product() {
    Int v = unary();
    while (eat('*')) v *= unary();
    return v;
  }
  Int unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Int power() {
    Int base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 4) fail("exponent must be a small natural number");
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), std::stoul(s_.substr(start, pos_ - start)));
    return out;
  }
  Int atom() {
    if (eat('(')) {
      Int v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Int(s_.substr(start, pos_ - start));
    }
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a number, a name or '('");
    const auto it = vars_.find(s_.substr(start, pos_ - start));
    if (it == vars_.end()) fail("unbound name '" + s_.substr(start, pos_ - start) + "'");
    return it->second;
  }

  const std::string& s_;
  const Bindings& vars_;
  std::size_t pos_ = 0;
};

Int entry_from_json(const json& j, const Bindings& vars) {
  if (j.is_string()) return evaluate(j.get<std::string>(), vars);
  if (j.is_number_integer()) return Int(j.get<long>());
  throw FormatError("matrix entry must be a string or an integer");
}

int degree_key(const std::string& key) {
  try {
    std::size_t used = 0;
    const int d = std::stoi(key, &used);
    if (used == key.size()) return d;
  } catch (const std::exception&) {
  }
  throw FormatError("degree key '" + key + "' is not an integer");
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw FormatError(std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

Int evaluate(const std::string& expression, const Bindings& vars) {
  return ExpressionParser(expression, vars).parse();
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols,
                           const Bindings& vars) {
  if (!j.is_array()) throw FormatError("matrix must be an array of rows");
  if (j.size() != rows) throw FormatError("matrix has the wrong number of rows");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw FormatError("matrix row has the wrong number of entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = entry_from_json(row[c], vars);
  }
  return m;
}

json to_json(const Ring& r) {
  if (r.is_integers()) return "Z";
  return json{{"mod", r.modulus().get_str()}};
}

Ring ring_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "Z") return Ring::integers();
  if (j.is_object() && j.contains("mod")) {
    const Int m = entry_from_json(j.at("mod"), {});
    if (m < 2) throw FormatError("ring modulus must be at least 2");
    return Ring::integers_mod(m);
  }
  throw FormatError("ring must be \"Z\" or {\"mod\": m}");
}

json to_json(const Complex& c) {
  json degrees = json::object(), diffs = json::object();
  for (const auto& [d, r] : c.ranks()) {
    degrees[std::to_string(d)] = r;
    const IntMatrix dd = c.differential(d);
    if (!dd.is_zero()) diffs[std::to_string(d)] = to_json(dd);
  }
  return json{{"ring", to_json(c.ring())}, {"degrees", degrees}, {"differentials", diffs}};
}

Complex complex_from_json(const json& j, const Bindings& vars) {
  const Ring ring = ring_from_json(field(j, "ring"));
  std::map<int, std::size_t> ranks;
  for (const auto& [k, v] : field(j, "degrees").items()) {
    if (!v.is_number_unsigned()) throw FormatError("rank must be a natural number");
    ranks[degree_key(k)] = v.get<std::size_t>();
  }
  auto rank = [&](int d) -> std::size_t {
    const auto it = ranks.find(d);
    return it == ranks.end() ? 0 : it->second;
  };
  std::map<int, IntMatrix> diffs;
  if (j.contains("differentials"))
    for (const auto& [k, v] : j.at("differentials").items()) {
      const int d = degree_key(k);
      diffs[d] = matrix_from_json(v, rank(d + 1), rank(d), vars);
    }
  try {
    return Complex(ring, ranks, diffs);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json components_to_json(const std::map<int, IntMatrix>& comps) {
  json out = json::object();
  for (const auto& [d, m] : comps)
    if (!m.is_zero()) out[std::to_string(d)] = to_json(m);
  return out;
}

json to_json(const ChainMap& f) {
  std::map<int, IntMatrix> comps;
  for (int d : f.degrees()) comps.emplace(d, f.component(d));
  return json{{"components", components_to_json(comps)}};
}

ChainMap map_from_json(const json& j, const Complex& source, const Complex& target,
                       const Bindings& vars) {
  std::map<int, IntMatrix> comps;
  for (const auto& [k, v] : field(j, "components").items()) {
    const int d = degree_key(k);
    comps[d] = matrix_from_json(v, target.rank(d), source.rank(d), vars);
  }
  try {
    return ChainMap(source, target, comps);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::map<int, IntMatrix> homotopy_components_from_json(const json& j, const Complex& source,
                                                       const Complex& target,
                                                       const Bindings& vars) {
  std::map<int, IntMatrix> comps;
  if (!j.is_object()) throw FormatError("homotopy must be an object of components");
  for (const auto& [k, v] : j.items()) {
    const int d = degree_key(k);
    comps[d] = matrix_from_json(v, target.rank(d - 1), source.rank(d), vars);
  }
  return comps;
}

json to_json(const Triangle& t) {
  return json{{"x", to_json(t.x())}, {"y", to_json(t.y())}, {"z", to_json(t.z())},
              {"f", to_json(t.f())}, {"g", to_json(t.g())}, {"h", to_json(t.h())}};
}

Triangle triangle_from_json(const json& j, const Bindings& vars) {
  const Complex x = complex_from_json(field(j, "x"), vars);
  const Complex y = complex_from_json(field(j, "y"), vars);
  const Complex z = complex_from_json(field(j, "z"), vars);
  try {
    return Triangle(map_from_json(field(j, "f"), x, y, vars), map_from_json(field(j, "g"), y, z, vars),
                    map_from_json(field(j, "h"), z, shift(x), vars));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json to_json(const CommutativeSquare& s) {
  return json{{"B", to_json(s.g.source())},
              {"C", to_json(s.g.target())},
              {"B_prime", to_json(s.b.target())},
              {"C_prime", to_json(s.c.target())},
              {"g", to_json(s.g)},
              {"g_prime", to_json(s.g_prime)},
              {"b", to_json(s.b)},
              {"c", to_json(s.c)},
              {"homotopy", components_to_json(s.witness.components())}};
}

CommutativeSquare square_from_json(const json& j, const Bindings& vars) {
  const Complex b0 = complex_from_json(field(j, "B"), vars);
  const Complex c0 = complex_from_json(field(j, "C"), vars);
  const Complex b1 = complex_from_json(field(j, "B_prime"), vars);
  const Complex c1 = complex_from_json(field(j, "C_prime"), vars);
  const ChainMap g = map_from_json(field(j, "g"), b0, c0, vars);
  const ChainMap gp = map_from_json(field(j, "g_prime"), b1, c1, vars);
  const ChainMap b = map_from_json(field(j, "b"), b0, b1, vars);
  const ChainMap c = map_from_json(field(j, "c"), c0, c1, vars);
  std::optional<std::map<int, IntMatrix>> h;
  if (j.contains("homotopy")) h = homotopy_components_from_json(j.at("homotopy"), b0, c1, vars);
  try {
    return make_square(g, gp, b, c, h);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json to_json(const Verdict& v) {
  json out{{"verdict", to_string(v.kind)}};
  if (v.kind == VerdictKind::NoCertified) {
    out["modulus"] = v.modulus.get_str();
    out["classes_enumerated"] = v.exhausted.get_str();
  }
  if (v.witness) {
    out["witness"] = json{{"phi", to_json(v.witness->phi)},
                          {"contraction", components_to_json(v.witness->equivalence.components())}};
  }
  json schedule = json::array();
  for (const Int& m : v.schedule) schedule.push_back(m.get_str());
  out["schedule"] = schedule;
  if (!v.detail.empty()) out["detail"] = v.detail;
  return out;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace hocart::io
