#include "hocart/paper.hpp"

#include <cstdlib>
#include <sstream>

namespace hocart {

namespace {

io::json load(const std::string& name) { return io::read_file(data_dir() + "/" + name); }

Triangle rotated(Triangle t, int times) {
  for (int i = 0; i < times; ++i) t = rotate(t);
  return t;
}

// Row of the star diagram: transcription checked against the declared source.
Triangle star_row(const io::json& j, const io::Bindings& vars, const char* name) {
  const Triangle row = io::triangle_from_json(j, vars);
  const io::json& from = j.at("from");
  const Int a = io::evaluate(from.at("a").get<std::string>(), vars);
  const Int b = io::evaluate(from.at("b").get<std::string>(), vars);
  const Triangle expected =
      rotated(lemma2(from.at("lemma").get<int>(), a, b).triangle, from.at("rotations").get<int>());
  if (!(row == expected))
    throw TranscriptionError(std::string(name) + " row differs from its declared rotation");
  return row;
}

SquareCheck square(std::string name, const ChainMap& lhs, const ChainMap& rhs) {
  return {std::move(name), homotopic(lhs, rhs).has_value(), lhs == rhs};
}

void add_squares(std::vector<SquareCheck>& out, const TriangleMorphism& m, const std::string& tag) {
  const Triangle& s = m.source;
  const Triangle& t = m.target;
  out.push_back(square(tag + "first", compose(m.q, s.f()), compose(t.f(), m.p)));
  out.push_back(square(tag + "second", compose(m.r, s.g()), compose(t.g(), m.q)));
  out.push_back(square(tag + "third", compose(shift(m.p), s.h()), compose(t.h(), m.r)));
}

io::json verdict_json(const std::optional<Verdict>& v) {
  return v ? io::to_json(*v) : io::json(nullptr);
}

std::string verdict_line(const std::optional<Verdict>& v) {
  if (!v) return "not run";
  std::string s = to_string(v->kind);
  if (v->kind == VerdictKind::NoCertified)
    s += " (modulus " + v->modulus.get_str() + ", " + v->exhausted.get_str() + " classes)";
  if (!v->detail.empty()) s += ": " + v->detail;
  return s;
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("HOCART_DATA_DIR"); env && *env) return env;
  return HOCART_DATA_DIR;
}

Lemma2Instance lemma2(int k, const Int& a, const Int& b) {
  if (k < 1 || k > 4) throw std::invalid_argument("lemma2: k must be in 1..4");
  const io::json j = load("lemma2-" + std::to_string(k) + ".json");
  const io::Bindings vars{{"a", a}, {"b", b}};
  Triangle t = io::triangle_from_json(j.at("triangle"), vars);
  const Complex c = cone(t.f()).complex;
  ChainMap u = io::map_from_json(j.at("witness"), c, t.z(), vars);
  return {k, a, b, std::move(t), std::move(u)};
}

Lemma2Check check_lemma2(int k, const Int& a, const Int& b) {
  Lemma2Check out{k, a, b, {}};
  try {
    const Lemma2Instance inst = lemma2(k, a, b);
    out.failures = verify_distinguished_with_witness(inst.triangle, inst.u).failures;
  } catch (const std::exception& e) {
    out.failures.push_back(e.what());
  }
  return out;
}

StarDiagram build_star(const Int& a) {
  const io::json j = load("star.json");
  const io::Bindings vars{{"a", a}};
  const Triangle upper = star_row(j.at("upper"), vars, "upper");
  const Triangle lower = star_row(j.at("lower"), vars, "lower");

  const io::json& m = j.at("morphism");
  if (m.at("p") != "identity" || !(upper.x() == lower.x()))
    throw TranscriptionError("the first vertical map must be the identity of a shared object");
  const ChainMap p = ChainMap::identity(upper.x());
  const ChainMap q = io::map_from_json(m.at("q"), upper.y(), lower.y(), vars);
  const ChainMap r = io::map_from_json(m.at("r"), upper.z(), lower.z(), vars);
  TriangleMorphism morphism{upper, lower, p, q, r};

  const CommutativeSquare middle = io::square_from_json(j.at("middle"), vars);
  if (!(middle.g == upper.g() && middle.g_prime == lower.g() && middle.b == q && middle.c == r))
    throw TranscriptionError("middle square differs from the second square of the morphism");

  auto vertical = [&](const char* key) {
    const io::json& v = j.at("vertical").at(key);
    return lemma2(v.at("lemma").get<int>(), io::evaluate(v.at("a").get<std::string>(), vars),
                  io::evaluate(v.at("b").get<std::string>(), vars))
        .triangle;
  };
  return {a, upper, lower, std::move(morphism), middle, vertical("t_b"), vertical("t_c")};
}

bool StarCheck::ok() const {
  if (!upper_distinguished || !lower_distinguished || squares.size() != 6) return false;
  for (const auto& s : squares)
    if (!s.commutes) return false;
  return true;
}

StarCheck check_star(const StarDiagram& s) {
  StarCheck out;
  // Rows are distinguished: rotate the verified witnesses of their sources.
  auto rotated_ok = [](const Lemma2Instance& inst, int times) {
    DistinguishedCheck c = verify_distinguished_with_witness(inst.triangle, inst.u);
    Triangle cur = inst.triangle;
    for (int i = 0; i < times && c.ok(); ++i) {
      c = rotate_witness(cur, *c.witness);
      cur = rotate(cur);
    }
    return c.ok();
  };
  out.upper_distinguished = rotated_ok(lemma2(2, s.a, 0), 1);
  out.lower_distinguished = rotated_ok(lemma2(1, s.a, -s.a), 2);
  add_squares(out.squares, s.morphism, "");
  add_squares(out.squares, rotate(s.morphism), "rotated ");
  return out;
}

PaperReport verify_paper(const Int& a, const SearchConfig& config) {
  PaperReport r;
  r.a = a;
  r.claimed = a >= 3;
  r.lemma2.push_back(check_lemma2(1, a, -a));
  r.lemma2.push_back(check_lemma2(1, a, -a * a * a));
  for (int k = 2; k <= 4; ++k) r.lemma2.push_back(check_lemma2(k, a, 0));
  try {
    const StarDiagram s = build_star(a);
    r.star = check_star(s);
    SearchConfig c = config;
    c.parameter = a;
    r.cartesian = is_homotopy_cartesian(s.middle, c).verdict;
    r.vertical = fits_vertical_iso(s.middle, s.t_b, s.t_c, c);
  } catch (const std::exception& e) {
    r.errors.push_back(e.what());
  }
  if (r.cartesian && r.vertical) {
    const bool vertical_no = r.vertical->kind == VerdictKind::NoCertified;
    const bool cartesian_no = r.cartesian->kind == VerdictKind::NoCertified;
    r.claims_agree = vertical_no == cartesian_no &&
                     (!vertical_no || r.vertical->modulus == r.cartesian->modulus);
  }
  bool ok = r.errors.empty() && r.star && r.star->ok() && r.claims_agree;
  for (const auto& l : r.lemma2) ok = ok && l.ok();
  if (ok && r.claimed) {
    const Int a2 = a * a;
    ok = r.cartesian->kind == VerdictKind::NoCertified && r.cartesian->modulus == a2 &&
         r.vertical->kind == VerdictKind::NoCertified && r.vertical->modulus == a2;
  }
  r.pass = ok;
  return r;
}

io::json report_json(const PaperReport& r) {
  io::json lemma = io::json::array();
  for (const auto& l : r.lemma2)
    lemma.push_back({{"k", l.k}, {"a", l.a.get_str()}, {"b", l.b.get_str()}, {"ok", l.ok()},
                     {"failures", l.failures}});
  io::json star = nullptr;
  if (r.star) {
    io::json squares = io::json::array();
    for (const auto& s : r.star->squares)
      squares.push_back({{"name", s.name}, {"commutes", s.commutes}, {"strict", s.strict}});
    star = {{"upper_distinguished", r.star->upper_distinguished},
            {"lower_distinguished", r.star->lower_distinguished},
            {"squares", squares},
            {"ok", r.star->ok()}};
  }
  return {{"a", r.a.get_str()},
          {"claimed", r.claimed},
          {"lemma2", lemma},
          {"star", star},
          {"homotopy_cartesian", verdict_json(r.cartesian)},
          {"vertical_fit", verdict_json(r.vertical)},
          {"claims_agree", r.claims_agree},
          {"errors", r.errors},
          {"pass", r.pass}};
}

std::string report_text(const PaperReport& r) {
  std::ostringstream out;
  out << "a = " << r.a << (r.claimed ? "" : " (outside the claimed range a >= 3)") << '\n';
  out << "triangles:\n";
  for (const auto& l : r.lemma2) {
    out << "  lemma2-" << l.k << " (a=" << l.a << ", b=" << l.b << "): "
        << (l.ok() ? "distinguished" : "FAILED") << '\n';
    for (const auto& f : l.failures) out << "    " << f << '\n';
  }
  out << "star diagram:\n";
  if (r.star) {
    out << "  upper row distinguished: " << (r.star->upper_distinguished ? "yes" : "NO") << '\n';
    out << "  lower row distinguished: " << (r.star->lower_distinguished ? "yes" : "NO") << '\n';
    for (const auto& s : r.star->squares)
      out << "  " << s.name << " square: "
          << (s.commutes ? (s.strict ? "commutes" : "commutes up to homotopy") : "DOES NOT COMMUTE")
          << '\n';
  } else {
    out << "  not built\n";
  }
  out << "middle square homotopy cartesian: " << verdict_line(r.cartesian) << '\n';
  out << "middle square fits a vertical isomorphism: " << verdict_line(r.vertical) << '\n';
  out << "verdicts agree: " << (r.claims_agree ? "yes" : "no") << '\n';
  for (const auto& e : r.errors) out << "error: " << e << '\n';
  out << (r.pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace hocart
