// Command-line front end. Exit codes: 0 yes/pass, 1 certified no,
// 2 unknown, 3 usage or input error.

#include <chrono>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hocart/io.hpp"
#include "hocart/paper.hpp"
#include "hocart/prop2.hpp"
#include "hocart/unit_lemma.hpp"

using namespace hocart;
using io::json;

namespace {

enum Exit { kYes = 0, kNo = 1, kUnknown = 2, kUsage = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchFlags {
  long coeff_bound = 2;
  std::string max_enum = "1048576";
  std::vector<std::string> moduli;

  void attach(CLI::App* app) {
    app->add_option("--coeff-bound", coeff_bound, "Box for free Hom-coordinates over Z")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--max-enum", max_enum, "Cap on enumerated classes per coset");
    app->add_option("--moduli", moduli, "Extra moduli for the refutation schedule")->delimiter(',');
  }

  SearchConfig config() const {
    SearchConfig c;
    c.coeff_bound = coeff_bound;
    c.max_enum = parse_int(max_enum, "--max-enum");
    if (c.max_enum < 1) throw UsageError("--max-enum must be at least 1");
    for (const auto& m : moduli) {
      const Int v = parse_int(m, "--moduli");
      if (v < 2) throw UsageError("--moduli entries must be at least 2");
      c.moduli.push_back(v);
    }
    return c;
  }

  static Int parse_int(const std::string& s, const std::string& what) {
    try {
      return io::evaluate(s);
    } catch (const io::FormatError&) {
      throw UsageError(what + ": not an integer: " + s);
    }
  }
};

io::Bindings parse_bindings(const std::vector<std::string>& sets) {
  io::Bindings out;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects name=value");
    out[s.substr(0, eq)] = SearchFlags::parse_int(s.substr(eq + 1), "--set");
  }
  return out;
}

int verdict_exit(VerdictKind k) {
  switch (k) {
    case VerdictKind::Yes: return kYes;
    case VerdictKind::NoCertified: return kNo;
    case VerdictKind::Unknown: return kUnknown;
  }
  return kUnknown;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

// paper verify -------------------------------------------------------------

int cmd_paper_verify(long a_min, long a_max, bool allow_unclaimed, const SearchConfig& config,
                     const std::string& format) {
  if (a_min > a_max) throw UsageError("--a-min must not exceed --a-max");
  if (a_min < 3 && !allow_unclaimed)
    throw UsageError("a < 3 lies outside the claimed range; pass --allow-unclaimed");
  bool pass = true, unknown = false;
  json all = json::array();
  for (long a = a_min; a <= a_max; ++a) {
    const auto t0 = std::chrono::steady_clock::now();
    const PaperReport r = verify_paper(a, config);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "a = " << a << ": " << secs << " s\n";
    // Outside the claimed range only the structural checks count.
    const bool ok = r.claimed ? r.pass
                              : r.errors.empty() && r.star && r.star->ok() &&
                                    std::all_of(r.lemma2.begin(), r.lemma2.end(),
                                                [](const Lemma2Check& l) { return l.ok(); });
    pass = pass && ok;
    for (const auto* v : {&r.cartesian, &r.vertical})
      unknown = unknown || (*v && (*v)->kind == VerdictKind::Unknown);
    if (format == "json")
      all.push_back(report_json(r));
    else
      std::cout << report_text(r) << (a < a_max ? "\n" : "");
  }
  if (format == "json") print(all.size() == 1 ? all[0] : json{{"reports", all}, {"pass", pass}});
  if (pass) return kYes;
  return unknown ? kUnknown : kNo;
}

// square check -------------------------------------------------------------

int cmd_square_check(const std::string& file, const io::Bindings& vars, const SearchConfig& config,
                     const std::string& format) {
  const CommutativeSquare s = io::square_from_json(io::read_file(file), vars);
  const CartesianResult r = is_homotopy_cartesian(s, config);
  if (format == "json") {
    json out = io::to_json(r.verdict);
    if (r.triangle) out["triangle"] = io::to_json(*r.triangle);
    print(out);
  } else {
    std::cout << "homotopy cartesian: " << to_string(r.verdict.kind);
    if (r.verdict.kind == VerdictKind::NoCertified)
      std::cout << " (modulus " << r.verdict.modulus << ")";
    std::cout << '\n';
    if (!r.verdict.detail.empty()) std::cout << "  " << r.verdict.detail << '\n';
    if (r.verdict.witness)
      std::cout << "  phi: " << r.verdict.witness->phi.to_string() << '\n';
  }
  return verdict_exit(r.verdict.kind);
}

// complex homology ---------------------------------------------------------

int cmd_complex_homology(const std::string& file, const io::Bindings& vars,
                         const std::string& format) {
  const Complex c = io::complex_from_json(io::read_file(file), vars);
  if (!c.ring().is_integers()) throw io::FormatError("homology is computed over Z only");
  const auto h = homology(c);
  if (format == "json") {
    json out = json::object();
    for (const auto& [d, g] : h) {
      json tors = json::array();
      for (const auto& t : g.invariant_factors) tors.push_back(t.get_str());
      out[std::to_string(d)] = {{"free_rank", g.free_rank}, {"torsion", tors}};
    }
    print(json{{"homology", out}});
  } else {
    for (const auto& [d, g] : h) std::cout << "H^" << d << " = " << g.to_string() << '\n';
  }
  return kYes;
}

// triangle verify ----------------------------------------------------------

int cmd_triangle_verify(const std::string& file, const io::Bindings& vars,
                        const std::string& format) {
  const json j = io::read_file(file);
  const Triangle t = io::triangle_from_json(j.at("triangle"), vars);
  const ChainMap u = io::map_from_json(j.at("witness"), cone(t.f()).complex, t.z(), vars);
  const DistinguishedCheck c = verify_distinguished_with_witness(t, u);
  if (format == "json") {
    print(json{{"distinguished", c.ok()}, {"failures", c.failures}});
  } else {
    std::cout << (c.ok() ? "distinguished (witness verified)" : "witness rejected") << '\n';
    for (const auto& f : c.failures) std::cout << "  " << f << '\n';
  }
  return c.ok() ? kYes : kNo;
}

// unit-lemma ---------------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
  return out;
}

std::size_t parse_size(const std::string& s) {
  const Int v = SearchFlags::parse_int(s, "--ring");
  if (v < 0 || v > 64) throw UsageError("--ring: matrix size out of range");
  return v.get_ui();
}

json parse_payload(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return json(text);  // bare expression such as 3 or -a
  }
}

int cmd_unit_lemma(const std::string& ring, const std::string& eps_text, const std::string& variant,
                   const std::string& format) {
  if (variant != "alpha" && variant != "beta") throw UsageError("--variant must be alpha or beta");
  const bool beta = variant == "beta";
  const auto parts = split(ring, ':');
  if (parts.empty()) throw UsageError("--ring is required");
  const json payload = parse_payload(eps_text);
  auto scalar = [&]() -> Int {
    if (payload.is_number_integer()) return Int(payload.get<long>());
    if (payload.is_string()) return io::evaluate(payload.get<std::string>());
    throw io::FormatError("expected an integer element");
  };

  if (parts[0] == "z" && parts.size() == 1) {
    const Int e = scalar();
    const auto alpha = find_alpha_over_Z(e);
    const Int unit = alpha ? Int(1 + e + *alpha * e * e) : Int(0);
    if (format == "json")
      print(alpha ? json{{"alpha", alpha->get_str()}, {"unit", unit.get_str()}}
                  : json{{"alpha", nullptr}, {"result", "no solution"}});
    else if (alpha)
      std::cout << "alpha = " << *alpha << "\nunit = " << unit << '\n';
    else
      std::cout << "no solution\n";
    return alpha ? kYes : kNo;
  }

  RingElementRep eps;
  if (parts[0] == "zmod" && parts.size() == 2) {
    const Int m = SearchFlags::parse_int(parts[1], "--ring");
    if (m < 2) throw UsageError("--ring zmod:m needs m >= 2");
    eps = Residue{m, mod_floor(scalar(), m)};
  } else if (parts[0] == "matf" && parts.size() == 3) {
    const Int p = SearchFlags::parse_int(parts[1], "--ring");
    if (!is_prime(p) || p >= Int(1L << 31)) throw UsageError("--ring matf:p:k needs a prime p < 2^31");
    const std::size_t k = parse_size(parts[2]);
    const IntMatrix m = io::matrix_from_json(payload, k, k).reduced(p);
    MatFp e{p.get_si(), k, {}};
    for (const Int& x : m.flatten()) e.entries.push_back(x.get_si());
    eps = e;
  } else if (parts[0] == "matq" && parts.size() == 2) {
    const std::size_t k = parse_size(parts[1]);
    if (!payload.is_array() || payload.size() != k) throw io::FormatError("expected a k x k matrix");
    MatQ e{k, {}};
    for (const auto& row : payload) {
      if (!row.is_array() || row.size() != k) throw io::FormatError("expected a k x k matrix");
      for (const auto& x : row) {
        mpq_class q;
        if (x.is_number_integer()) {
          q = x.get<long>();
        } else if (!x.is_string() || q.set_str(x.get<std::string>(), 10) != 0 ||
                   q.get_den() == 0) {
          throw io::FormatError("matrix entries must be rationals such as \"-2/3\"");
        }
        q.canonicalize();
        e.entries.push_back(q);
      }
    }
    eps = e;
  } else {
    throw UsageError("--ring must be z, zmod:m, matf:p:k or matq:k");
  }

  const UnitCertificate c = beta ? find_beta(eps) : find_alpha(eps);
  const bool ok = verify_certificate(eps, c, beta);
  if (format == "json") {
    json out{{beta ? "beta" : "alpha", to_string(c.alpha)},
             {"unit", to_string(c.unit)},
             {"inverse", to_string(c.inverse)},
             {"verified", ok}};
    if (c.nilpotency) out["nilpotency"] = *c.nilpotency;
    if (c.relation) {
      json s = json::array();
      for (const auto& q : c.relation->s) s.push_back(q.get_str());
      out["relation"] = {{"m", c.relation->m}, {"s", s}};
    }
    print(out);
  } else {
    std::cout << (beta ? "beta = " : "alpha = ") << to_string(c.alpha) << '\n'
              << "unit = " << to_string(c.unit) << '\n'
              << "inverse = " << to_string(c.inverse) << '\n';
    if (c.relation) {
      std::cout << "relation: m = " << c.relation->m << ", s = (";
      for (std::size_t i = 0; i < c.relation->s.size(); ++i)
        std::cout << (i ? ", " : "") << c.relation->s[i].get_str();
      std::cout << ")\n";
    }
    std::cout << "verified: " << (ok ? "yes" : "NO") << '\n';
  }
  return ok ? kYes : kNo;
}

// fuzz prop2 ---------------------------------------------------------------

int cmd_fuzz(long p, long trials, unsigned long long seed, const SearchConfig& config,
             const std::string& format) {
  if (!is_prime(Int(p)) || p >= (1L << 31)) throw UsageError("--field must be a prime < 2^31");
  if (trials < 0) throw UsageError("--trials must be non-negative");
  if (trials == 0) std::cerr << "warning: no trials requested\n";
  FuzzConfig fc;
  fc.p = p;
  fc.seed = seed;
  std::size_t passed = 0, discarded = 0, perturbed = 0, nonzero = 0, unknown = 0;
  json rows = json::array();
  for (long i = 0; i < trials; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const FuzzTrial t = run_fuzz_trial(fc, static_cast<std::size_t>(i), config);
    std::cerr << "trial " << i << ": "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
              << " s\n";
    passed += t.pass();
    discarded += t.discarded;
    perturbed += t.perturbed;
    nonzero += t.psi_nonzero;
    unknown += t.cartesian == VerdictKind::Unknown || t.vertical == VerdictKind::Unknown;
    if (format == "json") {
      rows.push_back({{"index", i},
                      {"cartesian", to_string(t.cartesian)},
                      {"vertical", to_string(t.vertical)},
                      {"replay", t.replay_ok},
                      {"perturbed", t.perturbed},
                      {"psi_nonzero", t.psi_nonzero},
                      {"discarded", t.discarded},
                      {"pass", t.pass()},
                      {"notes", t.notes}});
    } else {
      std::cout << "trial " << i << ": cartesian " << to_string(t.cartesian) << ", vertical "
                << to_string(t.vertical) << ", replay " << (t.replay_ok ? "ok" : "FAILED")
                << (t.psi_nonzero ? ", psi nonzero" : "") << (t.pass() ? "" : "  <-- FAIL")
                << '\n';
      for (const auto& n : t.notes) std::cout << "  " << n << '\n';
    }
  }
  const double rate = perturbed + discarded == 0
                          ? 0.0
                          : static_cast<double>(discarded) / static_cast<double>(perturbed + discarded);
  if (format == "json") {
    print({{"field", p},
           {"seed", seed},
           {"trials", trials},
           {"passed", passed},
           {"perturbed", perturbed},
           {"psi_nonzero", nonzero},
           {"discarded", discarded},
           {"trial_results", rows}});
  } else {
    std::cout << "passed " << passed << " of " << trials << "; perturbed " << perturbed
              << ", nonzero psi " << nonzero << ", discarded perturbations " << discarded
              << " (rate " << rate << ")\n";
  }
  if (passed == static_cast<std::size_t>(trials)) return kYes;
  return unknown ? kUnknown : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homotopy-cartesian squares and distinguished triangles over Z and F_p"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  SearchFlags search;
  std::vector<std::string> sets;

  auto* paper = app.add_subcommand("paper", "The counterexample family");
  paper->require_subcommand(1);
  auto* verify = paper->add_subcommand("verify", "Verify the claims for a range of a");
  long a_min = 3, a_max = 12;
  bool allow_unclaimed = false;
  verify->add_option("--a-min", a_min);
  verify->add_option("--a-max", a_max);
  verify->add_flag("--allow-unclaimed", allow_unclaimed, "Permit a < 3");
  search.attach(verify);

  auto* square = app.add_subcommand("square", "Commutative squares");
  square->require_subcommand(1);
  auto* check = square->add_subcommand("check", "Decide whether a square is homotopy cartesian");
  std::string square_file;
  check->add_option("file", square_file)->required();
  check->add_option("--set", sets, "Parameter binding name=value");
  search.attach(check);

  auto* complex = app.add_subcommand("complex", "Complexes");
  complex->require_subcommand(1);
  auto* hom = complex->add_subcommand("homology", "Cohomology groups of a complex over Z");
  std::string complex_file;
  hom->add_option("file", complex_file)->required();
  hom->add_option("--set", sets, "Parameter binding name=value");

  auto* triangle = app.add_subcommand("triangle", "Triangles");
  triangle->require_subcommand(1);
  auto* tverify = triangle->add_subcommand("verify", "Check a distinguishedness witness");
  std::string triangle_file;
  tverify->add_option("file", triangle_file)->required();
  tverify->add_option("--set", sets, "Parameter binding name=value");

  auto* unit = app.add_subcommand("unit-lemma", "Units 1 + eps + alpha eps^2");
  std::string ring, eps, variant = "alpha";
  unit->add_option("--ring", ring, "z | zmod:m | matf:p:k | matq:k")->required();
  unit->add_option("--eps", eps, "Element: integer or JSON matrix")->required();
  unit->add_option("--variant", variant, "alpha or beta");

  auto* fuzz = app.add_subcommand("fuzz", "Randomized checks");
  fuzz->require_subcommand(1);
  auto* prop2 = fuzz->add_subcommand("prop2", "Morphisms of triangles over F_p");
  long field = 2, trials = 200;
  unsigned long long seed = 42;
  prop2->add_option("--field", field, "Prime p");
  prop2->add_option("--trials", trials);
  prop2->add_option("--seed", seed);
  search.attach(prop2);

  // Global options such as --format may follow the subcommand.
  for (auto* sub : {paper, verify, square, check, complex, hom, triangle, tverify, unit, fuzz, prop2})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const io::Bindings vars = parse_bindings(sets);
    if (verify->parsed())
      return cmd_paper_verify(a_min, a_max, allow_unclaimed, search.config(), format);
    if (check->parsed()) return cmd_square_check(square_file, vars, search.config(), format);
    if (hom->parsed()) return cmd_complex_homology(complex_file, vars, format);
    if (tverify->parsed()) return cmd_triangle_verify(triangle_file, vars, format);
    if (unit->parsed()) return cmd_unit_lemma(ring, eps, variant, format);
    if (prop2->parsed()) return cmd_fuzz(field, trials, seed, search.config(), format);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const io::FormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
