#include "hocart/squares.hpp"

#include <functional>
#include <set>
#include <stdexcept>

#include "hocart/detail/linear_system.hpp"
#include "hocart/hom.hpp"

namespace hocart {

using detail::Block;
using detail::LinearSystem;

// ---------------------------------------------------------------------------
// Squares

CommutativeSquare make_square(const ChainMap& g, const ChainMap& g_prime, const ChainMap& b,
                              const ChainMap& c,
                              const std::optional<std::map<int, IntMatrix>>& homotopy) {
  if (!(b.source() == g.source()) || !(g.target() == c.source()) ||
      !(b.target() == g_prime.source()) || !(g_prime.target() == c.target()))
    throw std::invalid_argument("make_square: maps do not form a square");
  for (const auto* m : {&g, &g_prime, &b, &c})
    if (auto v = check_chain_map(*m)) throw std::invalid_argument("make_square: " + v->message);
  const ChainMap lhs = compose(c, g), rhs = compose(g_prime, b);
  if (homotopy) return {g, g_prime, b, c, Homotopy(lhs, rhs, *homotopy)};
  auto w = homotopic(lhs, rhs);
  if (!w) throw std::invalid_argument("make_square: square does not commute up to homotopy");
  return {g, g_prime, b, c, *w};
}

DiagonalSequence diagonal(const CommutativeSquare& s) {
  ChainMap first = stack_vertical(s.b, s.g);
  ChainMap second = stack_horizontal(s.g_prime, -s.c);
  // second∘first = g'b − cg, so the negated commuting homotopy kills it.
  std::map<int, IntMatrix> h;
  for (const auto& [i, m] : s.witness.components()) h.emplace(i, -m);
  const ChainMap composite = compose(second, first);
  Homotopy null(composite, ChainMap::zero(composite.source(), composite.target()), h);
  return {std::move(first), std::move(second), std::move(null)};
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Yes: return "yes";
    case VerdictKind::NoCertified: return "no";
    case VerdictKind::Unknown: return "unknown";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Constraint systems

namespace {

const Complex& pre_source(const Constraint& c, const Complex& d) {
  return c.pre ? c.pre->source() : d;
}
const Complex& post_target(const Constraint& c, const Complex& t) {
  return c.post ? c.post->target() : t;
}

void check_shapes(const Complex& d, const Complex& t, const std::vector<Constraint>& cs) {
  if (!(d.ring() == t.ring())) throw std::invalid_argument("constraint search: ring mismatch");
  for (const auto& c : cs) {
    if (c.pre && !(c.pre->target() == d))
      throw std::invalid_argument("constraint search: precomposition does not end in D");
    if (c.post && !(c.post->source() == t))
      throw std::invalid_argument("constraint search: postcomposition does not start at T");
    if (!(c.required.source() == pre_source(c, d)) || !(c.required.target() == post_target(c, t)))
      throw std::invalid_argument("constraint search: required map has the wrong shape");
  }
}

ChainMap apply(const Constraint& c, const ChainMap& phi) {
  ChainMap m = c.pre ? compose(phi, *c.pre) : phi;
  return c.post ? compose(*c.post, m) : m;
}

struct Assembled {
  IntMatrix a;
  IntVector rhs;
  std::size_t phi_size = 0;
};

// Unknowns: φ (in the layout of `hom`) followed by one homotopy per constraint.
Assembled assemble(const HomGroupPresentation& hom, const std::vector<Constraint>& cs,
                   bool chain_rows) {
  const Complex& d = hom.source();
  const Complex& t = hom.target();
  LinearSystem sys;
  const auto phi = detail::add_map_unknowns(sys, d, t, 0);
  if (chain_rows) detail::add_chain_condition(sys, phi, d, t);
  for (const auto& c : cs) {
    const Complex& p = pre_source(c, d);
    const Complex& q = post_target(c, t);
    const auto k = detail::add_map_unknowns(sys, p, q, 1);
    const auto eqs = detail::add_map_equations(sys, p, q);
    for (const auto& [i, eq] : eqs) {
      if (auto it = phi.find(i); it != phi.end()) {
        const IntMatrix left = c.post ? c.post->component(i) : IntMatrix::identity(t.rank(i));
        const IntMatrix right = c.pre ? c.pre->component(i) : IntMatrix::identity(d.rank(i));
        sys.add_term(eq, it->second, left, right);
      }
      sys.add_rhs(eq, c.required.component(i));
    }
    detail::add_boundary_terms(sys, eqs, k, p, q, -1);
  }
  return {sys.matrix(), sys.rhs(), hom.vector_size()};
}

IntVector head(const IntVector& v, std::size_t n) { return IntVector(v.begin(), v.begin() + n); }

Int lcm_of(const std::vector<Int>& xs) {
  Int out = 1;
  for (const auto& x : xs) mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), x.get_mpz_t());
  return out;
}

// Classes of Hom meeting the constraints, as a coset in Hom-coordinates.
struct ClassCoset {
  std::optional<AffineCosetModM> coset;  // nullopt: only the zero-dimensional group
  bool soluble = false;
};

ClassCoset coset_in_coordinates(const HomGroupPresentation& hom, const IntVector& particular,
                                const std::vector<IntVector>& directions) {
  ClassCoset out;
  out.soluble = true;
  const auto& factors = hom.factors();
  if (factors.empty()) return out;
  AffineCosetModM coset;
  coset.modulus = lcm_of(factors);
  coset.particular = hom.quotient().coordinates(particular);
  for (const auto& v : directions) coset.generators.push_back(hom.quotient().coordinates(v));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] == coset.modulus) continue;
    IntVector r(factors.size(), Int(0));
    r[i] = factors[i];
    coset.relations.push_back(r);
  }
  out.coset = std::move(coset);
  return out;
}

Int class_count(const ClassCoset& c) { return c.coset ? c.coset->cardinality() : Int(1); }

// Visits class representatives; returns Completed, Stopped or Overflow.
WalkStatus walk_classes(const HomGroupPresentation& hom, const ClassCoset& c, const Int& cap,
                        const std::function<bool(const ChainMap&)>& visit) {
  if (!c.coset) return visit(hom.map_of({})) ? WalkStatus::Completed : WalkStatus::Stopped;
  return enumerate_coset(*c.coset, cap,
                         [&](const IntVector& z) { return visit(hom.map_of(z)); });
}

// Classes over the ring of the complexes themselves.
ClassCoset exact_classes(const HomGroupPresentation& hom, const std::vector<Constraint>& cs) {
  const Assembled sys = assemble(hom, cs, true);
  const Int& m = hom.source().ring().modulus();
  const auto sol = solve_linear(sys.a, sys.rhs, m == 0 ? std::nullopt : std::optional<Int>(m));
  if (!sol) return {};
  std::vector<IntVector> dirs;
  for (const auto& k : sol->kernel) dirs.push_back(head(k, sys.phi_size));
  return coset_in_coordinates(hom, head(sol->particular, sys.phi_size), dirs);
}

// Classes of Hom ⊗ Z/m whose integer representatives meet the constraints mod m.
ClassCoset tensor_classes(const HomGroupPresentation& hom, const std::vector<Constraint>& cs,
                          const Int& m) {
  const Assembled sys = assemble(hom, cs, false);
  const IntMatrix& kz = hom.cycles();
  const std::size_t n = sys.phi_size, k = kz.cols(), rest = sys.a.cols() - n;
  IntMatrix a(sys.a.rows(), k + rest);
  a.set_block(0, 0, sys.a.submatrix(0, 0, sys.a.rows(), n) * kz);
  a.set_block(0, k, sys.a.submatrix(0, n, sys.a.rows(), rest));
  const auto sol = solve_linear(a, sys.rhs, m);
  if (!sol) return {};
  std::vector<IntVector> dirs;
  for (const auto& v : sol->kernel) dirs.push_back(kz * head(v, k));
  return coset_in_coordinates(hom, kz * head(sol->particular, k), dirs);
}

bool is_unit_mod(const Int& x, const Int& m) {
  const Int r = mod_floor(x, m);
  return r == mod_floor(Int(1), m) || r == mod_floor(Int(-1), m);
}

std::vector<int> all_degrees(const Complex& a, const Complex& b) {
  std::set<int> out;
  for (int i : a.degrees()) out.insert(i);
  for (int i : b.degrees()) out.insert(i);
  return {out.begin(), out.end()};
}

// Necessary conditions, modulo m, for an integer chain map to be a homotopy
// equivalence. m = 0 tests over Z.
bool passes_free_homology(const ChainMap& phi, const Int& m) {
  for (int i : all_degrees(phi.source(), phi.target())) {
    const IntMatrix h = induced_free_homology_map(phi, i);
    if (h.rows() != h.cols()) return false;
    const Int det = h.rows() == 0 ? Int(1) : determinant(h);
    if (m == 0 ? (det != 1 && det != -1) : !is_unit_mod(det, m)) return false;
  }
  return true;
}

bool survives_mod(const ChainMap& phi, const Int& m) {
  if (!passes_free_homology(phi, m)) return false;
  const Complex c = reduce_mod(cone(phi).complex, m);
  return is_acyclic(c) && is_contractible(c).has_value();
}

bool is_equivalence_candidate(const ChainMap& phi) {
  const Complex c = cone(phi).complex;
  if (phi.ring().is_integers() && !passes_free_homology(phi, 0)) return false;
  return is_acyclic(c);
}

std::optional<YesWitness> witness_for(const ChainMap& phi, const std::vector<Constraint>& cs) {
  if (!is_equivalence_candidate(phi)) return std::nullopt;
  auto eq = is_homotopy_equivalence(phi);
  if (!eq) return std::nullopt;
  YesWitness w{phi, *eq, {}};
  for (const auto& c : cs) {
    auto h = homotopic(apply(c, phi), c.required);
    if (!h) return std::nullopt;
    w.constraints.push_back(*h);
  }
  return w;
}

Verdict yes(YesWitness w, std::vector<Int> schedule, std::string detail) {
  Verdict v;
  v.kind = VerdictKind::Yes;
  v.witness = std::move(w);
  v.schedule = std::move(schedule);
  v.detail = std::move(detail);
  return v;
}

Verdict no(const Int& m, const Int& exhausted, std::vector<Int> schedule, std::string detail) {
  Verdict v;
  v.kind = VerdictKind::NoCertified;
  v.modulus = m;
  v.exhausted = exhausted;
  v.schedule = std::move(schedule);
  v.detail = std::move(detail);
  return v;
}

Verdict unknown(std::vector<Int> schedule, std::string detail) {
  Verdict v;
  v.schedule = std::move(schedule);
  v.detail = std::move(detail);
  return v;
}

std::vector<Int> modulus_schedule(const Complex& d, const Complex& t,
                                  const std::vector<Constraint>& cs, const SearchConfig& config) {
  std::vector<Int> exponents;
  auto collect = [&exponents](const Complex& c) {
    for (const auto& [i, h] : homology(c)) exponents.push_back(h.torsion_exponent());
  };
  collect(d);
  collect(t);
  for (const auto& c : cs) {
    collect(pre_source(c, d));
    collect(post_target(c, t));
  }
  std::vector<Int> out;
  auto add = [&out](const Int& m) {
    if (m < 2) return;
    for (const auto& x : out)
      if (x == m) return;
    out.push_back(m);
  };
  add(lcm_of(exponents));
  if (config.parameter) add(*config.parameter * *config.parameter);
  for (const auto& m : config.moduli) add(m);
  return out;
}

std::string join(const std::vector<Int>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x.get_str();
  return "{" + s + "}";
}

Verdict search_over_ring(const Complex& d, const Complex& t, const std::vector<Constraint>& cs,
                         const SearchConfig& config) {
  const Int& m = d.ring().modulus();
  const auto hom = hom_group(d, t);
  const ClassCoset classes = exact_classes(hom, cs);
  if (!classes.soluble) return no(m, 0, {m}, "constraints insoluble over " + d.ring().to_string());
  // Cheap candidates first, so a large coset does not hide an obvious Yes.
  if (d == t)
    if (auto w = witness_for(ChainMap::identity(d), cs)) return yes(std::move(*w), {m}, "identity");
  if (classes.coset)
    if (auto w = witness_for(hom.map_of(classes.coset->particular), cs))
      return yes(std::move(*w), {m}, "particular solution");
  std::optional<YesWitness> found;
  Int visited = 0;
  const WalkStatus status = walk_classes(hom, classes, config.max_enum, [&](const ChainMap& phi) {
    ++visited;
    found = witness_for(phi, cs);
    return !found;
  });
  if (found) return yes(std::move(*found), {m}, "class " + visited.get_str() + " of the coset");
  if (status == WalkStatus::Overflow)
    return unknown({m}, "coset of " + class_count(classes).get_str() + " classes exceeds the cap");
  return no(m, visited, {m}, "all " + visited.get_str() + " classes enumerated");
}

}  // namespace

ModularOutcome modular_search(const Complex& d, const Complex& t,
                              const std::vector<Constraint>& constraints, const Int& m,
                              const Int& cap) {
  check_shapes(d, t, constraints);
  if (!d.ring().is_integers()) throw std::invalid_argument("modular_search: ring must be Z");
  const auto hom = hom_group_tensor(d, t, m);
  const ClassCoset classes = tensor_classes(hom, constraints, m);
  ModularOutcome out;
  if (!classes.soluble) {
    out.kind = ModularOutcome::Kind::Insoluble;
    return out;
  }
  out.cardinality = class_count(classes);
  const WalkStatus status = walk_classes(hom, classes, cap, [&](const ChainMap& phi) {
    if (survives_mod(phi, m)) ++out.survivors;
    return true;
  });
  if (status == WalkStatus::Overflow)
    out.kind = ModularOutcome::Kind::Overflow;
  else
    out.kind = out.survivors == 0 ? ModularOutcome::Kind::Refuted : ModularOutcome::Kind::Survivors;
  return out;
}

Verdict find_compatible_equivalence(const Complex& d, const Complex& t,
                                    const std::vector<Constraint>& constraints,
                                    const SearchConfig& config) {
  check_shapes(d, t, constraints);
  if (!d.ring().is_integers()) return search_over_ring(d, t, constraints, config);

  // Candidates: the identity, then a particular solution.
  const auto hom = hom_group(d, t);
  const Assembled sys = assemble(hom, constraints, true);
  const auto sol = solve_linear(sys.a, sys.rhs);
  if (!sol) return no(0, 0, {}, "constraints insoluble over Z");
  if (d == t)
    if (auto w = witness_for(ChainMap::identity(d), constraints))
      return yes(std::move(*w), {}, "identity");
  const IntVector phi0 = head(sol->particular, sys.phi_size);
  if (auto w = witness_for(hom.chain_map(phi0), constraints))
    return yes(std::move(*w), {}, "particular solution");

  // Modular refutation.
  const std::vector<Int> schedule = modulus_schedule(d, t, constraints, config);
  std::vector<Int> tried;
  std::string notes;
  for (const auto& m : schedule) {
    tried.push_back(m);
    const ModularOutcome r = modular_search(d, t, constraints, m, config.max_enum);
    switch (r.kind) {
      case ModularOutcome::Kind::Refuted:
        return no(m, r.cardinality, tried,
                  "none of the " + r.cardinality.get_str() + " classes mod " + m.get_str() +
                      " is an equivalence");
      case ModularOutcome::Kind::Insoluble:
        return no(m, 0, tried, "constraints insoluble mod " + m.get_str());
      case ModularOutcome::Kind::Overflow:
        notes += " mod " + m.get_str() + ": overflow;";
        break;
      case ModularOutcome::Kind::Survivors:
        notes += " mod " + m.get_str() + ": " + r.survivors.get_str() + " survivors;";
        break;
    }
  }

  // Bounded search over Z.
  std::vector<IntVector> dirs;
  for (const auto& k : sol->kernel) dirs.push_back(head(k, sys.phi_size));
  const QuotientPresentation q = present_quotient(
      IntMatrix::from_columns(sys.phi_size, dirs), hom.boundaries(), Int(0));
  std::optional<YesWitness> found;
  const WalkStatus status =
      enumerate_bounded(phi0, q, config.coeff_bound, config.max_enum, [&](const IntVector& v) {
        found = witness_for(hom.chain_map(v), constraints);
        return !found;
      });
  if (found) return yes(std::move(*found), tried, "bounded search over Z");
  return unknown(tried, "no equivalence with coefficients in [-" + config.coeff_bound.get_str() +
                            ", " + config.coeff_bound.get_str() + "]" +
                            (status == WalkStatus::Overflow ? " (cap hit)" : "") + ";" + notes +
                            " moduli tried " + join(tried));
}

bool reverify(const YesWitness& w, const std::vector<Constraint>& constraints) {
  if (check_chain_map(w.phi)) return false;
  const Complex c = cone(w.phi).complex;
  if (!(w.equivalence.from() == ChainMap::identity(c)) || !w.equivalence.to().is_zero() ||
      !(w.equivalence.to().target() == c))
    return false;
  if (check_homotopy(w.equivalence.from(), w.equivalence.to(), w.equivalence.components()))
    return false;
  if (w.constraints.size() != constraints.size()) return false;
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    const Homotopy& h = w.constraints[j];
    if (!(h.from() == apply(constraints[j], w.phi)) || !(h.to() == constraints[j].required))
      return false;
    if (check_homotopy(h.from(), h.to(), h.components())) return false;
  }
  return true;
}

std::optional<ChainMap> solve_constraints(const Complex& d, const Complex& t,
                                          const std::vector<Constraint>& constraints) {
  check_shapes(d, t, constraints);
  const auto hom = hom_group(d, t);
  const Assembled sys = assemble(hom, constraints, true);
  const Int& m = d.ring().modulus();
  const auto sol = solve_linear(sys.a, sys.rhs, m == 0 ? std::nullopt : std::optional<Int>(m));
  if (!sol) return std::nullopt;
  return hom.chain_map(head(sol->particular, sys.phi_size));
}

// ---------------------------------------------------------------------------
// Homotopy cartesian squares and vertical fits

CartesianProblem cartesian_problem(const CommutativeSquare& s) {
  const DiagonalSequence diag = diagonal(s);
  Cone c = cone(diag.first);
  Constraint k{c.inclusion, std::nullopt, diag.second};
  return {std::move(c), std::move(k)};
}

CartesianResult is_homotopy_cartesian(const CommutativeSquare& s, const SearchConfig& config) {
  const auto [c, k] = cartesian_problem(s);
  const std::vector<Constraint> cs{k};
  CartesianResult out{find_compatible_equivalence(c.complex, s.c.target(), cs, config), {}, {}};
  if (out.verdict.kind != VerdictKind::Yes) return out;

  // Transport the projection: w∘φ ≃ π.
  const ChainMap& phi = out.verdict.witness->phi;
  const auto w = solve_constraints(s.c.target(), c.projection.target(),
                                   {{phi, std::nullopt, c.projection}});
  if (!w) throw std::logic_error("is_homotopy_cartesian: projection cannot be transported");
  Triangle t(diagonal(s).first, k.required, *w);
  const auto check = verify_distinguished_with_witness(t, phi);
  if (!check.ok()) throw std::logic_error("is_homotopy_cartesian: completed triangle fails");
  out.triangle = std::move(t);
  out.triangle_witness = check.witness;
  return out;
}

Triangle rotate_to_front(const Triangle& t, const ChainMap& m) {
  if (t.f() == m) return t;
  if (t.g() == m) return rotate(t);
  if (t.h() == m) return rotate(rotate(t));
  throw std::invalid_argument("rotate_to_front: map does not occur in the triangle");
}

VerticalFit vertical_fit_problem(const CommutativeSquare& s, const Triangle& t_b,
                                 const Triangle& t_c) {
  const Triangle tb = rotate_to_front(t_b, s.b);
  const Triangle tc = rotate_to_front(t_c, s.c);
  // (g, g', φ) must be a morphism tb → tc.
  std::vector<Constraint> cs;
  cs.push_back({tb.g(), std::nullopt, compose(tc.g(), s.g_prime)});
  cs.push_back({std::nullopt, tc.h(), compose(shift(s.g), tb.h())});
  return {tb.z(), tc.z(), std::move(cs)};
}

Verdict fits_vertical_iso(const CommutativeSquare& s, const Triangle& t_b, const Triangle& t_c,
                          const SearchConfig& config) {
  const VerticalFit p = vertical_fit_problem(s, t_b, t_c);
  return find_compatible_equivalence(p.source, p.target, p.constraints, config);
}

}  // namespace hocart
