#include "hocart/prop2.hpp"

#include <memory>
#include <random>
#include <stdexcept>

#include "hocart/detail/prime_field.hpp"
#include "hocart/hom.hpp"

namespace hocart {

namespace {

// Bounded draws from the raw engine keep the stream independent of the
// standard library's distribution implementations.
class Draw {
 public:
  Draw(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    rng_.seed(seq);
  }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }

 private:
  std::mt19937_64 rng_;
};

IntMatrix random_matrix(Draw& r, std::size_t rows, std::size_t cols, std::int64_t p) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(r.below(p));
  return m;
}

// Rows spanning {v : v·d = 0}.
IntMatrix left_kernel(const IntMatrix& d, std::int64_t p) {
  const auto basis = detail::nullspace_fp(d.transpose(), p);
  IntMatrix out(basis.size(), d.rows());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < d.rows(); ++j) out(i, j) = basis[i][j];
  return out;
}

Complex random_complex(Draw& r, const FuzzConfig& cfg) {
  const Ring ring = Ring::integers_mod(cfg.p);
  const std::size_t degrees = 1 + r.below(cfg.max_degrees);
  std::map<int, std::size_t> ranks;
  std::size_t left = cfg.max_total;
  for (std::size_t i = 0; i < degrees; ++i) {
    const std::size_t rk = r.below(std::min(cfg.max_rank, left) + 1);
    ranks[static_cast<int>(i)] = rk;
    left -= rk;
  }
  std::map<int, IntMatrix> diffs;
  for (std::size_t i = 0; i + 1 < degrees; ++i) {
    const int d = static_cast<int>(i);
    const std::size_t src = ranks[d];
    // δ(d) = R·L where the rows of L kill the image of δ(d-1).
    const IntMatrix l = d == 0 ? IntMatrix::identity(src) : left_kernel(diffs.at(d - 1), cfg.p);
    diffs[d] = random_matrix(r, ranks[d + 1], l.rows(), cfg.p) * l;
  }
  return Complex(ring, ranks, diffs);
}

ChainMap null_homotopic(Draw& r, const Complex& s, const Complex& t, std::int64_t p) {
  std::map<int, IntMatrix> k;
  for (int i : s.degrees())
    if (t.rank(i - 1) > 0) k[i] = random_matrix(r, t.rank(i - 1), s.rank(i), p);
  auto kk = [&](int i) {
    const auto it = k.find(i);
    return it == k.end() ? IntMatrix(t.rank(i - 1), s.rank(i)) : it->second;
  };
  std::map<int, IntMatrix> comps;
  for (int i : s.degrees())
    comps[i] = t.differential(i - 1) * kk(i) + kk(i + 1) * s.differential(i);
  return ChainMap(s, t, comps);
}

ChainMap random_map(Draw& r, const Complex& s, const Complex& t, std::int64_t p) {
  const HomGroupPresentation hom = hom_group(s, t);
  IntVector coords(hom.factors().size());
  for (auto& x : coords) x = static_cast<long>(r.below(p));
  return hom.map_of(coords) + null_homotopic(r, s, t, p);
}

std::string verdict_note(const char* what, const Verdict& v) {
  return std::string(what) + ": " + to_string(v.kind) + (v.detail.empty() ? "" : " (" + v.detail + ")");
}

}  // namespace

CommutativeSquare Prop2Diagram::square() const {
  return make_square(top.g(), bottom.g(), b, c);
}

TriangleMorphism Prop2Diagram::morphism() const {
  return {top, bottom, ChainMap::identity(top.x()), b, c};
}

FuzzSample fuzz_prop2(const FuzzConfig& cfg, std::size_t index) {
  if (!detail::fits_word_prime(Int(static_cast<long>(cfg.p))))
    throw std::invalid_argument("fuzz_prop2: p must be a prime below 2^31");
  Draw r(cfg.seed, index);
  const Complex a = random_complex(r, cfg);
  const Complex bb = random_complex(r, cfg);
  const Complex bp = random_complex(r, cfg);
  const ChainMap f = random_map(r, a, bb, cfg.p);
  const ChainMap b = random_map(r, bb, bp, cfg.p);
  const Triangle top = standard_triangle(f);
  const Triangle bottom = standard_triangle(compose(b, f));

  std::map<int, IntMatrix> comps;
  for (int i : top.z().degrees())
    comps[i] = block_diagonal(b.component(i), IntMatrix::identity(a.rank(i + 1)));
  const ChainMap c_tilde(top.z(), bottom.z(), comps);

  FuzzSample out{{top, bottom, b, c_tilde, c_tilde, false}, 0};
  if (!cfg.perturb) return out;
  const Complex a1 = shift(a);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const ChainMap psi0 = random_map(r, a1, bottom.z(), cfg.p);
    const ChainMap c = c_tilde + compose(psi0, top.h());
    if (homotopic(compose(bottom.h(), c), top.h())) {
      out.diagram.c = c;
      out.diagram.perturbed = true;
      return out;
    }
    ++out.discarded;
  }
  return out;
}

Prop2Replay prop2_replay(const Prop2Diagram& d) {
  const std::int64_t p = d.c.ring().modulus().get_si();
  const Complex& cp = d.bottom.z();
  const Complex a1 = shift(d.top.x());
  Prop2Replay out{ChainMap::zero(a1, cp), ChainMap::zero(cp, cp), ChainMap::zero(cp, cp),
                  ChainMap::identity(cp), std::nullopt, false, false, false, {}};

  // ψ: solve Σ x_j [ρ_j∘h] = [c_tilde - c] in Hom(C, C').
  const HomGroupPresentation from_a = hom_group(a1, cp);
  const HomGroupPresentation from_c = hom_group(d.top.z(), cp);
  const std::size_t n = from_c.factors().size(), k = from_a.factors().size();
  IntMatrix lhs(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    const IntVector col = from_c.lookup(compose(from_a.representatives()[j], d.top.h()));
    for (std::size_t i = 0; i < n; ++i) lhs(i, j) = col[i];
  }
  const auto sol = solve_linear(lhs, from_c.lookup(d.c_tilde - d.c), Int(p));
  if (!sol) {
    out.failures.push_back("c_tilde - c does not factor through h");
    return out;
  }
  out.psi = from_a.map_of(sol->particular);
  out.eps = compose(out.psi, d.bottom.h());

  // End(C') as an F_p-algebra on the class representatives.
  const HomGroupPresentation end = hom_group(cp, cp);
  const std::size_t dim = end.factors().size();
  std::vector<std::int64_t> constants(dim * dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const IntVector prod =
          end.lookup(compose(end.representatives()[i], end.representatives()[j]));
      for (std::size_t l = 0; l < dim; ++l) constants[(i * dim + j) * dim + l] = prod[l].get_si();
    }
  auto coords = [&](const ChainMap& m) {
    std::vector<std::int64_t> v;
    for (const Int& x : end.lookup(m)) v.push_back(x.get_si());
    return v;
  };
  auto alg = std::make_shared<const StructureAlgebra>(p, dim, constants,
                                                      coords(ChainMap::identity(cp)));
  const AlgebraElement eps{alg, coords(out.eps)};
  out.certificate = find_alpha(eps);
  if (!verify_certificate(eps, *out.certificate, false))
    out.failures.push_back("unit certificate does not verify");
  IntVector alpha;
  for (auto x : std::get<AlgebraElement>(out.certificate->alpha).coords) alpha.push_back(Int(x));
  out.alpha = end.map_of(alpha);
  out.theta = ChainMap::identity(cp) + out.eps + compose(out.alpha, compose(out.eps, out.eps));

  out.theta_c = homotopic(compose(out.theta, d.c), d.c_tilde).has_value();
  out.theta_g = homotopic(compose(out.theta, d.bottom.g()), d.bottom.g()).has_value();
  out.theta_equivalence = is_homotopy_equivalence(out.theta).has_value();
  if (!out.theta_c) out.failures.push_back("theta∘c is not homotopic to c_tilde");
  if (!out.theta_g) out.failures.push_back("theta∘g' is not homotopic to g'");
  if (!out.theta_equivalence) out.failures.push_back("theta is not an equivalence");
  return out;
}

bool FuzzTrial::pass() const {
  return morphism_ok && cartesian == VerdictKind::Yes && cartesian_reverified &&
         vertical == VerdictKind::Yes && vertical_reverified && replay_ok;
}

FuzzTrial run_fuzz_trial(const FuzzConfig& config, std::size_t index, const SearchConfig& search) {
  FuzzTrial t;
  t.index = index;
  const FuzzSample s = fuzz_prop2(config, index);
  t.discarded = s.discarded;
  t.perturbed = s.diagram.perturbed;
  const MorphismCheck m = verify_triangle_morphism(s.diagram.morphism());
  t.morphism_ok = m.ok();
  for (const auto& f : m.failures) t.notes.push_back("morphism: " + f);

  const CommutativeSquare sq = s.diagram.square();
  const CartesianResult cart = is_homotopy_cartesian(sq, search);
  t.cartesian = cart.verdict.kind;
  if (cart.verdict.witness)
    t.cartesian_reverified = reverify(*cart.verdict.witness, {cartesian_problem(sq).constraint});
  if (t.cartesian != VerdictKind::Yes) t.notes.push_back(verdict_note("cartesian", cart.verdict));

  const Triangle tb = standard_triangle(sq.b), tc = standard_triangle(sq.c);
  const Verdict vert = fits_vertical_iso(sq, tb, tc, search);
  t.vertical = vert.kind;
  if (vert.witness)
    t.vertical_reverified = reverify(*vert.witness, vertical_fit_problem(sq, tb, tc).constraints);
  if (t.vertical != VerdictKind::Yes) t.notes.push_back(verdict_note("vertical", vert));

  const Prop2Replay r = prop2_replay(s.diagram);
  t.replay_ok = r.ok();
  t.psi_nonzero = !homotopic(r.psi, ChainMap::zero(r.psi.source(), r.psi.target()));
  for (const auto& f : r.failures) t.notes.push_back("replay: " + f);
  return t;
}

}  // namespace hocart
