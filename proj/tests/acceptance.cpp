// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "f2_oracle.hpp"
#include "hocart/hom.hpp"
#include "hocart/paper.hpp"
#include "hocart/prop2.hpp"
#include "hocart/unit_lemma.hpp"
#include "test_support.hpp"

using namespace hocart;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Result {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

// Claims over the asserted parameter range, shared by the first two criteria.
struct ClaimRun {
  std::vector<Verdict> cartesian, vertical;
  double seconds = 0;
};

const ClaimRun& claims() {
  static const ClaimRun run = [] {
    ClaimRun r;
    const auto t0 = Clock::now();
    for (int a = 3; a <= 12; ++a) {
      const StarDiagram s = build_star(a);
      SearchConfig config;
      config.parameter = a;
      r.cartesian.push_back(is_homotopy_cartesian(s.middle, config).verdict);
      r.vertical.push_back(fits_vertical_iso(s.middle, s.t_b, s.t_c, config));
    }
    r.seconds = seconds_since(t0);
    return r;
  }();
  return run;
}

Result criterion1() {
  Result r;
  const ClaimRun& c = claims();
  for (int a = 3; a <= 12; ++a) {
    const Verdict& v = c.cartesian[a - 3];
    if (v.kind != VerdictKind::NoCertified || v.modulus != a * a)
      r.fail("a=" + std::to_string(a) + ": " + to_string(v.kind) + " " + v.modulus.get_str());
  }
  if (c.seconds >= 60) r.fail("runtime " + std::to_string(c.seconds) + " s");
  if (r.ok) r.detail = "NoCertified(a^2) for a=3..12, 0 unknown, " + std::to_string(c.seconds) + " s";
  return r;
}

Result criterion2() {
  Result r;
  const ClaimRun& c = claims();
  for (int a = 3; a <= 12; ++a) {
    const Verdict& v = c.vertical[a - 3];
    const Verdict& w = c.cartesian[a - 3];
    if (v.kind != VerdictKind::NoCertified || v.modulus != a * a)
      r.fail("a=" + std::to_string(a) + ": " + to_string(v.kind) + " " + v.modulus.get_str());
    if (v.kind != w.kind || v.modulus != w.modulus)
      r.fail("a=" + std::to_string(a) + ": vertical and cartesian verdicts differ");
  }
  if (r.ok) r.detail = "NoCertified(a^2) for a=3..12, coincides with the cartesian verdict";
  return r;
}

Result criterion3() {
  Result r;
  int n = 0;
  for (int k = 1; k <= 4; ++k)
    for (int a = -5; a <= 5; ++a)
      for (int b = -5; b <= 5; ++b, ++n) {
        const Lemma2Check c = check_lemma2(k, a, b);
        if (!c.ok())
          r.fail("k=" + std::to_string(k) + " a=" + std::to_string(a) + " b=" + std::to_string(b) +
                 ": " + c.failures.front());
      }
  if (r.ok) r.detail = std::to_string(n) + " instances verified with their witnesses";
  return r;
}

Result criterion4() {
  Result r;
  for (int a = 3; a <= 12; ++a) {
    try {
      const StarDiagram s = build_star(a);
      if (!(s.upper == rotate(lemma2(2, a, 0).triangle)) ||
          !(s.lower == rotate(rotate(lemma2(1, a, -a).triangle))))
        r.fail("a=" + std::to_string(a) + ": rotation equality");
      const StarCheck c = check_star(s);
      if (c.squares.size() != 6 || !c.ok()) r.fail("a=" + std::to_string(a) + ": squares");
    } catch (const std::exception& e) {
      r.fail("a=" + std::to_string(a) + ": " + e.what());
    }
  }
  if (r.ok) r.detail = "rows equal their rotations; six squares commute for a=3..12";
  return r;
}

Result criterion5() {
  Result r;
  const auto t0 = Clock::now();
  std::size_t trials = 0, nonzero = 0;
  for (std::int64_t p : {2, 3}) {
    FuzzConfig cfg;
    cfg.p = p;
    cfg.seed = 42;
    for (std::size_t i = 0; i < 200; ++i, ++trials) {
      const FuzzTrial t = run_fuzz_trial(cfg, i);
      nonzero += t.psi_nonzero;
      if (!t.pass())
        r.fail("p=" + std::to_string(p) + " trial " + std::to_string(i) + ": " +
               (t.notes.empty() ? "failed" : t.notes.front()));
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 300) r.fail("runtime " + std::to_string(secs) + " s");
  if (r.ok)
    r.detail = std::to_string(trials) + " diagrams, all Yes and re-verified, replay holds (" +
               std::to_string(nonzero) + " with nonzero psi), " + std::to_string(secs) + " s";
  return r;
}

// Independent matrix arithmetic mod p for the nilpotency check.
std::vector<std::int64_t> mat_mul(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b, std::size_t k,
                                  std::int64_t p) {
  std::vector<std::int64_t> c(k * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < k; ++j) c[i * k + j] = (c[i * k + j] + a[i * k + l] * b[l * k + j]) % p;
  return c;
}

bool nilpotent_within(const MatFp& eps, const MatFp& coeff, bool beta, std::size_t m) {
  const std::size_t k = eps.k;
  const std::int64_t p = eps.p;
  const auto e2 = mat_mul(eps.entries, eps.entries, k, p);
  const auto corr = beta ? mat_mul(e2, coeff.entries, k, p) : mat_mul(coeff.entries, e2, k, p);
  std::vector<std::int64_t> n(k * k);
  for (std::size_t i = 0; i < k * k; ++i) n[i] = (eps.entries[i] + corr[i]) % p;
  std::vector<std::int64_t> power(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) power[i * k + i] = 1;
  for (std::size_t i = 0; i <= m; ++i) power = mat_mul(power, n, k, p);
  for (auto x : power)
    if (x != 0) return false;
  return true;
}

Result criterion6() {
  Result r;
  std::mt19937_64 rng(42);
  const std::int64_t primes[] = {2, 3, 5};
  for (int trial = 0; trial < 500; ++trial) {
    MatFp eps;
    eps.p = primes[trial % 3];
    eps.k = 1 + rng() % 4;
    for (std::size_t i = 0; i < eps.k * eps.k; ++i)
      eps.entries.push_back(static_cast<std::int64_t>(rng() % eps.p));
    for (bool beta : {false, true}) {
      const UnitCertificate c = beta ? find_beta(eps) : find_alpha(eps);
      if (!verify_certificate(eps, c, beta)) r.fail("certificate rejected, trial " + std::to_string(trial));
      if (!c.relation || !nilpotent_within(eps, std::get<MatFp>(c.alpha), beta, c.relation->m))
        r.fail("not nilpotent, trial " + std::to_string(trial));
    }
  }
  if (find_alpha_over_Z(3)) r.fail("eps = 3 over Z has a solution");
  for (long e = -100; e <= 100; ++e) {
    // α ε² ∈ {-ε, -2-ε}, and |ε| + 2 < ε² for |ε| ≥ 3, so the window below is exhaustive.
    bool expected = false;
    for (long alpha = -10; alpha <= 10; ++alpha) {
      const long u = 1 + e + alpha * e * e;
      expected = expected || u == 1 || u == -1;
    }
    if (find_alpha_over_Z(e).has_value() != expected) r.fail("Z oracle mismatch at " + std::to_string(e));
  }
  if (r.ok) r.detail = "500 matrices (alpha and beta) verified and nilpotent; Z agrees on [-100, 100]";
  return r;
}

Result criterion7() {
  Result r;
  std::mt19937_64 rng(42);
  std::size_t maps_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Complex s = testing::random_f2_complex(rng, 4);
    const Complex t = testing::random_f2_complex(rng, 4);
    const testing::F2Oracle oracle(s, t);
    const HomGroupPresentation hom = hom_group(s, t);
    if (hom.group().free_rank != 0 || hom.group().invariant_factors.size() != oracle.hom_dimension())
      r.fail("hom dimension, trial " + std::to_string(trial));
    const auto& maps = oracle.chain_maps();
    const ChainMap zero = ChainMap::zero(s, t);
    const IntVector zero_class = hom.lookup(zero);
    // Every chain map against zero covers the whole homotopy relation.
    for (std::uint32_t m : maps) {
      const ChainMap f = oracle.to_chain_map(m);
      const bool expected = oracle.homotopic(m, 0);
      if (homotopic(f, zero).has_value() != expected || (hom.lookup(f) == zero_class) != expected)
        r.fail("homotopy class mismatch, trial " + std::to_string(trial));
      ++maps_checked;
    }
    for (int k = 0; k < 10 && !maps.empty(); ++k) {
      const std::uint32_t fm = maps[rng() % maps.size()], gm = maps[rng() % maps.size()];
      if (homotopic(oracle.to_chain_map(fm), oracle.to_chain_map(gm)).has_value() !=
          oracle.homotopic(fm, gm))
        r.fail("pair mismatch, trial " + std::to_string(trial));
    }
  }
  if (r.ok) r.detail = "100 pairs, " + std::to_string(maps_checked) + " chain maps classified identically";
  return r;
}

Result criterion8() {
  Result r;
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const IntMatrix a = testing::random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6, 9);
    const SmithDecomposition d = snf(a);
    if (!(d.U * a * d.V == d.D)) r.fail("UAV != D");
    if (abs(determinant(d.U)) != 1 || abs(determinant(d.V)) != 1) r.fail("not unimodular");
    for (std::size_t i = 0; i < d.D.rows(); ++i)
      for (std::size_t j = 0; j < d.D.cols(); ++j)
        if (i != j && d.D(i, j) != 0) r.fail("off-diagonal entry");
    const IntVector diag = d.diagonal();
    for (std::size_t i = 0; i + 1 < diag.size(); ++i)
      if (diag[i] < 0 || (diag[i] == 0 ? diag[i + 1] != 0 : diag[i + 1] % diag[i] != 0))
        r.fail("divisibility chain");
  }
  int square = 0;
  while (square < 100) {
    const std::size_t n = 1 + rng() % 5;
    const IntMatrix a = testing::random_matrix(rng, n, n, 9);
    const Int det = determinant(a);
    if (det == 0) continue;
    ++square;
    const FGAbelianGroup g = cokernel(a);
    if (g.free_rank != 0 || g.torsion_order() != abs(det)) r.fail("cokernel order != |det|");
  }
  if (r.ok) r.detail = "300 decompositions and 100 cokernel orders exact";
  return r;
}

Result criterion9() {
  Result r;
  std::vector<Triangle> corpus;
  for (int k = 1; k <= 4; ++k)
    for (int a = -5; a <= 5; ++a)
      for (int b = -5; b <= 5; ++b) corpus.push_back(lemma2(k, a, b).triangle);
  for (int a = 3; a <= 12; ++a) {
    const StarDiagram s = build_star(a);
    for (const Triangle* t : {&s.upper, &s.lower, &s.t_b, &s.t_c}) corpus.push_back(*t);
  }
  for (std::int64_t p : {2, 3}) {
    FuzzConfig cfg;
    cfg.p = p;
    for (std::size_t i = 0; i < 200; ++i) {
      const FuzzSample s = fuzz_prop2(cfg, i);
      corpus.push_back(s.diagram.top);
      corpus.push_back(s.diagram.bottom);
    }
  }
  for (const Triangle& t : corpus) {
    if (!(rotate(rotate(rotate(t))) == shift_negated(t))) r.fail("rotate^3 != shift_negated");
    for (const ChainMap* m : {&t.f(), &t.g(), &t.h()}) {
      const Cone c = cone(*m);
      if (!compose(c.projection, c.inclusion).is_zero()) r.fail("projection after inclusion != 0");
    }
    for (const Complex* x : {&t.x(), &t.y(), &t.z()})
      if (!is_contractible(cone(ChainMap::identity(*x)).complex)) r.fail("cone(id) not contractible");
  }
  if (r.ok) r.detail = std::to_string(corpus.size()) + " triangles";
  return r;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Result()>> criteria[] = {
      {"middle square is not homotopy cartesian", criterion1},
      {"middle square does not fit a vertical isomorphism", criterion2},
      {"triangle family verifies on the parameter grid", criterion3},
      {"star diagram rows and squares", criterion4},
      {"fuzzed morphisms over F_2 and F_3", criterion5},
      {"unit construction over finite fields and Z", criterion6},
      {"F_2 brute-force oracle", criterion7},
      {"Smith normal form and cokernel properties", criterion8},
      {"structural identities", criterion9},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto t0 = Clock::now();
    Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] criterion %d: %s (%s) [%.2f s]\n", r.ok ? "PASS" : "FAIL", index, name,
                r.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += !r.ok;
  }
  return failed == 0 ? 0 : 1;
}
