#include <random>

#include "doctest.h"
#include "hocart/squares.hpp"
#include "test_support.hpp"

using namespace hocart;

namespace {

const Ring ZZ = Ring::integers();

Complex two_term(int degree, const IntMatrix& d) {
  return Complex(ZZ, {{degree, d.cols()}, {degree + 1, d.rows()}}, {{degree, d}});
}

Complex point(int degree = 0) { return Complex::concentrated(ZZ, degree); }

// Inclusions of the summands of a ⊕ b.
ChainMap first_inclusion(const Complex& a, const Complex& b) {
  const Complex s = direct_sum(a, b);
  std::map<int, IntMatrix> comps;
  for (int i : a.degrees())
    comps.emplace(i, vstack(IntMatrix::identity(a.rank(i)), IntMatrix(b.rank(i), a.rank(i))));
  return ChainMap(a, s, comps);
}

ChainMap second_inclusion(const Complex& a, const Complex& b) {
  const Complex s = direct_sum(a, b);
  std::map<int, IntMatrix> comps;
  for (int i : b.degrees())
    comps.emplace(i, vstack(IntMatrix(a.rank(i), b.rank(i)), IntMatrix::identity(b.rank(i))));
  return ChainMap(b, s, comps);
}

// Square whose C' is the cone of its own diagonal.
CommutativeSquare cone_square(const ChainMap& b, const ChainMap& g) {
  const Cone c = cone(stack_vertical(b, g));
  const ChainMap gp = compose(c.inclusion, first_inclusion(b.target(), g.target()));
  const ChainMap cc = -compose(c.inclusion, second_inclusion(b.target(), g.target()));
  return make_square(g, gp, b, cc);
}

struct Middle {
  CommutativeSquare square;
  Triangle t_b;
  Triangle t_c;
};

Middle middle(const Int& a) {
  const Int a2 = a * a;
  const Complex bb = two_term(0, IntMatrix{{-a2 * a}, {a2}});
  const Complex cc = two_term(0, IntMatrix{{a2}});
  const ChainMap g(bb, cc, {{0, IntMatrix{{a}}}, {1, IntMatrix{{-1, 0}}}});
  const ChainMap b(bb, cc, {{0, IntMatrix{{1}}}, {1, IntMatrix{{0, 1}}}});
  const ChainMap gp(cc, point(), {{0, IntMatrix{{a}}}});
  const ChainMap c(cc, point(), {{0, IntMatrix{{1 + a}}}});
  CommutativeSquare s = make_square(g, gp, b, c, std::map<int, IntMatrix>{{1, IntMatrix{{0, 1}}}});

  const ChainMap fb(two_term(1, IntMatrix{{-a2}}), point(1), {{1, IntMatrix{{-a2 * a}}}});
  const Triangle tb = standard_triangle(fb);
  const ChainMap fc(point(1), point(1), {{1, IntMatrix{{a2}}}});
  const ChainMap gc(point(1), cc, {{1, IntMatrix{{1 - a}}}});
  const Triangle tc(fc, gc, c);
  return {s, tb, tc};
}

}  // namespace

TEST_CASE("diagonal sequence blocks") {
  const Middle m = middle(3);
  const DiagonalSequence d = diagonal(m.square);
  CHECK(d.first.component(0) == IntMatrix{{1}, {3}});
  CHECK(d.second.component(0) == IntMatrix{{3, -4}});
  CHECK_FALSE(check_homotopy(d.null.from(), d.null.to(), d.null.components()));

  const Complex x = two_term(0, IntMatrix{{2}});
  const ChainMap b = Int(5) * ChainMap::identity(x);
  const ChainMap id = ChainMap::identity(x);
  const DiagonalSequence e = diagonal(make_square(id, id, b, b));
  CHECK(e.first.component(0) == IntMatrix{{5}, {1}});
  CHECK(e.second.component(1) == IntMatrix{{1, -5}});

  const ChainMap z = ChainMap::zero(x, x);
  const DiagonalSequence zero = diagonal(make_square(z, z, z, z));
  CHECK(zero.first.is_zero());
  CHECK(zero.second.is_zero());
}

TEST_CASE("trivial equivalence searches") {
  const Complex x = two_term(0, IntMatrix{{6}});
  const Verdict v = find_compatible_equivalence(x, x, {});
  REQUIRE(v.kind == VerdictKind::Yes);
  CHECK(v.witness->phi == ChainMap::identity(x));
  CHECK(reverify(*v.witness, {}));

  // No equivalence between non-isomorphic homology.
  const Verdict w = find_compatible_equivalence(x, two_term(0, IntMatrix{{4}}), {});
  CHECK(w.kind == VerdictKind::NoCertified);
  CHECK_THROWS_AS(find_compatible_equivalence(x, x, {{ChainMap::identity(point()), std::nullopt,
                                                      ChainMap::identity(point())}}),
                  std::invalid_argument);
}

TEST_CASE("cone squares are homotopy cartesian with the identity") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    // [Z --c--> Z] → [Z --ck--> Z] with b1 = k·b0.
    const Int c = testing::random_int(rng, 1, 5), k = testing::random_int(rng, 1, 3);
    const Int b0 = testing::random_int(rng, -3, 3);
    const Complex bb = two_term(0, IntMatrix{{c}});
    const ChainMap b(bb, two_term(0, IntMatrix{{c * k}}), {{0, IntMatrix{{b0}}}, {1, IntMatrix{{k * b0}}}});
    REQUIRE_FALSE(check_chain_map(b));
    const ChainMap g = testing::random_int(rng, -3, 3) * ChainMap::identity(bb);
    const CommutativeSquare s = cone_square(b, g);
    const CartesianResult r = is_homotopy_cartesian(s);
    REQUIRE(r.verdict.kind == VerdictKind::Yes);
    CHECK(r.verdict.witness->phi == ChainMap::identity(s.c.target()));
    CHECK(reverify(*r.verdict.witness, {cartesian_problem(s).constraint}));
    CHECK(r.triangle_witness.has_value());
    for (const Int m : {Int(4), Int(9), Int(25)}) {
      const auto out = modular_search(r.verdict.witness->phi.source(), s.c.target(),
                                      {cartesian_problem(s).constraint}, m, Int(1) << 20);
      CHECK(out.kind == ModularOutcome::Kind::Survivors);
    }
  }
}

TEST_CASE("vertical fit with identities") {
  const Complex x = two_term(0, IntMatrix{{3}});
  const ChainMap b = Int(2) * ChainMap::identity(x);
  const ChainMap id = ChainMap::identity(x);
  const CommutativeSquare s = make_square(id, id, b, b);
  const Triangle t = standard_triangle(b);
  const Verdict v = fits_vertical_iso(s, t, t);
  REQUIRE(v.kind == VerdictKind::Yes);
  CHECK(v.witness->phi == ChainMap::identity(t.z()));
  const VerticalFit p = vertical_fit_problem(s, t, t);
  CHECK(reverify(*v.witness, p.constraints));
  CHECK_THROWS_AS(rotate_to_front(t, Int(3) * b), std::invalid_argument);
}

TEST_CASE("the middle square is refuted modulo a squared") {
  for (Int a = 3; a <= 6; ++a) {
    const Middle m = middle(a);
    SearchConfig config;
    config.parameter = a;
    const CartesianResult c1 = is_homotopy_cartesian(m.square, config);
    CHECK(c1.verdict.kind == VerdictKind::NoCertified);
    CHECK(c1.verdict.modulus == a * a);
    const Verdict c2 = fits_vertical_iso(m.square, m.t_b, m.t_c, config);
    CHECK(c2.kind == VerdictKind::NoCertified);
    CHECK(c2.modulus == a * a);
    // Re-running with the same modulus reproduces the refutation.
    const auto [cd, k] = cartesian_problem(m.square);
    CHECK(modular_search(cd.complex, m.square.c.target(), {k}, a * a, config.max_enum).kind ==
          ModularOutcome::Kind::Refuted);
  }
}

TEST_CASE("search over a finite field finds equivalences") {
  const Ring f3 = Ring::integers_mod(3);
  const Complex x(f3, {{0, 2}, {1, 2}}, {{0, IntMatrix{{1, 0}, {0, 0}}}});
  const Complex y(f3, {{0, 1}, {1, 1}});
  const Verdict v = find_compatible_equivalence(x, y, {});
  REQUIRE(v.kind == VerdictKind::Yes);
  CHECK(reverify(*v.witness, {}));
  const Verdict w = find_compatible_equivalence(x, Complex(f3, {{0, 1}}), {});
  CHECK(w.kind == VerdictKind::NoCertified);
  CHECK(w.modulus == 3);
}
