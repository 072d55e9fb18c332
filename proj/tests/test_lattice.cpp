#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "hocart/lattice.hpp"
#include "test_support.hpp"

using namespace hocart;
using hocart::testing::random_int;
using hocart::testing::random_matrix;

namespace {

bool is_diagonal_chain(const IntMatrix& d) {
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  bool seen_zero = false;
  for (std::size_t i = 0; i < k; ++i) {
    if (d(i, i) < 0) return false;
    if (d(i, i) == 0) {
      seen_zero = true;
      continue;
    }
    if (seen_zero) return false;
    if (i > 0 && !mpz_divisible_p(d(i, i).get_mpz_t(), d(i - 1, i - 1).get_mpz_t())) return false;
  }
  return true;
}

// All residue vectors x in [0, m)^n with A x = b (mod m).
std::set<IntVector> brute_force_solutions(const IntMatrix& a, const IntVector& b, long m) {
  std::set<IntVector> out;
  const std::size_t n = a.cols();
  IntVector x(n, Int(0));
  for (;;) {
    const IntVector ax = a * x;
    bool ok = true;
    for (std::size_t i = 0; i < ax.size() && ok; ++i) ok = mod_floor(ax[i] - b[i], Int(m)) == 0;
    if (ok) out.insert(x);
    std::size_t i = 0;
    while (i < n && x[i] == m - 1) x[i++] = 0;
    if (i == n) break;
    ++x[i];
  }
  return out;
}

std::set<IntVector> coset_members(const LinearSolution& sol, const Int& m) {
  AffineCosetModM coset{m, sol.particular, sol.kernel, {}};
  auto members = enumerate_coset(coset, Int(1) << 20);
  REQUIRE(members);
  const std::set<IntVector> out(members->begin(), members->end());
  CHECK(out.size() == members->size());
  return out;
}

}  // namespace

TEST_CASE("snf worked examples") {
  const auto id = snf(IntMatrix::identity(2));
  CHECK(id.D == IntMatrix::identity(2));

  const auto zero = snf(IntMatrix(2, 2));
  CHECK(zero.D == IntMatrix(2, 2));

  const IntMatrix a{{2, 4}, {6, 8}};
  const auto dec = snf(a);
  CHECK(dec.D == IntMatrix{{2, 0}, {0, 4}});
  CHECK(dec.U * a * dec.V == dec.D);
}

TEST_CASE("snf handles empty shapes") {
  const auto dec = snf(IntMatrix(0, 3));
  CHECK(dec.V == IntMatrix::identity(3));
  CHECK(dec.D.rows() == 0);
  CHECK(dec.D.cols() == 3);
  CHECK(cokernel(IntMatrix(2, 0)).free_rank == 2);
}

TEST_CASE("snf invariants on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto rows = static_cast<std::size_t>(random_int(rng, 1, 6).get_si());
    const auto cols = static_cast<std::size_t>(random_int(rng, 1, 6).get_si());
    const IntMatrix a = random_matrix(rng, rows, cols, 20);
    const auto dec = snf(a);
    CHECK(dec.U * a * dec.V == dec.D);
    CHECK(abs(determinant(dec.U)) == 1);
    CHECK(abs(determinant(dec.V)) == 1);
    CHECK(dec.U * dec.U_inverse == IntMatrix::identity(rows));
    CHECK(dec.V * dec.V_inverse == IntMatrix::identity(cols));
    CHECK(is_diagonal_chain(dec.D));
    // The first invariant factor is the gcd of all entries.
    Int g = 0;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a(i, j).get_mpz_t());
    CHECK(dec.D(0, 0) == g);
  }
}

TEST_CASE("solve_linear worked examples") {
  auto x = solve_linear(IntMatrix{{2}}, {Int(4)});
  REQUIRE(x);
  CHECK(x->particular == IntVector{Int(2)});
  CHECK(x->kernel.empty());

  CHECK_FALSE(solve_linear(IntMatrix{{9}}, {Int(-3)}));
  CHECK_FALSE(solve_linear(IntMatrix{{9}}, {Int(-3)}, Int(9)));

  auto mod9 = solve_linear(IntMatrix{{3}}, {Int(6)}, Int(9));
  REQUIRE(mod9);
  CHECK(coset_members(*mod9, 9) == std::set<IntVector>{{Int(2)}, {Int(5)}, {Int(8)}});

  CHECK_THROWS_AS(solve_linear(IntMatrix{{1, 2}}, {Int(1), Int(2)}), std::invalid_argument);
}

TEST_CASE("modular solving agrees with residue brute force") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 250; ++trial) {
    const long m = random_int(rng, 2, 50).get_si();
    const auto unknowns = static_cast<std::size_t>(random_int(rng, 1, 3).get_si());
    const auto equations = static_cast<std::size_t>(random_int(rng, 1, 3).get_si());
    if (std::pow(double(m), double(unknowns)) > 30000) continue;
    const IntMatrix a = random_matrix(rng, equations, unknowns, 60);
    IntVector b(equations);
    for (auto& v : b) v = random_int(rng, -60, 60);
    const auto expected = brute_force_solutions(a, b, m);
    const auto sol = solve_linear(a, b, Int(m));
    CHECK(sol.has_value() == !expected.empty());
    if (!sol) continue;
    const IntVector ax = a * sol->particular;
    for (std::size_t i = 0; i < equations; ++i) CHECK(mod_floor(ax[i] - b[i], Int(m)) == 0);
    CHECK(coset_members(*sol, m) == expected);
  }
}

TEST_CASE("prime-field path matches the integer kernel") {
  std::mt19937_64 rng(5);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int trial = 0; trial < 40; ++trial) {
      const IntMatrix a = random_matrix(rng, 3, 4, 9);
      IntVector b(3);
      for (auto& v : b) v = random_int(rng, -9, 9);
      const auto fast = solve_linear(a, b, Int(p));
      const auto slow = solve_linear_via_snf(a, b, Int(p));
      REQUIRE(fast.has_value() == slow.has_value());
      if (fast) CHECK(coset_members(*fast, p) == coset_members(*slow, p));
    }
  }
}

TEST_CASE("integer solutions re-verify and kernels annihilate") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix a = random_matrix(rng, 3, 4, 10);
    const IntVector x0{random_int(rng, -5, 5), random_int(rng, -5, 5), random_int(rng, -5, 5),
                       random_int(rng, -5, 5)};
    const auto sol = solve_linear(a, a * x0);
    REQUIRE(sol);
    CHECK(a * sol->particular == a * x0);
    for (const auto& k : sol->kernel) CHECK(a * k == IntVector(3, Int(0)));
  }
}

TEST_CASE("cokernel examples") {
  CHECK(cokernel(IntMatrix{{0}}) == FGAbelianGroup{1, {}});
  CHECK(cokernel(IntMatrix{{1}}).is_trivial());
  CHECK(cokernel(IntMatrix{{9}}) == FGAbelianGroup{0, {Int(9)}});
  CHECK(cokernel(IntMatrix{{2, 0}, {0, 3}}).to_string() == "Z/6");
}

TEST_CASE("cokernel of a full-rank square matrix has order |det|") {
  std::mt19937_64 rng(13);
  int checked = 0;
  while (checked < 200) {
    const auto n = static_cast<std::size_t>(random_int(rng, 1, 5).get_si());
    const IntMatrix a = random_matrix(rng, n, n, 20);
    const Int det = determinant(a);
    if (det == 0) continue;
    const auto g = cokernel(a);
    CHECK(g.free_rank == 0);
    CHECK(g.torsion_order() == abs(det));
    ++checked;
  }
}

TEST_CASE("coset enumeration") {
  const IntVector v{Int(1), Int(2)};
  auto single = enumerate_coset(AffineCosetModM{5, v, {}, {}}, 10);
  REQUIRE(single);
  CHECK(*single == std::vector<IntVector>{v});

  auto two = enumerate_coset(AffineCosetModM{4, {Int(1)}, {{Int(2)}}, {}}, 10);
  REQUIRE(two);
  CHECK(std::set<IntVector>(two->begin(), two->end()) == std::set<IntVector>{{Int(1)}, {Int(3)}});

  const AffineCosetModM big{3, {Int(0), Int(0)}, {{Int(1), Int(0)}, {Int(0), Int(1)}}, {}};
  CHECK(big.cardinality() == 9);
  CHECK_FALSE(enumerate_coset(big, 5));

  // Relations shrink the coset: span{(1,0),(0,1)} / span{(1,1)} mod 3.
  const AffineCosetModM quotient{3, {Int(0), Int(0)}, big.generators, {{Int(1), Int(1)}}};
  CHECK(quotient.cardinality() == 3);
}

TEST_CASE("quotient presentations") {
  const auto z6 = present_quotient(IntMatrix::identity(2), IntMatrix{{2, 0}, {0, 3}}, 0);
  CHECK(z6.factors() == std::vector<Int>{6});
  CHECK(z6.coordinates({Int(3), Int(0)}) != z6.coordinates({Int(0), Int(0)}));
  CHECK(z6.coordinates({Int(2), Int(3)}) == z6.coordinates({Int(0), Int(0)}));

  const auto free = present_quotient(IntMatrix{{2}, {0}}, IntMatrix(2, 0), 0);
  CHECK(free.factors() == std::vector<Int>{0});
  CHECK_FALSE(free.cardinality());
  CHECK_THROWS_AS(free.coordinates({Int(1), Int(0)}), std::invalid_argument);

  // Coordinates invert representatives modulo the relations.
  const auto q = present_quotient(IntMatrix::identity(3), IntMatrix{{4, 0}, {2, 6}, {0, 0}}, 0);
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      const IntVector v{Int(a), Int(b), Int(a - b)};
      CHECK(q.coordinates(q.representative(q.coordinates(v))) == q.coordinates(v));
    }
}

TEST_CASE("bounded enumeration over Z") {
  const auto q = present_quotient(IntMatrix::identity(2), IntMatrix{{0}, {3}}, 0);
  int count = 0;
  const auto status = enumerate_bounded({Int(0), Int(0)}, q, 2, 1000, [&](const IntVector&) {
    ++count;
    return true;
  });
  CHECK(status == WalkStatus::Completed);
  CHECK(count == 5 * 3);
  CHECK(enumerate_bounded({Int(0), Int(0)}, q, 2, 4, [](const IntVector&) { return true; }) ==
        WalkStatus::Overflow);
}
