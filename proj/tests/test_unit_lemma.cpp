#include <random>

#include "doctest.h"
#include "hocart/unit_lemma.hpp"

using namespace hocart;

namespace {

MatQ mat_q(std::size_t k, std::vector<mpq_class> e) { return {k, std::move(e)}; }

std::vector<std::int64_t> mul_fp(const MatFp& a, const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out(a.k * a.k, 0);
  for (std::size_t i = 0; i < a.k; ++i)
    for (std::size_t j = 0; j < a.k; ++j) {
      std::int64_t s = 0;
      for (std::size_t l = 0; l < a.k; ++l) s += a.entries[i * a.k + l] * b[l * a.k + j];
      out[i * a.k + j] = s % a.p;
    }
  return out;
}

// Brute force over a window that contains every possible solution.
bool z_oracle(long eps) {
  for (long alpha = -10; alpha <= 10; ++alpha) {
    const long u = 1 + eps + alpha * eps * eps;
    if (u == 1 || u == -1) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("square-zero element") {
  const MatQ eps = mat_q(2, {0, 1, 0, 0});
  const PolynomialRelation r = polynomial_relation(eps);
  CHECK(r.m == 2);
  CHECK(r.s.empty());
  const UnitCertificate c = find_alpha(eps);
  CHECK(std::get<MatQ>(c.alpha) == mat_q(2, {0, 0, 0, 0}));
  CHECK(std::get<MatQ>(c.unit) == mat_q(2, {1, 1, 0, 1}));
  CHECK(std::get<MatQ>(c.inverse) == mat_q(2, {1, -1, 0, 1}));
  CHECK(c.nilpotency == 2);
  CHECK(verify_certificate(eps, c, false));
}

TEST_CASE("idempotent") {
  const MatQ eps = mat_q(2, {1, 0, 0, 0});
  const PolynomialRelation r = polynomial_relation(eps);
  CHECK(r.m == 1);
  REQUIRE(r.s.size() == 1);
  CHECK(r.s[0] == -1);
  const UnitCertificate a = find_alpha(eps);
  CHECK(std::get<MatQ>(a.alpha) == mat_q(2, {-1, 0, 0, -1}));
  CHECK(std::get<MatQ>(a.unit) == mat_q(2, {1, 0, 0, 1}));
  const UnitCertificate b = find_beta(eps);
  CHECK(std::get<MatQ>(b.alpha) == mat_q(2, {-1, 0, 0, -1}));
  CHECK(verify_certificate(eps, b, true));
}

TEST_CASE("invertible scalar") {
  const MatQ eps = mat_q(1, {3});
  const PolynomialRelation r = polynomial_relation(eps);
  CHECK(r.m == 0);
  REQUIRE(r.s.size() == 1);
  CHECK(r.s[0] == mpq_class(-1, 3));
  const UnitCertificate c = find_alpha(eps);
  CHECK(std::get<MatQ>(c.alpha) == mat_q(1, {mpq_class(-1, 3)}));
  CHECK(std::get<MatQ>(c.unit) == mat_q(1, {1}));
  CHECK(verify_certificate(eps, c, false));
}

TEST_CASE("residue rings") {
  const UnitCertificate c = find_alpha(Residue{9, 3});
  CHECK(std::get<Residue>(c.alpha).value == 0);
  CHECK(std::get<Residue>(c.unit).value == 4);
  CHECK(std::get<Residue>(c.inverse).value == 7);
  for (long m = 2; m <= 60; ++m)
    for (long e = 0; e < m; ++e) {
      const Residue eps{m, e};
      CHECK(verify_certificate(eps, find_alpha(eps), false));
    }
  CHECK_THROWS_AS(find_alpha(Residue{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(find_alpha(Int(3)), std::invalid_argument);
}

TEST_CASE("integers") {
  CHECK_FALSE(find_alpha_over_Z(3).has_value());
  CHECK(find_alpha_over_Z(0) == Int(0));
  CHECK(find_alpha_over_Z(-2) == Int(0));
  for (long e = -100; e <= 100; ++e) {
    const auto a = find_alpha_over_Z(e);
    CHECK(a.has_value() == z_oracle(e));
    if (a) {
      const Int u = 1 + Int(e) + *a * e * e;
      CHECK(abs(u) == 1);
    }
  }
}

TEST_CASE("random matrices over finite fields and Q") {
  std::mt19937_64 rng(2024);
  const std::int64_t primes[] = {2, 3, 5, 7, 101};
  for (int trial = 0; trial < 500; ++trial) {
    MatFp eps;
    eps.p = primes[trial % 5];
    eps.k = 1 + rng() % 5;
    for (std::size_t i = 0; i < eps.k * eps.k; ++i)
      eps.entries.push_back(static_cast<std::int64_t>(rng() % eps.p));
    // Mix in nilpotent and idempotent-heavy cases.
    if (trial % 7 == 0)
      for (std::size_t i = 0; i < eps.k; ++i)
        for (std::size_t j = 0; j <= i; ++j) eps.entries[i * eps.k + j] = 0;
    const UnitCertificate a = find_alpha(eps);
    CHECK(verify_certificate(eps, a, false));
    const auto& u = std::get<MatFp>(a.unit);
    const auto& v = std::get<MatFp>(a.inverse);
    MatFp one{eps.p, eps.k, std::vector<std::int64_t>(eps.k * eps.k, 0)};
    for (std::size_t i = 0; i < eps.k; ++i) one.entries[i * eps.k + i] = 1;
    CHECK(mul_fp(u, v.entries) == one.entries);
    const UnitCertificate b = find_beta(eps);
    CHECK(verify_certificate(eps, b, true));
  }
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + rng() % 3;
    MatQ eps{k, {}};
    for (std::size_t i = 0; i < k * k; ++i)
      eps.entries.push_back(mpq_class(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3));
    CHECK(verify_certificate(eps, find_alpha(eps), false));
    CHECK(verify_certificate(eps, find_beta(eps), true));
  }
}

TEST_CASE("structure algebras") {
  // Upper triangular 2x2 matrices over F_3, basis e11, e12, e22.
  std::vector<std::int64_t> c(27, 0);
  auto set = [&](int i, int j, int k) { c[(i * 3 + j) * 3 + k] = 1; };
  set(0, 0, 0);
  set(0, 1, 1);
  set(1, 2, 1);
  set(2, 2, 2);
  const auto alg = std::make_shared<const StructureAlgebra>(3, 3, c, std::vector<std::int64_t>{1, 0, 1});
  for (int x = 0; x < 27; ++x) {
    const AlgebraElement eps{alg, {x % 3, (x / 3) % 3, x / 9}};
    CHECK(verify_certificate(eps, find_alpha(eps), false));
    CHECK(verify_certificate(eps, find_beta(eps), true));
  }
  // Non-associative constants are rejected: (e1 e2) e2 = e1, e1 (e2 e2) = 0.
  std::vector<std::int64_t> bad(27, 0);
  auto put = [&](int i, int j, int k) { bad[(i * 3 + j) * 3 + k] = 1; };
  for (int i = 0; i < 3; ++i) {
    put(0, i, i);
    if (i) put(i, 0, i);
  }
  put(1, 2, 1);
  put(2, 2, 1);
  CHECK_THROWS_AS(StructureAlgebra(2, 3, bad, {1, 0, 0}), std::invalid_argument);
}

TEST_CASE("tampered certificates fail") {
  const MatFp eps{5, 2, {1, 2, 3, 4}};
  UnitCertificate c = find_alpha(eps);
  REQUIRE(verify_certificate(eps, c, false));
  auto& inv = std::get<MatFp>(c.inverse);
  inv.entries[0] = (inv.entries[0] + 1) % 5;
  CHECK_FALSE(verify_certificate(eps, c, false));
}
