#pragma once

// Units of the form 1 + ε + αε² (and 1 + ε + ε²β) in rings where they are
// guaranteed to exist: matrix rings over F_p or Q, finite-dimensional
// algebras over F_p given by structure constants, and residue rings Z/m.
// Over Z itself the existence question is decided exactly.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hocart/lattice.hpp"

namespace hocart {

/// k × k matrix over F_p, row-major, entries in [0, p).
struct MatFp {
  std::int64_t p = 2;
  std::size_t k = 0;
  std::vector<std::int64_t> entries;
};

/// k × k matrix over Q, row-major.
struct MatQ {
  std::size_t k = 0;
  std::vector<mpq_class> entries;
};

/// Residue class mod m (m >= 2).
struct Residue {
  Int modulus;
  Int value;
};

/// Associative unital algebra over F_p with basis e_0..e_{n-1} and
/// e_i·e_j = Σ_k c(i, j, k) e_k. Associativity and the identity are checked on
/// construction (std::invalid_argument otherwise).
class StructureAlgebra {
 public:
  StructureAlgebra(std::int64_t p, std::size_t n, std::vector<std::int64_t> constants,
                   std::vector<std::int64_t> identity);

  std::int64_t characteristic() const { return p_; }
  std::size_t dimension() const { return n_; }
  std::int64_t constant(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * n_ + j) * n_ + k];
  }
  const std::vector<std::int64_t>& identity() const { return one_; }
  std::vector<std::int64_t> multiply(const std::vector<std::int64_t>& a,
                                     const std::vector<std::int64_t>& b) const;
  /// Structure constants of the opposite algebra.
  StructureAlgebra opposite() const;

 private:
  std::int64_t p_;
  std::size_t n_;
  std::vector<std::int64_t> c_;
  std::vector<std::int64_t> one_;
};

struct AlgebraElement {
  std::shared_ptr<const StructureAlgebra> algebra;
  std::vector<std::int64_t> coords;
};

using RingElementRep = std::variant<MatFp, MatQ, Residue, Int, AlgebraElement>;

std::string to_string(const RingElementRep& x);
bool operator==(const MatFp& a, const MatFp& b);
bool operator==(const MatQ& a, const MatQ& b);
bool operator==(const Residue& a, const Residue& b);
bool operator==(const AlgebraElement& a, const AlgebraElement& b);

/// ε is a root of X^m + X^{m+1}·s(X). Coefficients over F_p are stored as
/// integers in [0, p).
struct PolynomialRelation {
  std::size_t m = 0;
  std::vector<mpq_class> s;
};

/// From the minimal polynomial of ε, normalized so its lowest nonzero
/// coefficient is 1. Fields only (matrices and structure algebras).
PolynomialRelation polynomial_relation(const RingElementRep& eps);

struct UnitCertificate {
  RingElementRep alpha;
  /// 1 + ε + αε² (or 1 + ε + ε²β).
  RingElementRep unit;
  RingElementRep inverse;
  /// Least e with (ε + αε²)^e = 0, when ε has a polynomial relation.
  std::optional<std::size_t> nilpotency;
  std::optional<PolynomialRelation> relation;
};

/// Throws std::invalid_argument for plain integers (use find_alpha_over_Z).
UnitCertificate find_alpha(const RingElementRep& eps);
/// The same construction in the opposite ring; the certificate is for
/// 1 + ε + ε²β in the original ring.
UnitCertificate find_beta(const RingElementRep& eps);

/// α with 1 + ε + αε² ∈ {1, -1}, if any.
std::optional<Int> find_alpha_over_Z(const Int& eps);

/// Recomputes unit and inverse from ε and α (or β) and checks
/// unit·inverse = inverse·unit = 1; with a relation, also checks
/// (ε + αε²)^{m+1} = 0 and the relation itself.
bool verify_certificate(const RingElementRep& eps, const UnitCertificate& cert, bool beta);

}  // namespace hocart
