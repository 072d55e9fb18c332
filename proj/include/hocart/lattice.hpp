#pragma once

// Exact integer linear algebra: Smith normal form, linear solving over Z and
// Z/m, presentations of finitely generated abelian groups and enumeration of
// finite solution cosets.

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace hocart {

using Int = mpz_class;
using IntVector = std::vector<Int>;

/// Non-negative remainder of `a` modulo `m` (m > 0).
Int mod_floor(const Int& a, const Int& m);
bool is_prime(const Int& m);

/// Dense integer matrix. entry(i, j) is the coefficient sending source basis
/// vector j to target basis vector i. Zero-row and zero-column matrices are
/// legal and carry their shape.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix scalar(std::size_t n, const Int& value);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);
  static IntMatrix column(const IntVector& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  IntMatrix transpose() const;
  /// Entries reduced into [0, m); a zero modulus returns a copy.
  IntMatrix reduced(const Int& modulus) const;
  IntVector column_vector(std::size_t j) const;
  IntMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& block);
  /// Row-major flattening.
  IntVector flatten() const;
  static IntMatrix unflatten(std::size_t rows, std::size_t cols, const IntVector& values,
                             std::size_t offset = 0);

  std::string to_string() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Int& s, const IntMatrix& a);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
/// [[tl, tr], [bl, br]]; shapes must agree.
IntMatrix block2x2(const IntMatrix& tl, const IntMatrix& tr, const IntMatrix& bl,
                   const IntMatrix& br);

/// Equality of matrices modulo m (plain equality for m = 0).
bool equal_mod(const IntMatrix& a, const IntMatrix& b, const Int& modulus);

/// Fraction-free (Bareiss) determinant of a square matrix.
Int determinant(const IntMatrix& a);

/// U·A·V = D with U, V unimodular and D diagonal with d1 | d2 | ... and
/// trailing zeros. The inverses of U and V are carried along.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inverse;
  IntMatrix V_inverse;

  std::size_t rank() const;
  IntVector diagonal() const;
};

/// Pivot rule: nonzero entry of minimal absolute value, ties broken by the
/// lowest (row, col).
SmithDecomposition snf(const IntMatrix& a);

struct LinearSolution {
  IntVector particular;
  /// Over Z a basis of the kernel; modulo m generators of the solution
  /// module mod m (the vectors m·e_i are implied).
  std::vector<IntVector> kernel;
};

/// Solves A·x = b, modulo `modulus` when it is >= 2. A zero or absent modulus
/// solves over Z. Throws std::invalid_argument on a dimension mismatch.
std::optional<LinearSolution> solve_linear(const IntMatrix& a, const IntVector& b,
                                           const std::optional<Int>& modulus = std::nullopt);

/// Same system, always through the integer kernel (column augmentation with
/// m·identity), even for prime moduli.
std::optional<LinearSolution> solve_linear_via_snf(const IntMatrix& a, const IntVector& b,
                                                   const Int& modulus);

struct FGAbelianGroup {
  std::size_t free_rank = 0;
  /// Each >= 2, each dividing the next.
  std::vector<Int> invariant_factors;

  Int torsion_order() const;
  /// Largest invariant factor, 1 for torsion-free groups.
  Int torsion_exponent() const;
  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  std::string to_string() const;
  friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;
};

FGAbelianGroup cokernel(const IntMatrix& a);

/// L with L·K = I for a full-column-rank K whose column span is saturated in
/// Z^n; nullopt otherwise.
std::optional<IntMatrix> integer_left_inverse(const IntMatrix& k);
/// Group with the given diagonal presentation (entries 0 → Z, 1 dropped).
FGAbelianGroup group_from_factors(const std::vector<Int>& factors);

/// Presentation of a quotient L / R of submodules of Z^n (or of (Z/m)^n when
/// `modulus` >= 2) as a product of cyclic groups Z/e_i (e_i = 0 means Z),
/// with explicit coordinate maps in both directions.
class QuotientPresentation {
 public:
  const Int& modulus() const { return modulus_; }
  const std::vector<Int>& factors() const { return factors_; }
  std::size_t dimension() const { return factors_.size(); }
  std::size_t ambient_dimension() const { return from_coords_.rows(); }
  /// Number of elements; nullopt if the quotient is infinite.
  std::optional<Int> cardinality() const;

  /// Coordinates of an element of L, each reduced modulo its factor.
  /// Throws std::invalid_argument if the vector does not lie in L.
  IntVector coordinates(const IntVector& v) const;
  /// A representative in L of the given coordinates.
  IntVector representative(const IntVector& coords) const;
  /// Representatives of the standard generators (columns).
  const IntMatrix& generator_matrix() const { return from_coords_; }

  friend QuotientPresentation present_quotient(const IntMatrix& generators,
                                               const IntMatrix& relations, const Int& modulus);

 private:
  Int modulus_;
  std::vector<Int> factors_;
  IntMatrix from_coords_;
  IntMatrix pre_;
  IntVector divisors_;
  IntMatrix post_;
};

/// L = column span of `generators`, R = column span of `relations` (both plus
/// m·Z^n when modulus >= 2). Requires R ⊆ L.
QuotientPresentation present_quotient(const IntMatrix& generators, const IntMatrix& relations,
                                      const Int& modulus);

/// particular + span(generators), taken modulo m and modulo span(relations).
struct AffineCosetModM {
  Int modulus;
  IntVector particular;
  std::vector<IntVector> generators;
  /// Vectors identified with zero in addition to m·Z^n.
  std::vector<IntVector> relations;

  Int cardinality() const;
};

enum class WalkStatus { Completed, Stopped, Overflow };

/// Visits each coset member (reduced mod m) exactly once. The visitor returns
/// false to stop early. Members are not visited at all if the cardinality
/// exceeds `cap`.
WalkStatus enumerate_coset(const AffineCosetModM& coset, const Int& cap,
                           const std::function<bool(const IntVector&)>& visit);
/// Collects all members; nullopt on overflow.
std::optional<std::vector<IntVector>> enumerate_coset(const AffineCosetModM& coset,
                                                      const Int& cap);

/// Walks particular + representative(z) over all torsion coordinates and all
/// free coordinates in [-bound, bound], visiting at most `cap` members.
/// Overflow means the cap was hit before the box was exhausted.
WalkStatus enumerate_bounded(const IntVector& particular, const QuotientPresentation& quotient,
                             const Int& bound, const Int& cap,
                             const std::function<bool(const IntVector&)>& visit);

}  // namespace hocart
