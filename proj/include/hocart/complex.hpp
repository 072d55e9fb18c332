#pragma once

// Bounded complexes of finitely generated free modules over Z or Z/m, chain
// maps between them and chain homotopies. Grading is cohomological: the
// differential in degree i maps degree i to degree i + 1.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hocart/lattice.hpp"

namespace hocart {

class Ring {
 public:
  static Ring integers() { return Ring(Int(0)); }
  static Ring integers_mod(const Int& m);

  bool is_integers() const { return modulus_ == 0; }
  /// 0 for Z.
  const Int& modulus() const { return modulus_; }
  bool is_prime_field() const { return prime_; }

  Int reduce(const Int& x) const { return modulus_ == 0 ? x : mod_floor(x, modulus_); }
  IntMatrix reduce(const IntMatrix& m) const { return m.reduced(modulus_); }
  std::string to_string() const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.modulus_ == b.modulus_; }

 private:
  explicit Ring(Int modulus);
  Int modulus_;
  bool prime_ = false;
};

/// First failing degree of a structural check.
struct Violation {
  int degree = 0;
  std::string message;
};

class Complex {
 public:
  Complex() : Complex(Ring::integers(), {}, {}) {}
  /// Differentials are keyed by source degree and must have shape
  /// rank(i+1) × rank(i). Omitted degrees have rank 0, omitted differentials
  /// are zero. Entries are reduced into the ring. d∘d = 0 is not enforced
  /// here; see validate().
  Complex(Ring ring, std::map<int, std::size_t> ranks, std::map<int, IntMatrix> differentials = {});

  /// Z^rank (or (Z/m)^rank) concentrated in a single degree.
  static Complex concentrated(const Ring& ring, int degree, std::size_t rank = 1);

  const Ring& ring() const { return ring_; }
  std::size_t rank(int degree) const;
  IntMatrix differential(int degree) const;
  /// Degrees with nonzero rank, ascending.
  std::vector<int> degrees() const;
  std::size_t total_rank() const;
  bool is_zero() const { return ranks_.empty(); }
  const std::map<int, std::size_t>& ranks() const { return ranks_; }

  std::string to_string() const;

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.ring_ == b.ring_ && a.ranks_ == b.ranks_ && a.differentials_ == b.differentials_;
  }

 private:
  Ring ring_;
  std::map<int, std::size_t> ranks_;
  std::map<int, IntMatrix> differentials_;
};

/// Accepts iff every composite of consecutive differentials vanishes.
std::optional<Violation> validate(const Complex& c);

/// c[k]: rank(i) = rank_c(i+k), δ(i) = (-1)^k δ_c(i+k).
Complex shift(const Complex& c, int k = 1);
Complex direct_sum(const Complex& a, const Complex& b);
Complex reduce_mod(const Complex& c, const Int& m);

class ChainMap {
 public:
  /// Components are keyed by degree with shape rank_target(i) × rank_source(i).
  /// Shapes are checked; the chain condition is not (see check_chain_map()).
  ChainMap(Complex source, Complex target, std::map<int, IntMatrix> components = {});

  static ChainMap identity(const Complex& c);
  static ChainMap zero(const Complex& source, const Complex& target);

  const Complex& source() const { return *source_; }
  const Complex& target() const { return *target_; }
  const Ring& ring() const { return source_->ring(); }
  IntMatrix component(int degree) const;
  /// Degrees where both source and target are nonzero.
  std::vector<int> degrees() const;
  bool is_zero() const;

  std::string to_string() const;

  friend bool operator==(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator+(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator-(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator-(const ChainMap& a);
  friend ChainMap operator*(const Int& s, const ChainMap& a);

 private:
  std::shared_ptr<const Complex> source_;
  std::shared_ptr<const Complex> target_;
  std::map<int, IntMatrix> components_;
};

std::optional<Violation> check_chain_map(const ChainMap& f);
/// g∘f.
ChainMap compose(const ChainMap& g, const ChainMap& f);
/// f[k]: component(i) = f(i+k), between the shifted complexes.
ChainMap shift(const ChainMap& f, int k = 1);
ChainMap reduce_mod(const ChainMap& f, const Int& m);
/// X → Y ⊕ Z with blocks (top; bottom).
ChainMap stack_vertical(const ChainMap& top, const ChainMap& bottom);
/// Y ⊕ Z → W with blocks (left, right).
ChainMap stack_horizontal(const ChainMap& left, const ChainMap& right);
/// Degreewise block-diagonal map a ⊕ b.
ChainMap direct_sum(const ChainMap& a, const ChainMap& b);

/// A chain homotopy between parallel maps f and g:
///   f(i) - g(i) = δ_T(i-1)·h(i) + h(i+1)·δ_S(i)
/// with h(i) of shape rank_T(i-1) × rank_S(i). The witness equation is checked
/// on construction (std::invalid_argument on failure).
class Homotopy {
 public:
  Homotopy(ChainMap from, ChainMap to, std::map<int, IntMatrix> components);

  /// f ≃ f via 0.
  static Homotopy zero(const ChainMap& f);

  const ChainMap& from() const { return from_; }
  const ChainMap& to() const { return to_; }
  IntMatrix component(int degree) const;
  const std::map<int, IntMatrix>& components() const { return components_; }

  /// g ≃ f.
  Homotopy reversed() const;
  /// f ≃ g and g ≃ k give f ≃ k.
  Homotopy then(const Homotopy& next) const;
  /// p∘f ≃ p∘g.
  Homotopy postcomposed(const ChainMap& p) const;
  /// f∘q ≃ g∘q.
  Homotopy precomposed(const ChainMap& q) const;
  Homotopy reduced_mod(const Int& m) const;

 private:
  ChainMap from_;
  ChainMap to_;
  std::map<int, IntMatrix> components_;
};

/// Checks the witness equation without constructing a Homotopy.
std::optional<Violation> check_homotopy(const ChainMap& f, const ChainMap& g,
                                        const std::map<int, IntMatrix>& components);

struct Cone {
  Complex complex;
  /// Y → cone(f), blocks (1; 0).
  ChainMap inclusion;
  /// cone(f) → X[1], blocks (0 1).
  ChainMap projection;
};

/// Degree i of cone(f: X → Y) is Y^i ⊕ X^{i+1} with differential
/// [[δ_Y, f^{i+1}], [0, -δ_X^{i+1}]].
Cone cone(const ChainMap& f);

std::optional<Homotopy> homotopic(const ChainMap& f, const ChainMap& g);
/// Contraction: a homotopy from the identity to zero.
std::optional<Homotopy> is_contractible(const Complex& c);
/// Succeeds iff cone(f) is contractible; the witness is that contraction.
std::optional<Homotopy> is_homotopy_equivalence(const ChainMap& f);

/// Exactness test. Over Z and over fields this decides contractibility; over
/// other residue rings it is only necessary.
bool is_acyclic(const Complex& c);

/// H^i for every degree in the support. Integers only (std::domain_error
/// otherwise).
std::map<int, FGAbelianGroup> homology(const Complex& c);

/// Matrix of H^i(f) on the free quotients H^i/torsion, in the bases chosen by
/// the homology routine. Integers only.
IntMatrix induced_free_homology_map(const ChainMap& f, int degree);

}  // namespace hocart
