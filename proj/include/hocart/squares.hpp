#pragma once

// Commutative squares in the homotopy category, the homotopy-cartesian
// decision and the vertical-isomorphism fit, both reduced to a search for a
// homotopy equivalence subject to linear constraints.

#include <optional>
#include <string>
#include <vector>

#include "hocart/complex.hpp"
#include "hocart/triangles.hpp"

namespace hocart {

///   B --g--> C
///   |b       |c
///   B' -g'-> C'
struct CommutativeSquare {
  ChainMap g;
  ChainMap g_prime;
  ChainMap b;
  ChainMap c;
  /// c∘g ≃ g'∘b.
  Homotopy witness;
};

/// Checks shapes and chain conditions and finds (or checks the stored)
/// commuting homotopy. Throws std::invalid_argument if the square does not
/// commute up to homotopy.
CommutativeSquare make_square(const ChainMap& g, const ChainMap& g_prime, const ChainMap& b,
                              const ChainMap& c,
                              const std::optional<std::map<int, IntMatrix>>& homotopy = {});

struct DiagonalSequence {
  /// (b; g): B → B' ⊕ C.
  ChainMap first;
  /// (g', -c): B' ⊕ C → C'.
  ChainMap second;
  /// second∘first ≃ 0.
  Homotopy null;
};

DiagonalSequence diagonal(const CommutativeSquare& s);

/// post∘φ∘pre ≃ required for the unknown φ: D → T. Missing pre/post mean
/// identities.
struct Constraint {
  std::optional<ChainMap> pre;
  std::optional<ChainMap> post;
  ChainMap required;
};

struct SearchConfig {
  /// Box for free Hom-coordinates in the search over Z.
  Int coeff_bound = 2;
  /// Cap on enumerated classes per coset.
  Int max_enum = Int(1) << 20;
  /// Extra moduli tried after the automatic ones.
  std::vector<Int> moduli;
  /// Instance parameter a; adds a² to the schedule.
  std::optional<Int> parameter;
};

enum class VerdictKind { Yes, NoCertified, Unknown };

struct YesWitness {
  ChainMap phi;
  /// Contraction of cone(φ).
  Homotopy equivalence;
  /// One per constraint, post∘φ∘pre ≃ required.
  std::vector<Homotopy> constraints;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<YesWitness> witness;
  /// NoCertified: the refuting modulus (0 if the constraints are already
  /// insoluble over Z).
  Int modulus = 0;
  /// NoCertified: number of classes enumerated (all of the coset).
  Int exhausted = 0;
  /// Moduli tried, in order.
  std::vector<Int> schedule;
  std::string detail;
};

std::string to_string(VerdictKind k);

/// Outcome of the search restricted to one modulus.
struct ModularOutcome {
  enum class Kind { Refuted, Survivors, Overflow, Insoluble };
  Kind kind = Kind::Overflow;
  Int cardinality = 0;
  Int survivors = 0;
};

/// For complexes over Z: enumerates Hom(D, T) ⊗ Z/m restricted to classes
/// meeting the constraints mod m, and keeps those whose cone is contractible
/// mod m and whose action on free homology has determinant ±1 mod m in every
/// degree. Refuted means no class survives, hence no compatible equivalence
/// exists over Z.
ModularOutcome modular_search(const Complex& d, const Complex& t,
                              const std::vector<Constraint>& constraints, const Int& m,
                              const Int& cap);

Verdict find_compatible_equivalence(const Complex& d, const Complex& t,
                                    const std::vector<Constraint>& constraints,
                                    const SearchConfig& config = {});

/// Independent recomputation of a Yes witness.
bool reverify(const YesWitness& w, const std::vector<Constraint>& constraints);

/// Some chain map D → T meeting the constraints (no equivalence required).
std::optional<ChainMap> solve_constraints(const Complex& d, const Complex& t,
                                          const std::vector<Constraint>& constraints);

struct CartesianResult {
  Verdict verdict;
  /// On Yes: the triangle B → B'⊕C → C' → B[1] and its witness.
  std::optional<Triangle> triangle;
  std::optional<DistinguishedWitness> triangle_witness;
};

/// The equivalence search cone(Δ) → C' against the constraint
/// φ∘ι ≃ (g', -c).
struct CartesianProblem {
  Cone cone;
  Constraint constraint;
};
CartesianProblem cartesian_problem(const CommutativeSquare& s);
CartesianResult is_homotopy_cartesian(const CommutativeSquare& s, const SearchConfig& config = {});

/// Rotates t until m sits in position f (m must occur in t unsigned).
Triangle rotate_to_front(const Triangle& t, const ChainMap& m);

struct VerticalFit {
  Complex source;  // third object of the triangle on b
  Complex target;  // third object of the triangle on c
  std::vector<Constraint> constraints;
};
VerticalFit vertical_fit_problem(const CommutativeSquare& s, const Triangle& t_b,
                                 const Triangle& t_c);
Verdict fits_vertical_iso(const CommutativeSquare& s, const Triangle& t_b, const Triangle& t_c,
                          const SearchConfig& config = {});

}  // namespace hocart
