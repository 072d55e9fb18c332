#pragma once

// Random morphisms of standard triangles over F_p sharing the first object,
// and the replay of the unit construction that turns the given third map into
// the cone-functorial one.

#include <cstdint>
#include <string>
#include <vector>

#include "hocart/squares.hpp"
#include "hocart/triangles.hpp"
#include "hocart/unit_lemma.hpp"

namespace hocart {

///   A --f--> B --g--> C --h--> A[1]
///   |1       |b       |c       |1
///   A --f'-> B'-g'--> C'-h'--> A[1]
struct Prop2Diagram {
  Triangle top;
  Triangle bottom;
  ChainMap b;
  ChainMap c;
  /// Cone-functoriality map diag(b, 1).
  ChainMap c_tilde;
  /// c = c_tilde + ψ0∘h for a random ψ0.
  bool perturbed = false;

  CommutativeSquare square() const;
  TriangleMorphism morphism() const;
};

struct FuzzConfig {
  std::int64_t p = 2;
  std::size_t max_rank = 3;
  std::size_t max_degrees = 4;
  /// Per generated complex (A, B, B').
  std::size_t max_total = 6;
  std::uint64_t seed = 42;
  bool perturb = true;
};

struct FuzzSample {
  Prop2Diagram diagram;
  /// Perturbations rejected because the third square stopped commuting.
  std::size_t discarded = 0;
};

/// Deterministic in (config, index).
FuzzSample fuzz_prop2(const FuzzConfig& config, std::size_t index);

struct Prop2Replay {
  ChainMap psi;    // A[1] → C', ψ∘h ≃ c_tilde - c
  ChainMap eps;    // ψ∘h'
  ChainMap alpha;  // from the relation of ε in End(C')
  ChainMap theta;  // 1 + ε + αε²
  std::optional<UnitCertificate> certificate;
  bool theta_c = false;  // θ∘c ≃ c_tilde
  bool theta_g = false;  // θ∘g' ≃ g'
  bool theta_equivalence = false;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

Prop2Replay prop2_replay(const Prop2Diagram& d);

struct FuzzTrial {
  std::size_t index = 0;
  std::size_t discarded = 0;
  bool perturbed = false;
  bool morphism_ok = false;
  VerdictKind cartesian = VerdictKind::Unknown;
  bool cartesian_reverified = false;
  VerdictKind vertical = VerdictKind::Unknown;
  bool vertical_reverified = false;
  bool replay_ok = false;
  bool psi_nonzero = false;
  std::vector<std::string> notes;
  /// Yes on both searches, witnesses re-verified, replay identities hold.
  bool pass() const;
};

FuzzTrial run_fuzz_trial(const FuzzConfig& config, std::size_t index,
                         const SearchConfig& search = {});

}  // namespace hocart
