#pragma once

// Candidate triangles X → Y → Z → X[1], standard cone triangles, rotation and
// witness-based verification.

#include <optional>
#include <string>
#include <vector>

#include "hocart/complex.hpp"

namespace hocart {

class Triangle {
 public:
  /// Requires f: X → Y, g: Y → Z, h: Z → X[1] (std::invalid_argument
  /// otherwise). Chain conditions are checked as well.
  Triangle(ChainMap f, ChainMap g, ChainMap h);

  const Complex& x() const { return f_.source(); }
  const Complex& y() const { return g_.source(); }
  const Complex& z() const { return h_.source(); }
  const ChainMap& f() const { return f_; }
  const ChainMap& g() const { return g_; }
  const ChainMap& h() const { return h_; }

  friend bool operator==(const Triangle& a, const Triangle& b) {
    return a.f_ == b.f_ && a.g_ == b.g_ && a.h_ == b.h_;
  }

 private:
  ChainMap f_;
  ChainMap g_;
  ChainMap h_;
};

/// Null-homotopies of g∘f, h∘g and f[1]∘h, or the names of the composites
/// that are not null-homotopic.
struct CompositeCheck {
  std::vector<Homotopy> witnesses;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
CompositeCheck check_composites(const Triangle& t);

/// (X, Y, cone(f); f, inclusion, projection).
Triangle standard_triangle(const ChainMap& f);

/// (Y, Z, X[1]; g, h, -f[1]).
Triangle rotate(const Triangle& t);

/// Shift of every object with every map negated: (X[1], Y[1], Z[1]; -f[1], -g[1], -h[1]).
Triangle shift_negated(const Triangle& t);

/// Evidence that t is isomorphic to the standard triangle on f(t).
struct DistinguishedWitness {
  /// cone(f) → Z.
  ChainMap u;
  /// Contraction of cone(u).
  Homotopy equivalence;
  /// g ≃ u∘inclusion.
  Homotopy g_square;
  /// h∘u ≃ projection.
  Homotopy h_square;
};

struct DistinguishedCheck {
  std::optional<DistinguishedWitness> witness;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

DistinguishedCheck verify_distinguished_with_witness(const Triangle& t, const ChainMap& u);

/// Given a verified witness for t, builds and verifies a witness for rotate(t).
DistinguishedCheck rotate_witness(const Triangle& t, const DistinguishedWitness& w);

struct TriangleMorphism {
  Triangle source;
  Triangle target;
  ChainMap p;  // X → X'
  ChainMap q;  // Y → Y'
  ChainMap r;  // Z → Z'
};

struct MorphismCheck {
  /// q∘f ≃ f'∘p, r∘g ≃ g'∘q, p[1]∘h ≃ h'∘r (when found).
  std::vector<Homotopy> witnesses;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

MorphismCheck verify_triangle_morphism(const TriangleMorphism& m);

/// The identity morphism t → t.
TriangleMorphism identity_morphism(const Triangle& t);

/// The morphism (q, r, p[1]) between the rotated triangles; its squares are
/// the second, third and (up to sign) first squares of m.
TriangleMorphism rotate(const TriangleMorphism& m);

}  // namespace hocart
