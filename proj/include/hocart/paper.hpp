#pragma once

// The checked-in counterexample family: four parameterized triangles, the
// star diagram built from two of them by rotation, its middle square, and the
// end-to-end verification report.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hocart/io.hpp"
#include "hocart/squares.hpp"
#include "hocart/triangles.hpp"

namespace hocart {

/// HOCART_DATA_DIR from the environment, else the directory baked in at
/// build time.
std::string data_dir();

struct Lemma2Instance {
  int k;
  Int a;
  Int b;
  Triangle triangle;
  /// cone(f) → z.
  ChainMap u;
};

/// Loads data_dir()/lemma2-k.json with the given parameters.
Lemma2Instance lemma2(int k, const Int& a, const Int& b);

struct Lemma2Check {
  int k;
  Int a;
  Int b;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
Lemma2Check check_lemma2(int k, const Int& a, const Int& b);

/// Raised when a transcribed row differs from the rotation it claims to be.
struct TranscriptionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StarDiagram {
  Int a;
  Triangle upper;
  Triangle lower;
  TriangleMorphism morphism;
  CommutativeSquare middle;
  /// Vertical triangles on b and on c.
  Triangle t_b;
  Triangle t_c;
};

/// Loads data_dir()/star.json. Throws TranscriptionError if a row differs
/// from the rotation it is declared as, or the middle square differs from the
/// morphism's second square.
StarDiagram build_star(const Int& a);

struct SquareCheck {
  std::string name;
  bool commutes = false;   // up to homotopy
  bool strict = false;     // on the nose
};

struct StarCheck {
  bool upper_distinguished = false;
  bool lower_distinguished = false;
  std::vector<SquareCheck> squares;
  bool ok() const;
};
/// Distinguishedness of both rows (rotated witnesses) and the six squares:
/// those of the morphism and of its rotation.
StarCheck check_star(const StarDiagram& s);

struct PaperReport {
  Int a;
  /// a ≥ 3: the range where both non-existence claims are asserted.
  bool claimed = false;
  std::vector<Lemma2Check> lemma2;
  std::optional<StarCheck> star;
  std::optional<Verdict> cartesian;
  std::optional<Verdict> vertical;
  /// Both verdicts agree (the vertical No implies the cartesian No).
  bool claims_agree = false;
  std::vector<std::string> errors;
  /// Every check passes and, if claimed, both verdicts are NoCertified(a²).
  bool pass = false;
};

PaperReport verify_paper(const Int& a, const SearchConfig& config = {});

io::json report_json(const PaperReport& r);
std::string report_text(const PaperReport& r);

}  // namespace hocart
