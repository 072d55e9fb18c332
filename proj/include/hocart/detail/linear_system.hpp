#pragma once

// Assembles linear systems whose unknowns and equations are matrix blocks,
// e.g. the components of a chain map or of a homotopy. Blocks are vectorized
// row-major.

#include <map>
#include <optional>
#include <vector>

#include "hocart/complex.hpp"
#include "hocart/lattice.hpp"

namespace hocart::detail {

struct Block {
  std::size_t offset = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t size() const { return rows * cols; }
};

class LinearSystem {
 public:
  Block add_unknown(std::size_t rows, std::size_t cols);
  Block add_equation(std::size_t rows, std::size_t cols);

  /// equation += coeff · left · X · right
  void add_term(const Block& equation, const Block& unknown, const IntMatrix& left,
                const IntMatrix& right, const Int& coeff = 1);
  /// equation += coeff · X (same shape)
  void add_identity_term(const Block& equation, const Block& unknown, const Int& coeff = 1);
  /// Right-hand side contribution.
  void add_rhs(const Block& equation, const IntMatrix& value);

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return equations_; }
  IntMatrix matrix() const;
  const IntVector& rhs() const { return rhs_; }

  std::optional<LinearSolution> solve(const Int& modulus) const;

  static IntMatrix extract(const IntVector& x, const Block& unknown);

 private:
  struct Entry {
    std::size_t row, col;
    Int value;
  };
  std::size_t unknowns_ = 0;
  std::size_t equations_ = 0;
  std::vector<Entry> entries_;
  IntVector rhs_;
};

/// Unknown blocks for the components of a map S → T of degree `offset`
/// (component i: T^{i-offset} ← S^i), skipping zero-size blocks.
std::map<int, Block> add_map_unknowns(LinearSystem& sys, const Complex& source,
                                      const Complex& target, int offset = 0);

/// Equation blocks for every degree where a map S → T has a component.
std::map<int, Block> add_map_equations(LinearSystem& sys, const Complex& source,
                                       const Complex& target);

/// equations(i) += coeff · (δ_T(i-1)·h(i) + h(i+1)·δ_S(i)).
void add_boundary_terms(LinearSystem& sys, const std::map<int, Block>& equations,
                        const std::map<int, Block>& homotopy, const Complex& source,
                        const Complex& target, const Int& coeff = 1);

/// Equations δ_T(i)·f(i) − f(i+1)·δ_S(i) = 0 on map unknowns (offset 0).
void add_chain_condition(LinearSystem& sys, const std::map<int, Block>& map, const Complex& source,
                         const Complex& target);

std::map<int, IntMatrix> extract_all(const IntVector& x, const std::map<int, Block>& blocks);

}  // namespace hocart::detail
