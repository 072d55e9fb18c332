#pragma once

// Hom-groups in the homotopy category: chain maps modulo null-homotopic maps,
// presented as a product of cyclic groups with chain-map representatives.

#include <map>
#include <vector>

#include "hocart/complex.hpp"
#include "hocart/detail/linear_system.hpp"
#include "hocart/lattice.hpp"

namespace hocart {

class HomGroupPresentation {
 public:
  const Complex& source() const { return source_; }
  const Complex& target() const { return target_; }
  const FGAbelianGroup& group() const { return group_; }
  /// Orders of the cyclic coordinates (0 = infinite cyclic); factors equal to
  /// 1 never occur.
  const std::vector<Int>& factors() const { return quotient_.factors(); }
  const QuotientPresentation& quotient() const { return quotient_; }
  /// One representative per cyclic coordinate.
  const std::vector<ChainMap>& representatives() const { return representatives_; }

  /// Coordinates of the class of f. Homotopic maps get equal coordinates.
  IntVector lookup(const ChainMap& f) const;
  /// Chain map representing the given coordinates.
  ChainMap map_of(const IntVector& coords) const;

  // Vectorized view: a chain map as the row-major concatenation of its
  // components, ordered by degree.
  std::size_t vector_size() const { return size_; }
  const std::map<int, detail::Block>& blocks() const { return blocks_; }
  IntVector vectorize(const ChainMap& f) const;
  ChainMap chain_map(const IntVector& v) const;
  /// Columns generate the module of chain maps (modulo m over Z/m).
  const IntMatrix& cycles() const { return cycles_; }
  /// Columns generate the null-homotopic maps.
  const IntMatrix& boundaries() const { return boundaries_; }

  friend HomGroupPresentation hom_group(const Complex& x, const Complex& y);
  friend HomGroupPresentation hom_group_tensor(const Complex& x, const Complex& y, const Int& m);

 private:
  HomGroupPresentation(const Complex& x, const Complex& y);
  void finish(QuotientPresentation q);

  Complex source_;
  Complex target_;
  std::map<int, detail::Block> blocks_;
  std::size_t size_ = 0;
  IntMatrix cycles_;
  IntMatrix boundaries_;
  QuotientPresentation quotient_;
  FGAbelianGroup group_;
  std::vector<ChainMap> representatives_;
};

/// Hom_K(x, y) over the common ring of x and y.
HomGroupPresentation hom_group(const Complex& x, const Complex& y);

/// Hom_K(x, y) ⊗ Z/m for complexes over Z: integer chain maps modulo
/// null-homotopic maps and m times chain maps. Representatives are integer
/// chain maps.
HomGroupPresentation hom_group_tensor(const Complex& x, const Complex& y, const Int& m);

}  // namespace hocart
