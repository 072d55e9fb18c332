#include "hocart/hom.hpp"

#include <stdexcept>

namespace hocart {

using detail::Block;
using detail::LinearSystem;

namespace {

IntMatrix kernel_generators(const IntMatrix& a, const Int& modulus) {
  if (a.rows() == 0) return IntMatrix::identity(a.cols());
  const auto sol = solve_linear(a, IntVector(a.rows(), Int(0)),
                                modulus == 0 ? std::nullopt : std::optional<Int>(modulus));
  return IntMatrix::from_columns(a.cols(), sol->kernel);
}

}  // namespace

HomGroupPresentation::HomGroupPresentation(const Complex& x, const Complex& y)
    : source_(x), target_(y) {
  if (!(x.ring() == y.ring())) throw std::invalid_argument("hom_group: ring mismatch");
  LinearSystem maps;
  blocks_ = detail::add_map_unknowns(maps, x, y, 0);
  size_ = maps.unknowns();
  detail::add_chain_condition(maps, blocks_, x, y);
  cycles_ = kernel_generators(maps.matrix(), x.ring().modulus());

  LinearSystem htpy;
  const auto h = detail::add_map_unknowns(htpy, x, y, 1);
  const auto eqs = detail::add_map_equations(htpy, x, y);
  detail::add_boundary_terms(htpy, eqs, h, x, y);
  boundaries_ = htpy.matrix();
}

void HomGroupPresentation::finish(QuotientPresentation q) {
  quotient_ = std::move(q);
  group_ = group_from_factors(quotient_.factors());
  const IntMatrix& gens = quotient_.generator_matrix();
  for (std::size_t j = 0; j < gens.cols(); ++j)
    representatives_.push_back(chain_map(gens.column_vector(j)));
}

IntVector HomGroupPresentation::vectorize(const ChainMap& f) const {
  if (!(f.source() == source_) || !(f.target() == target_))
    throw std::invalid_argument("HomGroupPresentation: map has the wrong source or target");
  IntVector v(size_, Int(0));
  for (const auto& [i, b] : blocks_) {
    const IntMatrix c = f.component(i);
    for (std::size_t r = 0; r < b.rows; ++r)
      for (std::size_t s = 0; s < b.cols; ++s) v[b.offset + r * b.cols + s] = c(r, s);
  }
  return v;
}

ChainMap HomGroupPresentation::chain_map(const IntVector& v) const {
  return ChainMap(source_, target_, detail::extract_all(v, blocks_));
}

IntVector HomGroupPresentation::lookup(const ChainMap& f) const {
  return quotient_.coordinates(vectorize(f));
}

ChainMap HomGroupPresentation::map_of(const IntVector& coords) const {
  return chain_map(quotient_.representative(coords));
}

HomGroupPresentation hom_group(const Complex& x, const Complex& y) {
  HomGroupPresentation h(x, y);
  h.finish(present_quotient(h.cycles_, h.boundaries_, x.ring().modulus()));
  return h;
}

HomGroupPresentation hom_group_tensor(const Complex& x, const Complex& y, const Int& m) {
  if (!x.ring().is_integers()) throw std::invalid_argument("hom_group_tensor: ring must be Z");
  if (m < 2) throw std::invalid_argument("hom_group_tensor: modulus must be >= 2");
  HomGroupPresentation h(x, y);
  h.finish(present_quotient(h.cycles_, hstack(h.boundaries_, m * h.cycles_), 0));
  return h;
}

}  // namespace hocart
