#include "hocart/detail/linear_system.hpp"

#include <stdexcept>

namespace hocart::detail {

Block LinearSystem::add_unknown(std::size_t rows, std::size_t cols) {
  Block b{unknowns_, rows, cols};
  unknowns_ += rows * cols;
  return b;
}

Block LinearSystem::add_equation(std::size_t rows, std::size_t cols) {
  Block b{equations_, rows, cols};
  equations_ += rows * cols;
  rhs_.resize(equations_, Int(0));
  return b;
}

void LinearSystem::add_term(const Block& equation, const Block& unknown, const IntMatrix& left,
                            const IntMatrix& right, const Int& coeff) {
  if (left.rows() != equation.rows || left.cols() != unknown.rows ||
      right.rows() != unknown.cols || right.cols() != equation.cols)
    throw std::invalid_argument("LinearSystem::add_term: block shapes do not compose");
  // (L X R)_{ab} = sum_{i,j} L_{ai} X_{ij} R_{jb}
  for (std::size_t a = 0; a < equation.rows; ++a)
    for (std::size_t i = 0; i < unknown.rows; ++i) {
      if (left(a, i) == 0) continue;
      for (std::size_t j = 0; j < unknown.cols; ++j)
        for (std::size_t b = 0; b < equation.cols; ++b) {
          if (right(j, b) == 0) continue;
          entries_.push_back({equation.offset + a * equation.cols + b,
                              unknown.offset + i * unknown.cols + j,
                              coeff * left(a, i) * right(j, b)});
        }
    }
}

void LinearSystem::add_identity_term(const Block& equation, const Block& unknown,
                                     const Int& coeff) {
  if (equation.rows != unknown.rows || equation.cols != unknown.cols)
    throw std::invalid_argument("LinearSystem::add_identity_term: shape mismatch");
  for (std::size_t k = 0; k < equation.size(); ++k)
    entries_.push_back({equation.offset + k, unknown.offset + k, coeff});
}

void LinearSystem::add_rhs(const Block& equation, const IntMatrix& value) {
  if (value.rows() != equation.rows || value.cols() != equation.cols)
    throw std::invalid_argument("LinearSystem::add_rhs: shape mismatch");
  for (std::size_t a = 0; a < equation.rows; ++a)
    for (std::size_t b = 0; b < equation.cols; ++b)
      rhs_[equation.offset + a * equation.cols + b] += value(a, b);
}

IntMatrix LinearSystem::matrix() const {
  IntMatrix m(equations_, unknowns_);
  for (const auto& e : entries_) m(e.row, e.col) += e.value;
  return m;
}

std::optional<LinearSolution> LinearSystem::solve(const Int& modulus) const {
  return solve_linear(matrix(), rhs_, modulus == 0 ? std::nullopt : std::optional<Int>(modulus));
}

IntMatrix LinearSystem::extract(const IntVector& x, const Block& unknown) {
  return IntMatrix::unflatten(unknown.rows, unknown.cols, x, unknown.offset);
}

std::map<int, Block> add_map_unknowns(LinearSystem& sys, const Complex& source,
                                      const Complex& target, int offset) {
  std::map<int, Block> out;
  for (int i : source.degrees()) {
    const std::size_t rows = target.rank(i - offset);
    if (rows == 0) continue;
    out.emplace(i, sys.add_unknown(rows, source.rank(i)));
  }
  return out;
}

std::map<int, Block> add_map_equations(LinearSystem& sys, const Complex& source,
                                       const Complex& target) {
  std::map<int, Block> out;
  for (int i : source.degrees()) {
    const std::size_t rows = target.rank(i);
    if (rows == 0) continue;
    out.emplace(i, sys.add_equation(rows, source.rank(i)));
  }
  return out;
}

void add_boundary_terms(LinearSystem& sys, const std::map<int, Block>& equations,
                        const std::map<int, Block>& homotopy, const Complex& source,
                        const Complex& target, const Int& coeff) {
  for (const auto& [i, eq] : equations) {
    if (auto h = homotopy.find(i); h != homotopy.end())
      sys.add_term(eq, h->second, target.differential(i - 1),
                   IntMatrix::identity(source.rank(i)), coeff);
    if (auto h = homotopy.find(i + 1); h != homotopy.end())
      sys.add_term(eq, h->second, IntMatrix::identity(target.rank(i)), source.differential(i),
                   coeff);
  }
}

void add_chain_condition(LinearSystem& sys, const std::map<int, Block>& map, const Complex& source,
                         const Complex& target) {
  for (int i : source.degrees()) {
    if (target.rank(i + 1) == 0) continue;
    const Block eq = sys.add_equation(target.rank(i + 1), source.rank(i));
    if (auto it = map.find(i); it != map.end())
      sys.add_term(eq, it->second, target.differential(i), IntMatrix::identity(source.rank(i)));
    if (auto it = map.find(i + 1); it != map.end())
      sys.add_term(eq, it->second, IntMatrix::identity(target.rank(i + 1)),
                   source.differential(i), -1);
  }
}

std::map<int, IntMatrix> extract_all(const IntVector& x, const std::map<int, Block>& blocks) {
  std::map<int, IntMatrix> out;
  for (const auto& [i, b] : blocks) out.emplace(i, LinearSystem::extract(x, b));
  return out;
}

}  // namespace hocart::detail
