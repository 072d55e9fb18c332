#pragma once

// Dense Gaussian elimination over F_p for word-sized primes. Used behind the
// lattice interface whenever the modulus is a prime below 2^31.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hocart/lattice.hpp"

namespace hocart::detail {

inline constexpr std::int64_t kMaxWordPrime = std::int64_t{1} << 31;

class FpMatrix {
 public:
  FpMatrix(std::int64_t p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  FpMatrix(std::int64_t p, const IntMatrix& m);

  std::int64_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  IntMatrix to_int() const;

 private:
  std::int64_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> data_;
};

std::int64_t inverse_mod(std::int64_t a, std::int64_t p);
bool fits_word_prime(const Int& m);

std::optional<LinearSolution> solve_fp(const IntMatrix& a, const IntVector& b, std::int64_t p);
/// Basis of {x : A x = 0} over F_p.
std::vector<IntVector> nullspace_fp(const IntMatrix& a, std::int64_t p);
std::size_t rank_fp(const IntMatrix& a, std::int64_t p);

}  // namespace hocart::detail
