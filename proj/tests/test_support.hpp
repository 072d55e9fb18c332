#pragma once

#include <cstdint>
#include <random>

#include "hocart/lattice.hpp"

namespace hocart::testing {

inline Int random_int(std::mt19937_64& rng, long lo, long hi) {
  return Int(std::uniform_int_distribution<long>(lo, hi)(rng));
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                               long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_int(rng, -bound, bound);
  return m;
}

}  // namespace hocart::testing
