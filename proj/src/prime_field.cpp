#include "hocart/detail/prime_field.hpp"

#include <stdexcept>
#include <utility>

namespace hocart::detail {

FpMatrix::FpMatrix(std::int64_t p, const IntMatrix& m)
    : p_(p), rows_(m.rows()), cols_(m.cols()), data_(m.rows() * m.cols(), 0) {
  const Int modulus(static_cast<long>(p));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(i, j) = mod_floor(m(i, j), modulus).get_si();
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = ((a % p) + p) % p;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("inverse_mod: element not invertible");
  return t < 0 ? t + p : t;
}

bool fits_word_prime(const Int& m) {
  return m >= 2 && m < Int(static_cast<long>(kMaxWordPrime)) && is_prime(m);
}

std::vector<std::size_t> FpMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t sel = row;
    while (sel < rows_ && (*this)(sel, col) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(sel, j), (*this)(row, j));
    const std::int64_t inv = inverse_mod((*this)(row, col), p_);
    for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) = (*this)(row, j) * inv % p_;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const std::int64_t factor = (*this)(i, col);
      if (factor == 0) continue;
      std::int64_t* target = &data_[i * cols_];
      const std::int64_t* source = &data_[row * cols_];
      for (std::size_t j = col; j < cols_; ++j) {
        if (source[j] == 0) continue;
        target[j] = (target[j] - factor * source[j]) % p_;
        if (target[j] < 0) target[j] += p_;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t FpMatrix::rank() const {
  FpMatrix copy = *this;
  return copy.rref().size();
}

IntMatrix FpMatrix::to_int() const {
  IntMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = static_cast<long>((*this)(i, j));
  return out;
}

std::optional<LinearSolution> solve_fp(const IntMatrix& a, const IntVector& b, std::int64_t p) {
  const std::size_t n = a.cols();
  FpMatrix aug(p, a.rows(), n + 1);
  const Int modulus(static_cast<long>(p));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = mod_floor(a(i, j), modulus).get_si();
    aug(i, n) = mod_floor(b[i], modulus).get_si();
  }
  const auto pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;

  LinearSolution out;
  out.particular.assign(n, Int(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    out.particular[pivots[r]] = static_cast<long>(aug(r, n));
  }
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    IntVector v(n, Int(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const std::int64_t c = aug(r, free);
      if (c != 0) v[pivots[r]] = static_cast<long>(p - c);
    }
    out.kernel.push_back(std::move(v));
  }
  return out;
}

std::vector<IntVector> nullspace_fp(const IntMatrix& a, std::int64_t p) {
  return solve_fp(a, IntVector(a.rows(), Int(0)), p)->kernel;
}

std::size_t rank_fp(const IntMatrix& a, std::int64_t p) { return FpMatrix(p, a).rank(); }

}  // namespace hocart::detail
