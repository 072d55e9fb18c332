#pragma once

// Brute-force reference for maps and homotopies between small complexes over
// F_2. Maps are bitmasks over a fixed list of entry slots; everything is
// recomputed with plain integer loops, independent of the library's solver.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "hocart/complex.hpp"

namespace hocart::testing {

using Bits = std::vector<std::vector<int>>;

inline Bits bits_of(const IntMatrix& m) {
  Bits out(m.rows(), std::vector<int>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = mpz_odd_p(m(i, j).get_mpz_t()) ? 1 : 0;
  return out;
}

inline Bits mul2(const Bits& a, const Bits& b, std::size_t rows, std::size_t inner,
                 std::size_t cols) {
  Bits out(rows, std::vector<int>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < cols; ++j) out[i][j] ^= b[k][j];
  return out;
}

inline IntMatrix matrix_of(const Bits& b, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = b[i][j];
  return m;
}

class F2Oracle {
 public:
  F2Oracle(const Complex& s, const Complex& t) : s_(s), t_(t) {
    for (int i = lo() - 1; i <= hi() + 1; ++i) {
      ds_[i] = bits_of(s.differential(i));
      dt_[i] = bits_of(t.differential(i));
    }
    for (int i = lo(); i <= hi(); ++i) {
      map_offset_[i] = map_bits_;
      map_bits_ += t.rank(i) * s.rank(i);
      htpy_offset_[i] = htpy_bits_;
      htpy_bits_ += t.rank(i - 1) * s.rank(i);
    }
    for (std::uint32_t mask = 0; mask < (1u << map_bits_); ++mask)
      if (is_chain_map(mask)) chain_maps_.push_back(mask);
    for (std::uint32_t mask = 0; mask < (1u << htpy_bits_); ++mask)
      boundaries_.insert(boundary(mask));
  }

  const std::vector<std::uint32_t>& chain_maps() const { return chain_maps_; }
  const std::set<std::uint32_t>& boundaries() const { return boundaries_; }
  bool homotopic(std::uint32_t f, std::uint32_t g) const { return boundaries_.count(f ^ g) > 0; }
  /// dim over F_2 of chain maps modulo null-homotopic maps.
  std::size_t hom_dimension() const {
    std::size_t d = 0;
    while ((std::size_t(1) << d) * boundaries_.size() < chain_maps_.size()) ++d;
    return d;
  }

  ChainMap to_chain_map(std::uint32_t mask) const {
    std::map<int, IntMatrix> comps;
    for (int i = lo(); i <= hi(); ++i)
      comps[i] = matrix_of(component(mask, i), t_.rank(i), s_.rank(i));
    return ChainMap(s_, t_, comps);
  }

 private:
  int lo() const { return std::min(first(s_), first(t_)); }
  int hi() const { return std::max(last(s_), last(t_)); }
  static int first(const Complex& c) { return c.is_zero() ? 0 : c.degrees().front(); }
  static int last(const Complex& c) { return c.is_zero() ? 0 : c.degrees().back(); }

  Bits component(std::uint32_t mask, int i) const {
    Bits out(t_.rank(i), std::vector<int>(s_.rank(i), 0));
    if (i < lo() || i > hi()) return out;
    std::size_t k = map_offset_.at(i);
    for (auto& row : out)
      for (auto& x : row) x = (mask >> k++) & 1;
    return out;
  }

  Bits htpy_component(std::uint32_t mask, int i) const {
    Bits out(t_.rank(i - 1), std::vector<int>(s_.rank(i), 0));
    if (i < lo() || i > hi()) return out;
    std::size_t k = htpy_offset_.at(i);
    for (auto& row : out)
      for (auto& x : row) x = (mask >> k++) & 1;
    return out;
  }

  bool is_chain_map(std::uint32_t mask) const {
    for (int i = lo() - 1; i <= hi(); ++i) {
      const Bits l = mul2(dt_.at(i), component(mask, i), t_.rank(i + 1), t_.rank(i), s_.rank(i));
      const Bits r =
          mul2(component(mask, i + 1), ds_.at(i), t_.rank(i + 1), s_.rank(i + 1), s_.rank(i));
      if (l != r) return false;
    }
    return true;
  }

  std::uint32_t boundary(std::uint32_t h) const {
    std::uint32_t out = 0;
    for (int i = lo(); i <= hi(); ++i) {
      const Bits a =
          mul2(dt_.at(i - 1), htpy_component(h, i), t_.rank(i), t_.rank(i - 1), s_.rank(i));
      const Bits b =
          mul2(htpy_component(h, i + 1), ds_.at(i), t_.rank(i), s_.rank(i + 1), s_.rank(i));
      std::size_t k = map_offset_.at(i);
      for (std::size_t r = 0; r < t_.rank(i); ++r)
        for (std::size_t c = 0; c < s_.rank(i); ++c, ++k)
          if (a[r][c] ^ b[r][c]) out |= 1u << k;
    }
    return out;
  }

  Complex s_, t_;
  std::map<int, Bits> ds_, dt_;
  std::map<int, std::size_t> map_offset_, htpy_offset_;
  std::size_t map_bits_ = 0, htpy_bits_ = 0;
  std::vector<std::uint32_t> chain_maps_;
  std::set<std::uint32_t> boundaries_;
};

/// Random complex over F_2 in degrees 0..2 with total rank <= max_total,
/// by rejection until d∘d = 0.
inline Complex random_f2_complex(std::mt19937_64& rng, std::size_t max_total) {
  const Ring f2 = Ring::integers_mod(2);
  std::uniform_int_distribution<int> bit(0, 1);
  for (;;) {
    std::map<int, std::size_t> ranks;
    std::size_t left = std::uniform_int_distribution<std::size_t>(1, max_total)(rng);
    for (int i = 0; i < 3 && left > 0; ++i) {
      const std::size_t r =
          i == 2 ? left : std::uniform_int_distribution<std::size_t>(0, left)(rng);
      ranks[i] = r;
      left -= r;
    }
    std::map<int, IntMatrix> diffs;
    for (int i = 0; i < 2; ++i) {
      IntMatrix d(ranks[i + 1], ranks[i]);
      for (std::size_t r = 0; r < d.rows(); ++r)
        for (std::size_t c = 0; c < d.cols(); ++c) d(r, c) = bit(rng);
      diffs[i] = d;
    }
    Complex c(f2, ranks, diffs);
    if (!validate(c)) return c;
  }
}

}  // namespace hocart::testing
