#include "hocart/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hocart/detail/prime_field.hpp"

namespace hocart {

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool is_prime(const Int& m) { return m >= 2 && mpz_probab_prime_p(m.get_mpz_t(), 30) > 0; }

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) { return scalar(n, Int(1)); }

IntMatrix IntMatrix::scalar(std::size_t n, const Int& value) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("from_columns: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::column(const IntVector& v) { return from_columns(v.size(), {v}); }

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::reduced(const Int& modulus) const {
  IntMatrix out = *this;
  if (modulus == 0) return out;
  for (auto& x : out.data_) x = mod_floor(x, modulus);
  return out;
}

IntVector IntMatrix::column_vector(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntMatrix IntMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("submatrix out of range");
  IntMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& block) {
  if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_)
    throw std::out_of_range("set_block out of range");
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j) (*this)(r0 + i, c0 + j) = block(i, j);
}

IntVector IntMatrix::flatten() const { return data_; }

IntMatrix IntMatrix::unflatten(std::size_t rows, std::size_t cols, const IntVector& values,
                               std::size_t offset) {
  if (offset + rows * cols > values.size()) throw std::out_of_range("unflatten: short vector");
  IntMatrix m(rows, cols);
  std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(offset), rows * cols, m.data_.begin());
  return m;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << (*this)(i, j);
    out << ']';
  }
  out << ']';
  if (rows_ == 0 || cols_ == 0) out << '(' << rows_ << 'x' << cols_ << ')';
  return out.str();
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

static void require_same_shape(const IntMatrix& a, const IntMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  require_same_shape(a, b, "matrix sum");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  require_same_shape(a, b, "matrix difference");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& x : c.data_) x = -x;
  return c;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

IntMatrix operator*(const Int& s, const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& x : c.data_) x *= s;
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  IntVector out(a.rows_, Int(0));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
  return out;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  IntMatrix out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  IntMatrix out(a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

IntMatrix block2x2(const IntMatrix& tl, const IntMatrix& tr, const IntMatrix& bl,
                   const IntMatrix& br) {
  if (tl.rows() != tr.rows() || bl.rows() != br.rows() || tl.cols() != bl.cols() ||
      tr.cols() != br.cols())
    throw std::invalid_argument("block2x2: inconsistent block shapes");
  return vstack(hstack(tl, tr), hstack(bl, br));
}

bool equal_mod(const IntMatrix& a, const IntMatrix& b, const Int& modulus) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (modulus == 0) return a == b;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (mod_floor(a(i, j) - b(i, j), modulus) != 0) return false;
  return true;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t sel = k + 1;
      while (sel < n && m(sel, k) == 0) ++sel;
      if (sel == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(sel, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  while (r < std::min(D.rows(), D.cols()) && D(r, r) != 0) ++r;
  return r;
}

IntVector SmithDecomposition::diagonal() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

struct SnfState {
  IntMatrix D, U, V, Ui, Vi;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < D.cols(); ++j) std::swap(D(a, j), D(b, j));
    for (std::size_t j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
    for (std::size_t i = 0; i < Ui.rows(); ++i) std::swap(Ui(i, a), Ui(i, b));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < D.rows(); ++i) std::swap(D(i, a), D(i, b));
    for (std::size_t i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
    for (std::size_t j = 0; j < Vi.cols(); ++j) std::swap(Vi(a, j), Vi(b, j));
  }
  // row[dst] += q * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t j = 0; j < D.cols(); ++j) D(dst, j) += q * D(src, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(dst, j) += q * U(src, j);
    for (std::size_t i = 0; i < Ui.rows(); ++i) Ui(i, src) -= q * Ui(i, dst);
  }
  // col[dst] += q * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t i = 0; i < D.rows(); ++i) D(i, dst) += q * D(i, src);
    for (std::size_t i = 0; i < V.rows(); ++i) V(i, dst) += q * V(i, src);
    for (std::size_t j = 0; j < Vi.cols(); ++j) Vi(src, j) -= q * Vi(dst, j);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < D.cols(); ++j) D(r, j) = -D(r, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(r, j) = -U(r, j);
    for (std::size_t i = 0; i < Ui.rows(); ++i) Ui(i, r) = -Ui(i, r);
  }

  bool move_min_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs;
    for (std::size_t i = t; i < D.rows(); ++i)
      for (std::size_t j = t; j < D.cols(); ++j) {
        if (D(i, j) == 0) continue;
        Int mag = abs(D(i, j));
        if (!best || mag < best_abs) {
          best = {i, j};
          best_abs = std::move(mag);
        }
      }
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }
};

}  // namespace

SmithDecomposition snf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SnfState s{a, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(m),
             IntMatrix::identity(n)};
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    if (!s.move_min_pivot(t)) break;
    for (;;) {
      bool clean = true;
      Int q;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s.D(i, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), s.D(i, t).get_mpz_t(), s.D(t, t).get_mpz_t());
        s.add_row(i, t, -q);
        if (s.D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s.D(t, j) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), s.D(t, j).get_mpz_t(), s.D(t, t).get_mpz_t());
        s.add_col(j, t, -q);
        if (s.D(t, j) != 0) clean = false;
      }
      if (!clean) {
        s.move_min_pivot(t);
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(s.D(i, j).get_mpz_t(), s.D(t, t).get_mpz_t())) {
            s.add_row(t, i, Int(1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (s.D(t, t) < 0) s.negate_row(t);
  }
  return {std::move(s.U), std::move(s.D), std::move(s.V), std::move(s.Ui), std::move(s.Vi)};
}

// ---------------------------------------------------------------------------
// Linear solving

namespace {

std::optional<LinearSolution> solve_over_z(const IntMatrix& a, const IntVector& b) {
  const auto dec = snf(a);
  const std::size_t r = dec.rank();
  const IntVector c = dec.U * b;
  IntVector y(a.cols(), Int(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), dec.D(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), dec.D(i, i).get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  LinearSolution out{dec.V * y, {}};
  for (std::size_t j = r; j < a.cols(); ++j) out.kernel.push_back(dec.V.column_vector(j));
  return out;
}

void check_dimensions(const IntMatrix& a, const IntVector& b) {
  if (a.rows() != b.size())
    throw std::invalid_argument("solve_linear: right-hand side has length " +
                                std::to_string(b.size()) + ", matrix has " +
                                std::to_string(a.rows()) + " rows");
}

IntVector reduce_vector(IntVector v, const Int& m) {
  for (auto& x : v) x = mod_floor(x, m);
  return v;
}

bool is_zero_vector(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

}  // namespace

std::optional<LinearSolution> solve_linear_via_snf(const IntMatrix& a, const IntVector& b,
                                                   const Int& modulus) {
  check_dimensions(a, b);
  if (modulus == 0) return solve_over_z(a, b);
  const std::size_t n = a.cols();
  auto sol = solve_over_z(hstack(a, IntMatrix::scalar(a.rows(), modulus)), b);
  if (!sol) return std::nullopt;
  LinearSolution out;
  out.particular = reduce_vector(IntVector(sol->particular.begin(), sol->particular.begin() + n),
                                 modulus);
  for (const auto& k : sol->kernel) {
    IntVector v = reduce_vector(IntVector(k.begin(), k.begin() + n), modulus);
    if (!is_zero_vector(v)) out.kernel.push_back(std::move(v));
  }
  return out;
}

std::optional<LinearSolution> solve_linear(const IntMatrix& a, const IntVector& b,
                                           const std::optional<Int>& modulus) {
  check_dimensions(a, b);
  const Int m = modulus.value_or(Int(0));
  if (m < 0 || m == 1) throw std::invalid_argument("solve_linear: modulus must be 0 or >= 2");
  if (m != 0 && detail::fits_word_prime(m)) return detail::solve_fp(a, b, m.get_si());
  return solve_linear_via_snf(a, b, m);
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

Int FGAbelianGroup::torsion_order() const {
  Int order = 1;
  for (const auto& d : invariant_factors) order *= d;
  return order;
}

Int FGAbelianGroup::torsion_exponent() const {
  return invariant_factors.empty() ? Int(1) : invariant_factors.back();
}

std::string FGAbelianGroup::to_string() const {
  std::ostringstream out;
  bool first = true;
  if (free_rank > 0) {
    out << "Z";
    if (free_rank > 1) out << '^' << free_rank;
    first = false;
  }
  for (const auto& d : invariant_factors) {
    out << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (first) out << '0';
  return out.str();
}

FGAbelianGroup group_from_factors(const std::vector<Int>& factors) {
  FGAbelianGroup g;
  for (const auto& f : factors) {
    if (f == 0) {
      ++g.free_rank;
    } else if (abs(f) != 1) {
      g.invariant_factors.push_back(abs(f));
    }
  }
  std::sort(g.invariant_factors.begin(), g.invariant_factors.end());
  return g;
}

FGAbelianGroup cokernel(const IntMatrix& a) {
  const auto dec = snf(a);
  std::vector<Int> factors;
  for (std::size_t i = 0; i < a.rows(); ++i)
    factors.push_back(i < std::min(a.rows(), a.cols()) ? dec.D(i, i) : Int(0));
  return group_from_factors(factors);
}

std::optional<IntMatrix> integer_left_inverse(const IntMatrix& k) {
  const auto dec = snf(k);
  const std::size_t r = k.cols();
  if (dec.rank() != r) return std::nullopt;
  for (std::size_t i = 0; i < r; ++i)
    if (dec.D(i, i) != 1) return std::nullopt;
  return dec.V * dec.U.submatrix(0, 0, r, k.rows());
}

// ---------------------------------------------------------------------------
// Quotient presentations

namespace {

// Incremental echelon basis over F_p used to pick a complement.
class FpEchelon {
 public:
  explicit FpEchelon(std::int64_t p) : p_(p) {}

  bool insert(std::vector<std::int64_t> v) {
    reduce(v);
    auto it = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
    if (it == v.end()) return false;
    const auto pivot = static_cast<std::size_t>(it - v.begin());
    const std::int64_t inv = detail::inverse_mod(v[pivot], p_);
    for (auto& x : v) x = x * inv % p_;
    rows_.emplace_back(pivot, std::move(v));
    return true;
  }

 private:
  void reduce(std::vector<std::int64_t>& v) const {
    for (const auto& [pivot, row] : rows_) {
      const std::int64_t f = v[pivot];
      if (f == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = ((v[j] - f * row[j]) % p_ + p_) % p_;
    }
  }

  std::int64_t p_;
  std::vector<std::pair<std::size_t, std::vector<std::int64_t>>> rows_;
};

std::vector<std::int64_t> to_fp(const IntVector& v, std::int64_t p) {
  std::vector<std::int64_t> out(v.size());
  const Int m(static_cast<long>(p));
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = mod_floor(v[i], m).get_si();
  return out;
}

}  // namespace

QuotientPresentation present_quotient(const IntMatrix& generators, const IntMatrix& relations,
                                      const Int& modulus) {
  const std::size_t n = generators.rows();
  if (relations.rows() != n) throw std::invalid_argument("present_quotient: ambient mismatch");
  QuotientPresentation q;
  q.modulus_ = modulus;

  if (modulus != 0 && detail::fits_word_prime(modulus)) {
    const std::int64_t p = modulus.get_si();
    FpEchelon span(p);
    std::vector<IntVector> relation_basis, complement;
    for (std::size_t j = 0; j < relations.cols(); ++j)
      if (span.insert(to_fp(relations.column_vector(j), p)))
        relation_basis.push_back(relations.column_vector(j));
    for (std::size_t j = 0; j < generators.cols(); ++j)
      if (span.insert(to_fp(generators.column_vector(j), p)))
        complement.push_back(generators.column_vector(j));
    const std::size_t k = complement.size(), total = k + relation_basis.size();
    std::vector<IntVector> columns = complement;
    columns.insert(columns.end(), relation_basis.begin(), relation_basis.end());
    const IntMatrix basis = IntMatrix::from_columns(n, columns);
    detail::FpMatrix aug(p, hstack(basis, IntMatrix::identity(n)));
    aug.rref();
    q.pre_ = aug.to_int().submatrix(0, total, total, n);
    q.divisors_.assign(total, Int(1));
    q.post_ = hstack(IntMatrix::identity(k), IntMatrix(k, total - k));
    q.from_coords_ = IntMatrix::from_columns(n, complement).reduced(modulus);
    q.factors_.assign(k, modulus);
    return q;
  }

  const IntMatrix span_l =
      modulus == 0 ? generators : hstack(generators, IntMatrix::scalar(n, modulus));
  const IntMatrix span_r =
      modulus == 0 ? relations : hstack(relations, IntMatrix::scalar(n, modulus));
  const auto outer = snf(span_l);
  const std::size_t r = outer.rank();
  q.pre_ = outer.U.submatrix(0, 0, r, n);
  const IntVector diag = outer.diagonal();
  q.divisors_ = IntVector(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(r));
  IntMatrix basis = outer.U_inverse.submatrix(0, 0, n, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < n; ++i) basis(i, j) *= q.divisors_[j];

  IntMatrix rel_coords = q.pre_ * span_r;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < rel_coords.cols(); ++j) {
      if (!mpz_divisible_p(rel_coords(i, j).get_mpz_t(), q.divisors_[i].get_mpz_t()))
        throw std::invalid_argument("present_quotient: relations not contained in generators");
      mpz_divexact(rel_coords(i, j).get_mpz_t(), rel_coords(i, j).get_mpz_t(),
                   q.divisors_[i].get_mpz_t());
    }
  const auto inner = snf(rel_coords);
  const std::size_t rank2 = inner.rank();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < r; ++i) {
    const Int e = i < rank2 ? inner.D(i, i) : Int(0);
    if (e == 1) continue;
    kept.push_back(i);
    q.factors_.push_back(e);
  }
  q.post_ = IntMatrix(kept.size(), r);
  IntMatrix lift(r, kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    for (std::size_t j = 0; j < r; ++j) q.post_(k, j) = inner.U(kept[k], j);
    for (std::size_t i = 0; i < r; ++i) lift(i, k) = inner.U_inverse(i, kept[k]);
  }
  q.from_coords_ = basis * lift;
  if (modulus != 0) q.from_coords_ = q.from_coords_.reduced(modulus);
  return q;
}

std::optional<Int> QuotientPresentation::cardinality() const {
  Int total = 1;
  for (const auto& e : factors_) {
    if (e == 0) return std::nullopt;
    total *= e;
  }
  return total;
}

IntVector QuotientPresentation::coordinates(const IntVector& v) const {
  if (v.size() != ambient_dimension())
    throw std::invalid_argument("coordinates: vector has wrong length");
  IntVector y = pre_ * (modulus_ == 0 ? v : reduce_vector(v, modulus_));
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (divisors_[i] == 1) continue;
    if (!mpz_divisible_p(y[i].get_mpz_t(), divisors_[i].get_mpz_t()))
      throw std::invalid_argument("coordinates: vector outside the generated module");
    mpz_divexact(y[i].get_mpz_t(), y[i].get_mpz_t(), divisors_[i].get_mpz_t());
  }
  IntVector z = post_ * y;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (factors_[i] != 0) z[i] = mod_floor(z[i], factors_[i]);
  return z;
}

IntVector QuotientPresentation::representative(const IntVector& coords) const {
  IntVector v = from_coords_ * coords;
  return modulus_ == 0 ? v : reduce_vector(std::move(v), modulus_);
}

// ---------------------------------------------------------------------------
// Coset enumeration

namespace {

QuotientPresentation coset_quotient(const AffineCosetModM& c) {
  if (c.modulus < 2) throw std::invalid_argument("AffineCosetModM: modulus must be >= 2");
  const std::size_t n = c.particular.size();
  return present_quotient(IntMatrix::from_columns(n, c.generators),
                          IntMatrix::from_columns(n, c.relations), c.modulus);
}

IntVector add_reduced(const IntVector& a, const IntVector& b, const Int& m) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = m == 0 ? Int(a[i] + b[i]) : mod_floor(a[i] + b[i], m);
  return out;
}

// Mixed-radix walk over coordinate boxes [lo_i, hi_i].
WalkStatus walk_box(const IntVector& particular, const QuotientPresentation& q,
                    const IntVector& lo, const IntVector& hi, const Int& cap,
                    const std::function<bool(const IntVector&)>& visit) {
  IntVector z = lo;
  Int visited = 0;
  for (;;) {
    if (visited >= cap) return WalkStatus::Overflow;
    ++visited;
    if (!visit(add_reduced(particular, q.representative(z), q.modulus()))) return WalkStatus::Stopped;
    std::size_t i = 0;
    while (i < z.size()) {
      if (z[i] < hi[i]) {
        ++z[i];
        break;
      }
      z[i] = lo[i];
      ++i;
    }
    if (i == z.size()) return WalkStatus::Completed;
  }
}

}  // namespace

Int AffineCosetModM::cardinality() const { return *coset_quotient(*this).cardinality(); }

WalkStatus enumerate_coset(const AffineCosetModM& coset, const Int& cap,
                           const std::function<bool(const IntVector&)>& visit) {
  if (cap < 1) throw std::invalid_argument("enumerate_coset: cap must be >= 1");
  if (coset.generators.size() + coset.relations.size() > 0 &&
      (!coset.generators.empty() && coset.generators.front().size() != coset.particular.size()))
    throw std::invalid_argument("enumerate_coset: generator length mismatch");
  const auto q = coset_quotient(coset);
  if (*q.cardinality() > cap) return WalkStatus::Overflow;
  IntVector lo(q.dimension(), Int(0)), hi(q.dimension());
  for (std::size_t i = 0; i < hi.size(); ++i) hi[i] = q.factors()[i] - 1;
  return walk_box(reduce_vector(coset.particular, coset.modulus), q, lo, hi, cap, visit);
}

std::optional<std::vector<IntVector>> enumerate_coset(const AffineCosetModM& coset,
                                                      const Int& cap) {
  std::vector<IntVector> out;
  if (enumerate_coset(coset, cap, [&](const IntVector& v) {
        out.push_back(v);
        return true;
      }) == WalkStatus::Overflow)
    return std::nullopt;
  return out;
}

WalkStatus enumerate_bounded(const IntVector& particular, const QuotientPresentation& quotient,
                             const Int& bound, const Int& cap,
                             const std::function<bool(const IntVector&)>& visit) {
  IntVector lo(quotient.dimension()), hi(quotient.dimension());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const Int& e = quotient.factors()[i];
    lo[i] = e == 0 ? Int(-bound) : Int(0);
    hi[i] = e == 0 ? bound : Int(e - 1);
  }
  return walk_box(particular, quotient, lo, hi, cap, visit);
}

}  // namespace hocart
