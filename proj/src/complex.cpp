#include "hocart/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hocart/detail/linear_system.hpp"
#include "hocart/detail/prime_field.hpp"

namespace hocart {

using detail::LinearSystem;

// ---------------------------------------------------------------------------
// Ring

Ring::Ring(Int modulus) : modulus_(std::move(modulus)) {
  prime_ = modulus_ != 0 && is_prime(modulus_);
}

Ring Ring::integers_mod(const Int& m) {
  if (m < 2) throw std::invalid_argument("Ring: modulus must be >= 2");
  return Ring(m);
}

std::string Ring::to_string() const {
  if (modulus_ == 0) return "Z";
  return (prime_ ? "F_" : "Z/") + modulus_.get_str();
}

// ---------------------------------------------------------------------------
// Complex

Complex::Complex(Ring ring, std::map<int, std::size_t> ranks,
                 std::map<int, IntMatrix> differentials)
    : ring_(std::move(ring)) {
  for (const auto& [i, r] : ranks)
    if (r > 0) ranks_.emplace(i, r);
  for (auto& [i, d] : differentials) {
    if (d.rows() != rank(i + 1) || d.cols() != rank(i))
      throw std::invalid_argument("Complex: differential in degree " + std::to_string(i) +
                                  " has shape " + std::to_string(d.rows()) + "x" +
                                  std::to_string(d.cols()) + ", expected " +
                                  std::to_string(rank(i + 1)) + "x" + std::to_string(rank(i)));
    if (!d.empty()) differentials_.emplace(i, ring_.reduce(d));
  }
  for (const auto& [i, r] : ranks_)
    if (rank(i + 1) > 0) differentials_.try_emplace(i, IntMatrix(rank(i + 1), r));
}

Complex Complex::concentrated(const Ring& ring, int degree, std::size_t rank) {
  return Complex(ring, {{degree, rank}});
}

std::size_t Complex::rank(int degree) const {
  auto it = ranks_.find(degree);
  return it == ranks_.end() ? 0 : it->second;
}

IntMatrix Complex::differential(int degree) const {
  auto it = differentials_.find(degree);
  return it == differentials_.end() ? IntMatrix(rank(degree + 1), rank(degree)) : it->second;
}

std::vector<int> Complex::degrees() const {
  std::vector<int> out;
  for (const auto& [i, r] : ranks_) out.push_back(i);
  return out;
}

std::size_t Complex::total_rank() const {
  std::size_t total = 0;
  for (const auto& [i, r] : ranks_) total += r;
  return total;
}

std::string Complex::to_string() const {
  std::ostringstream out;
  out << "complex over " << ring_.to_string() << ':';
  if (ranks_.empty()) out << " 0";
  for (const auto& [i, r] : ranks_) {
    out << " [" << i << "] rank " << r;
    if (rank(i + 1) > 0) out << " d=" << differential(i).to_string();
  }
  return out.str();
}

std::optional<Violation> validate(const Complex& c) {
  for (int i : c.degrees()) {
    if (c.rank(i + 1) == 0 || c.rank(i + 2) == 0) continue;
    const IntMatrix dd = c.differential(i + 1) * c.differential(i);
    if (!c.ring().reduce(dd).is_zero())
      return Violation{i + 1, "d(" + std::to_string(i + 1) + ")*d(" + std::to_string(i) +
                                  ") = " + dd.to_string() + " is nonzero"};
  }
  return std::nullopt;
}

Complex shift(const Complex& c, int k) {
  std::map<int, std::size_t> ranks;
  std::map<int, IntMatrix> diffs;
  const Int sign = (k % 2 == 0) ? 1 : -1;
  for (const auto& [i, r] : c.ranks()) {
    ranks.emplace(i - k, r);
    if (c.rank(i + 1) > 0) diffs.emplace(i - k, sign * c.differential(i));
  }
  return Complex(c.ring(), ranks, diffs);
}

Complex direct_sum(const Complex& a, const Complex& b) {
  if (!(a.ring() == b.ring())) throw std::invalid_argument("direct_sum: ring mismatch");
  std::map<int, std::size_t> ranks;
  for (const auto& [i, r] : a.ranks()) ranks[i] += r;
  for (const auto& [i, r] : b.ranks()) ranks[i] += r;
  std::map<int, IntMatrix> diffs;
  for (const auto& [i, r] : ranks)
    diffs.emplace(i, block_diagonal(a.differential(i), b.differential(i)));
  return Complex(a.ring(), ranks, diffs);
}

Complex reduce_mod(const Complex& c, const Int& m) {
  if (!c.ring().is_integers()) throw std::invalid_argument("reduce_mod: source ring must be Z");
  std::map<int, IntMatrix> diffs;
  for (int i : c.degrees()) diffs.emplace(i, c.differential(i));
  return Complex(Ring::integers_mod(m), c.ranks(), diffs);
}

// ---------------------------------------------------------------------------
// ChainMap

ChainMap::ChainMap(Complex source, Complex target, std::map<int, IntMatrix> components)
    : source_(std::make_shared<const Complex>(std::move(source))),
      target_(std::make_shared<const Complex>(std::move(target))) {
  if (!(source_->ring() == target_->ring()))
    throw std::invalid_argument("ChainMap: source and target over different rings");
  for (auto& [i, m] : components) {
    if (m.rows() != target_->rank(i) || m.cols() != source_->rank(i))
      throw std::invalid_argument("ChainMap: component in degree " + std::to_string(i) +
                                  " has shape " + std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()) + ", expected " +
                                  std::to_string(target_->rank(i)) + "x" +
                                  std::to_string(source_->rank(i)));
    if (!m.empty()) components_.emplace(i, source_->ring().reduce(m));
  }
  for (int i : degrees()) components_.try_emplace(i, IntMatrix(target_->rank(i), source_->rank(i)));
}

ChainMap ChainMap::identity(const Complex& c) {
  std::map<int, IntMatrix> comps;
  for (const auto& [i, r] : c.ranks()) comps.emplace(i, IntMatrix::identity(r));
  return ChainMap(c, c, comps);
}

ChainMap ChainMap::zero(const Complex& source, const Complex& target) {
  return ChainMap(source, target);
}

IntMatrix ChainMap::component(int degree) const {
  auto it = components_.find(degree);
  return it == components_.end() ? IntMatrix(target_->rank(degree), source_->rank(degree))
                                 : it->second;
}

std::vector<int> ChainMap::degrees() const {
  std::vector<int> out;
  for (int i : source_->degrees())
    if (target_->rank(i) > 0) out.push_back(i);
  return out;
}

bool ChainMap::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const auto& kv) { return kv.second.is_zero(); });
}

std::string ChainMap::to_string() const {
  std::ostringstream out;
  out << "map";
  if (components_.empty()) out << " 0";
  for (const auto& [i, m] : components_) out << " [" << i << "] " << m.to_string();
  return out.str();
}

static void require_parallel(const ChainMap& a, const ChainMap& b, const char* what) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw std::invalid_argument(std::string(what) + ": maps are not parallel");
}

bool operator==(const ChainMap& a, const ChainMap& b) {
  return a.source() == b.source() && a.target() == b.target() && a.components_ == b.components_;
}

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
  require_parallel(a, b, "ChainMap sum");
  std::map<int, IntMatrix> comps;
  for (int i : a.degrees()) comps.emplace(i, a.component(i) + b.component(i));
  return ChainMap(a.source(), a.target(), comps);
}

ChainMap operator-(const ChainMap& a, const ChainMap& b) { return a + (-b); }

ChainMap operator-(const ChainMap& a) { return Int(-1) * a; }

ChainMap operator*(const Int& s, const ChainMap& a) {
  std::map<int, IntMatrix> comps;
  for (const auto& [i, m] : a.components_) comps.emplace(i, s * m);
  return ChainMap(a.source(), a.target(), comps);
}

std::optional<Violation> check_chain_map(const ChainMap& f) {
  std::set<int> degrees;
  for (int i : f.source().degrees()) degrees.insert({i - 1, i});
  for (int i : f.target().degrees()) degrees.insert({i - 1, i});
  for (int i : degrees) {
    const IntMatrix lhs = f.target().differential(i) * f.component(i);
    const IntMatrix rhs = f.component(i + 1) * f.source().differential(i);
    if (!equal_mod(lhs, rhs, f.ring().modulus()))
      return Violation{i, "chain condition fails in degree " + std::to_string(i)};
  }
  return std::nullopt;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(f.target() == g.source())) throw std::invalid_argument("compose: maps not composable");
  std::map<int, IntMatrix> comps;
  for (int i : f.source().degrees())
    if (g.target().rank(i) > 0) comps.emplace(i, g.component(i) * f.component(i));
  return ChainMap(f.source(), g.target(), comps);
}

ChainMap shift(const ChainMap& f, int k) {
  std::map<int, IntMatrix> comps;
  for (int i : f.degrees()) comps.emplace(i - k, f.component(i));
  return ChainMap(shift(f.source(), k), shift(f.target(), k), comps);
}

ChainMap reduce_mod(const ChainMap& f, const Int& m) {
  std::map<int, IntMatrix> comps;
  for (int i : f.degrees()) comps.emplace(i, f.component(i));
  return ChainMap(reduce_mod(f.source(), m), reduce_mod(f.target(), m), comps);
}

ChainMap stack_vertical(const ChainMap& top, const ChainMap& bottom) {
  if (!(top.source() == bottom.source()))
    throw std::invalid_argument("stack_vertical: sources differ");
  const Complex target = direct_sum(top.target(), bottom.target());
  std::map<int, IntMatrix> comps;
  for (int i : top.source().degrees())
    if (target.rank(i) > 0) comps.emplace(i, vstack(top.component(i), bottom.component(i)));
  return ChainMap(top.source(), target, comps);
}

ChainMap stack_horizontal(const ChainMap& left, const ChainMap& right) {
  if (!(left.target() == right.target()))
    throw std::invalid_argument("stack_horizontal: targets differ");
  const Complex source = direct_sum(left.source(), right.source());
  std::map<int, IntMatrix> comps;
  for (int i : source.degrees())
    if (left.target().rank(i) > 0) comps.emplace(i, hstack(left.component(i), right.component(i)));
  return ChainMap(source, left.target(), comps);
}

ChainMap direct_sum(const ChainMap& a, const ChainMap& b) {
  const Complex source = direct_sum(a.source(), b.source());
  const Complex target = direct_sum(a.target(), b.target());
  std::map<int, IntMatrix> comps;
  for (int i : source.degrees())
    if (target.rank(i) > 0) comps.emplace(i, block_diagonal(a.component(i), b.component(i)));
  return ChainMap(source, target, comps);
}

// ---------------------------------------------------------------------------
// Homotopy

namespace {

IntMatrix homotopy_component(const std::map<int, IntMatrix>& comps, int degree,
                             const Complex& source, const Complex& target) {
  auto it = comps.find(degree);
  return it == comps.end() ? IntMatrix(target.rank(degree - 1), source.rank(degree)) : it->second;
}

std::map<int, IntMatrix> normalize_homotopy(const std::map<int, IntMatrix>& comps,
                                            const Complex& source, const Complex& target) {
  std::map<int, IntMatrix> out;
  for (const auto& [i, m] : comps) {
    if (m.rows() != target.rank(i - 1) || m.cols() != source.rank(i))
      throw std::invalid_argument("Homotopy: component in degree " + std::to_string(i) +
                                  " has the wrong shape");
    if (!m.empty()) out.emplace(i, source.ring().reduce(m));
  }
  return out;
}

}  // namespace

std::optional<Violation> check_homotopy(const ChainMap& f, const ChainMap& g,
                                        const std::map<int, IntMatrix>& components) {
  require_parallel(f, g, "check_homotopy");
  const Complex& s = f.source();
  const Complex& t = f.target();
  for (int i : f.degrees()) {
    const IntMatrix lhs = f.component(i) - g.component(i);
    const IntMatrix rhs =
        t.differential(i - 1) * homotopy_component(components, i, s, t) +
        homotopy_component(components, i + 1, s, t) * s.differential(i);
    if (!equal_mod(lhs, rhs, f.ring().modulus()))
      return Violation{i, "homotopy equation fails in degree " + std::to_string(i)};
  }
  return std::nullopt;
}

Homotopy::Homotopy(ChainMap from, ChainMap to, std::map<int, IntMatrix> components)
    : from_(std::move(from)),
      to_(std::move(to)),
      components_(normalize_homotopy(components, from_.source(), from_.target())) {
  if (auto v = check_homotopy(from_, to_, components_)) throw std::invalid_argument(v->message);
}

Homotopy Homotopy::zero(const ChainMap& f) { return Homotopy(f, f, {}); }

IntMatrix Homotopy::component(int degree) const {
  return homotopy_component(components_, degree, from_.source(), from_.target());
}

Homotopy Homotopy::reversed() const {
  std::map<int, IntMatrix> comps;
  for (const auto& [i, m] : components_) comps.emplace(i, -m);
  return Homotopy(to_, from_, comps);
}

Homotopy Homotopy::then(const Homotopy& next) const {
  if (!(to_ == next.from_)) throw std::invalid_argument("Homotopy::then: endpoints differ");
  std::map<int, IntMatrix> comps = components_;
  for (const auto& [i, m] : next.components_) {
    auto [it, inserted] = comps.try_emplace(i, m);
    if (!inserted) it->second = it->second + m;
  }
  return Homotopy(from_, next.to_, comps);
}

Homotopy Homotopy::postcomposed(const ChainMap& p) const {
  std::map<int, IntMatrix> comps;
  for (const auto& [i, m] : components_)
    if (p.target().rank(i - 1) > 0) comps.emplace(i, p.component(i - 1) * m);
  return Homotopy(compose(p, from_), compose(p, to_), comps);
}

Homotopy Homotopy::precomposed(const ChainMap& q) const {
  std::map<int, IntMatrix> comps;
  for (int i : q.source().degrees())
    if (from_.target().rank(i - 1) > 0) comps.emplace(i, component(i) * q.component(i));
  return Homotopy(compose(from_, q), compose(to_, q), comps);
}

Homotopy Homotopy::reduced_mod(const Int& m) const {
  return Homotopy(reduce_mod(from_, m), reduce_mod(to_, m), components_);
}

// ---------------------------------------------------------------------------
// Cones and homotopy decisions

Cone cone(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  std::map<int, std::size_t> ranks;
  for (int i : y.degrees()) ranks[i] += y.rank(i);
  for (int i : x.degrees()) ranks[i - 1] += x.rank(i);
  std::map<int, IntMatrix> diffs;
  for (const auto& [i, r] : ranks)
    diffs.emplace(i, block2x2(y.differential(i), f.component(i + 1),
                              IntMatrix(x.rank(i + 2), y.rank(i)), -x.differential(i + 1)));
  Complex c(f.ring(), ranks, diffs);

  std::map<int, IntMatrix> incl, proj;
  for (const auto& [i, r] : ranks) {
    if (y.rank(i) > 0)
      incl.emplace(i, vstack(IntMatrix::identity(y.rank(i)), IntMatrix(x.rank(i + 1), y.rank(i))));
    if (x.rank(i + 1) > 0)
      proj.emplace(i, hstack(IntMatrix(x.rank(i + 1), y.rank(i)), IntMatrix::identity(x.rank(i + 1))));
  }
  ChainMap inclusion(y, c, incl);
  ChainMap projection(c, shift(x), proj);
  return {std::move(c), std::move(inclusion), std::move(projection)};
}

std::optional<Homotopy> homotopic(const ChainMap& f, const ChainMap& g) {
  require_parallel(f, g, "homotopic");
  if (f == g) return Homotopy::zero(f);
  LinearSystem sys;
  const auto unknowns = detail::add_map_unknowns(sys, f.source(), f.target(), 1);
  const auto equations = detail::add_map_equations(sys, f.source(), f.target());
  detail::add_boundary_terms(sys, equations, unknowns, f.source(), f.target());
  for (const auto& [i, eq] : equations) sys.add_rhs(eq, f.component(i) - g.component(i));
  const auto sol = sys.solve(f.ring().modulus());
  if (!sol) return std::nullopt;
  return Homotopy(f, g, detail::extract_all(sol->particular, unknowns));
}

namespace {

// |image of A| inside (Z/m)^rows.
Int image_order_mod(const IntMatrix& a, const Int& m) {
  const auto dec = snf(a);
  Int order = 1;
  for (const auto& d : dec.diagonal()) {
    Int g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    order *= m / g;
  }
  return order;
}

}  // namespace

bool is_acyclic(const Complex& c) {
  const Ring& ring = c.ring();
  if (ring.is_integers()) {
    for (const auto& [i, h] : homology(c))
      if (!h.is_trivial()) return false;
    return true;
  }
  if (detail::fits_word_prime(ring.modulus())) {
    const std::int64_t p = ring.modulus().get_si();
    for (int i : c.degrees()) {
      const std::size_t out = c.rank(i + 1) > 0 ? detail::rank_fp(c.differential(i), p) : 0;
      const std::size_t in = c.rank(i - 1) > 0 ? detail::rank_fp(c.differential(i - 1), p) : 0;
      if (out + in != c.rank(i)) return false;
    }
    return true;
  }
  // |ker d(i)| = m^n / |im d(i)| must equal |im d(i-1)|.
  const Int& m = ring.modulus();
  for (int i : c.degrees()) {
    Int full;
    mpz_pow_ui(full.get_mpz_t(), m.get_mpz_t(), c.rank(i));
    const Int out = image_order_mod(c.differential(i), m);
    const Int in = image_order_mod(c.differential(i - 1), m);
    if (full != out * in) return false;
  }
  return true;
}

std::optional<Homotopy> is_contractible(const Complex& c) {
  const Ring& ring = c.ring();
  if ((ring.is_integers() || ring.is_prime_field()) && !is_acyclic(c)) return std::nullopt;
  return homotopic(ChainMap::identity(c), ChainMap::zero(c, c));
}

std::optional<Homotopy> is_homotopy_equivalence(const ChainMap& f) {
  return is_contractible(cone(f).complex);
}

// ---------------------------------------------------------------------------
// Homology over Z

namespace {

struct CycleData {
  IntMatrix kernel;        // n × k, saturated basis of ker d(i)
  IntMatrix left_inverse;  // k × n
  IntMatrix boundaries;    // k × rank(i-1): image of d(i-1) in kernel coordinates
};

CycleData cycles(const Complex& c, int degree) {
  const std::size_t n = c.rank(degree);
  CycleData data;
  if (n == 0) {
    data.kernel = IntMatrix(0, 0);
  } else if (c.rank(degree + 1) == 0) {
    data.kernel = IntMatrix::identity(n);
  } else {
    const auto sol = solve_linear(c.differential(degree), IntVector(c.rank(degree + 1), Int(0)));
    data.kernel = IntMatrix::from_columns(n, sol->kernel);
  }
  data.left_inverse = *integer_left_inverse(data.kernel);
  data.boundaries = data.left_inverse * c.differential(degree - 1);
  return data;
}

void require_integers(const Complex& c, const char* what) {
  if (!c.ring().is_integers())
    throw std::domain_error(std::string(what) + " is only defined over Z");
}

}  // namespace

std::map<int, FGAbelianGroup> homology(const Complex& c) {
  require_integers(c, "homology");
  std::map<int, FGAbelianGroup> out;
  for (int i : c.degrees()) out.emplace(i, cokernel(cycles(c, i).boundaries));
  return out;
}

IntMatrix induced_free_homology_map(const ChainMap& f, int degree) {
  require_integers(f.source(), "induced_free_homology_map");
  struct FreePart {
    IntMatrix projection;  // free coordinates of a cycle
    IntMatrix sections;    // cycle representatives of the free basis
  };
  auto free_part = [degree](const Complex& c) {
    const CycleData data = cycles(c, degree);
    const auto dec = snf(data.boundaries);
    const std::size_t k = data.kernel.cols(), r = dec.rank();
    return FreePart{dec.U.submatrix(r, 0, k - r, k) * data.left_inverse,
                    data.kernel * dec.U_inverse.submatrix(0, r, k, k - r)};
  };
  const FreePart s = free_part(f.source());
  const FreePart t = free_part(f.target());
  return t.projection * f.component(degree) * s.sections;
}

}  // namespace hocart
