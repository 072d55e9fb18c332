#include "hocart/unit_lemma.hpp"

#include <sstream>
#include <stdexcept>

#include "hocart/detail/prime_field.hpp"

namespace hocart {

namespace {

// Scalar fields.

struct Fp {
  std::int64_t p;
  using Scalar = std::int64_t;
  Scalar zero() const { return 0; }
  Scalar one() const { return 1 % p; }
  Scalar add(Scalar a, Scalar b) const { return (a + b) % p; }
  Scalar sub(Scalar a, Scalar b) const { return ((a - b) % p + p) % p; }
  Scalar mul(Scalar a, Scalar b) const { return (a * b) % p; }
  Scalar inv(Scalar a) const { return detail::inverse_mod(a, p); }
  bool is_zero(Scalar a) const { return a == 0; }
  mpq_class to_rational(Scalar a) const { return mpq_class(static_cast<long>(a)); }
};

struct Q {
  using Scalar = mpq_class;
  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
  Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
  Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
  Scalar inv(const Scalar& a) const { return 1 / a; }
  bool is_zero(const Scalar& a) const { return a == 0; }
  mpq_class to_rational(const Scalar& a) const { return a; }
};

// Algebras: elements are coordinate vectors over the field.

template <class F>
struct MatrixAlgebra {
  using Field = F;
  using Scalar = typename F::Scalar;
  using Elem = std::vector<Scalar>;
  F field;
  std::size_t k;

  Elem zero() const { return Elem(k * k, field.zero()); }
  Elem one() const {
    Elem e = zero();
    for (std::size_t i = 0; i < k; ++i) e[i * k + i] = field.one();
    return e;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem out = zero();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t l = 0; l < k; ++l) {
        if (field.is_zero(a[i * k + l])) continue;
        for (std::size_t j = 0; j < k; ++j)
          out[i * k + j] = field.add(out[i * k + j], field.mul(a[i * k + l], b[l * k + j]));
      }
    return out;
  }
};

struct StructAlgebra {
  using Field = Fp;
  using Scalar = std::int64_t;
  using Elem = std::vector<std::int64_t>;
  Fp field;
  const StructureAlgebra* alg;

  Elem zero() const { return Elem(alg->dimension(), 0); }
  Elem one() const { return alg->identity(); }
  Elem mul(const Elem& a, const Elem& b) const { return alg->multiply(a, b); }
};

template <class A>
typename A::Elem add(const A& alg, const typename A::Elem& a, const typename A::Elem& b) {
  typename A::Elem out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = alg.field.add(a[i], b[i]);
  return out;
}

template <class A>
typename A::Elem scale(const A& alg, const typename A::Scalar& s, const typename A::Elem& a) {
  typename A::Elem out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = alg.field.mul(s, a[i]);
  return out;
}

template <class A>
typename A::Elem negate(const A& alg, const typename A::Elem& a) {
  return scale(alg, alg.field.sub(alg.field.zero(), alg.field.one()), a);
}

template <class A>
bool is_zero(const A& alg, const typename A::Elem& a) {
  for (const auto& x : a)
    if (!alg.field.is_zero(x)) return false;
  return true;
}

template <class A>
struct Relation {
  std::size_t m = 0;
  std::vector<typename A::Scalar> s;
};

// Minimal polynomial by linear dependence of 1, ε, ε², …
template <class A>
Relation<A> relation_of(const A& alg, const typename A::Elem& eps) {
  using S = typename A::Scalar;
  const auto& f = alg.field;
  struct Row {
    typename A::Elem v;
    std::vector<S> comb;
    std::size_t pivot;
  };
  std::vector<Row> basis;
  typename A::Elem power = alg.one();
  for (std::size_t d = 0;; ++d) {
    typename A::Elem v = power;
    std::vector<S> comb(d + 1, f.zero());
    comb[d] = f.one();
    for (const Row& r : basis) {
      if (f.is_zero(v[r.pivot])) continue;
      const S c = f.mul(v[r.pivot], f.inv(r.v[r.pivot]));
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(v[i], f.mul(c, r.v[i]));
      for (std::size_t i = 0; i < r.comb.size(); ++i) comb[i] = f.sub(comb[i], f.mul(c, r.comb[i]));
    }
    std::size_t pivot = 0;
    while (pivot < v.size() && f.is_zero(v[pivot])) ++pivot;
    if (pivot == v.size()) {
      Relation<A> rel;
      while (f.is_zero(comb[rel.m])) ++rel.m;
      const S lead = f.inv(comb[rel.m]);
      for (std::size_t j = rel.m + 1; j <= d; ++j) rel.s.push_back(f.mul(lead, comb[j]));
      return rel;
    }
    basis.push_back({std::move(v), std::move(comb), pivot});
    power = alg.mul(power, eps);
  }
}

template <class A>
typename A::Elem evaluate(const A& alg, const std::vector<typename A::Scalar>& poly,
                          const typename A::Elem& x) {
  typename A::Elem out = alg.zero();
  for (auto it = poly.rbegin(); it != poly.rend(); ++it)
    out = add(alg, alg.mul(out, x), scale(alg, *it, alg.one()));
  return out;
}

template <class A>
struct Certificate {
  typename A::Elem alpha, unit, inverse;
  std::size_t nilpotency = 0;
  Relation<A> relation;
};

// α = s(ε); n = ε + αε² is nilpotent and (1 + n)^{-1} = Σ (−n)^k.
template <class A>
Certificate<A> certify(const A& alg, const typename A::Elem& eps) {
  Certificate<A> c;
  c.relation = relation_of(alg, eps);
  c.alpha = evaluate(alg, c.relation.s, eps);
  const typename A::Elem n = add(alg, eps, alg.mul(c.alpha, alg.mul(eps, eps)));
  c.unit = add(alg, alg.one(), n);
  const typename A::Elem minus_n = negate(alg, n);
  typename A::Elem term = alg.one();
  c.inverse = alg.zero();
  for (std::size_t e = 0; e <= c.relation.m + 1; ++e) {
    if (is_zero(alg, term)) {
      c.nilpotency = e;
      return c;
    }
    c.inverse = add(alg, c.inverse, term);
    term = alg.mul(term, minus_n);
  }
  throw std::logic_error("find_alpha: ε + αε² is not nilpotent");
}

template <class A>
PolynomialRelation public_relation(const A& alg, const Relation<A>& r) {
  PolynomialRelation out{r.m, {}};
  for (const auto& x : r.s) out.s.push_back(alg.field.to_rational(x));
  return out;
}

// Conversions between the public representations and the algebras.

MatrixAlgebra<Fp> algebra_of(const MatFp& m) { return {Fp{m.p}, m.k}; }
MatrixAlgebra<Q> algebra_of(const MatQ& m) { return {Q{}, m.k}; }
StructAlgebra algebra_of(const AlgebraElement& e) {
  return {Fp{e.algebra->characteristic()}, e.algebra.get()};
}

MatFp wrap(const MatFp& like, std::vector<std::int64_t> v) { return {like.p, like.k, std::move(v)}; }
MatQ canonical(MatQ m) {
  for (auto& x : m.entries) x.canonicalize();
  return m;
}

MatQ wrap(const MatQ& like, std::vector<mpq_class> v) { return {like.k, std::move(v)}; }
AlgebraElement wrap(const AlgebraElement& like, std::vector<std::int64_t> v) {
  return {like.algebra, std::move(v)};
}

void validate_rep(const MatFp& m) {
  if (m.p < 2 || !detail::fits_word_prime(Int(static_cast<long>(m.p))))
    throw std::invalid_argument("matrix ring: p must be a prime below 2^31");
  if (m.entries.size() != m.k * m.k) throw std::invalid_argument("matrix ring: wrong entry count");
  for (auto x : m.entries)
    if (x < 0 || x >= m.p) throw std::invalid_argument("matrix ring: entries must lie in [0, p)");
}
void validate_rep(const MatQ& m) {
  if (m.entries.size() != m.k * m.k) throw std::invalid_argument("matrix ring: wrong entry count");
}
void validate_rep(const AlgebraElement& e) {
  if (!e.algebra || e.coords.size() != e.algebra->dimension())
    throw std::invalid_argument("algebra element: wrong coordinate count");
}

template <class M>
M transpose(const M& m) {
  M t = m;
  for (std::size_t i = 0; i < m.k; ++i)
    for (std::size_t j = 0; j < m.k; ++j) t.entries[i * m.k + j] = m.entries[j * m.k + i];
  return t;
}

const std::vector<std::int64_t>& elem(const MatFp& m) { return m.entries; }
const std::vector<mpq_class>& elem(const MatQ& m) { return m.entries; }
const std::vector<std::int64_t>& elem(const AlgebraElement& e) { return e.coords; }

template <class Rep>
UnitCertificate alpha_in(const Rep& eps) {
  validate_rep(eps);
  const auto alg = algebra_of(eps);
  const auto c = certify(alg, elem(eps));
  return {wrap(eps, c.alpha), wrap(eps, c.unit), wrap(eps, c.inverse), c.nilpotency,
          public_relation(alg, c.relation)};
}

UnitCertificate alpha_residue(const Residue& r) {
  const Int& m = r.modulus;
  if (m < 2) throw std::invalid_argument("residue ring: modulus must be >= 2");
  const Int eps = mod_floor(r.value, m);
  // α_p ∈ {0, 1} per prime p | m, combined by CRT over the radical.
  Int alpha = 0, radical = 1, rest = m;
  for (Int p = 2; p * p <= rest || rest > 1; ++p) {
    if (p * p > rest) p = rest;
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    const Int e = mod_floor(eps, p);
    Int ap = 0;
    if (mod_floor(1 + e, p) == 0) ap = 1;
    if (mod_floor(1 + e + ap * e * e, p) == 0) throw std::logic_error("residue ring: no α mod p");
    // alpha ≡ ap (mod p), alpha unchanged mod radical.
    Int inv;
    mpz_invert(inv.get_mpz_t(), radical.get_mpz_t(), p.get_mpz_t());
    alpha += radical * mod_floor((ap - alpha) * inv, p);
    radical *= p;
  }
  alpha = mod_floor(alpha, m);
  const Int unit = mod_floor(1 + eps + alpha * eps * eps, m);
  Int inverse;
  if (mpz_invert(inverse.get_mpz_t(), unit.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::logic_error("residue ring: 1 + ε + αε² is not a unit");
  return {Residue{m, alpha}, Residue{m, unit}, Residue{m, mod_floor(inverse, m)}, std::nullopt,
          std::nullopt};
}

template <class Rep>
bool verify_in(const Rep& eps, const UnitCertificate& cert, bool beta) {
  const auto* alpha = std::get_if<Rep>(&cert.alpha);
  const auto* unit = std::get_if<Rep>(&cert.unit);
  const auto* inverse = std::get_if<Rep>(&cert.inverse);
  if (!alpha || !unit || !inverse) return false;
  validate_rep(eps);
  const auto alg = algebra_of(eps);
  const auto& e = elem(eps);
  const auto e2 = alg.mul(e, e);
  const auto correction = beta ? alg.mul(e2, elem(*alpha)) : alg.mul(elem(*alpha), e2);
  const auto n = add(alg, e, correction);
  const auto u = add(alg, alg.one(), n);
  if (u != elem(*unit)) return false;
  if (alg.mul(u, elem(*inverse)) != alg.one() || alg.mul(elem(*inverse), u) != alg.one())
    return false;
  if (cert.relation) {
    // ε^m + ε^{m+1}·s(ε) = 0 and n^{m+1} = 0.
    const std::size_t m = cert.relation->m;
    std::vector<typename decltype(alg)::Scalar> coeffs(m, alg.field.zero());
    coeffs.push_back(alg.field.one());
    for (const auto& q : cert.relation->s) {
      if constexpr (std::is_same_v<typename decltype(alg)::Scalar, mpq_class>) {
        coeffs.push_back(q);
      } else {
        if (q.get_den() != 1) return false;
        coeffs.push_back(mod_floor(q.get_num(), Int(static_cast<long>(alg.field.p))).get_si());
      }
    }
    if (!is_zero(alg, evaluate(alg, coeffs, e))) return false;
    auto power = alg.one();
    for (std::size_t i = 0; i <= m; ++i) power = alg.mul(power, n);
    if (!is_zero(alg, power)) return false;
  }
  return true;
}

template <class M>
std::string matrix_string(const M& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < m.k; ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.k; ++j) out << (j ? ", " : "") << m.entries[i * m.k + j];
    out << ']';
  }
  out << ']';
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------

StructureAlgebra::StructureAlgebra(std::int64_t p, std::size_t n,
                                   std::vector<std::int64_t> constants,
                                   std::vector<std::int64_t> identity)
    : p_(p), n_(n), c_(std::move(constants)), one_(std::move(identity)) {
  if (p < 2 || !detail::fits_word_prime(Int(static_cast<long>(p))))
    throw std::invalid_argument("StructureAlgebra: p must be a prime below 2^31");
  if (c_.size() != n * n * n || one_.size() != n)
    throw std::invalid_argument("StructureAlgebra: wrong number of constants");
  for (auto& x : c_) x = ((x % p) + p) % p;
  for (auto& x : one_) x = ((x % p) + p) % p;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> ei(n, 0);
    ei[i] = 1;
    if (multiply(one_, ei) != ei || multiply(ei, one_) != ei)
      throw std::invalid_argument("StructureAlgebra: identity is not two-sided");
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::int64_t> ej(n, 0);
      ej[j] = 1;
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::int64_t> ek(n, 0);
        ek[k] = 1;
        if (multiply(multiply(ei, ej), ek) != multiply(ei, multiply(ej, ek)))
          throw std::invalid_argument("StructureAlgebra: multiplication is not associative");
      }
    }
  }
}

std::vector<std::int64_t> StructureAlgebra::multiply(const std::vector<std::int64_t>& a,
                                                     const std::vector<std::int64_t>& b) const {
  std::vector<std::int64_t> out(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (b[j] == 0) continue;
      const std::int64_t ab = (a[i] * b[j]) % p_;
      for (std::size_t k = 0; k < n_; ++k) out[k] = (out[k] + ab * constant(i, j, k)) % p_;
    }
  }
  return out;
}

StructureAlgebra StructureAlgebra::opposite() const {
  std::vector<std::int64_t> c(c_.size());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) c[(i * n_ + j) * n_ + k] = constant(j, i, k);
  return StructureAlgebra(p_, n_, c, one_);
}

bool operator==(const MatFp& a, const MatFp& b) {
  return a.p == b.p && a.k == b.k && a.entries == b.entries;
}
bool operator==(const MatQ& a, const MatQ& b) { return a.k == b.k && a.entries == b.entries; }
bool operator==(const Residue& a, const Residue& b) {
  return a.modulus == b.modulus && mod_floor(a.value - b.value, a.modulus) == 0;
}
bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  return a.algebra == b.algebra && a.coords == b.coords;
}

std::string to_string(const RingElementRep& x) {
  struct Visitor {
    std::string operator()(const MatFp& m) const { return matrix_string(m); }
    std::string operator()(const MatQ& m) const { return matrix_string(m); }
    std::string operator()(const Residue& r) const {
      return r.value.get_str() + " mod " + r.modulus.get_str();
    }
    std::string operator()(const Int& n) const { return n.get_str(); }
    std::string operator()(const AlgebraElement& e) const {
      std::string s = "(";
      for (std::size_t i = 0; i < e.coords.size(); ++i)
        s += (i ? ", " : "") + std::to_string(e.coords[i]);
      return s + ")";
    }
  };
  return std::visit(Visitor{}, x);
}

PolynomialRelation polynomial_relation(const RingElementRep& eps) {
  if (const auto* m = std::get_if<MatFp>(&eps)) {
    validate_rep(*m);
    const auto alg = algebra_of(*m);
    return public_relation(alg, relation_of(alg, m->entries));
  }
  if (const auto* m = std::get_if<MatQ>(&eps)) {
    validate_rep(*m);
    const auto alg = algebra_of(*m);
    return public_relation(alg, relation_of(alg, canonical(*m).entries));
  }
  if (const auto* e = std::get_if<AlgebraElement>(&eps)) {
    validate_rep(*e);
    const auto alg = algebra_of(*e);
    return public_relation(alg, relation_of(alg, e->coords));
  }
  throw std::invalid_argument("polynomial_relation: needs an algebra over a field");
}

UnitCertificate find_alpha(const RingElementRep& eps) {
  if (const auto* m = std::get_if<MatFp>(&eps)) return alpha_in(*m);
  if (const auto* m = std::get_if<MatQ>(&eps)) return alpha_in(canonical(*m));
  if (const auto* e = std::get_if<AlgebraElement>(&eps)) return alpha_in(*e);
  if (const auto* r = std::get_if<Residue>(&eps)) return alpha_residue(*r);
  throw std::invalid_argument("find_alpha: Z is not head-finite; use find_alpha_over_Z");
}

UnitCertificate find_beta(const RingElementRep& eps) {
  // In the opposite ring αε² becomes ε²β; transport back afterwards.
  if (const auto* m = std::get_if<MatFp>(&eps)) {
    UnitCertificate c = alpha_in(transpose(*m));
    for (auto* x : {&c.alpha, &c.unit, &c.inverse}) *x = transpose(std::get<MatFp>(*x));
    return c;
  }
  if (const auto* m = std::get_if<MatQ>(&eps)) {
    UnitCertificate c = alpha_in(transpose(canonical(*m)));
    for (auto* x : {&c.alpha, &c.unit, &c.inverse}) *x = transpose(std::get<MatQ>(*x));
    return c;
  }
  if (const auto* e = std::get_if<AlgebraElement>(&eps)) {
    validate_rep(*e);
    const auto op = std::make_shared<const StructureAlgebra>(e->algebra->opposite());
    UnitCertificate c = alpha_in(AlgebraElement{op, e->coords});
    for (auto* x : {&c.alpha, &c.unit, &c.inverse})
      *x = AlgebraElement{e->algebra, std::get<AlgebraElement>(*x).coords};
    return c;
  }
  if (std::holds_alternative<Residue>(eps)) return find_alpha(eps);
  throw std::invalid_argument("find_beta: Z is not head-finite; use find_alpha_over_Z");
}

std::optional<Int> find_alpha_over_Z(const Int& eps) {
  if (eps == 0) return Int(0);
  const Int e2 = eps * eps;
  for (const long target : {1L, -1L}) {
    const Int need = Int(target) - 1 - eps;  // α·ε² = need
    if (mpz_divisible_p(need.get_mpz_t(), e2.get_mpz_t())) return Int(need / e2);
  }
  return std::nullopt;
}

bool verify_certificate(const RingElementRep& eps, const UnitCertificate& cert, bool beta) {
  if (const auto* m = std::get_if<MatFp>(&eps)) return verify_in(*m, cert, beta);
  if (const auto* m = std::get_if<MatQ>(&eps)) return verify_in(canonical(*m), cert, beta);
  if (const auto* e = std::get_if<AlgebraElement>(&eps)) return verify_in(*e, cert, beta);
  if (const auto* r = std::get_if<Residue>(&eps)) {
    const auto* a = std::get_if<Residue>(&cert.alpha);
    const auto* u = std::get_if<Residue>(&cert.unit);
    const auto* v = std::get_if<Residue>(&cert.inverse);
    if (!a || !u || !v) return false;
    const Int& m = r->modulus;
    const Int unit = mod_floor(1 + r->value + a->value * r->value * r->value, m);
    return mod_floor(u->value - unit, m) == 0 && mod_floor(unit * v->value, m) == mod_floor(1, m);
  }
  throw std::invalid_argument("verify_certificate: unsupported representation");
}

}  // namespace hocart
