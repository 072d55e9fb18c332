#include "hocart/triangles.hpp"

#include <stdexcept>

namespace hocart {

Triangle::Triangle(ChainMap f, ChainMap g, ChainMap h)
    : f_(std::move(f)), g_(std::move(g)), h_(std::move(h)) {
  if (!(f_.target() == g_.source()) || !(g_.target() == h_.source()) ||
      !(h_.target() == shift(f_.source())))
    throw std::invalid_argument("Triangle: maps are not composable as X -> Y -> Z -> X[1]");
  for (const auto* m : {&f_, &g_, &h_})
    if (auto v = check_chain_map(*m)) throw std::invalid_argument("Triangle: " + v->message);
}

CompositeCheck check_composites(const Triangle& t) {
  CompositeCheck out;
  auto null = [&out](const ChainMap& m, const char* name) {
    if (auto w = homotopic(m, ChainMap::zero(m.source(), m.target())))
      out.witnesses.push_back(*w);
    else
      out.failures.push_back(std::string(name) + " is not null-homotopic");
  };
  null(compose(t.g(), t.f()), "g*f");
  null(compose(t.h(), t.g()), "h*g");
  null(compose(shift(t.f()), t.h()), "f[1]*h");
  return out;
}

Triangle standard_triangle(const ChainMap& f) {
  Cone c = cone(f);
  return Triangle(f, c.inclusion, c.projection);
}

Triangle rotate(const Triangle& t) { return Triangle(t.g(), t.h(), -shift(t.f())); }

Triangle shift_negated(const Triangle& t) {
  return Triangle(-shift(t.f()), -shift(t.g()), -shift(t.h()));
}

DistinguishedCheck verify_distinguished_with_witness(const Triangle& t, const ChainMap& u) {
  DistinguishedCheck out;
  const Cone c = cone(t.f());
  if (!(u.source() == c.complex) || !(u.target() == t.z())) {
    out.failures.push_back("u must map cone(f) to the third object");
    return out;
  }
  if (auto v = check_chain_map(u)) {
    out.failures.push_back("u is not a chain map: " + v->message);
    return out;
  }
  const auto equivalence = is_homotopy_equivalence(u);
  if (!equivalence) out.failures.push_back("u is not a homotopy equivalence");
  const auto g_square = homotopic(t.g(), compose(u, c.inclusion));
  if (!g_square) out.failures.push_back("g is not homotopic to u*inclusion");
  const auto h_square = homotopic(compose(t.h(), u), c.projection);
  if (!h_square) out.failures.push_back("h*u is not homotopic to the projection");
  if (out.ok()) out.witness = DistinguishedWitness{u, *equivalence, *g_square, *h_square};
  return out;
}

DistinguishedCheck rotate_witness(const Triangle& t, const DistinguishedWitness& w) {
  // k: h∘g ≃ 0 assembled from g ≃ u∘ι and h∘u ≃ π (π∘ι = 0 strictly).
  const Cone cf = cone(t.f());
  const Homotopy hk1 = w.g_square.postcomposed(t.h());
  const Homotopy k2i = w.h_square.precomposed(cf.inclusion);
  std::map<int, IntMatrix> k;
  for (int i : t.y().degrees()) {
    if (t.x().rank(i) == 0) continue;
    k.emplace(i, hk1.component(i) + k2i.component(i));
  }
  // u': cone(g) → X[1], degree i = (h^i, k^{i+1}) on Z^i ⊕ Y^{i+1}.
  const Cone cg = cone(t.g());
  const Complex x1 = shift(t.x());
  std::map<int, IntMatrix> comps;
  for (int i : cg.complex.degrees()) {
    if (x1.rank(i) == 0) continue;
    auto ki = k.find(i + 1);
    comps.emplace(i, hstack(t.h().component(i), ki != k.end()
                                                    ? ki->second
                                                    : IntMatrix(x1.rank(i), t.y().rank(i + 1))));
  }
  return verify_distinguished_with_witness(rotate(t), ChainMap(cg.complex, x1, comps));
}

MorphismCheck verify_triangle_morphism(const TriangleMorphism& m) {
  MorphismCheck out;
  const Triangle& s = m.source;
  const Triangle& t = m.target;
  auto square = [&out](const ChainMap& lhs, const ChainMap& rhs, const char* name) {
    if (!(lhs.source() == rhs.source()) || !(lhs.target() == rhs.target())) {
      out.failures.push_back(std::string(name) + " square is not well formed");
      return;
    }
    if (auto w = homotopic(lhs, rhs))
      out.witnesses.push_back(*w);
    else
      out.failures.push_back(std::string(name) + " square does not commute up to homotopy");
  };
  if (!(m.p.source() == s.x()) || !(m.q.source() == s.y()) || !(m.r.source() == s.z()) ||
      !(m.p.target() == t.x()) || !(m.q.target() == t.y()) || !(m.r.target() == t.z())) {
    out.failures.push_back("components do not connect corresponding corners");
    return out;
  }
  square(compose(m.q, s.f()), compose(t.f(), m.p), "first");
  square(compose(m.r, s.g()), compose(t.g(), m.q), "second");
  square(compose(shift(m.p), s.h()), compose(t.h(), m.r), "third");
  return out;
}

TriangleMorphism identity_morphism(const Triangle& t) {
  return {t, t, ChainMap::identity(t.x()), ChainMap::identity(t.y()), ChainMap::identity(t.z())};
}

TriangleMorphism rotate(const TriangleMorphism& m) {
  return {rotate(m.source), rotate(m.target), m.q, m.r, shift(m.p)};
}

}  // namespace hocart
