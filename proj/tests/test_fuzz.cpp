#include "doctest.h"
#include "hocart/prop2.hpp"

using namespace hocart;

TEST_CASE("fuzz stream is deterministic") {
  FuzzConfig cfg;
  cfg.p = 3;
  for (std::size_t i = 0; i < 5; ++i) {
    const FuzzSample a = fuzz_prop2(cfg, i), b = fuzz_prop2(cfg, i);
    CHECK(a.diagram.top == b.diagram.top);
    CHECK(a.diagram.c == b.diagram.c);
    CHECK(a.discarded == b.discarded);
  }
  cfg.seed = 43;
  CHECK_FALSE(fuzz_prop2(cfg, 0).diagram.c == fuzz_prop2(FuzzConfig{3}, 0).diagram.c);
  CHECK_THROWS_AS(fuzz_prop2(FuzzConfig{4}, 0), std::invalid_argument);
}

TEST_CASE("emitted diagrams are morphisms of triangles") {
  for (std::int64_t p : {2, 3}) {
    FuzzConfig cfg;
    cfg.p = p;
    for (std::size_t i = 0; i < 20; ++i) {
      const FuzzSample s = fuzz_prop2(cfg, i);
      CHECK(verify_triangle_morphism(s.diagram.morphism()).ok());
      CHECK(s.diagram.top.x() == s.diagram.bottom.x());
    }
  }
}

TEST_CASE("replay with the unperturbed completion is trivial") {
  FuzzConfig cfg;
  cfg.perturb = false;
  for (std::size_t i = 0; i < 10; ++i) {
    const Prop2Replay r = prop2_replay(fuzz_prop2(cfg, i).diagram);
    CHECK(r.ok());
    CHECK(r.psi.is_zero());
    CHECK(r.eps.is_zero());
    CHECK(r.alpha.is_zero());
    CHECK(r.theta == ChainMap::identity(r.theta.source()));
  }
}

TEST_CASE("fuzz trials over small fields") {
  int nonzero = 0;
  for (std::int64_t p : {2, 3}) {
    FuzzConfig cfg;
    cfg.p = p;
    for (std::size_t i = 0; i < 25; ++i) {
      const FuzzTrial t = run_fuzz_trial(cfg, i);
      std::string notes;
      for (const auto& n : t.notes) notes += n + "; ";
      CHECK_MESSAGE(t.pass(), "p=", p, " i=", i, " ", notes);
      nonzero += t.psi_nonzero;
    }
  }
  CHECK(nonzero > 0);
}
