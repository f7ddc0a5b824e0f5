#include <doctest.h>

#include <cmath>

#include "hexwell/edges.hpp"
#include "hexwell/errors.hpp"

using namespace hexwell;

namespace {
const HoneycombGeometry g = build_geometry();
}

TEST_CASE("dual slice structure for the zigzag edge") {
  const auto prob = make_problem(g, trig_potential(g), 5.0, 10);
  const EdgeSpec edge = edge_from_indices(g, 1, 0);
  const BandSlice s = dual_slice(prob, edge, g.K(), 41);

  SUBCASE("xi grid and Dirac sample") {
    CHECK(s.xis.front() == doctest::Approx(-0.5));
    CHECK(s.xis.back() == doctest::Approx(0.5));
    CHECK(s.xis[20] == doctest::Approx(0.0));
    CHECK(std::abs(s.E1[20] - s.E_D) < 1e-5 * 25.0);
    CHECK(std::abs(s.E2[20] - s.E_D) < 1e-5 * 25.0);
  }
  SUBCASE("band ordering") {
    for (std::size_t i = 0; i < s.xis.size(); ++i) CHECK(s.E2[i] >= s.E1[i]);
  }
  SUBCASE("endpoints differ by a dual-lattice vector") {
    CHECK(s.E1.front() == doctest::Approx(s.E1.back()).epsilon(1e-6).scale(1.0));
    CHECK(s.E2.front() == doctest::Approx(s.E2.back()).epsilon(1e-6).scale(1.0));
  }
  SUBCASE("slice meets only the Dirac orbit at xi = 0") {
    for (const auto& [xi, vtx] : s.vertex_hits) CHECK(xi == doctest::Approx(0.0));
    CHECK(!s.vertex_hits.empty());
  }
  SUBCASE("sample count validation") {
    CHECK_THROWS_AS(dual_slice(prob, edge, g.K(), 40), ConfigError);
    CHECK_THROWS_AS(dual_slice(prob, edge, g.K(), 21), ConfigError);
  }
}

TEST_CASE("no-fold verdicts at the two couplings") {
  // zigzag holds at both couplings; armchair folds through the Dirac level at
  // the weaker one
  const EdgeSpec zigzag = edge_from_indices(g, 1, 0);
  const EdgeSpec armchair = edge_from_indices(g, 1, 1);
  for (double lam : {1.0, 5.0}) {
    const auto prob = make_problem(g, trig_potential(g), lam, 12);
    const auto sz = dual_slice(prob, zigzag, g.K(), 41);
    CHECK(nofold_check(sz, 1e-6 * lam * lam).holds);
    const auto sa = dual_slice(prob, armchair, g.K(), 41);
    const auto nf = nofold_check(sa, 1e-6 * lam * lam);
    if (lam == 1.0) {
      CHECK(!nf.holds);
      CHECK(nf.crossings.size() >= 1);
      for (double x : nf.crossings) {
        CHECK(std::abs(x) <= 0.5);
        CHECK(std::abs(x) > 2.0 / 40.0);  // outside the exclusion window
      }
    } else {
      CHECK(nf.holds);
    }
  }
}

TEST_CASE("crossing detector details") {
  BandSlice s;
  s.E_D = 0.0;
  const int M = 41;
  for (int i = 0; i < M; ++i) {
    const double xi = -0.5 + i / static_cast<double>(M - 1);
    s.xis.push_back(xi);
    // lower band grazes the level tangentially at xi = 0 and crosses at 0.3
    s.E1.push_back(-std::abs(xi) * 0.0);  // identically 0: tangential everywhere
    s.E2.push_back(0.3 - xi);             // crosses upward at xi = 0.3
  }
  SUBCASE("transversal crossing is located by interpolation") {
    const auto nf = nofold_check(s, 1e-9);
    REQUIRE(nf.crossings.size() == 1);
    CHECK(nf.crossings[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(!nf.holds);
  }
  SUBCASE("touchings within tol are not crossings") {
    for (int i = 0; i < M; ++i) s.E2[i] = 1e-8 * std::sin(37.0 * s.xis[i]);
    const auto nf = nofold_check(s, 1e-6);
    CHECK(nf.holds);
  }
}

TEST_CASE("verdicts stable under sample refinement") {
  const auto prob = make_problem(g, trig_potential(g), 1.0, 12);
  const EdgeSpec armchair = edge_from_indices(g, 1, 1);
  const auto v41 = nofold_check(dual_slice(prob, armchair, g.K(), 41), 1e-6);
  const auto v81 = nofold_check(dual_slice(prob, armchair, g.K(), 81), 1e-6);
  CHECK(v41.holds == v81.holds);
}
