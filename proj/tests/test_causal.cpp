#include <cmath>

#include "doctest.h"
#include "finsler/causal.hpp"
#include "finsler/model.hpp"

using namespace finsler;

TEST_CASE("admissibility report classifies Minkowski directions") {
  auto m = make_minkowski();
  {
    auto rep = admissibility_report(m, ChartPoint{{0, 0, 0, 0}, {1, 0, 0, 0}});
    CHECK(rep.det_g == -1.0);
    CHECK(rep.lorentzian_signature());
    CHECK(rep.is_admissible);
    CHECK(rep.region == Region::Timelike);
  }
  {
    auto rep = admissibility_report(m, ChartPoint{{0, 0, 0, 0}, {1, 1, 0, 0}});
    CHECK(rep.L_value == 0.0);
    CHECK(rep.region == Region::NullAdjacent);
  }
  {
    auto rep = admissibility_report(m, ChartPoint{{0, 0, 0, 0}, {0, 1, 0, 0}});
    CHECK(rep.L_value < 0);
    CHECK(rep.region == Region::SpacelikeSigned);
  }
}

TEST_CASE("Randers spacelike-signed region and non-smooth cone") {
  auto m = make_randers(0.3);
  auto rep = admissibility_report(m, ChartPoint{{0, 0, 0, 0}, {0, 1, 0, 0}});
  CHECK(rep.L_value < 0);
  CHECK(rep.region == Region::SpacelikeSigned);
  // on the a-null cone the Randers Lagrangian is not smooth
  auto null = admissibility_report(m, ChartPoint{{0, 0, 0, 0}, {1, 1, 0, 0}});
  CHECK(null.region == Region::Inadmissible);
}

TEST_CASE("timelike membership separates inside from outside the cone") {
  auto m = make_minkowski();
  const std::array<double, 4> x{0, 0, 0, 0};
  const std::array<double, 4> seed{1, 0, 0, 0};
  CHECK(timelike_membership(m, x, {2, 1, 0, 0}, seed));
  CHECK_FALSE(timelike_membership(m, x, {1, 2, 0, 0}, seed));
  // conicity: scaling the candidate does not change the answer
  for (double alpha : {0.5, 3.0}) {
    CHECK(timelike_membership(m, x, {2 * alpha, alpha, 0, 0}, seed));
    CHECK_FALSE(timelike_membership(m, x, {alpha, 2 * alpha, 0, 0}, seed));
  }
}

TEST_CASE("Randers membership fails toward the degenerate root boundary") {
  auto r = make_randers(0.3);
  const std::array<double, 4> x{0, 0, 0, 0};
  // exactly on the a-null cone the square root degenerates
  CHECK_FALSE(timelike_membership(r, x, {1, 1, 0, 0}, {1, 0, 0, 0}));
  // slightly inside it the segment to the seed crosses no obstruction
  CHECK(timelike_membership(r, x, {1, 0.6, 0, 0}, {1, 0, 0, 0}));
}

TEST_CASE("membership requires a timelike seed") {
  auto m = make_minkowski();
  CHECK_THROWS_AS((void)timelike_membership(m, {0, 0, 0, 0}, {2, 0, 0, 0}, {0, 1, 0, 0}),
                  FinslerError);
}

TEST_CASE("normalize_observer lands on the unit shell and is idempotent") {
  auto m = make_minkowski();
  const std::array<double, 4> x{0, 0, 0, 0};
  auto w = normalize_observer(m, x, {2, 0, 0, 0});
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-14));
  auto u = normalize_observer(m, x, {2, 1, 0, 0});
  for (int i = 0; i < 4; ++i)
    CHECK(u[static_cast<std::size_t>(i)] ==
          doctest::Approx(std::array<double, 4>{2, 1, 0, 0}[static_cast<std::size_t>(i)] / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(lagrangian_value(m, x, u) == doctest::Approx(1.0).epsilon(1e-12));
  auto again = normalize_observer(m, x, u);
  for (int i = 0; i < 4; ++i) CHECK(again[static_cast<std::size_t>(i)] == doctest::Approx(u[static_cast<std::size_t>(i)]).epsilon(1e-14));
  // Randers closed form at the seed direction: alpha = 1/(1+beta)
  auto r = make_randers(0.3);
  auto z = normalize_observer(r, x, {1, 0, 0, 0});
  CHECK(z[0] == doctest::Approx(1.0 / 1.3).epsilon(1e-12));
  CHECK(lagrangian_value(r, x, z) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalize_observer rejects non-timelike input") {
  auto m = make_minkowski();
  CHECK_THROWS_AS((void)normalize_observer(m, {0, 0, 0, 0}, {0, 1, 0, 0}), FinslerError);
}

TEST_CASE("unit-shell samples satisfy L = 1 after Newton refinement") {
  for (const auto& model : catalog_models()) {
    const std::array<double, 4> x = model.sampling.box_min;
    std::array<double, 4> x_mid;
    for (int i = 0; i < 4; ++i)
      x_mid[static_cast<std::size_t>(i)] = 0.5 * (model.sampling.box_min[static_cast<std::size_t>(i)] + model.sampling.box_max[static_cast<std::size_t>(i)]);
    (void)x;
    auto w = normalize_observer(model, x_mid, model.timelike_seed);
    CHECK(std::abs(lagrangian_value(model, x_mid, w) - 1.0) <= 1e-12);
  }
}

TEST_CASE("convexity probe: clean cones report no failures") {
  auto m = make_minkowski();
  auto probe = convexity_probe(m, {0, 0, 0, 0}, 200);
  CHECK(probe.samples == 200);
  CHECK(probe.failures.empty());

  auto r = make_randers(0.3);
  auto probe_r = convexity_probe(r, {0, 0, 0, 0}, 200);
  CHECK(probe_r.samples == 200);
  CHECK(probe_r.failures.empty());
}

TEST_CASE("convexity probe still runs on a near-degenerate Randers model") {
  auto r = make_randers(0.999);  // valid: 0.998 in (0,1), but close to the edge
  auto probe = convexity_probe(r, {0, 0, 0, 0}, 100);
  CHECK(probe.samples == 100);  // failures, if any, are reported rather than thrown
}
