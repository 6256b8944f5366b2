#include <cmath>

#include "doctest.h"
#include "finsler/report.hpp"
#include "finsler/verify.hpp"

using namespace finsler;

TEST_CASE("point sampler is deterministic and lands in the timelike cone") {
  auto m = make_randers_schwarzschild(0.15, 1.0);
  auto a = sample_admissible_points(m, 25, 123);
  auto b = sample_admissible_points(m, 25, 123);
  REQUIRE(a.size() == 25);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].v == b[i].v);
    CHECK(lagrangian_value(m, a[i].x, a[i].v) > 0.0);
  }
  auto c = sample_admissible_points(m, 25, 124);
  CHECK_FALSE(a[0].v == c[0].v);
}

TEST_CASE("homogeneity suite passes for every catalog kind") {
  KineticGas gas;
  for (const auto& m : catalog_models()) {
    auto pts = sample_admissible_points(m, 15, 42);
    for (const auto& r : homogeneity_suite(m, pts, gas, 42, ExecMode::Serial)) {
      INFO(m.name, " ", r.name, " = ", r.max_abs_residual);
      CHECK(r.pass);
      CHECK(r.samples == 15);
    }
  }
}

TEST_CASE("euler_residual_rel flags a wrong degree") {
  auto m = make_minkowski();
  ChartPoint pt{{0, 0, 0, 0}, {1, 0.2, 0, 0}};
  Jet L = lagrangian_jet(m, pt, TruncationOrder{1, 3});
  CHECK(euler_residual_rel(L, 2.0) <= 1e-12);
  CHECK(euler_residual_rel(L, 1.0) > 0.1);  // misdeclared degree is caught
}

TEST_CASE("identity suite passes for every catalog kind") {
  for (const auto& m : catalog_models()) {
    auto pts = sample_admissible_points(m, 15, 43);
    for (const auto& r : identity_suite(m, pts, 43, ExecMode::Serial)) {
      INFO(m.name, " ", r.name, " = ", r.max_abs_residual);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("fd oracle agrees with jet extraction for every catalog kind") {
  for (const auto& m : catalog_models()) {
    auto pts = sample_admissible_points(m, 5, 44);
    auto r = fd_oracle_compare(m, pts, 4, 44);
    INFO(m.name, " residual ", r.max_abs_residual);
    CHECK(r.pass);
  }
}

TEST_CASE("fd oracle on the quadratic Minkowski Lagrangian is noise-limited") {
  auto m = make_minkowski();
  auto pts = sample_admissible_points(m, 3, 45);
  auto r = fd_oracle_compare(m, pts, 4, 45);
  CHECK(r.max_abs_residual <= 1e-6);  // truncation vanishes; round-off remains
}

TEST_CASE("verify_model_suite output is deterministic across thread counts") {
  auto m = make_randers_schwarzschild(0.15, 1.0);
  set_threads(1);
  auto checks1 = verify_model_suite(m, 10, 7, ExecMode::OpenMP);
  const std::string json1 = checks_to_json(checks1, 7);
  set_threads(2);
  auto checks2 = verify_model_suite(m, 10, 7, ExecMode::OpenMP);
  const std::string json2 = checks_to_json(checks2, 7);
  auto checks3 = verify_model_suite(m, 10, 7, ExecMode::Serial);
  const std::string json3 = checks_to_json(checks3, 7);
  CHECK(json1 == json2);
  CHECK(json1 == json3);
  for (const auto& c : checks1) CHECK(c.pass);
}
