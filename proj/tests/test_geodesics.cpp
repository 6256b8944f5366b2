#include <cmath>

#include "doctest.h"
#include "finsler/causal.hpp"
#include "finsler/geodesic.hpp"
#include "finsler/linalg.hpp"
#include "finsler/model.hpp"

using namespace finsler;

TEST_CASE("Minkowski geodesics are straight lines to machine precision") {
  auto m = make_minkowski();
  GeodesicState s0;
  s0.x = {0, 0, 0, 0};
  const double n = std::sqrt(1.0 - 0.09);
  s0.v = {1.0 / n, 0.3 / n, 0, 0};
  IntegratorConfig cfg;
  cfg.step = 0.01;
  cfg.s_end = 5.0;
  auto traj = integrate_geodesic(m, s0, cfg);
  REQUIRE_FALSE(traj.left_domain);
  for (const auto& st : traj.states) {
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(st.x[static_cast<std::size_t>(i)] - st.s * s0.v[static_cast<std::size_t>(i)]) <= 1e-12);
      CHECK(std::abs(st.v[static_cast<std::size_t>(i)] - s0.v[static_cast<std::size_t>(i)]) <= 1e-12);
    }
  }
}

namespace {

// circular Schwarzschild orbit initial state: u^t = (1-3M/r)^{-1/2},
// u^phi = Omega u^t with Omega^2 = M/r^3
GeodesicState circular_orbit_state(double mass, double r) {
  GeodesicState s0;
  s0.x = {0, r, M_PI / 2, 0};
  const double ut = 1.0 / std::sqrt(1.0 - 3.0 * mass / r);
  const double omega = std::sqrt(mass / (r * r * r));
  s0.v = {ut, 0, 0, omega * ut};
  return s0;
}

}  // namespace

TEST_CASE("Schwarzschild circular orbit: coordinate angular velocity") {
  const double mass = 1.0, r = 10.0;
  auto m = make_schwarzschild(mass);
  auto s0 = circular_orbit_state(mass, r);
  CHECK(std::abs(lagrangian_value(m, s0.x, s0.v) - 1.0) <= 1e-12);

  IntegratorConfig cfg;
  cfg.step = 0.05;
  const double proper_period = 2.0 * M_PI / (std::sqrt(mass / (r * r * r)) * s0.v[0]);
  cfg.s_end = proper_period;
  auto traj = integrate_geodesic(m, s0, cfg);
  REQUIRE_FALSE(traj.left_domain);
  const auto& last = traj.states.back();
  CHECK(std::abs(last.x[1] - r) <= 1e-6 * r);  // radius held
  const double omega_measured = (last.x[3] - s0.x[3]) / (last.x[0] - s0.x[0]);
  CHECK(omega_measured * omega_measured == doctest::Approx(mass / (r * r * r)).epsilon(1e-6));
}

TEST_CASE("L drift over 1e4 RK4 steps and fourth-order step halving") {
  // an eccentric orbit: the circular one is a fixed point with no drift at all
  const double mass = 1.0, r = 10.0;
  auto m = make_schwarzschild(mass);
  auto s0 = circular_orbit_state(mass, r);
  s0.v[1] = 0.15;
  s0.v = normalize_observer(m, s0.x, s0.v);
  IntegratorConfig cfg;
  cfg.step = 0.05;
  cfg.s_end = 0.05 * 10000;
  auto traj = integrate_geodesic(m, s0, cfg);
  REQUIRE(traj.states.size() == 10001);
  auto drift = geodesic_invariants(traj, m);
  CHECK(drift.max_L_drift <= 1e-8);
  REQUIRE(drift.u0_drift.has_value());
  CHECK(*drift.u0_drift <= 1e-8);   // energy (1-2M/r) u^t
  CHECK(*drift.u3_drift <= 1e-8);   // angular momentum r^2 sin^2(th) u^phi

  // Fourth-order step halving: measured where truncation dominates round-off
  // (at h = 0.05 the drift sits at machine noise, 1e-14).
  double drifts[2];
  int k = 0;
  for (double h : {0.8, 0.4}) {
    IntegratorConfig c2;
    c2.step = h;
    c2.s_end = 1600.0;
    auto t2 = integrate_geodesic(m, s0, c2);
    drifts[k++] = geodesic_invariants(t2, m).max_L_drift;
  }
  const double ratio = drifts[0] / drifts[1];
  CHECK(ratio > 16.0 * 0.8);
  CHECK(ratio < 16.0 * 1.2);
}

namespace {

// Independent oracle: spray from plain finite differences of L, integrated
// with a small-step midpoint rule. No jets anywhere.
std::array<double, 4> fd_spray(const FinslerModel& m, const std::array<double, 4>& x,
                               const std::array<double, 4>& v) {
  const double h = 1e-4;
  Mat4 g, g_inv;
  auto L = [&](const std::array<double, 4>& xx, const std::array<double, 4>& vv) {
    return lagrangian_value(m, xx, vv);
  };
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      auto vpp = v, vpm = v, vmp = v, vmm = v;
      vpp[static_cast<std::size_t>(i)] += h;
      vpp[static_cast<std::size_t>(j)] += h;
      vpm[static_cast<std::size_t>(i)] += h;
      vpm[static_cast<std::size_t>(j)] -= h;
      vmp[static_cast<std::size_t>(i)] -= h;
      vmp[static_cast<std::size_t>(j)] += h;
      vmm[static_cast<std::size_t>(i)] -= h;
      vmm[static_cast<std::size_t>(j)] -= h;
      g[i][j] = (L(x, vpp) - L(x, vpm) - L(x, vmp) + L(x, vmm)) / (8 * h * h);
      g[j][i] = g[i][j];
    }
  REQUIRE(invert4(g, g_inv));
  std::array<double, 4> rhs{};
  for (int hh = 0; hh < 4; ++hh) {
    // L_{.h,j} v^j - L_{,h}
    double s = 0.0;
    for (int j = 0; j < 4; ++j) {
      auto xp = x, xm = x;
      xp[static_cast<std::size_t>(j)] += h;
      xm[static_cast<std::size_t>(j)] -= h;
      auto vp = v, vm = v;
      vp[static_cast<std::size_t>(hh)] += h;
      vm[static_cast<std::size_t>(hh)] -= h;
      const double mixed =
          (L(xp, vp) - L(xp, vm) - L(xm, vp) + L(xm, vm)) / (4 * h * h);
      s += mixed * v[static_cast<std::size_t>(j)];
    }
    auto xp = x, xm = x;
    xp[static_cast<std::size_t>(hh)] += h;
    xm[static_cast<std::size_t>(hh)] -= h;
    s -= (L(xp, v) - L(xm, v)) / (2 * h);
    rhs[static_cast<std::size_t>(hh)] = s;
  }
  std::array<double, 4> G{};
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += g_inv[i][k] * rhs[static_cast<std::size_t>(k)];
    G[static_cast<std::size_t>(i)] = 0.25 * s;
  }
  return G;
}

}  // namespace

TEST_CASE("curved Randers geodesic against an independent FD-spray integrator") {
  auto m = make_randers_schwarzschild(0.15, 1.0);
  GeodesicState s0;
  s0.x = {0, 9.0, M_PI / 2, 0};
  s0.v = normalize_observer(m, s0.x, {1.0, 0.01, 0.0, 0.03});

  IntegratorConfig cfg;
  cfg.step = 0.01;
  cfg.s_end = 10.0;
  auto traj = integrate_geodesic(m, s0, cfg);
  REQUIRE_FALSE(traj.left_domain);

  // midpoint rule with h = 5e-4 using the FD spray
  const double h = 5e-4;
  std::array<double, 4> x = s0.x, v = s0.v;
  std::size_t next_check = 0;
  double worst = 0.0;
  const long n_steps = static_cast<long>(10.0 / h);
  for (long k = 0; k <= n_steps; ++k) {
    const double s = k * h;
    while (next_check < traj.states.size() && traj.states[next_check].s <= s + 1e-12) {
      if (std::abs(traj.states[next_check].s - s) < 1e-12) {
        for (int i = 0; i < 4; ++i)
          worst = std::max(worst, std::abs(traj.states[next_check].x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]));
      }
      if (traj.states[next_check].s <= s + 1e-12) ++next_check;
    }
    // midpoint (RK2) step: k1 at y, k2 at y + h/2 k1, y += h k2
    auto G1 = fd_spray(m, x, v);
    std::array<double, 4> xm, vm;
    for (int i = 0; i < 4; ++i) {
      const std::size_t q = static_cast<std::size_t>(i);
      xm[q] = x[q] + 0.5 * h * v[q];
      vm[q] = v[q] - 0.5 * h * 2.0 * G1[q];
    }
    auto G2 = fd_spray(m, xm, vm);
    for (int i = 0; i < 4; ++i) {
      const std::size_t q = static_cast<std::size_t>(i);
      x[q] += h * vm[q];
      v[q] -= h * 2.0 * G2[q];
    }
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("affine reparametrization reproduces the same path points") {
  auto m = make_schwarzschild(1.0);
  auto s0 = circular_orbit_state(1.0, 9.0);
  IntegratorConfig cfg;
  cfg.step = 0.02;
  cfg.s_end = 2.0;
  auto base = integrate_geodesic(m, s0, cfg);

  const double alpha = 2.0;
  GeodesicState scaled = s0;
  for (int i = 0; i < 4; ++i) scaled.v[static_cast<std::size_t>(i)] *= alpha;
  IntegratorConfig cfg2 = cfg;
  cfg2.step = cfg.step / alpha;
  cfg2.s_end = cfg.s_end / alpha;
  auto re = integrate_geodesic(m, scaled, cfg2);
  REQUIRE(base.states.size() == re.states.size());
  for (std::size_t k = 0; k < base.states.size(); ++k)
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(base.states[k].x[static_cast<std::size_t>(i)] - re.states[k].x[static_cast<std::size_t>(i)]) <= 1e-10);
}

TEST_CASE("time reversal returns to the start") {
  // For a quadratic Lagrangian the spray is even under ẋ -> -ẋ, so negating
  // the velocity at the end and integrating the same length retraces the path.
  auto m = make_schwarzschild(1.0);
  auto s0 = circular_orbit_state(1.0, 10.0);
  IntegratorConfig fwd;
  fwd.step = 0.01;
  fwd.s_end = 1.0;
  auto traj = integrate_geodesic(m, s0, fwd);
  GeodesicState turn = traj.states.back();
  for (int i = 0; i < 4; ++i) turn.v[static_cast<std::size_t>(i)] = -turn.v[static_cast<std::size_t>(i)];
  turn.s = 0.0;
  auto back = integrate_geodesic(m, turn, fwd);
  const auto& fin = back.states.back();
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(fin.x[static_cast<std::size_t>(i)] - s0.x[static_cast<std::size_t>(i)]) <= 1e-9);
}

TEST_CASE("RK45 adaptive integration matches RK4 on a bound orbit") {
  auto m = make_schwarzschild(1.0);
  auto s0 = circular_orbit_state(1.0, 10.0);
  IntegratorConfig rk4;
  rk4.step = 0.005;
  rk4.s_end = 5.0;
  auto a = integrate_geodesic(m, s0, rk4);
  IntegratorConfig rk45;
  rk45.method = IntegratorConfig::Method::RK45;
  rk45.step = 0.05;
  rk45.tol = 1e-11;
  rk45.s_end = 5.0;
  auto b = integrate_geodesic(m, s0, rk45);
  REQUIRE_FALSE(b.left_domain);
  const auto& fa = a.states.back();
  const auto& fb = b.states.back();
  CHECK(std::abs(fa.s - fb.s) <= 1e-9);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(fa.x[static_cast<std::size_t>(i)] - fb.x[static_cast<std::size_t>(i)]) <= 1e-6);
}

TEST_CASE("leaving the admissible domain stops integration with the last good state") {
  auto m = make_schwarzschild(1.0);
  GeodesicState s0;
  s0.x = {0, 4.0, M_PI / 2, 0};
  // strong inward radial velocity: plunges toward r = 2M
  s0.v = normalize_observer(m, s0.x, {1.5, -0.5, 0, 0});
  IntegratorConfig cfg;
  cfg.step = 0.05;
  cfg.s_end = 50.0;
  auto traj = integrate_geodesic(m, s0, cfg);
  CHECK(traj.left_domain);
  CHECK_FALSE(traj.states.empty());
  CHECK_FALSE(traj.message.empty());
  CHECK(traj.states.back().x[1] > 2.0);  // last good state still outside the horizon
}
