#include <cmath>

#include "doctest.h"
#include "finsler/causal.hpp"
#include "finsler/classical.hpp"
#include "finsler/dynamics.hpp"
#include "finsler/geodesic.hpp"
#include "finsler/verify.hpp"

using namespace finsler;

namespace {

KineticGas minkowski_bump(double amplitude = 1.0) {
  KineticGas gas;
  gas.profile.type = GasProfileType::RapidityBump;
  gas.profile.center_rapidity = 0.0;
  gas.profile.width = 1.2;
  gas.profile.amplitude = amplitude;
  return gas;
}

KineticGas com_gas() {
  // constants-of-motion bump on Schwarzschild; Liouville by construction
  KineticGas gas;
  gas.profile.type = GasProfileType::ConstantsOfMotion;
  gas.profile.e_center = 1.0;
  gas.profile.e_width = 0.35;
  gas.profile.l_center = 0.0;
  gas.profile.l_width = 3.0;
  return gas;
}

}  // namespace

TEST_CASE("vacuum scalar vanishes for Minkowski and Schwarzschild") {
  {
    auto m = make_minkowski();
    ChartPoint pt{{0, 0, 0, 0}, {1, 0.2, 0.1, 0}};
    CHECK(std::abs(vacuum_scalar_E(m, pt)) <= 1e-14);
  }
  {
    auto m = make_schwarzschild(1.0);
    for (const auto& pt : sample_admissible_points(m, 50, 19))
      CHECK(std::abs(vacuum_scalar_E(m, pt)) <= 1e-6);
  }
}

TEST_CASE("E is 0-homogeneous in the fiber variable") {
  auto m = make_randers_schwarzschild(0.15, 1.0);
  for (const auto& pt : sample_admissible_points(m, 5, 3)) {
    const double E = vacuum_scalar_E(m, pt);
    for (double alpha : {0.5, 2.0}) {
      ChartPoint scaled = pt;
      for (int i = 0; i < 4; ++i) scaled.v[static_cast<std::size_t>(i)] *= alpha;
      const double Es = vacuum_scalar_E(m, scaled);
      CHECK(std::abs(Es - E) <= 1e-8 * std::max(1.0, std::abs(E)));
    }
  }
}

TEST_CASE("sourced residual reduces to the vacuum case for phi = 0") {
  auto m = make_schwarzschild(1.0);
  KineticGas gas = minkowski_bump(0.0);  // amplitude zero
  ChartPoint pt{{0, 8, 1.3, 0.2}, {1.1, 0.02, 0.01, 0.02}};
  CHECK(field_residual_kinetic(m, gas, pt) == doctest::Approx(vacuum_scalar_E(m, pt)).epsilon(1e-12));
}

TEST_CASE("sourced residual equals kappa^2 phi on flat space") {
  auto m = make_minkowski();
  KineticGas gas = minkowski_bump(2.0);
  gas.kappa_sq = 1.7;
  ChartPoint pt{{0, 0, 0, 0}, {1, 0.1, 0, 0}};
  const double phi = phi_value(m, gas, pt.x, pt.v);
  CHECK(phi > 0.0);
  CHECK(field_residual_kinetic(m, gas, pt) == doctest::Approx(gas.kappa_sq * phi).epsilon(1e-10));
  // 0-homogeneous residual
  ChartPoint scaled = pt;
  for (int i = 0; i < 4; ++i) scaled.v[static_cast<std::size_t>(i)] *= 1.7;
  CHECK(field_residual_kinetic(m, gas, scaled) ==
        doctest::Approx(field_residual_kinetic(m, gas, pt)).epsilon(1e-9));
}

TEST_CASE("energy-momentum scalar and distribution at the Minkowski seed") {
  auto m = make_minkowski();
  KineticGas gas = minkowski_bump(2.0);  // phi(seed) = amplitude * B(0) = 2
  ChartPoint pt{{0, 0, 0, 0}, {1, 0, 0, 0}};
  auto tc = em_scalar_and_theta(m, gas, pt);
  CHECK(tc.T_frak == doctest::Approx(1.0).epsilon(1e-14));  // m phi/2
  CHECK(tc.theta[0][0] == doctest::Approx(1.0).epsilon(1e-14));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != 0 || j != 0) CHECK(std::abs(tc.theta[i][j]) <= 1e-14);
}

TEST_CASE("phi outside its support gives a vanishing distribution") {
  auto m = make_minkowski();
  KineticGas gas = minkowski_bump();
  gas.profile.center_rapidity = 0.0;
  gas.profile.width = 0.3;
  // u = cosh(2.0) far outside the support
  ChartPoint pt{{0, 0, 0, 0}, {std::cosh(2.0), std::sinh(2.0), 0, 0}};
  auto tc = em_scalar_and_theta(m, gas, pt);
  CHECK(tc.T_frak == 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(tc.theta[i][j] == 0.0);
}

TEST_CASE("trace identity is exact at random points") {
  auto m = make_randers_schwarzschild(0.15, 1.0);
  KineticGas gas = minkowski_bump();
  for (const auto& pt : sample_admissible_points(m, 100, 23)) {
    auto tc = em_scalar_and_theta(m, gas, pt);
    double trace = 0.0;
    for (int i = 0; i < 4; ++i) trace += tc.theta[i][i];
    CHECK(trace == doctest::Approx(tc.T_frak).epsilon(1e-13));
  }
}

TEST_CASE("balance identity: covariant divergence against the dynamical derivative") {
  // x-dependent amplitude so that nabla(T) is genuinely nonzero
  auto m = make_schwarzschild(1.0);
  KineticGas gas = minkowski_bump();
  Polynomial p;
  p.terms.push_back({1.0, {0, 0, 0, 0}});
  p.terms.push_back({0.05, {0, 1, 0, 0}});
  gas.profile.x_modulation = CoefficientFn::polynomial(p);
  double max_nabla = 0.0;
  for (const auto& pt : sample_admissible_points(m, 40, 29)) {
    auto rep = theta_divergence_and_balance(m, gas, pt);
    max_nabla = std::max(max_nabla, std::abs(rep.nabla_T));
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(rep.residual[static_cast<std::size_t>(i)]) <=
            1e-8 * std::max(1.0, std::abs(rep.theta_div[static_cast<std::size_t>(i)])));
    }
  }
  CHECK(max_nabla > 1e-4);  // the check is not vacuous
}

TEST_CASE("pointwise conservation for collisionless gases") {
  // Minkowski, direction-only bump: x-independent, so all divergences vanish
  {
    auto m = make_minkowski();
    KineticGas gas = minkowski_bump();
    ChartPoint pt{{0.2, 0.4, -1, 0.7}, {1.05, 0.2, 0.05, -0.1}};
    auto rep = theta_divergence_and_balance(m, gas, pt);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(rep.theta_div[static_cast<std::size_t>(i)]) <= 1e-9);
  }
  // Schwarzschild, constants-of-motion bump
  {
    auto m = make_schwarzschild(1.0);
    KineticGas gas = com_gas();
    int nonzero_phi = 0;
    for (const auto& pt : sample_admissible_points(m, 30, 31)) {
      if (phi_value(m, gas, pt.x, pt.v) > 1e-8) ++nonzero_phi;
      auto rep = theta_divergence_and_balance(m, gas, pt);
      for (int i = 0; i < 4; ++i) CHECK(std::abs(rep.theta_div[static_cast<std::size_t>(i)]) <= 1e-8);
    }
    CHECK(nonzero_phi > 5);  // the gas is actually present at sampled points
  }
}

TEST_CASE("liouville residual: zero for conserved-quantity gases, FD cross-check otherwise") {
  auto schw = make_schwarzschild(1.0);
  {
    KineticGas gas = com_gas();
    for (const auto& pt : sample_admissible_points(schw, 20, 37))
      CHECK(std::abs(liouville_residual(schw, gas, pt)) <= 1e-8);
  }
  {
    auto mink = make_minkowski();
    KineticGas gas = minkowski_bump();
    ChartPoint pt{{0, 0, 0, 0}, {1.1, 0.3, 0, 0.1}};
    CHECK(std::abs(liouville_residual(mink, gas, pt)) <= 1e-10);
  }
  {
    // r-modulated amplitude: not Liouville; cross-check against the flow derivative
    KineticGas gas = minkowski_bump();
    Polynomial p;
    p.terms.push_back({1.0, {0, 0, 0, 0}});
    p.terms.push_back({0.1, {0, 1, 0, 0}});
    gas.profile.x_modulation = CoefficientFn::polynomial(p);
    ChartPoint pt{{0, 8.0, 1.4, 0.3}, {1.05, 0.03, 0.01, 0.015}};
    const double res = liouville_residual(schw, gas, pt);
    CHECK(std::abs(res) > 1e-6);
    // FD along the geodesic flow: phi(x(s), xdot(s)) differentiated at s = 0
    GeodesicState s0;
    s0.x = pt.x;
    s0.v = pt.v;
    IntegratorConfig cfg;
    cfg.step = 1e-3;
    cfg.s_end = 1e-3;
    auto fwd = integrate_geodesic(schw, s0, cfg);
    GeodesicState rev = s0;
    for (int i = 0; i < 4; ++i) rev.v[static_cast<std::size_t>(i)] = -rev.v[static_cast<std::size_t>(i)];
    auto bwd = integrate_geodesic(schw, rev, cfg);
    const auto& fs = fwd.states.back();
    auto bs = bwd.states.back();
    for (int i = 0; i < 4; ++i) bs.v[static_cast<std::size_t>(i)] = -bs.v[static_cast<std::size_t>(i)];
    const double fd = (phi_value(schw, gas, fs.x, fs.v) - phi_value(schw, gas, bs.x, bs.v)) /
                      (2.0 * cfg.step);
    CHECK(res == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("averaged conservation integrals vanish for Liouville gases") {
  FiberQuadrature quad;
  quad.chi_max = 1.4;
  quad.orders = {16, 12, 12};
  {
    auto m = make_minkowski();
    KineticGas gas = minkowski_bump();
    auto cons = averaged_conservation_check(m, gas, {0, 0, 0, 0}, quad, ExecMode::Serial);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(cons[static_cast<std::size_t>(i)].value) <= 1e-6);
  }
  {
    auto m = make_schwarzschild(1.0);
    KineticGas gas = com_gas();
    auto cons = averaged_conservation_check(m, gas, {0, 8.0, M_PI / 2, 0.3}, quad, ExecMode::Serial);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(cons[static_cast<std::size_t>(i)].value) <= 1e-6);
  }
}

TEST_CASE("a non-Liouville gas is detected by the averaged integrals") {
  auto m = make_schwarzschild(1.0);
  KineticGas gas = minkowski_bump();
  Polynomial p;
  p.terms.push_back({1.0, {0, 0, 0, 0}});
  p.terms.push_back({0.2, {0, 1, 0, 0}});
  gas.profile.x_modulation = CoefficientFn::polynomial(p);
  FiberQuadrature quad;
  quad.chi_max = 1.4;
  quad.orders = {16, 12, 12};
  auto cons = averaged_conservation_check(m, gas, {0, 8.0, M_PI / 2, 0.3}, quad, ExecMode::Serial);
  double biggest = 0.0;
  for (int i = 0; i < 4; ++i) biggest = std::max(biggest, std::abs(cons[static_cast<std::size_t>(i)].value));
  CHECK(biggest > 1e-3);
}

TEST_CASE("energy-momentum density: symmetry and the 1D reference value") {
  auto m = make_minkowski();
  KineticGas gas = minkowski_bump(1.5);
  FiberQuadrature quad;
  quad.chi_max = support_rapidity(gas.profile);  // fit the rule to the support
  quad.orders = {48, 16, 16};
  auto dens = em_density(m, gas, {0, 0, 0, 0}, quad, ExecMode::Serial);
  // isotropic bump: diagonal, equal spatial pressures
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(dens.density[i][j]) <= 1e-10);
  CHECK(dens.density[1][1] == doctest::Approx(dens.density[2][2]).epsilon(1e-8));
  CHECK(dens.density[2][2] == doctest::Approx(dens.density[3][3]).epsilon(1e-8));
  REQUIRE(dens.lorentzian.has_value());
  CHECK((*dens.lorentzian)[0][0] == doctest::Approx(dens.density[0][0]).epsilon(1e-14));

  // Theta^0_0 = (m phi / 2) cosh^2(chi) integrated against sinh^2(chi) sin(th)
  auto bump = [&](double u) {
    const double u0 = std::cosh(gas.profile.center_rapidity);
    const double du = std::cosh(gas.profile.center_rapidity + gas.profile.width) - u0;
    const double t = (u - u0) / du;
    return (t * t < 1.0) ? gas.profile.amplitude * std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
  };
  std::function<double(double)> integrand = [&](double chi) {
    const double c = std::cosh(chi), s = std::sinh(chi);
    return 0.5 * gas.mass * bump(c) * c * c * s * s;
  };
  // adaptive Simpson on [0, chi_max]
  double ref = 0.0;
  {
    const double hi = support_rapidity(gas.profile);
    const int N = 20000;
    double acc = 0.0;
    for (int k = 0; k < N; ++k) {
      const double a = hi * k / N, b = hi * (k + 1) / N, mid = 0.5 * (a + b);
      acc += (b - a) / 6.0 * (integrand(a) + 4 * integrand(mid) + integrand(b));
    }
    ref = 4.0 * M_PI * acc;
  }
  CHECK(dens.density[0][0] == doctest::Approx(ref).epsilon(1e-7));

  // phi = 0 gives a vanishing density
  auto zero = em_density(m, minkowski_bump(0.0), {0, 0, 0, 0}, quad, ExecMode::Serial);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(zero.density[i][j] == 0.0);
}

TEST_CASE("Lorentzian reduction of the averaged law: classical divergence vanishes") {
  // For the constants-of-motion gas the classical statement T^i_{j;i} = 0 is
  // checked by finite-differencing the density over x. The l-bump support is
  // narrow in the angular directions, hence the high angular orders.
  auto m = make_schwarzschild(1.0);
  KineticGas gas = com_gas();
  FiberQuadrature quad;
  quad.chi_max = 1.3;
  quad.orders = {32, 40, 40};
  const std::array<double, 4> x0{0, 8.0, M_PI / 2, 0.3};
  auto density_at = [&](const std::array<double, 4>& x) {
    auto d = em_density(m, gas, x, quad, ExecMode::Serial);
    REQUIRE(d.lorentzian.has_value());
    return *d.lorentzian;
  };
  const auto base = density_at(x0);
  CHECK(base[0][0] > 1e-2);  // the density itself is not trivially zero

  const double h = 0.1;
  std::array<std::array<std::array<double, 4>, 4>, 4> grad{};  // grad[i] = dT/dx^i
  for (int i = 0; i < 4; ++i) {
    auto xp = x0, xm = x0;
    xp[static_cast<std::size_t>(i)] += h;
    xm[static_cast<std::size_t>(i)] -= h;
    const auto dp = density_at(xp);
    const auto dm = density_at(xm);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) grad[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (dp[a][b] - dm[a][b]) / (2 * h);
  }
  const auto cg = classical_geometry(m.a, x0);
  for (int j = 0; j < 4; ++j) {
    double div = 0.0;
    for (int i = 0; i < 4; ++i) {
      div += grad[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int k = 0; k < 4; ++k) {
        div += cg.gamma[i][k][i] * base[k][j];
        div -= cg.gamma[k][j][i] * base[i][k];
      }
    }
    CHECK(std::abs(div) <= 1e-3);
  }
}
