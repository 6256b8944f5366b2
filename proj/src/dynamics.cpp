#include "finsler/dynamics.hpp"

#include <cmath>

namespace finsler {

Jet vacuum_scalar_E_jet(const GeometryBundle& gb) {
  if (!gb.has_curvature || !gb.has_landsberg)
    throw FinslerError(ErrorCode::InvalidParameter,
                       "vacuum scalar needs a bundle built to the full stage");
  Jet LR0 = gb.L * gb.R0;
  Jet4 LR0_i;
  for (int i = 0; i < 4; ++i) LR0_i[i] = LR0.dv(i);

  Jet term1 = gb.g_inv[0][0] * LR0_i[0].dv(0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == 0 && j == 0) continue;
      term1 += gb.g_inv[i][j] * LR0_i[i].dv(j);
    }
  term1 = term1 * 0.5;

  Jet44 P_cov;  // P_{i|j}
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) P_cov[i][j] = cov_lower(gb, gb.P_trace, i, j);
  Jet4 nablaP;  // ∇P_i = ẋ^j P_{i|j}
  for (int i = 0; i < 4; ++i) {
    Jet s = gb.seeds[4] * P_cov[i][0];
    for (int j = 1; j < 4; ++j) s += gb.seeds[static_cast<std::size_t>(4 + j)] * P_cov[i][j];
    nablaP[i] = s;
  }

  Jet term3 = gb.g_inv[0][0] * (P_cov[0][0] - gb.P_trace[0] * gb.P_trace[0] + nablaP[0].dv(0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == 0 && j == 0) continue;
      term3 += gb.g_inv[i][j] * (P_cov[i][j] - gb.P_trace[i] * gb.P_trace[j] + nablaP[i].dv(j));
    }

  return term1 - 3.0 * gb.R0 - term3;
}

double vacuum_scalar_E(const FinslerModel& m, const ChartPoint& pt, TruncationOrder ord) {
  const GeometryBundle gb = build_geometry(m, pt, ord, Stage::Full);
  return vacuum_scalar_E_jet(gb).value();
}

double field_residual_kinetic(const FinslerModel& m, const KineticGas& gas, const ChartPoint& pt,
                              TruncationOrder ord) {
  return vacuum_scalar_E(m, pt, ord) + gas.kappa_sq * phi_value(m, gas, pt.x, pt.v);
}

Jet em_scalar_jet(const FinslerModel& m, const KineticGas& gas, const ChartPoint& pt,
                  TruncationOrder ord) {
  return 0.5 * gas.mass * phi_jet(m, gas, pt, ord);
}

ThetaComponents em_scalar_and_theta(const FinslerModel& m, const KineticGas& gas,
                                    const ChartPoint& pt) {
  ThetaComponents out;
  const double phi = phi_value(m, gas, pt.x, pt.v);
  out.T_frak = 0.5 * gas.mass * phi;
  const Jet L = lagrangian_jet(m, pt, TruncationOrder{0, 2});
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      MultiIndex idx;
      idx.v[i] += 1;
      idx.v[j] += 1;
      g[i][j] = 0.5 * L.partial(idx);
      g[j][i] = g[i][j];
    }
  std::array<double, 4> vlow{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) vlow[static_cast<std::size_t>(i)] += g[i][j] * pt.v[j];
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i)
      out.theta[j][i] = out.T_frak * pt.v[j] * vlow[static_cast<std::size_t>(i)] / L.value();
  return out;
}

namespace {

// Θ^j_i jets from a bundle plus the gas jets; needs one remaining (x, v)
// order on the bundle's metric jets.
Jet44 theta_jets(const GeometryBundle& gb, const Jet& T_frak) {
  Jet4 vlow;
  for (int i = 0; i < 4; ++i) {
    Jet s = gb.g[i][0] * gb.seeds[4];
    for (int j = 1; j < 4; ++j) s += gb.g[i][j] * gb.seeds[static_cast<std::size_t>(4 + j)];
    vlow[i] = s;
  }
  Jet invL = recip(gb.L);
  Jet44 theta;
  for (int j = 0; j < 4; ++j) {
    Jet Tj = T_frak * gb.seeds[static_cast<std::size_t>(4 + j)] * invL;
    for (int i = 0; i < 4; ++i) theta[j][i] = Tj * vlow[i];
  }
  return theta;
}

}  // namespace

BalanceReport theta_divergence_and_balance(const FinslerModel& m, const KineticGas& gas,
                                           const ChartPoint& pt, TruncationOrder ord) {
  const GeometryBundle gb = build_geometry(m, pt, ord, Stage::Landsberg);
  const Jet T = em_scalar_jet(m, gas, pt, ord);
  const Jet44 theta = theta_jets(gb, T);

  BalanceReport rep;
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int j = 0; j < 4; ++j) s += cov_mixed(gb, theta, j, i, j).value();
    rep.theta_div[static_cast<std::size_t>(i)] = s;
  }
  rep.nabla_T = dyn_cov_scalar(gb, T).value();
  std::array<double, 4> vlow{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) vlow[static_cast<std::size_t>(i)] += gb.g_value[i][j] * pt.v[j];
  for (int i = 0; i < 4; ++i)
    rep.residual[static_cast<std::size_t>(i)] =
        rep.theta_div[static_cast<std::size_t>(i)] - vlow[static_cast<std::size_t>(i)] * rep.nabla_T / gb.L.value();
  return rep;
}

std::array<FiberIntegral, 4> averaged_conservation_check(const FinslerModel& m,
                                                         const KineticGas& gas,
                                                         const std::array<double, 4>& x,
                                                         const FiberQuadrature& quad,
                                                         ExecMode mode) {
  const TruncationOrder ord{1, 4};
  auto f = [&](const std::array<double, 4>& xx, const std::array<double, 4>& xdot, double* out) {
    const ChartPoint pt{xx, xdot};
    const GeometryBundle gb = build_geometry(m, pt, ord, Stage::Landsberg);
    const Jet T = em_scalar_jet(m, gas, pt, ord);
    const Jet44 theta = theta_jets(gb, T);
    for (int i = 0; i < 4; ++i) {
      double s = 0.0;
      for (int j = 0; j < 4; ++j) s += cov_mixed(gb, theta, j, i, j).value();
      out[i] = s;
    }
  };
  const auto res = integrate_observer_fiber_multi(m, x, f, 4, quad, nullptr, mode);
  return {res[0], res[1], res[2], res[3]};
}

EmDensity em_density(const FinslerModel& m, const KineticGas& gas, const std::array<double, 4>& x,
                     const FiberQuadrature& quad, ExecMode mode) {
  auto f = [&](const std::array<double, 4>& xx, const std::array<double, 4>& xdot, double* out) {
    const ChartPoint pt{xx, xdot};
    const auto tc = em_scalar_and_theta(m, gas, pt);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out[i * 4 + j] = tc.theta[i][j];
  };
  const auto res = integrate_observer_fiber_multi(m, x, f, 16, quad, nullptr, mode);
  EmDensity out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.density[i][j] = res[static_cast<std::size_t>(i * 4 + j)].value;
  if (m.is_lorentzian()) {
    const auto d = m.a.diag_values(x);
    const double sq = std::sqrt(std::abs(d[0] * d[1] * d[2] * d[3]));
    std::array<std::array<double, 4>, 4> tl{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) tl[i][j] = out.density[i][j] / sq;
    out.lorentzian = tl;
  }
  return out;
}

double liouville_residual(const FinslerModel& m, const KineticGas& gas, const ChartPoint& pt) {
  const TruncationOrder ord{1, 3};
  const GeometryBundle gb = build_geometry(m, pt, ord, Stage::Spray);
  const Jet phi = phi_jet(m, gas, pt, ord);
  return dyn_cov_scalar(gb, phi).value();
}

}  // namespace finsler
