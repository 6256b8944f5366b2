#include "finsler/geodesic.hpp"

#include <cmath>

#include "finsler/linalg.hpp"

namespace finsler {

std::array<double, 4> spray_coefficients(const FinslerModel& m, const std::array<double, 4>& x,
                                         const std::array<double, 4>& v) {
  // Reduced truncation: the spray needs one x- and three v-orders at most.
  const Jet L = lagrangian_jet(m, ChartPoint{x, v}, TruncationOrder{1, 3});
  Mat4 g, g_inv;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      MultiIndex idx;
      idx.v[i] += 1;
      idx.v[j] += 1;
      g[i][j] = 0.5 * L.partial(idx);
      g[j][i] = g[i][j];
    }
  if (!invert4(g, g_inv))
    throw FinslerError(ErrorCode::DegenerateHessian, "degenerate Hessian along geodesic");
  std::array<double, 4> rhs;
  for (int h = 0; h < 4; ++h) {
    MultiIndex ih;
    ih.x[h] = 1;
    double s = -L.partial(ih);
    for (int j = 0; j < 4; ++j) {
      MultiIndex ihj;
      ihj.v[h] += 1;
      ihj.x[j] += 1;
      s += L.partial(ihj) * v[j];
    }
    rhs[static_cast<std::size_t>(h)] = s;
  }
  std::array<double, 4> G;
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int h = 0; h < 4; ++h) s += g_inv[i][h] * rhs[static_cast<std::size_t>(h)];
    G[static_cast<std::size_t>(i)] = 0.25 * s;
  }
  return G;
}

namespace {

struct Deriv {
  std::array<double, 4> dx, dv;
};

Deriv ode_rhs(const FinslerModel& m, const std::array<double, 4>& x, const std::array<double, 4>& v) {
  const auto G = spray_coefficients(m, x, v);
  Deriv d;
  d.dx = v;
  for (int i = 0; i < 4; ++i) d.dv[static_cast<std::size_t>(i)] = -2.0 * G[static_cast<std::size_t>(i)];
  return d;
}

GeodesicState rk4_step(const FinslerModel& m, const GeodesicState& st, double h) {
  auto add = [](const std::array<double, 4>& a, const std::array<double, 4>& b, double f) {
    std::array<double, 4> r;
    for (int i = 0; i < 4; ++i) r[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] + f * b[static_cast<std::size_t>(i)];
    return r;
  };
  const Deriv k1 = ode_rhs(m, st.x, st.v);
  const Deriv k2 = ode_rhs(m, add(st.x, k1.dx, h / 2), add(st.v, k1.dv, h / 2));
  const Deriv k3 = ode_rhs(m, add(st.x, k2.dx, h / 2), add(st.v, k2.dv, h / 2));
  const Deriv k4 = ode_rhs(m, add(st.x, k3.dx, h), add(st.v, k3.dv, h));
  GeodesicState out;
  out.s = st.s + h;
  for (int i = 0; i < 4; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    out.x[k] = st.x[k] + h / 6.0 * (k1.dx[k] + 2 * k2.dx[k] + 2 * k3.dx[k] + k4.dx[k]);
    out.v[k] = st.v[k] + h / 6.0 * (k1.dv[k] + 2 * k2.dv[k] + 2 * k3.dv[k] + k4.dv[k]);
  }
  return out;
}

// Cash–Karp embedded 4(5) pair.
bool rk45_step(const FinslerModel& m, const GeodesicState& st, double h, GeodesicState& out,
               double& err) {
  static const double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0, a6 = 7.0 / 8;
  static const double b21 = 1.0 / 5;
  static const double b31 = 3.0 / 40, b32 = 9.0 / 40;
  static const double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
  static const double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
  static const double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                      b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
  static const double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594, c6 = 512.0 / 1771;
  static const double d1 = 2825.0 / 27648, d3 = 18575.0 / 48384, d4 = 13525.0 / 55296,
                      d5 = 277.0 / 14336, d6 = 1.0 / 4;
  (void)a2; (void)a3; (void)a4; (void)a5; (void)a6;

  std::array<Deriv, 6> k;
  auto blend = [&](int n, const double* w) {
    std::array<double, 4> xx = st.x, vv = st.v;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < 4; ++i) {
        const std::size_t q = static_cast<std::size_t>(i);
        xx[q] += h * w[j] * k[static_cast<std::size_t>(j)].dx[q];
        vv[q] += h * w[j] * k[static_cast<std::size_t>(j)].dv[q];
      }
    return std::make_pair(xx, vv);
  };
  try {
    k[0] = ode_rhs(m, st.x, st.v);
    {
      const double w[] = {b21};
      auto [xx, vv] = blend(1, w);
      k[1] = ode_rhs(m, xx, vv);
    }
    {
      const double w[] = {b31, b32};
      auto [xx, vv] = blend(2, w);
      k[2] = ode_rhs(m, xx, vv);
    }
    {
      const double w[] = {b41, b42, b43};
      auto [xx, vv] = blend(3, w);
      k[3] = ode_rhs(m, xx, vv);
    }
    {
      const double w[] = {b51, b52, b53, b54};
      auto [xx, vv] = blend(4, w);
      k[4] = ode_rhs(m, xx, vv);
    }
    {
      const double w[] = {b61, b62, b63, b64, b65};
      auto [xx, vv] = blend(5, w);
      k[5] = ode_rhs(m, xx, vv);
    }
  } catch (const FinslerError&) {
    return false;
  }
  out.s = st.s + h;
  err = 0.0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t q = static_cast<std::size_t>(i);
    const double dx5 = c1 * k[0].dx[q] + c3 * k[2].dx[q] + c4 * k[3].dx[q] + c6 * k[5].dx[q];
    const double dv5 = c1 * k[0].dv[q] + c3 * k[2].dv[q] + c4 * k[3].dv[q] + c6 * k[5].dv[q];
    const double dx4 = d1 * k[0].dx[q] + d3 * k[2].dx[q] + d4 * k[3].dx[q] + d5 * k[4].dx[q] + d6 * k[5].dx[q];
    const double dv4 = d1 * k[0].dv[q] + d3 * k[2].dv[q] + d4 * k[3].dv[q] + d5 * k[4].dv[q] + d6 * k[5].dv[q];
    out.x[q] = st.x[q] + h * dx5;
    out.v[q] = st.v[q] + h * dv5;
    err = std::max(err, std::abs(h * (dx5 - dx4)));
    err = std::max(err, std::abs(h * (dv5 - dv4)));
  }
  return true;
}

}  // namespace

Trajectory integrate_geodesic(const FinslerModel& m, const GeodesicState& state0,
                              const IntegratorConfig& cfg) {
  Trajectory traj;
  traj.states.push_back(state0);
  GeodesicState cur = state0;
  if (cfg.method == IntegratorConfig::Method::RK4) {
    const long n = std::min<long>(cfg.max_steps, std::llround(cfg.s_end / cfg.step));
    for (long i = 0; i < n; ++i) {
      GeodesicState nxt;
      try {
        nxt = rk4_step(m, cur, cfg.step);
        // a full step can overshoot past the chart boundary even when every
        // stage evaluation stayed inside; keep only validated states
        (void)lagrangian_value(m, nxt.x, nxt.v);
      } catch (const FinslerError& e) {
        traj.left_domain = true;
        traj.message = e.what();
        return traj;
      }
      cur = nxt;
      traj.states.push_back(cur);
    }
    return traj;
  }
  double h = cfg.step;
  long steps = 0;
  while (cur.s < cfg.s_end && steps < cfg.max_steps) {
    if (cur.s + h > cfg.s_end) h = cfg.s_end - cur.s;
    GeodesicState nxt;
    double err = 0.0;
    if (!rk45_step(m, cur, h, nxt, err)) {
      traj.left_domain = true;
      traj.message = "left admissible domain";
      return traj;
    }
    const double target = cfg.tol * std::max(1.0, h);
    if (err <= target) {
      cur = nxt;
      traj.states.push_back(cur);
      ++steps;
      if (err < 0.1 * target) h = std::min(h * 2.0, cfg.s_end);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(target / err, 0.25));
      if (h < 1e-14)
        throw FinslerError(ErrorCode::StepUnderflow, "adaptive step collapsed below 1e-14");
    }
  }
  return traj;
}

DriftReport geodesic_invariants(const Trajectory& traj, const FinslerModel& m) {
  DriftReport rep;
  if (traj.states.empty()) return rep;
  const auto& s0 = traj.states.front();
  const double L0 = lagrangian_value(m, s0.x, s0.v);
  double u0_0 = 0, u3_0 = 0;
  const bool lorentzian = m.is_lorentzian();
  if (lorentzian) {
    const auto d = m.a.diag_values(s0.x);
    u0_0 = d[0] * s0.v[0];
    u3_0 = d[3] * s0.v[3];
    rep.u0_drift = 0.0;
    rep.u3_drift = 0.0;
  }
  for (const auto& st : traj.states) {
    const double L = lagrangian_value(m, st.x, st.v);
    rep.max_L_drift = std::max(rep.max_L_drift, std::abs(L - L0));
    if (lorentzian) {
      const auto d = m.a.diag_values(st.x);
      rep.u0_drift = std::max(*rep.u0_drift, std::abs(d[0] * st.v[0] - u0_0));
      rep.u3_drift = std::max(*rep.u3_drift, std::abs(d[3] * st.v[3] - u3_0));
    }
  }
  return rep;
}

}  // namespace finsler
