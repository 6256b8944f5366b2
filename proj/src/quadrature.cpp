#include "finsler/quadrature.hpp"

#include <cmath>

#include "finsler/causal.hpp"

namespace finsler {

GaussRule gauss_legendre(int n, double a, double b) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev estimate of the i-th root of P_n.
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = mid + half * t;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 * half / ((1.0 - t * t) * dp * dp);
  }
  return rule;
}

namespace {

Mat4 metric_at_direction(const FinslerModel& m, const std::array<double, 4>& x,
                         const std::array<double, 4>& v) {
  const Jet L = lagrangian_jet(m, ChartPoint{x, v}, TruncationOrder{0, 2});
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      MultiIndex idx;
      idx.v[i] += 1;
      idx.v[j] += 1;
      g[i][j] = 0.5 * L.partial(idx);
      g[j][i] = g[i][j];
    }
  return g;
}

}  // namespace

FiberChart make_fiber_chart(const FinslerModel& m, const std::array<double, 4>& x) {
  FiberChart chart;
  chart.x = x;
  const auto e0 = normalize_observer(m, x, m.timelike_seed);
  chart.e0 = e0;
  // Gram-Schmidt of the spatial coordinate axes against e0 with respect to
  // g(x, e0); spatial norms are set to |g(e,e)| = 1.
  const Mat4 g = metric_at_direction(m, x, e0);
  auto dot = [&](const Vec4& a, const Vec4& b) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s += g[i][j] * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    return s;
  };
  std::array<Vec4, 3> basis{Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}, Vec4{0, 0, 0, 1}};
  std::array<Vec4, 4> frame;
  frame[0] = e0;
  int built = 1;
  for (auto cand : basis) {
    // subtract projections on the already-built frame vectors
    for (int k = 0; k < built; ++k) {
      const double num = dot(cand, frame[static_cast<std::size_t>(k)]);
      const double den = dot(frame[static_cast<std::size_t>(k)], frame[static_cast<std::size_t>(k)]);
      for (int i = 0; i < 4; ++i) cand[static_cast<std::size_t>(i)] -= (num / den) * frame[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    }
    const double n2 = dot(cand, cand);
    if (!(std::abs(n2) > 1e-14))
      throw FinslerError(ErrorCode::DegenerateHessian, "fiber frame construction degenerate");
    const double inv = 1.0 / std::sqrt(std::abs(n2));
    for (int i = 0; i < 4; ++i) cand[static_cast<std::size_t>(i)] *= inv;
    frame[static_cast<std::size_t>(built)] = cand;
    ++built;
  }
  chart.e1 = frame[1];
  chart.e2 = frame[2];
  chart.e3 = frame[3];
  return chart;
}

FiberChart make_rotated_fiber_chart(const FinslerModel& m, const std::array<double, 4>& x,
                                    double angle) {
  FiberChart chart = make_fiber_chart(m, x);
  // Rodrigues rotation of the triad coefficients about (1,1,1)/sqrt(3).
  const double c = std::cos(angle), s = std::sin(angle);
  const double k = 1.0 / std::sqrt(3.0);
  const double axis[3] = {k, k, k};
  auto rotate3 = [&](double a0, double a1, double a2, int comp) {
    const double a[3] = {a0, a1, a2};
    const double kxa[3] = {axis[1] * a[2] - axis[2] * a[1], axis[2] * a[0] - axis[0] * a[2],
                           axis[0] * a[1] - axis[1] * a[0]};
    const double kdota = axis[0] * a[0] + axis[1] * a[1] + axis[2] * a[2];
    return a[comp] * c + kxa[comp] * s + axis[comp] * kdota * (1.0 - c);
  };
  FiberChart out = chart;
  for (int i = 0; i < 4; ++i) {
    const std::size_t q = static_cast<std::size_t>(i);
    out.e1[q] = rotate3(chart.e1[q], chart.e2[q], chart.e3[q], 0);
    out.e2[q] = rotate3(chart.e1[q], chart.e2[q], chart.e3[q], 1);
    out.e3[q] = rotate3(chart.e1[q], chart.e2[q], chart.e3[q], 2);
  }
  return out;
}

FiberPoint observer_parametrization(const FinslerModel& m, const FiberChart& chart,
                                    const std::array<double, 3>& u) {
  const double chi = u[0], th = u[1], ph = u[2];
  const double ch = std::cosh(chi), sh = std::sinh(chi);
  const double st = std::sin(th), ct = std::cos(th);
  const double cp = std::cos(ph), sp = std::sin(ph);

  std::array<double, 4> n, nhat, d_chi, d_th, d_ph;
  for (int i = 0; i < 4; ++i) {
    const std::size_t q = static_cast<std::size_t>(i);
    nhat[q] = st * cp * chart.e1[q] + st * sp * chart.e2[q] + ct * chart.e3[q];
    n[q] = ch * chart.e0[q] + sh * nhat[q];
    d_chi[q] = sh * chart.e0[q] + ch * nhat[q];
    d_th[q] = sh * (ct * cp * chart.e1[q] + ct * sp * chart.e2[q] - st * chart.e3[q]);
    d_ph[q] = sh * (-st * sp * chart.e1[q] + st * cp * chart.e2[q]);
  }

  Jet L;
  try {
    L = lagrangian_jet(m, ChartPoint{chart.x, n}, TruncationOrder{0, 2});
  } catch (const FinslerError& e) {
    throw FinslerError(ErrorCode::ConeExit, std::string("chart point left the cone: ") + e.what());
  }
  const double Ln = L.value();
  if (!(Ln > 0)) throw FinslerError(ErrorCode::ConeExit, "chart point left the timelike cone (L <= 0)");

  // r n lies on the L = 1 shell; r = L(n)^{-1/2} is exact by 2-homogeneity,
  // kept under Newton in case of round-off.
  double r = 1.0 / std::sqrt(Ln);
  for (int it = 0; it < 3; ++it) {
    const double res = r * r * Ln - 1.0;
    if (std::abs(res) < 1e-15) break;
    r -= res / (2.0 * r * Ln);
  }

  std::array<double, 4> dL;  // ∂̇_i L at (x, n)
  for (int i = 0; i < 4; ++i) {
    MultiIndex idx;
    idx.v[i] = 1;
    dL[static_cast<std::size_t>(i)] = L.partial(idx);
  }
  const double rfac = -0.5 * r / Ln;  // dr/dL · (chain through L(n))

  FiberPoint fp;
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      MultiIndex idx;
      idx.v[i] += 1;
      idx.v[j] += 1;
      g[i][j] = 0.5 * L.partial(idx);
      g[j][i] = g[i][j];
    }
  fp.abs_det_g = std::abs(det4(g));  // 0-homogeneous: same at r n

  const std::array<std::array<double, 4>, 3> du{d_chi, d_th, d_ph};
  for (int a = 0; a < 3; ++a) {
    double dLa = 0.0;
    for (int i = 0; i < 4; ++i) dLa += dL[static_cast<std::size_t>(i)] * du[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
    const double dr = rfac * dLa;
    for (int i = 0; i < 4; ++i) {
      const std::size_t q = static_cast<std::size_t>(i);
      fp.jac[static_cast<std::size_t>(a)][q] = dr * n[q] + r * du[static_cast<std::size_t>(a)][q];
    }
  }
  for (int i = 0; i < 4; ++i) fp.xdot[static_cast<std::size_t>(i)] = r * n[static_cast<std::size_t>(i)];
  return fp;
}

namespace {

double raw_weight(const FiberPoint& fp) {
  Mat4 mat;
  for (int i = 0; i < 4; ++i) {
    const std::size_t q = static_cast<std::size_t>(i);
    mat[i][0] = fp.xdot[q];
    mat[i][1] = fp.jac[0][q];
    mat[i][2] = fp.jac[1][q];
    mat[i][3] = fp.jac[2][q];
  }
  return fp.abs_det_g * det4(mat);
}

double orientation_of(const FinslerModel& m, const FiberChart& chart, double chi_max) {
  const std::array<double, 3> probe{0.5 * std::min(1.0, chi_max), 0.5 * M_PI, 0.25};
  const double w = raw_weight(observer_parametrization(m, chart, probe));
  return w >= 0 ? 1.0 : -1.0;
}

}  // namespace

double fiber_weight(const FinslerModel& m, const FiberChart& chart, const std::array<double, 3>& u,
                    double orientation_sign) {
  if (orientation_sign == 0.0) orientation_sign = orientation_of(m, chart, u[0] > 0 ? u[0] * 2 : 1.0);
  return orientation_sign * raw_weight(observer_parametrization(m, chart, u));
}

namespace {

std::vector<double> run_rule(const FinslerModel& m, const std::array<double, 4>& x,
                             const FiberIntegrand& f, int n_out, const FiberChart& chart,
                             double chi_max, const std::array<int, 3>& orders, ExecMode mode) {
  const GaussRule rc = gauss_legendre(orders[0], 0.0, chi_max);
  const GaussRule rt = gauss_legendre(orders[1], 0.0, M_PI);
  const GaussRule rp = gauss_legendre(orders[2], 0.0, 2.0 * M_PI);
  const double orient = orientation_of(m, chart, chi_max);

  const std::size_t n_nodes = rc.nodes.size() * rt.nodes.size() * rp.nodes.size();
  std::vector<double> slots(n_nodes * static_cast<std::size_t>(n_out), 0.0);
  std::vector<char> failed(n_nodes, 0);
  std::vector<std::string> fail_msg(1);

  parallel_for(
      n_nodes,
      [&](std::size_t idx) {
        const std::size_t ip = idx % rp.nodes.size();
        const std::size_t it = (idx / rp.nodes.size()) % rt.nodes.size();
        const std::size_t ic = idx / (rp.nodes.size() * rt.nodes.size());
        const std::array<double, 3> u{rc.nodes[ic], rt.nodes[it], rp.nodes[ip]};
        try {
          const FiberPoint fp = observer_parametrization(m, chart, u);
          const double w = orient * raw_weight(fp);
          if (!(w >= 0.0))
            throw FinslerError(ErrorCode::NodeOutsideCone, "negative fiber measure at a node");
          const double gw = rc.weights[ic] * rt.weights[it] * rp.weights[ip] * w;
          std::vector<double> fv(static_cast<std::size_t>(n_out), 0.0);
          f(x, fp.xdot, fv.data());
          for (int k = 0; k < n_out; ++k)
            slots[idx * static_cast<std::size_t>(n_out) + static_cast<std::size_t>(k)] = gw * fv[static_cast<std::size_t>(k)];
        } catch (const FinslerError& e) {
          failed[idx] = 1;
          fail_msg[0] = e.what();
        }
      },
      mode);

  for (std::size_t i = 0; i < n_nodes; ++i)
    if (failed[i])
      throw FinslerError(ErrorCode::NodeOutsideCone, "quadrature node failed: " + fail_msg[0]);

  // Fixed-order componentwise pairwise reduction for determinism.
  std::vector<double> out(static_cast<std::size_t>(n_out), 0.0);
  std::vector<double> comp(n_nodes);
  for (int k = 0; k < n_out; ++k) {
    for (std::size_t i = 0; i < n_nodes; ++i) comp[i] = slots[i * static_cast<std::size_t>(n_out) + static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(k)] = pairwise_sum(comp);
  }
  return out;
}

}  // namespace

std::vector<FiberIntegral> integrate_observer_fiber_multi(const FinslerModel& m,
                                                          const std::array<double, 4>& x,
                                                          const FiberIntegrand& f, int n_out,
                                                          const FiberQuadrature& quad,
                                                          const FiberChart* chart_in, ExecMode mode,
                                                          bool check_homogeneity) {
  FiberChart chart = chart_in ? *chart_in : make_fiber_chart(m, x);

  if (check_homogeneity) {
    // The integrand must descend to PTM^+.
    const std::array<double, 3> probes[3] = {{0.3, 1.2, 0.7}, {0.9, 2.0, 3.1}, {1.4, 0.6, 5.0}};
    for (const auto& u : probes) {
      if (u[0] > quad.chi_max) continue;
      FiberPoint fp;
      try {
        fp = observer_parametrization(m, chart, u);
      } catch (const FinslerError&) {
        continue;
      }
      std::vector<double> f1(static_cast<std::size_t>(n_out)), f2(static_cast<std::size_t>(n_out));
      std::array<double, 4> scaled;
      for (int i = 0; i < 4; ++i) scaled[static_cast<std::size_t>(i)] = 1.37 * fp.xdot[static_cast<std::size_t>(i)];
      f(x, fp.xdot, f1.data());
      f(x, scaled, f2.data());
      for (int k = 0; k < n_out; ++k) {
        const std::size_t q = static_cast<std::size_t>(k);
        if (std::abs(f1[q] - f2[q]) > 1e-8 * (1.0 + std::abs(f1[q])))
          throw FinslerError(ErrorCode::InvalidParameter,
                             "integrand is not 0-homogeneous in the fiber variable");
      }
    }
  }

  const auto full = run_rule(m, x, f, n_out, chart, quad.chi_max, quad.orders, mode);
  std::array<int, 3> half_orders;
  for (int i = 0; i < 3; ++i)
    half_orders[static_cast<std::size_t>(i)] = std::max(2, (quad.orders[static_cast<std::size_t>(i)] + 1) / 2);
  const auto half = run_rule(m, x, f, n_out, chart, quad.chi_max, half_orders, mode);

  std::vector<FiberIntegral> out(static_cast<std::size_t>(n_out));
  for (int k = 0; k < n_out; ++k) {
    const std::size_t q = static_cast<std::size_t>(k);
    out[q].value = full[q];
    out[q].error_estimate = std::abs(full[q] - half[q]);
  }
  return out;
}

FiberIntegral integrate_observer_fiber(const FinslerModel& m, const std::array<double, 4>& x,
                                       const std::function<double(const std::array<double, 4>&,
                                                                  const std::array<double, 4>&)>& f,
                                       const FiberQuadrature& quad, const FiberChart* chart,
                                       ExecMode mode) {
  auto wrap = [&f](const std::array<double, 4>& xx, const std::array<double, 4>& vv, double* out) {
    out[0] = f(xx, vv);
  };
  return integrate_observer_fiber_multi(m, x, wrap, 1, quad, chart, mode)[0];
}

}  // namespace finsler
