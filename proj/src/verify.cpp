#include "finsler/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "finsler/causal.hpp"
#include "finsler/classical.hpp"
#include "finsler/dynamics.hpp"
#include "finsler/rng.hpp"

namespace finsler {

namespace {

constexpr double kScaleFloor = 1e-4;

double rel(double residual, double scale) {
  return std::abs(residual) / std::max(scale, kScaleFloor);
}

}  // namespace

double euler_residual_rel(const Jet& q, double degree) {
  double sum = 0.0, maxterm = 0.0;
  for (int i = 0; i < 4; ++i) {
    MultiIndex idx;
    idx.v[i] = 1;
    const double term = q.base_point().v[i] * q.coefficient(idx);
    sum += term;
    maxterm = std::max(maxterm, std::abs(term));
  }
  const double target = degree * q.value();
  return rel(sum - target, std::max(std::abs(target), maxterm));
}

std::vector<ChartPoint> sample_admissible_points(const FinslerModel& m, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ChartPoint> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const bool metric_based = m.kind == ModelKind::Lorentzian || m.kind == ModelKind::Randers ||
                            m.kind == ModelKind::Bogoslovsky;
  int guard = 0;
  while (static_cast<int>(pts.size()) < n) {
    if (++guard > 10000 * n)
      throw FinslerError(ErrorCode::InvalidParameter, "point sampling failed for model " + m.name);
    ChartPoint pt;
    for (int i = 0; i < 4; ++i)
      pt.x[static_cast<std::size_t>(i)] = rng.uniform(m.sampling.box_min[static_cast<std::size_t>(i)],
                                                      m.sampling.box_max[static_cast<std::size_t>(i)]);
    if (!m.a.in_domain(pt.x)) continue;
    std::array<double, 4> scale{1, 1, 1, 1};
    if (metric_based) {
      const auto d = m.a.diag_values(pt.x);
      for (int i = 1; i < 4; ++i) scale[static_cast<std::size_t>(i)] = std::sqrt(std::abs(d[0] / d[static_cast<std::size_t>(i)]));
    }
    const double spread = m.sampling.velocity_spread;
    for (int i = 0; i < 4; ++i) pt.v[static_cast<std::size_t>(i)] = m.timelike_seed[static_cast<std::size_t>(i)];
    pt.v[0] *= 1.0 + 0.2 * rng.uniform(-1.0, 1.0);
    for (int i = 1; i < 4; ++i)
      pt.v[static_cast<std::size_t>(i)] += spread * scale[static_cast<std::size_t>(i)] * rng.uniform(-1.0, 1.0);
    const auto rep = admissibility_report(m, pt);
    if (rep.region != Region::Timelike) continue;
    const double alpha = rng.uniform(0.5, 2.0);
    for (int i = 0; i < 4; ++i) pt.v[static_cast<std::size_t>(i)] *= alpha;
    pts.push_back(pt);
  }
  return pts;
}

// ---------------------------------------------------------------------------
// Homogeneity
// ---------------------------------------------------------------------------

std::vector<CheckReport> homogeneity_suite(const FinslerModel& m,
                                           const std::vector<ChartPoint>& points,
                                           const KineticGas& gas, std::uint64_t seed,
                                           ExecMode mode) {
  struct Item {
    const char* name;
    double degree;
  };
  static const Item items[] = {
      {"L", 2},   {"g_ij", 0},     {"C_ijk", -1}, {"F", 1},     {"omega_i", 0},
      {"ell_i", 0}, {"G_spray", 2}, {"N_ij", 1},   {"Gamma", 0}, {"R_ijk", 1},
      {"R0", 0},  {"P_ijk", 0},    {"P_i", 0},    {"E", 0},     {"T_frak", 0},
  };
  constexpr int n_items = static_cast<int>(sizeof(items) / sizeof(items[0]));
  // One extra v-order so that the Euler operator can act on E as well.
  const TruncationOrder ord{3, 7};

  std::vector<double> worst(points.size() * n_items, 0.0);
  parallel_for(
      points.size(),
      [&](std::size_t p) {
        const GeometryBundle gb = build_geometry(m, points[p], ord, Stage::Full);
        const Jet E = vacuum_scalar_E_jet(gb);
        const Jet T = em_scalar_jet(m, gas, points[p], ord);
        double* w = worst.data() + p * n_items;
        // Components of one tensor are normalized by the tensor's scale at
        // this point: a component that happens to cancel to ~0 would
        // otherwise measure round-off noise against itself.
        std::array<double, n_items> abs_res{}, scale{};
        auto upd = [&](int item, const Jet& q, double k) {
          double sum = 0.0, maxterm = 0.0;
          for (int i = 0; i < 4; ++i) {
            MultiIndex idx;
            idx.v[i] = 1;
            const double term = q.base_point().v[i] * q.coefficient(idx);
            sum += term;
            maxterm = std::max(maxterm, std::abs(term));
          }
          const double target = k * q.value();
          abs_res[static_cast<std::size_t>(item)] =
              std::max(abs_res[static_cast<std::size_t>(item)], std::abs(sum - target));
          scale[static_cast<std::size_t>(item)] =
              std::max({scale[static_cast<std::size_t>(item)], std::abs(target), maxterm});
        };
        upd(0, gb.L, 2);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) upd(1, gb.g[i][j], 0);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) upd(2, gb.C[i][j][k], -1);
        upd(3, gb.F, 1);
        for (int i = 0; i < 4; ++i) upd(4, gb.omega[i], 0);
        for (int i = 0; i < 4; ++i) upd(5, gb.ell[i], 0);
        for (int i = 0; i < 4; ++i) upd(6, gb.G_spray[i], 2);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) upd(7, gb.N[i][j], 1);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
              upd(8, gb.Gamma[i][j][k], 0);
              upd(9, gb.R[i][j][k], 1);
              upd(11, gb.P[i][j][k], 0);
            }
        upd(10, gb.R0, 0);
        for (int i = 0; i < 4; ++i) upd(12, gb.P_trace[i], 0);
        upd(13, E, 0);
        upd(14, T, 0);
        for (int item = 0; item < n_items; ++item)
          w[item] = abs_res[static_cast<std::size_t>(item)] /
                    std::max(scale[static_cast<std::size_t>(item)], kScaleFloor);
      },
      mode);

  std::vector<CheckReport> out;
  for (int k = 0; k < n_items; ++k) {
    double worst_k = 0.0;
    for (std::size_t p = 0; p < points.size(); ++p) worst_k = std::max(worst_k, worst[p * n_items + static_cast<std::size_t>(k)]);
    out.push_back(make_report(std::string("homogeneity/") + items[static_cast<std::size_t>(k)].name, worst_k, 1e-8,
                              static_cast<int>(points.size()), seed));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Identity suite
// ---------------------------------------------------------------------------

std::vector<CheckReport> identity_suite(const FinslerModel& m,
                                        const std::vector<ChartPoint>& points, std::uint64_t seed,
                                        ExecMode mode) {
  constexpr int n_items = 8;
  std::vector<double> worst(points.size() * n_items, 0.0);

  parallel_for(
      points.size(),
      [&](std::size_t p) {
        const GeometryBundle gb = build_geometry(m, points[p], TruncationOrder{}, Stage::Landsberg);
        double* w = worst.data() + p * n_items;
        const double Lscale = std::abs(gb.L.value());
        double gscale = 1.0, Nscale = 1.0, Pscale = 0.0, vmax = 0.0;
        for (int i = 0; i < 4; ++i) {
          vmax = std::max(vmax, std::abs(points[p].v[i]));
          for (int j = 0; j < 4; ++j) {
            gscale = std::max(gscale, std::abs(gb.g_value[i][j]));
            Nscale = std::max(Nscale, std::abs(gb.N[i][j].value()));
            for (int k = 0; k < 4; ++k) Pscale = std::max(Pscale, std::abs(gb.P[i][j][k].value()));
          }
        }
        Jet4 vjets;
        for (int i = 0; i < 4; ++i) vjets[i] = gb.seeds[static_cast<std::size_t>(4 + i)];

        // delta_i L = 0 and ∇L = 0
        double nablaL = 0.0;
        for (int i = 0; i < 4; ++i) {
          const double d = delta_op(gb, gb.L, i).value();
          w[0] = std::max(w[0], rel(d, Lscale));
          nablaL += points[p].v[i] * d;
        }
        w[3] = std::max(w[3], rel(nablaL, Lscale * std::max(1.0, vmax)));

        // g_ij|k = 0 and ∇g = 0
        for (int i = 0; i < 4; ++i)
          for (int j = i; j < 4; ++j) {
            double nabla_g = 0.0;
            for (int k = 0; k < 4; ++k) {
              const double d = cov_lower2(gb, gb.g, i, j, k).value();
              w[1] = std::max(w[1], rel(d, gscale));
              nabla_g += points[p].v[k] * d;
            }
            w[4] = std::max(w[4], rel(nabla_g, gscale * std::max(1.0, vmax)));
          }

        // xdot^i_{|j} = 0 and ∇xdot = 0
        for (int i = 0; i < 4; ++i) {
          double nabla_v = 0.0;
          for (int j = 0; j < 4; ++j) {
            const double d = cov_upper(gb, vjets, i, j).value();
            w[2] = std::max(w[2], rel(d, std::max(vmax, Nscale)));
            nabla_v += points[p].v[j] * d;
          }
          w[5] = std::max(w[5], rel(nabla_v, std::max(vmax, Nscale) * std::max(1.0, vmax)));
        }

        // P^i_{jk} xdot^k = 0 and P_i xdot^i = 0
        const double pv_scale = std::max(1.0, Pscale * vmax + Nscale);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += gb.P[i][j][k].value() * points[p].v[k];
            w[6] = std::max(w[6], rel(s, pv_scale));
          }
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += gb.P_trace[i].value() * points[p].v[i];
        w[7] = std::max(w[7], rel(s, pv_scale));
      },
      mode);

  static const char* names[n_items] = {"delta_L",  "cov_g",    "cov_xdot", "nabla_L",
                                       "nabla_g",  "nabla_xdot", "P_xdot",   "Ptrace_xdot"};
  std::vector<CheckReport> out;
  for (int k = 0; k < n_items; ++k) {
    double worst_k = 0.0;
    for (std::size_t p = 0; p < points.size(); ++p) worst_k = std::max(worst_k, worst[p * n_items + static_cast<std::size_t>(k)]);
    out.push_back(make_report(std::string("identity/") + names[static_cast<std::size_t>(k)], worst_k, 1e-8,
                              static_cast<int>(points.size()), seed));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lorentzian reduction
// ---------------------------------------------------------------------------

std::vector<CheckReport> lorentzian_reduction(const FinslerModel& m,
                                              const std::vector<ChartPoint>& points,
                                              std::uint64_t seed, ExecMode mode) {
  if (!m.is_lorentzian())
    throw FinslerError(ErrorCode::ModelNotLorentzian, "lorentzian_reduction needs a Lorentzian model");
  constexpr int n_items = 5;
  std::vector<double> worst(points.size() * n_items, 0.0);

  parallel_for(
      points.size(),
      [&](std::size_t p) {
        const auto& pt = points[p];
        const GeometryBundle gb = build_geometry(m, pt, TruncationOrder{}, Stage::Full);
        const ClassicalGeometry cg = classical_geometry(m.a, pt.x);
        double* w = worst.data() + p * n_items;

        double gam_scale = 1.0, vmax = 0.0;
        for (int i = 0; i < 4; ++i) {
          vmax = std::max(vmax, std::abs(pt.v[i]));
          for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) gam_scale = std::max(gam_scale, std::abs(cg.gamma[i][j][k]));
        }

        // G^i vs (1/2) γ^i_{jk} v^j v^k
        for (int i = 0; i < 4; ++i) {
          double cls = 0.0;
          for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) cls += 0.5 * cg.gamma[i][j][k] * pt.v[j] * pt.v[k];
          w[0] = std::max(w[0], rel(gb.G_spray[i].value() - cls, gam_scale * vmax * vmax));
        }
        // N^i_j vs γ^i_{jk} v^k
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            double cls = 0.0;
            for (int k = 0; k < 4; ++k) cls += cg.gamma[i][j][k] * pt.v[k];
            w[1] = std::max(w[1], rel(gb.N[i][j].value() - cls, gam_scale * vmax));
          }
        // Γ^i_{jk} vs classical Christoffels
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
              w[2] = std::max(w[2], rel(gb.Gamma[i][j][k].value() - cg.gamma[i][j][k], gam_scale));
        // R^i_{jk} vs riemann(i,j,k,l) v^l
        double riem_scale = 1.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
              for (int l = 0; l < 4; ++l)
                riem_scale = std::max(riem_scale, std::abs(cg.riemann[i][j][k][l]));
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
              double cls = 0.0;
              for (int l = 0; l < 4; ++l) cls += cg.riemann[i][j][k][l] * pt.v[l];
              w[3] = std::max(w[3], rel(gb.R[i][j][k].value() - cls, riem_scale * vmax));
            }
        // g^{ij}(L R0)_{.i.j} = -2 r
        Jet LR0 = gb.L * gb.R0;
        double contr = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            MultiIndex idx;
            idx.v[i] += 1;
            idx.v[j] += 1;
            contr += gb.g_inv_value[i][j] * LR0.partial(idx);
          }
        w[4] = std::max(w[4], rel(contr + 2.0 * cg.ricci_scalar, std::max(1.0, std::abs(cg.ricci_scalar))));
      },
      mode);

  static const char* names[n_items] = {"G_vs_christoffel", "N_vs_christoffel", "Gamma_vs_christoffel",
                                       "R_vs_riemann", "LR0_vs_ricci_scalar"};
  static const double tols[n_items] = {1e-9, 1e-9, 1e-9, 1e-8, 1e-6};
  std::vector<CheckReport> out;
  for (int k = 0; k < n_items; ++k) {
    double worst_k = 0.0;
    for (std::size_t p = 0; p < points.size(); ++p) worst_k = std::max(worst_k, worst[p * n_items + static_cast<std::size_t>(k)]);
    out.push_back(make_report(std::string("lorentzian_reduction/") + names[static_cast<std::size_t>(k)], worst_k,
                              tols[static_cast<std::size_t>(k)], static_cast<int>(points.size()), seed));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Contact structure and divergence formula
// ---------------------------------------------------------------------------

std::vector<CheckReport> contact_and_divergence_checks(const FinslerModel& m,
                                                       const std::vector<ChartPoint>& points,
                                                       std::uint64_t seed, ExecMode mode) {
  constexpr int n_items = 3;
  std::vector<double> worst(points.size() * n_items, 0.0);

  parallel_for(
      points.size(),
      [&](std::size_t p) {
        // The divergence formula below compares the dynamical derivative
        // (degree 1) against a 0-homogeneous divergence, so it is stated on
        // the observer shell: evaluate at the L = 1 representative.
        ChartPoint pt = points[p];
        pt.v = normalize_observer(m, pt.x, pt.v);
        const GeometryBundle gb = build_geometry(m, pt, TruncationOrder{}, Stage::Landsberg);
        double* w = worst.data() + p * n_items;

        // (a) i_ell omega = 1
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += gb.omega[i].value() * gb.ell[i].value();
        w[0] = rel(s - 1.0, 1.0);

        // (b) (ε g_ij - F_{.i} F_{.j}) l^j = 0
        for (int i = 0; i < 4; ++i) {
          double c = 0.0;
          for (int j = 0; j < 4; ++j)
            c += (gb.epsilon * gb.g_value[i][j] - gb.omega[i].value() * gb.omega[j].value()) *
                 gb.ell[j].value();
          w[1] = std::max(w[1], rel(c, 1.0));
        }

        // (c) ∇f = div(f l^i δ_i) = (f l^i)_{|i} - P_i (f l^i)
        // test function: 0-homogeneous rational in ẋ plus a base polynomial
        Jet cdot = gb.seeds[4] + 0.2 * gb.seeds[5];
        Jet f = (cdot * cdot) * recip(gb.L) +
                0.1 * gb.seeds[0] + 0.05 * (gb.seeds[1] * gb.seeds[2]);
        Jet4 X;
        for (int i = 0; i < 4; ++i) X[i] = f * gb.ell[i];
        double div = 0.0;
        for (int i = 0; i < 4; ++i)
          div += cov_upper(gb, X, i, i).value() - gb.P_trace[i].value() * X[i].value();
        const double nabla_f = dyn_cov_scalar(gb, f).value();
        w[2] = rel(nabla_f - div, std::max(1.0, std::abs(nabla_f)));
      },
      mode);

  static const char* names[n_items] = {"reeb_normalization", "reeb_contraction", "divergence_nabla"};
  static const double tols[n_items] = {1e-10, 1e-9, 1e-8};
  std::vector<CheckReport> out;
  for (int k = 0; k < n_items; ++k) {
    double worst_k = 0.0;
    for (std::size_t p = 0; p < points.size(); ++p) worst_k = std::max(worst_k, worst[p * n_items + static_cast<std::size_t>(k)]);
    out.push_back(make_report(std::string("contact/") + names[static_cast<std::size_t>(k)], worst_k,
                              tols[static_cast<std::size_t>(k)], static_cast<int>(points.size()), seed));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finite-difference oracle
// ---------------------------------------------------------------------------

namespace {

// Central-difference weights for d-th derivative, O(h^2), offsets symmetric.
struct Stencil {
  std::vector<int> offsets;
  std::vector<double> weights;  // divided by h^d by the caller
};

const Stencil& stencil_for(int d) {
  static const Stencil s0{{0}, {1.0}};
  static const Stencil s1{{-1, 1}, {-0.5, 0.5}};
  static const Stencil s2{{-1, 0, 1}, {1.0, -2.0, 1.0}};
  static const Stencil s3{{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}};
  static const Stencil s4{{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}};
  switch (d) {
    case 0: return s0;
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: return s4;
  }
}

// Mixed partial of L by a tensor-product central stencil at step scale h.
double fd_partial(const FinslerModel& m, const ChartPoint& pt, const MultiIndex& idx,
                  const std::array<double, 8>& h) {
  std::array<const Stencil*, 8> st;
  for (int i = 0; i < 4; ++i) {
    st[static_cast<std::size_t>(i)] = &stencil_for(idx.x[i]);
    st[static_cast<std::size_t>(4 + i)] = &stencil_for(idx.v[i]);
  }
  double sum = 0.0;
  std::array<std::size_t, 8> c{};
  while (true) {
    double wgt = 1.0;
    ChartPoint q = pt;
    for (int var = 0; var < 8; ++var) {
      const std::size_t ci = c[static_cast<std::size_t>(var)];
      wgt *= st[static_cast<std::size_t>(var)]->weights[ci];
      const double off = st[static_cast<std::size_t>(var)]->offsets[ci] * h[static_cast<std::size_t>(var)];
      if (var < 4) q.x[static_cast<std::size_t>(var)] += off;
      else q.v[static_cast<std::size_t>(var - 4)] += off;
    }
    sum += wgt * lagrangian_value(m, q.x, q.v);
    int var = 0;
    for (; var < 8; ++var) {
      if (++c[static_cast<std::size_t>(var)] < st[static_cast<std::size_t>(var)]->offsets.size()) break;
      c[static_cast<std::size_t>(var)] = 0;
    }
    if (var == 8) break;
  }
  for (int i = 0; i < 4; ++i) {
    for (int d = 0; d < idx.x[i]; ++d) sum /= h[static_cast<std::size_t>(i)];
    for (int d = 0; d < idx.v[i]; ++d) sum /= h[static_cast<std::size_t>(4 + i)];
  }
  return sum;
}

}  // namespace

CheckReport fd_oracle_compare(const FinslerModel& m, const std::vector<ChartPoint>& points,
                              int max_order, std::uint64_t seed) {
  // Enumerate all mixed partials with x-order + v-order <= max_order.
  std::vector<MultiIndex> idxs;
  std::function<void(MultiIndex, int, int)> rec = [&](MultiIndex cur, int var, int left) {
    if (var == 8) {
      if (cur.x_total() + cur.v_total() > 0) idxs.push_back(cur);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      MultiIndex nxt = cur;
      if (var < 4) nxt.x[var] = d;
      else nxt.v[var - 4] = d;
      rec(nxt, var + 1, left - d);
    }
  };
  rec(MultiIndex{}, 0, max_order);

  double worst = 0.0;
  for (const auto& pt : points) {
    const Jet L = lagrangian_jet(m, pt, TruncationOrder{max_order, max_order});

    // Step sizes per variable, matched to the local curvature scale of L in
    // that direction (from Hessian row norms, sqrt(2|L| / Σ|d2L|)); a fixed
    // step would sit outside the Taylor regime wherever metric coefficients
    // are large. c0 balances Richardson truncation against round-off.
    std::array<double, 8> h;
    const double absL = std::max(std::abs(L.value()), 1e-8);
    const double c0 = 0.008;
    for (int i = 0; i < 4; ++i) {
      double row_x = 0.0, row_v = 0.0;
      for (int j = 0; j < 4; ++j) {
        MultiIndex xx, vv, xv, vx;
        xx.x[i] += 1;
        xx.x[j] += 1;
        vv.v[i] += 1;
        vv.v[j] += 1;
        xv.x[i] += 1;
        xv.v[j] += 1;
        vx.v[i] += 1;
        vx.x[j] += 1;
        row_x += std::abs(L.partial(xx)) + std::abs(L.partial(xv));
        row_v += std::abs(L.partial(vv)) + std::abs(L.partial(vx));
      }
      const double scale_x = (row_x > 1e-8) ? std::sqrt(2.0 * absL / row_x) : 1e9;
      const double scale_v = (row_v > 1e-8) ? std::sqrt(2.0 * absL / row_v) : 1e9;
      h[static_cast<std::size_t>(i)] = std::max(
          1e-5, c0 * std::min(scale_x, std::max(1.0, std::abs(pt.x[static_cast<std::size_t>(i)]))));
      h[static_cast<std::size_t>(4 + i)] = std::max(
          1e-5, c0 * std::min(scale_v, std::max(1.0, std::abs(pt.v[static_cast<std::size_t>(i)]))));
    }
    if (m.a.kind == MetricKind::Schwarzschild) {
      h[1] = std::min(h[1], (pt.x[1] - 2.0 * m.a.mass) / 5.0);
      h[2] = std::min(h[2], std::min(pt.x[2] - 0.1, M_PI - 0.1 - pt.x[2]) / 5.0);
    }

    double jet_scale = 1.0;
    std::vector<double> jet_vals(idxs.size());
    for (std::size_t q = 0; q < idxs.size(); ++q) {
      jet_vals[q] = L.partial(idxs[q]);
      jet_scale = std::max(jet_scale, std::abs(jet_vals[q]));
    }

    for (std::size_t q = 0; q < idxs.size(); ++q) {
      double fd = 0.0;
      try {
        std::array<double, 8> h2;
        for (int i = 0; i < 8; ++i) h2[static_cast<std::size_t>(i)] = 0.5 * h[static_cast<std::size_t>(i)];
        const double d1 = fd_partial(m, pt, idxs[q], h);
        const double d2 = fd_partial(m, pt, idxs[q], h2);
        fd = (4.0 * d2 - d1) / 3.0;  // Richardson, O(h^4)
      } catch (const FinslerError& e) {
        throw FinslerError(ErrorCode::StencilLeavesDomain,
                           std::string("FD stencil left the domain: ") + e.what());
      }
      // The stencil's round-off floor: differences the oracle cannot resolve
      // (evaluations cancel to machine noise divided by the step powers).
      double floor_noise = 100.0 * 1e-16 * std::max(1.0, std::abs(L.value()));
      for (int i = 0; i < 4; ++i) {
        for (int d = 0; d < idxs[q].x[i]; ++d) floor_noise /= 0.5 * h[static_cast<std::size_t>(i)];
        for (int d = 0; d < idxs[q].v[i]; ++d) floor_noise /= 0.5 * h[static_cast<std::size_t>(4 + i)];
      }
      const double diff = std::abs(jet_vals[q] - fd);
      if (diff <= floor_noise) continue;
      const double denom = std::max({std::abs(fd), std::abs(jet_vals[q]), 1e-3 * jet_scale});
      worst = std::max(worst, diff / denom);
    }
  }
  return make_report("fd_oracle/partials_to_order_" + std::to_string(max_order), worst, 1e-5,
                     static_cast<int>(points.size()), seed);
}

// ---------------------------------------------------------------------------

std::vector<CheckReport> verify_model_suite(const FinslerModel& m, int n_points,
                                            std::uint64_t seed, ExecMode mode) {
  const auto points = sample_admissible_points(m, n_points, seed);
  KineticGas gas;  // default wide rapidity bump, nonzero at sampled points
  std::vector<CheckReport> all;
  auto absorb = [&](std::vector<CheckReport> v) {
    for (auto& r : v) all.push_back(std::move(r));
  };
  absorb(homogeneity_suite(m, points, gas, seed, mode));
  absorb(identity_suite(m, points, seed, mode));
  if (m.is_lorentzian()) absorb(lorentzian_reduction(m, points, seed, mode));
  absorb(contact_and_divergence_checks(m, points, seed, mode));
  const int n_fd = std::min<int>(static_cast<int>(points.size()), 10);
  all.push_back(fd_oracle_compare(m, {points.begin(), points.begin() + n_fd}, 4, seed));
  return all;
}

}  // namespace finsler
