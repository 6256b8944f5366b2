#include "finsler/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace finsler {

using detail::SideTables;

namespace {

// Densify a jet's coefficients to the full (kx, kv) layout of the given caps.
std::vector<double> densify(const Jet& j, int kx, int kv) {
  const auto& t = SideTables::instance();
  const int nx = t.count_by_cap[kx], nv = t.count_by_cap[kv];
  std::vector<double> out(static_cast<std::size_t>(nx) * nv, 0.0);
  const int jnx = t.count_by_cap[j.content_x()], jnv = t.count_by_cap[j.content_v()];
  const auto& src = j.raw();
  for (int ix = 0; ix < std::min(jnx, nx); ++ix)
    for (int iv = 0; iv < std::min(jnv, nv); ++iv)
      out[static_cast<std::size_t>(ix) * nv + iv] = src[static_cast<std::size_t>(ix) * jnv + iv];
  return out;
}

}  // namespace

Jet44 jet_mat_inverse(const Jet44& m, const Mat4& a0inv) {
  const auto& t = SideTables::instance();
  const ChartPoint& pt = m[0][0].base_point();
  TruncationOrder ord{m[0][0].order().max_x, m[0][0].order().max_v};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      ord.max_x = std::min(ord.max_x, m[i][j].order().max_x);
      ord.max_v = std::min(ord.max_v, m[i][j].order().max_v);
    }
  const int kx = ord.max_x, kv = ord.max_v;
  const int nx = t.count_by_cap[kx], nv = t.count_by_cap[kv];
  const std::size_t n = static_cast<std::size_t>(nx) * nv;

  std::array<std::array<std::vector<double>, 4>, 4> mc, xc;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      mc[i][j] = densify(m[i][j], kx, kv);
      xc[i][j].assign(n, 0.0);
      xc[i][j][0] = a0inv[i][j];
    }

  // Graded order over result indices (sx, sv): ascending total degree.
  std::vector<std::pair<int, int>> targets;
  for (int sx = 0; sx < nx; ++sx)
    for (int sv = 0; sv < nv; ++sv)
      if (sx != 0 || sv != 0) targets.push_back({sx, sv});
  std::sort(targets.begin(), targets.end(), [&](auto a, auto b) {
    return t.degree[a.first] + t.degree[a.second] < t.degree[b.first] + t.degree[b.second];
  });

  // M X = I with M = M0 + Δ: X[s] = -A0 Σ_{0<β≤s} Δ[β] X[s-β].
  for (const auto& [sx, sv] : targets) {
    double acc[4][4] = {};
    for (const auto& px : t.splits[static_cast<std::size_t>(sx)]) {
      for (const auto& pv : t.splits[static_cast<std::size_t>(sv)]) {
        const std::size_t bidx = static_cast<std::size_t>(px[0]) * nv + pv[0];
        if (bidx == 0) continue;  // Δ[0] = 0
        const std::size_t ridx = static_cast<std::size_t>(px[1]) * nv + pv[1];
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int mm = 0; mm < 4; ++mm) s += mc[a][mm][bidx] * xc[mm][b][ridx];
            acc[a][b] += s;
          }
      }
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double s = 0.0;
        for (int mm = 0; mm < 4; ++mm) s += a0inv[a][mm] * acc[mm][b];
        xc[a][b][static_cast<std::size_t>(sx) * nv + sv] = -s;
      }
  }

  Jet44 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = Jet::from_raw(pt, ord, kx, kv, std::move(xc[i][j]));
  return out;
}

namespace {

Jet det4_jet(const Jet44& a) {
  Jet b0 = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  Jet b1 = a[0][0] * a[1][2] - a[0][2] * a[1][0];
  Jet b2 = a[0][0] * a[1][3] - a[0][3] * a[1][0];
  Jet b3 = a[0][1] * a[1][2] - a[0][2] * a[1][1];
  Jet b4 = a[0][1] * a[1][3] - a[0][3] * a[1][1];
  Jet b5 = a[0][2] * a[1][3] - a[0][3] * a[1][2];
  Jet c0 = a[2][0] * a[3][1] - a[2][1] * a[3][0];
  Jet c1 = a[2][0] * a[3][2] - a[2][2] * a[3][0];
  Jet c2 = a[2][0] * a[3][3] - a[2][3] * a[3][0];
  Jet c3 = a[2][1] * a[3][2] - a[2][2] * a[3][1];
  Jet c4 = a[2][1] * a[3][3] - a[2][3] * a[3][1];
  Jet c5 = a[2][2] * a[3][3] - a[2][3] * a[3][2];
  return b0 * c5 - b1 * c4 + b2 * c3 + b3 * c2 - b4 * c1 + b5 * c0;
}

}  // namespace

void fundamental_tensors(GeometryBundle& gb) {
  const double Lval = gb.L.value();
  if (std::abs(Lval) <= eps_div(gb.L.guard_scale()))
    throw FinslerError(ErrorCode::NullDirection, "L vanishes at this direction (outside A_0)");
  gb.epsilon = Lval < 0 ? -1.0 : 1.0;

  Jet4 Lv;
  for (int i = 0; i < 4; ++i) Lv[i] = gb.L.dv(i);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      gb.g[i][j] = Lv[i].dv(j) * 0.5;
      if (j != i) gb.g[j][i] = gb.g[i][j];
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gb.g_value[i][j] = gb.g[i][j].value();

  gb.det_g = det4_jet(gb.g);
  double rownorm_prod = 1.0;
  for (int i = 0; i < 4; ++i) {
    double rn = 0.0;
    for (int j = 0; j < 4; ++j) rn += gb.g_value[i][j] * gb.g_value[i][j];
    rownorm_prod *= std::sqrt(rn);
  }
  gb.tol_det = 1e-10 * rownorm_prod;
  if (std::abs(gb.det_g.value()) <= gb.tol_det)
    throw FinslerError(ErrorCode::DegenerateHessian, "metric Hessian degenerate (outside A)");

  if (!invert4(gb.g_value, gb.g_inv_value))
    throw FinslerError(ErrorCode::DegenerateHessian, "metric value inversion failed");
  gb.g_inv = jet_mat_inverse(gb.g, gb.g_inv_value);

  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      for (int k = j; k < 4; ++k) {
        Jet c = gb.g[i][j].dv(k) * 0.5;
        gb.C[i][j][k] = c;
        gb.C[i][k][j] = c;
        gb.C[j][i][k] = c;
        gb.C[j][k][i] = c;
        gb.C[k][i][j] = c;
        gb.C[k][j][i] = c;
      }
  for (int i = 0; i < 4; ++i) {
    Jet s = gb.g_inv[0][0] * gb.C[i][0][0];
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        if (j == 0 && k == 0) continue;
        s += gb.g_inv[j][k] * gb.C[i][j][k];
      }
    gb.C_trace[i] = s;
  }

  gb.F = sqrt(signed_abs(gb.L));
  for (int i = 0; i < 4; ++i) gb.omega[i] = gb.F.dv(i);
  Jet invF = recip(gb.F);
  for (int i = 0; i < 4; ++i) gb.ell[i] = gb.seeds[static_cast<std::size_t>(4 + i)] * invF;
  gb.stage = Stage::Fundamental;
}

void spray_and_connection(GeometryBundle& gb) {
  Jet4 rhs;
  for (int h = 0; h < 4; ++h) {
    Jet Lh = gb.L.dv(h);
    Jet s = Lh.dx(0) * gb.seeds[4];
    for (int j = 1; j < 4; ++j) s += Lh.dx(j) * gb.seeds[static_cast<std::size_t>(4 + j)];
    rhs[h] = s - gb.L.dx(h);
  }
  for (int i = 0; i < 4; ++i) {
    Jet s = gb.g_inv[i][0] * rhs[0];
    for (int h = 1; h < 4; ++h) s += gb.g_inv[i][h] * rhs[h];
    gb.G_spray[i] = s * 0.25;
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gb.N[i][j] = gb.G_spray[i].dv(j);
  gb.stage = Stage::Spray;
  gb.has_spray = true;
}

Jet delta_op(const GeometryBundle& gb, const Jet& f, int i) {
  Jet s = f.dx(i);
  for (int m = 0; m < 4; ++m) s -= gb.N[m][i] * f.dv(m);
  return s;
}

void curvature_and_ricci(GeometryBundle& gb) {
  Jet444 dN;  // dN[k][i][j] = δ_k G^i_j
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) dN[k][i][j] = delta_op(gb, gb.N[i][j], k);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) gb.R[i][j][k] = dN[k][i][j] - dN[j][i][k];
  Jet s = gb.R[0][0][0] * gb.seeds[4];
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      if (i == 0 && k == 0) continue;
      s += gb.R[i][i][k] * gb.seeds[static_cast<std::size_t>(4 + k)];
    }
  gb.R0 = s * recip(gb.L);
  gb.stage = Stage::Curvature;
  gb.has_curvature = true;
}

void chern_rund_and_landsberg(GeometryBundle& gb) {
  Jet444 dg;  // dg[k][h][j] = δ_k g_hj
  for (int k = 0; k < 4; ++k)
    for (int h = 0; h < 4; ++h)
      for (int j = h; j < 4; ++j) {
        dg[k][h][j] = delta_op(gb, gb.g[h][j], k);
        if (j != h) dg[k][j][h] = dg[k][h][j];
      }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = j; k < 4; ++k) {
        Jet inner = dg[k][0][j] + dg[j][0][k] - dg[0][j][k];
        Jet s = gb.g_inv[i][0] * inner;
        for (int h = 1; h < 4; ++h) {
          inner = dg[k][h][j] + dg[j][h][k] - dg[h][j][k];
          s += gb.g_inv[i][h] * inner;
        }
        gb.Gamma[i][j][k] = s * 0.5;
        if (k != j) gb.Gamma[i][k][j] = gb.Gamma[i][j][k];
      }
  for (int i = 0; i < 4; ++i) {
    Jet4 Gi_dv;
    for (int j = 0; j < 4; ++j) Gi_dv[j] = gb.G_spray[i].dv(j);
    for (int j = 0; j < 4; ++j)
      for (int k = j; k < 4; ++k) {
        gb.P[i][j][k] = Gi_dv[j].dv(k) - gb.Gamma[i][j][k];
        if (k != j) gb.P[i][k][j] = gb.P[i][j][k];
      }
  }
  for (int i = 0; i < 4; ++i) {
    Jet s = gb.P[0][i][0];
    for (int j = 1; j < 4; ++j) s += gb.P[j][i][j];
    gb.P_trace[i] = s;
  }
  gb.stage = Stage::Landsberg;
  gb.has_landsberg = true;
}

GeometryBundle build_geometry_from_L(Jet L, Stage upto) {
  GeometryBundle gb;
  gb.pt = L.base_point();
  gb.order = L.order();
  gb.seeds = Jet::seed_chart(gb.pt, gb.order);
  gb.L = std::move(L);
  fundamental_tensors(gb);
  if (upto == Stage::Fundamental) return gb;
  spray_and_connection(gb);
  if (upto == Stage::Spray) return gb;
  if (upto == Stage::Curvature || upto == Stage::Full) curvature_and_ricci(gb);
  if (upto == Stage::Landsberg || upto == Stage::Full) chern_rund_and_landsberg(gb);
  return gb;
}

GeometryBundle build_geometry(const FinslerModel& model, const ChartPoint& pt, TruncationOrder ord,
                              Stage upto) {
  return build_geometry_from_L(lagrangian_jet(model, pt, ord), upto);
}

Jet cov_scalar(const GeometryBundle& gb, const Jet& f, int k) { return delta_op(gb, f, k); }

Jet cov_lower(const GeometryBundle& gb, const Jet4& T, int i, int k) {
  Jet s = delta_op(gb, T[i], k);
  for (int m = 0; m < 4; ++m) s -= gb.Gamma[m][i][k] * T[m];
  return s;
}

Jet cov_upper(const GeometryBundle& gb, const Jet4& T, int i, int k) {
  Jet s = delta_op(gb, T[i], k);
  for (int m = 0; m < 4; ++m) s += gb.Gamma[i][m][k] * T[m];
  return s;
}

Jet cov_mixed(const GeometryBundle& gb, const Jet44& T, int j, int i, int k) {
  Jet s = delta_op(gb, T[j][i], k);
  for (int m = 0; m < 4; ++m) {
    s += gb.Gamma[j][m][k] * T[m][i];
    s -= gb.Gamma[m][i][k] * T[j][m];
  }
  return s;
}

Jet cov_lower2(const GeometryBundle& gb, const Jet44& T, int i, int j, int k) {
  Jet s = delta_op(gb, T[i][j], k);
  for (int m = 0; m < 4; ++m) {
    s -= gb.Gamma[m][i][k] * T[m][j];
    s -= gb.Gamma[m][j][k] * T[i][m];
  }
  return s;
}

Jet dyn_cov_scalar(const GeometryBundle& gb, const Jet& f) {
  Jet s = delta_op(gb, f, 0) * gb.seeds[4];
  for (int k = 1; k < 4; ++k) s += delta_op(gb, f, k) * gb.seeds[static_cast<std::size_t>(4 + k)];
  return s;
}

}  // namespace finsler
