#include "finsler/classical.hpp"

namespace finsler {

ClassicalGeometry classical_geometry(const BaseMetric& metric, const std::array<double, 4>& x) {
  ChartPoint pt;
  pt.x = x;
  pt.v = {1, 0, 0, 0};  // unused by x-jets
  const TruncationOrder ord{3, 0};
  const auto seeds = Jet::seed_chart(pt, ord);
  const auto d = metric.diag_jets(seeds);

  ClassicalGeometry cg;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) cg.a[i][j] = 0.0;
    cg.a[i][i] = d[static_cast<std::size_t>(i)].value();
  }
  if (!invert4(cg.a, cg.a_inv))
    throw FinslerError(ErrorCode::DegenerateHessian, "degenerate base metric");

  // Christoffels as x-jets of order 2 (diagonal metric).
  std::array<std::array<std::array<Jet, 4>, 4>, 4> gam;
  std::array<Jet, 4> dinv;
  for (int i = 0; i < 4; ++i) dinv[static_cast<std::size_t>(i)] = recip(d[static_cast<std::size_t>(i)]);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = j; k < 4; ++k) {
        // a_hj = δ_hj d_h: only h = i contributes through a^{ih}.
        Jet t1 = (j == i) ? d[static_cast<std::size_t>(i)].dx(k) : Jet::constant(pt, 0.0, ord);
        Jet t2 = (k == i) ? d[static_cast<std::size_t>(i)].dx(j) : Jet::constant(pt, 0.0, ord);
        Jet t3 = (j == k) ? d[static_cast<std::size_t>(j)].dx(i) : Jet::constant(pt, 0.0, ord);
        gam[i][j][k] = (t1 + t2 - t3) * dinv[static_cast<std::size_t>(i)] * 0.5;
        if (k != j) gam[i][k][j] = gam[i][j][k];
      }

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) cg.gamma[i][j][k] = gam[i][j][k].value();

  // riemann(i,j,k,l) = ∂_k γ^i_{jl} - ∂_j γ^i_{kl} + γ^i_{mk} γ^m_{jl} - γ^i_{mj} γ^m_{kl}
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double v = gam[i][j][l].dx(k).value() - gam[i][k][l].dx(j).value();
          for (int m = 0; m < 4; ++m)
            v += cg.gamma[i][m][k] * cg.gamma[m][j][l] - cg.gamma[i][m][j] * cg.gamma[m][k][l];
          cg.riemann[i][j][k][l] = v;
        }

  // ric_{lk} = -Σ_i riemann(i,i,k,l); symmetric for metric connections.
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      double s = 0.0;
      for (int i = 0; i < 4; ++i) s += cg.riemann[i][i][k][l];
      cg.ricci[l][k] = -s;
    }
  cg.ricci_scalar = 0.0;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) cg.ricci_scalar += cg.a_inv[k][l] * cg.ricci[k][l];
  return cg;
}

}  // namespace finsler
