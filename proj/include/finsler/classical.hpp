#pragma once

#include <array>

#include "finsler/linalg.hpp"
#include "finsler/model.hpp"

namespace finsler {

/// Classical curvature data of a Lorentzian base metric at a point, computed
/// by direct coordinate formulas with x-jets only. Fully independent of the
/// Finsler tower; used as the cross-validation oracle.
///
/// riemann(i,j,k,l) is indexed so that the nonlinear-connection curvature of
/// the quadratic Lagrangian contracts as R^i_{jk} = riemann[i][j][k][l] ẋ^l;
/// it is antisymmetric in (j,k).
struct ClassicalGeometry {
  Mat4 a{}, a_inv{};
  std::array<std::array<std::array<double, 4>, 4>, 4> gamma{};  // γ^i_{jk}
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> riemann{};
  Mat4 ricci{};          // ric_{ij}
  double ricci_scalar = 0.0;
};

ClassicalGeometry classical_geometry(const BaseMetric& metric, const std::array<double, 4>& x);

}  // namespace finsler
