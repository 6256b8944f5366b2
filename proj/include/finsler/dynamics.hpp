#pragma once

#include <array>
#include <optional>

#include "finsler/gas.hpp"
#include "finsler/geometry.hpp"
#include "finsler/quadrature.hpp"

namespace finsler {

/// Euler-Lagrange scalar of the geometric Lagrangian:
/// E = 1/2 g^{ij}(L R0)_{.i.j} - 3 R0 - g^{ij}(P_{i|j} - P_i P_j + (∇P_i)_{.j}).
/// Jet-valued so homogeneity can be probed on the result.
Jet vacuum_scalar_E_jet(const GeometryBundle& gb);
double vacuum_scalar_E(const FinslerModel& m, const ChartPoint& pt,
                       TruncationOrder ord = TruncationOrder{});

/// E + κ² φ: vanishes where (L, φ) solves the sourced field equation.
double field_residual_kinetic(const FinslerModel& m, const KineticGas& gas, const ChartPoint& pt,
                              TruncationOrder ord = TruncationOrder{});

/// 𝔗 = m φ / 2 as a jet (homogeneity checks).
Jet em_scalar_jet(const FinslerModel& m, const KineticGas& gas, const ChartPoint& pt,
                  TruncationOrder ord);

struct ThetaComponents {
  double T_frak = 0.0;                         // energy-momentum scalar 𝔗
  std::array<std::array<double, 4>, 4> theta{};  // Θ^j_i  ([j][i])
  std::array<double, 4> theta_div{};           // Θ^j_i_{|j}
};

/// 𝔗 and Θ^j_i = 𝔗 ẋ^j ẋ_i / L at pt (trace identity exact by construction).
ThetaComponents em_scalar_and_theta(const FinslerModel& m, const KineticGas& gas,
                                    const ChartPoint& pt);

struct BalanceReport {
  std::array<double, 4> theta_div{};  // Θ^j_i_{|j} via the Chern-Rund divergence
  double nabla_T = 0.0;               // ∇𝔗
  std::array<double, 4> residual{};   // Θ^j_i_{|j} - ẋ_i ∇𝔗 / L
};

BalanceReport theta_divergence_and_balance(const FinslerModel& m, const KineticGas& gas,
                                           const ChartPoint& pt,
                                           TruncationOrder ord = TruncationOrder{2, 4});

/// Fiber integrals of Θ^j_i_{|j} over the capped observer fiber at x; all
/// four vanish for gases satisfying the matter equations of motion.
std::array<FiberIntegral, 4> averaged_conservation_check(const FinslerModel& m,
                                                         const KineticGas& gas,
                                                         const std::array<double, 4>& x,
                                                         const FiberQuadrature& quad,
                                                         ExecMode mode = ExecMode::OpenMP);

struct EmDensity {
  std::array<std::array<double, 4>, 4> density{};  // 𝒯^i_j(x)
  std::optional<std::array<std::array<double, 4>, 4>> lorentzian;  // T^i_j = 𝒯/√|det a|
};

EmDensity em_density(const FinslerModel& m, const KineticGas& gas, const std::array<double, 4>& x,
                     const FiberQuadrature& quad, ExecMode mode = ExecMode::OpenMP);

/// ∇φ at pt (zero for collisionless/Liouville gases).
double liouville_residual(const FinslerModel& m, const KineticGas& gas, const ChartPoint& pt);

}  // namespace finsler
