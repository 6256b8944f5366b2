#pragma once

#include <array>
#include <functional>
#include <vector>

#include "finsler/linalg.hpp"
#include "finsler/model.hpp"
#include "finsler/parallel.hpp"

namespace finsler {

/// Gauss–Legendre nodes/weights on [a, b].
struct GaussRule {
  std::vector<double> nodes, weights;
};
GaussRule gauss_legendre(int n, double a, double b);

/// Rapidity-like fiber chart: n(χ,θ,φ) = cosh χ e0 + sinh χ (spherical mix of
/// e1..e3), Newton-scaled onto the L = 1 shell. The spatial triad is
/// Gram–Schmidt-adjusted with respect to g(x, e0), so the chart is exact for
/// Lorentzian models and stays inside the cone near the seed in general.
struct FiberChart {
  std::array<double, 4> x{};
  Vec4 e0{}, e1{}, e2{}, e3{};
};

FiberChart make_fiber_chart(const FinslerModel& m, const std::array<double, 4>& x);
/// Same chart with the spatial triad rotated by `angle` about the (1,1,1)
/// axis in frame space (covers the same sub-cone; used for the
/// chart-independence checks).
FiberChart make_rotated_fiber_chart(const FinslerModel& m, const std::array<double, 4>& x,
                                    double angle);

struct FiberPoint {
  std::array<double, 4> xdot{};            // on the L = 1 shell, in the cone
  std::array<std::array<double, 4>, 3> jac{};  // ∂ẋ/∂(χ,θ,φ)
  double abs_det_g = 0.0;                  // |det g| at (x, ẋ)
};

/// Maps chart coordinates u = (χ,θ,φ) onto the observer shell.
/// Throws ConeExit when n(u) leaves the timelike cone.
FiberPoint observer_parametrization(const FinslerModel& m, const FiberChart& chart,
                                    const std::array<double, 3>& u);

/// dΣ_x^+ density in chart coordinates:
/// w(u) = |det g| · det[ẋ, ∂ẋ/∂χ, ∂ẋ/∂θ, ∂ẋ/∂φ], orientation-normalized.
double fiber_weight(const FinslerModel& m, const FiberChart& chart, const std::array<double, 3>& u,
                    double orientation_sign = 0.0);

struct FiberQuadrature {
  double chi_max = 3.0;
  std::array<int, 3> orders{24, 16, 16};
};

struct FiberIntegral {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// ∫ f dΣ_x^+ over the capped sub-cone χ ≤ chi_max. The integrand must be
/// positively 0-homogeneous in ẋ (validated by a scaling probe). Node
/// evaluations run in parallel, reduced by fixed-order pairwise summation.
using FiberIntegrand = std::function<void(const std::array<double, 4>& x,
                                          const std::array<double, 4>& xdot, double* out)>;

std::vector<FiberIntegral> integrate_observer_fiber_multi(
    const FinslerModel& m, const std::array<double, 4>& x, const FiberIntegrand& f, int n_out,
    const FiberQuadrature& quad, const FiberChart* chart = nullptr,
    ExecMode mode = ExecMode::OpenMP, bool check_homogeneity = true);

FiberIntegral integrate_observer_fiber(const FinslerModel& m, const std::array<double, 4>& x,
                                       const std::function<double(const std::array<double, 4>&,
                                                                  const std::array<double, 4>&)>& f,
                                       const FiberQuadrature& quad, const FiberChart* chart = nullptr,
                                       ExecMode mode = ExecMode::OpenMP);

}  // namespace finsler
