#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finsler/model.hpp"

namespace finsler {

struct GeodesicState {
  double s = 0.0;
  std::array<double, 4> x{};
  std::array<double, 4> v{};
};

struct IntegratorConfig {
  enum class Method { RK4, RK45 } method = Method::RK4;
  double step = 0.01;
  double tol = 1e-9;        // RK45 local error target per unit step
  long max_steps = 100000;
  double s_end = 10.0;
};

struct Trajectory {
  std::vector<GeodesicState> states;
  bool left_domain = false;
  std::string message;
};

/// Spray coefficients G^i at value level (reduced-order jets inside).
std::array<double, 4> spray_coefficients(const FinslerModel& m, const std::array<double, 4>& x,
                                         const std::array<double, 4>& v);

/// Integrates ẍ^i + 2 G^i(x, ẋ) = 0 from state0. Stops at s_end, max_steps,
/// or on leaving the admissible domain (flagged, last good state kept).
Trajectory integrate_geodesic(const FinslerModel& m, const GeodesicState& state0,
                              const IntegratorConfig& cfg);

struct DriftReport {
  double max_L_drift = 0.0;
  // Killing-direction momenta a_00 v^0 and a_33 v^3 for Lorentzian models.
  std::optional<double> u0_drift, u3_drift;
};

DriftReport geodesic_invariants(const Trajectory& traj, const FinslerModel& m);

}  // namespace finsler
