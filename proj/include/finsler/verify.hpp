#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finsler/gas.hpp"
#include "finsler/geometry.hpp"
#include "finsler/model.hpp"
#include "finsler/parallel.hpp"

namespace finsler {

struct CheckReport {
  std::string name;
  double max_abs_residual = 0.0;  // scale-normalized
  double tolerance = 0.0;
  bool pass = false;
  int samples = 0;
  std::uint64_t seed = 0;
};

inline CheckReport make_report(std::string name, double residual, double tol, int samples,
                               std::uint64_t seed) {
  CheckReport r;
  r.name = std::move(name);
  r.max_abs_residual = residual;
  r.tolerance = tol;
  r.pass = residual <= tol;
  r.samples = samples;
  r.seed = seed;
  return r;
}

/// Deterministic seeded sampler over the model's chart box; returns timelike
/// admissible points with the fiber representative rescaled by a random
/// positive factor.
std::vector<ChartPoint> sample_admissible_points(const FinslerModel& m, int n, std::uint64_t seed);

/// Scale-normalized Euler residual |ẋ ∂̇ Q - k Q| for a jet-valued quantity.
double euler_residual_rel(const Jet& q, double degree);

/// Homogeneity degrees of the full tower (plus E and 𝔗) via jet Euler checks.
std::vector<CheckReport> homogeneity_suite(const FinslerModel& m,
                                           const std::vector<ChartPoint>& points,
                                           const KineticGas& gas, std::uint64_t seed,
                                           ExecMode mode = ExecMode::OpenMP);

/// The eight structure identities of the covariant calculus.
std::vector<CheckReport> identity_suite(const FinslerModel& m,
                                        const std::vector<ChartPoint>& points, std::uint64_t seed,
                                        ExecMode mode = ExecMode::OpenMP);

/// Lorentzian models against the classical curvature oracle.
std::vector<CheckReport> lorentzian_reduction(const FinslerModel& m,
                                              const std::vector<ChartPoint>& points,
                                              std::uint64_t seed, ExecMode mode = ExecMode::OpenMP);

/// Reeb-field conditions and the divergence formula ∇f = div(f ℓ).
std::vector<CheckReport> contact_and_divergence_checks(const FinslerModel& m,
                                                       const std::vector<ChartPoint>& points,
                                                       std::uint64_t seed,
                                                       ExecMode mode = ExecMode::OpenMP);

/// Central finite differences with Richardson extrapolation for all partials
/// of L up to max_order, against jet extraction.
CheckReport fd_oracle_compare(const FinslerModel& m, const std::vector<ChartPoint>& points,
                              int max_order, std::uint64_t seed);

/// Everything above for one model (the `verify` subcommand payload).
std::vector<CheckReport> verify_model_suite(const FinslerModel& m, int n_points,
                                            std::uint64_t seed, ExecMode mode = ExecMode::OpenMP);

}  // namespace finsler
