#pragma once

#include <array>
#include <string>

#include "finsler/descriptor.hpp"
#include "finsler/model.hpp"

namespace finsler {

enum class GasProfileType { RapidityBump, ConstantsOfMotion };

/// Built-in 1PDF families. Both are positively 0-homogeneous in ẋ with
/// fiberwise compact support strictly inside the timelike cone.
///
/// RapidityBump: smooth bump in u = (w·ẋ)/√L (u = cosh χ on the Minkowski
/// shell), amplitude optionally x-modulated. With constant amplitude and a
/// constant pairing covector on Minkowski this family is Liouville (∇φ = 0).
///
/// ConstantsOfMotion (Schwarzschild base): bump in the conserved quantities
/// e = (1-2M/r) ẋ^0/√L and ℓ = r² sin²θ ẋ^3/√L, hence ∇φ = 0 by construction.
struct GasProfile {
  GasProfileType type = GasProfileType::RapidityBump;
  double center_rapidity = 0.0;
  double width = 1.2;
  double amplitude = 1.0;
  std::array<double, 4> pairing_covector{1, 0, 0, 0};
  CoefficientFn x_modulation = CoefficientFn::constant(1.0);
  double e_center = 1.0, e_width = 0.3;
  double l_center = 0.0, l_width = 2.0;
};

struct KineticGas {
  double mass = 1.0;
  double kappa_sq = 1.0;
  GasProfile profile;
};

/// Rapidity at which the profile's support ends (quadrature caps can be
/// fitted to it); infinity when no closed-form bound exists.
double support_rapidity(const GasProfile& profile);

/// φ as a jet at pt (zero jet outside the support or outside the cone).
Jet phi_jet(const FinslerModel& m, const KineticGas& gas, const ChartPoint& pt,
            TruncationOrder ord);
double phi_value(const FinslerModel& m, const KineticGas& gas, const std::array<double, 4>& x,
                 const std::array<double, 4>& v);

KineticGas gas_from_json(const std::string& text);
KineticGas gas_from_file(const std::string& path);
std::string gas_to_json(const KineticGas& gas);

}  // namespace finsler
