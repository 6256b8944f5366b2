#pragma once

#include <array>
#include <vector>

#include "finsler/linalg.hpp"
#include "finsler/model.hpp"

namespace finsler {

enum class Region { Timelike, SpacelikeSigned, NullAdjacent, Inadmissible };

inline const char* region_name(Region r) {
  switch (r) {
    case Region::Timelike: return "timelike";
    case Region::SpacelikeSigned: return "spacelike-signed";
    case Region::NullAdjacent: return "null-adjacent";
    case Region::Inadmissible: return "inadmissible";
  }
  return "?";
}

/// Numerical probe of the spacetime conditions at one direction.
struct AdmissibilityReport {
  double det_g = 0.0;
  std::array<int, 4> signature{};  // signs of g-eigenvalues, descending eigenvalue order
  bool is_admissible = false;
  double L_value = 0.0;
  Region region = Region::Inadmissible;

  bool lorentzian_signature() const {
    return signature == std::array<int, 4>{1, -1, -1, -1};
  }
};

AdmissibilityReport admissibility_report(const FinslerModel& m, const ChartPoint& pt);

/// Connectivity proxy for membership in the timelike cone component fixed by
/// the seed: the fiber segment between the L=1 representatives of seed and v
/// must stay in {L > 0, Lorentzian signature}. Scaling-invariant.
bool timelike_membership(const FinslerModel& m, const std::array<double, 4>& x,
                         const std::array<double, 4>& v, const std::array<double, 4>& seed,
                         int n_path = 64);

/// α v with L(x, αv) = 1, Newton-refined. Throws NotTimelike.
std::array<double, 4> normalize_observer(const FinslerModel& m, const std::array<double, 4>& x,
                                         const std::array<double, 4>& v);

struct ConeProbe {
  std::array<double, 4> x{};
  std::array<double, 4> seed_direction{};
  int samples = 0;
  struct Violation {
    std::array<double, 4> u, v;
    double alpha;
  };
  std::vector<Violation> failures;
};

/// Samples pairs in 𝒯_x and checks convex combinations stay in the cone.
ConeProbe convexity_probe(const FinslerModel& m, const std::array<double, 4>& x, int n_pairs,
                          std::uint64_t seed = 4242);

}  // namespace finsler
