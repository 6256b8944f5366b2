#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "finsler/descriptor.hpp"
#include "finsler/jet.hpp"

namespace finsler {

enum class MetricKind { Minkowski, Schwarzschild, UserDiagonal };

/// Diagonal Lorentzian base metric a_ij(x), signature (+,-,-,-) on its domain.
struct BaseMetric {
  MetricKind kind = MetricKind::Minkowski;
  double mass = 1.0;                     // Schwarzschild
  std::array<CoefficientFn, 4> diag{};   // UserDiagonal

  std::array<double, 4> diag_values(const std::array<double, 4>& x) const;
  std::array<Jet, 4> diag_jets(const std::array<Jet, 8>& seeds) const;
  /// Chart-domain guard (e.g. exterior region for Schwarzschild coordinates).
  bool in_domain(const std::array<double, 4>& x) const;
};

enum class ModelKind { Lorentzian, Randers, Bogoslovsky, MthRoot, SignatureReversed };

/// One monomial of the m-th root scalar G(x; ẋ,…,ẋ) in fiber powers.
struct MthRootTerm {
  CoefficientFn coef;
  std::array<int, 4> powers{};  // fiber powers, sum = m
};

struct SignatureReversedData {
  OneForm omega;                               // timelike 1-form
  std::array<CoefficientFn, 4> fhat_metric{};  // positive definite diagonal
  OneForm fhat_one_form;                       // Randers part of F̂ (|b̂| < 1)
};

struct SamplingBox {
  std::array<double, 4> box_min{-2, -2, -2, -2};
  std::array<double, 4> box_max{2, 2, 2, 2};
  double velocity_spread = 0.5;
};

/// Catalog entry: a parametrized Finsler Lagrangian L(x, ẋ) together with its
/// admissible-domain bookkeeping. Immutable and shareable after build.
struct FinslerModel {
  std::string name = "model";
  ModelKind kind = ModelKind::Lorentzian;
  BaseMetric a;
  OneForm b;        // Randers / Bogoslovsky one-form
  double q = 0.0;   // Bogoslovsky exponent (q = 1 rejected)
  int m = 2;        // m-th root degree
  std::vector<MthRootTerm> mth_root_terms;
  SignatureReversedData sigrev;
  std::array<double, 4> timelike_seed{1, 0, 0, 0};
  SamplingBox sampling;

  bool is_lorentzian() const { return kind == ModelKind::Lorentzian; }
};

/// Validates parameters (Randers norm condition sampled over the chart box,
/// Bogoslovsky q != 1, m >= 2, ...). Throws InvalidParameter.
FinslerModel build_model(const std::string& json_text);
FinslerModel build_model_from_file(const std::string& path);
/// Emits the documented JSON schema; parse(emit(m)) == m, byte-exact on re-emit.
std::string model_to_json(const FinslerModel& m);
/// Runs the same parameter validation as build_model on an in-memory model.
void validate_model(const FinslerModel& m);

/// L as a jet at pt. Throws OutsideDomain on null/non-smooth directions.
Jet lagrangian_jet(const FinslerModel& m, const ChartPoint& pt, TruncationOrder ord);
/// Fast value-level L (used by integrators and the finite-difference oracle).
double lagrangian_value(const FinslerModel& m, const std::array<double, 4>& x,
                        const std::array<double, 4>& v);

// Built-in test instances (one per catalog kind, plus auxiliary metrics).
FinslerModel make_minkowski();
FinslerModel make_schwarzschild(double mass);
FinslerModel make_randers(double beta);
FinslerModel make_randers_schwarzschild(double beta, double mass);
FinslerModel make_bogoslovsky(double q);
FinslerModel make_bogoslovsky_schwarzschild(double q, double mass);
FinslerModel make_mth_root();
FinslerModel make_signature_reversed();
/// Spatially flat expanding metric diag(1, -t^2, -t^2, -t^2) on t in [1, 2]:
/// a polynomial diagonal metric with nonzero curvature scalar.
FinslerModel make_expanding_diagonal();
/// The five catalog kinds with default parameters.
std::vector<FinslerModel> catalog_models();

}  // namespace finsler
