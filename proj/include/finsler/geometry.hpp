#pragma once

#include <array>

#include "finsler/jet.hpp"
#include "finsler/linalg.hpp"
#include "finsler/model.hpp"

namespace finsler {

using Jet4 = std::array<Jet, 4>;
using Jet44 = std::array<Jet4, 4>;
using Jet444 = std::array<Jet44, 4>;

/// Construction is staged so callers needing only the metric do not pay for
/// curvature-depth jet products. Curvature and Landsberg both build on Spray;
/// Landsberg alone skips the curvature tensor (it needs one x-order less).
enum class Stage { Fundamental, Spray, Curvature, Landsberg, Full };

/// All geometric objects of the Finsler tower at one chart point, each
/// jet-valued to its remaining truncation order. Index conventions:
///   g[i][j] = g_ij          C[i][j][k] = C_ijk       omega[i] = F_{.i}
///   G_spray[i] = G^i        N[i][j] = G^i_j          Gamma[i][j][k] = Γ^i_{jk}
///   R[i][j][k] = R^i_{jk}   P[i][j][k] = P^i_{jk}
/// Immutable once built; safe to share across threads.
struct GeometryBundle {
  ChartPoint pt;
  TruncationOrder order;
  Stage stage = Stage::Fundamental;
  bool has_spray = false, has_curvature = false, has_landsberg = false;
  double epsilon = 1.0;  // sign(L) at the point
  double tol_det = 0.0;

  std::array<Jet, 8> seeds;
  Jet L, F, det_g, R0;
  Jet44 g, g_inv;
  Mat4 g_value{}, g_inv_value{};
  Jet444 C;
  Jet4 C_trace, omega, ell, G_spray, P_trace;
  Jet44 N;
  Jet444 Gamma, R, P;
};

/// Builds the tower from the model Lagrangian at pt up to the requested
/// stage. Throws NullDirection / DegenerateHessian for points outside 𝒜₀/𝒜.
GeometryBundle build_geometry(const FinslerModel& model, const ChartPoint& pt, TruncationOrder ord,
                              Stage upto = Stage::Full);
/// Same, from a precomputed Lagrangian jet.
GeometryBundle build_geometry_from_L(Jet L, Stage upto = Stage::Full);

// Stage steps (build_geometry composes these; exposed for targeted tests).
void fundamental_tensors(GeometryBundle& gb);
void spray_and_connection(GeometryBundle& gb);
void curvature_and_ricci(GeometryBundle& gb);
void chern_rund_and_landsberg(GeometryBundle& gb);

/// The horizontal basis derivative δ_i f = ∂_i f - G^m_i ∂̇_m f.
Jet delta_op(const GeometryBundle& gb, const Jet& f, int i);

// Chern-Rund horizontal covariant derivatives, d-tensor index conventions.
Jet cov_scalar(const GeometryBundle& gb, const Jet& f, int k);                       // f_{|k}
Jet cov_lower(const GeometryBundle& gb, const Jet4& T, int i, int k);                // (T_i)_{|k}
Jet cov_upper(const GeometryBundle& gb, const Jet4& T, int i, int k);                // (T^i)_{|k}
Jet cov_mixed(const GeometryBundle& gb, const Jet44& T, int j, int i, int k);        // (T^j_i)_{|k}
Jet cov_lower2(const GeometryBundle& gb, const Jet44& T, int i, int j, int k);       // (T_ij)_{|k}

/// Dynamical covariant derivative of a scalar: ∇f = ẋ^k δ_k f.
Jet dyn_cov_scalar(const GeometryBundle& gb, const Jet& f);

/// Inverse of a symmetric jet-valued 4x4 matrix about its value-level
/// inverse, exact to the operand truncation order (graded Neumann recurrence).
Jet44 jet_mat_inverse(const Jet44& m, const Mat4& value_inverse);

}  // namespace finsler
