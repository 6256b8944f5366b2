#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "finsler/errors.hpp"

namespace finsler {

/// Truncation caps for jet arithmetic: total derivative degree in the base
/// coordinates x and in the fiber coordinates ẋ are capped independently.
struct TruncationOrder {
  int max_x = 3;
  int max_v = 6;
};

inline bool operator==(const TruncationOrder& a, const TruncationOrder& b) {
  return a.max_x == b.max_x && a.max_v == b.max_v;
}

/// A point (x, ẋ) of the slit tangent bundle in a single chart. The fiber
/// component is a homogeneous-coordinate representative (any positive
/// rescaling names the same direction).
struct ChartPoint {
  std::array<double, 4> x{};
  std::array<double, 4> v{};
};

inline bool operator==(const ChartPoint& a, const ChartPoint& b) { return a.x == b.x && a.v == b.v; }

/// Mixed-partial index: degrees in x^0..x^3 and ẋ^0..ẋ^3.
struct MultiIndex {
  std::array<int, 4> x{};
  std::array<int, 4> v{};

  int x_total() const { return x[0] + x[1] + x[2] + x[3]; }
  int v_total() const { return v[0] + v[1] + v[2] + v[3]; }
};

namespace detail {

// Shared enumeration of 4-variable multi-indices in graded order. The table
// for cap K is a prefix of the table for cap K+1, so an index identifies the
// same multi-index regardless of a jet's own cap.
struct SideTables {
  static constexpr int kMaxCap = 9;

  std::vector<std::array<std::uint8_t, 4>> multis;  // graded order, degrees 0..kMaxCap
  std::vector<int> degree;                          // total degree per index
  std::vector<double> factorial;                    // ∏ α_i! per index
  std::array<int, kMaxCap + 2> count_by_cap{};      // #multis with degree ≤ K
  std::array<std::array<int, 4>, 1> dummy{};        // (unused, keeps layout simple)
  std::vector<std::array<int, 4>> up;               // up[j][i] = index of multi_j + e_i (or -1)

  // Product pairs grouped by (deg_a, deg_b): for each group, triples (ja, jb, js).
  struct PairGroup {
    int deg_a, deg_b;
    std::vector<std::array<int, 3>> entries;
  };
  std::vector<PairGroup> pair_groups;
  // splits[s] = ordered pairs (ja, jb) with multi_ja + multi_jb = multi_s.
  std::vector<std::vector<std::array<int, 2>>> splits;

  int index_of(const std::array<int, 4>& m) const;  // -1 if beyond kMaxCap
  static const SideTables& instance();
};

}  // namespace detail

/// Truncated multivariate Taylor expansion of a scalar in the 8 chart
/// variables at a base point. Coefficients are Taylor coefficients
/// (∂^α f / α!). Arithmetic is exact to the stored truncation order.
/// Immutable after construction; all operations are pure.
class Jet {
 public:
  Jet() = default;

  static Jet constant(const ChartPoint& pt, double value, TruncationOrder ord);
  /// One jet per chart variable: value = the coordinate, unit first-order
  /// coefficient in its own slot, all other coefficients zero.
  static std::array<Jet, 8> seed_chart(const ChartPoint& pt, TruncationOrder ord);

  const ChartPoint& base_point() const { return pt_; }
  TruncationOrder order() const { return ord_; }
  double value() const { return c_.empty() ? 0.0 : c_[0]; }

  /// Raw Taylor coefficient at idx; throws OrderExceeded outside truncation.
  double coefficient(const MultiIndex& idx) const;
  /// Mixed partial ∂^idx f at the base point (coefficient × factorials).
  double partial(const MultiIndex& idx) const;

  /// Derivative extraction: the jet of ∂f/∂x^i, known to one less x-order.
  Jet dx(int i) const;
  /// Derivative extraction in the fiber variable ẋ^i.
  Jet dv(int i) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  Jet& operator*=(double s);

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(const Jet& a, double s);
  friend Jet operator-(const Jet& a, double s);
  friend Jet operator*(const Jet& a, double s);
  friend Jet operator/(const Jet& a, double s);
  friend Jet operator+(double s, const Jet& a);
  friend Jet operator-(double s, const Jet& a);
  friend Jet operator*(double s, const Jet& a);
  friend Jet operator-(const Jet& a);

  friend Jet recip(const Jet& a);
  friend Jet sqrt(const Jet& a);
  friend Jet pow(const Jet& a, double q);
  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet sin(const Jet& a);
  friend Jet cos(const Jet& a);
  /// sign(value)·a. Valid where the function is smooth and nonzero; throws
  /// SqrtDomain when |value| is below the division guard.
  friend Jet signed_abs(const Jet& a);

  /// Division / sqrt guard scale for this jet (see eps_div below).
  double guard_scale() const;

  // Internal access for dense linear-algebra kernels (graded matrix inverse).
  const std::vector<double>& raw() const { return c_; }
  int content_x() const { return content_x_; }
  int content_v() const { return content_v_; }
  static Jet from_raw(const ChartPoint& pt, TruncationOrder ord, int content_x, int content_v,
                      std::vector<double> coeffs);

 private:
  Jet(const ChartPoint& pt, TruncationOrder ord);
  int nx_() const;  // stored x-multi count
  int nv_() const;  // stored v-multi count
  Jet compose_(const std::vector<double>& series) const;  // Σ series[k]·(a−a0)^k

  static void check_compatible_(const Jet& a, const Jet& b);

  ChartPoint pt_{};
  TruncationOrder ord_{0, 0};
  // Content caps: highest total degree actually nonzero per side. Products
  // skip pair groups beyond these, which makes x-only factors cheap.
  int content_x_ = 0;
  int content_v_ = 0;
  std::vector<double> c_;  // dense, c_[ix * nv + iv]
};

/// Division guard: |denominator value| must exceed eps_div(scale) where scale
/// reflects the jet's own magnitude. Signals points outside 𝒜₀.
double eps_div(double scale);

/// Euler operator ẋ^i ∂̇_i applied at the value level: returns Σ v_i·(∂̇_i Q).
/// Needs one remaining v-order on Q.
double euler_value(const Jet& q);

}  // namespace finsler
