#include "finsler/causal.hpp"

#include <cmath>

#include "finsler/rng.hpp"

namespace finsler {

namespace {

// g, det g and L from a (0,2)-order jet; returns false when the Lagrangian
// is not smooth at the direction.
bool metric_at(const FinslerModel& m, const ChartPoint& pt, Mat4& g, double& det, double& Lval,
               double& null_tol, double& det_tol) {
  Jet L;
  try {
    L = lagrangian_jet(m, pt, TruncationOrder{0, 2});
  } catch (const FinslerError&) {
    return false;
  }
  Lval = L.value();
  null_tol = eps_div(L.guard_scale());
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      MultiIndex idx;
      idx.v[i] += 1;
      idx.v[j] += 1;
      g[i][j] = 0.5 * L.partial(idx);
      g[j][i] = g[i][j];
    }
  det = det4(g);
  double rownorm_prod = 1.0;
  for (int i = 0; i < 4; ++i) {
    double rn = 0.0;
    for (int j = 0; j < 4; ++j) rn += g[i][j] * g[i][j];
    rownorm_prod *= std::sqrt(rn);
  }
  det_tol = 1e-10 * rownorm_prod;
  return true;
}

}  // namespace

AdmissibilityReport admissibility_report(const FinslerModel& m, const ChartPoint& pt) {
  AdmissibilityReport rep;
  Mat4 g{};
  double det = 0, Lval = 0, null_tol = 0, det_tol = 0;
  if (!m.a.in_domain(pt.x) || !metric_at(m, pt, g, det, Lval, null_tol, det_tol)) {
    // L itself not smooth here; report the value-level L if it exists.
    try {
      rep.L_value = lagrangian_value(m, pt.x, pt.v);
    } catch (const FinslerError&) {
      rep.L_value = std::nan("");
    }
    rep.region = Region::Inadmissible;
    return rep;
  }
  rep.det_g = det;
  rep.L_value = Lval;
  const Vec4 ev = sym4_eigenvalues(g);  // ascending
  for (int i = 0; i < 4; ++i) {
    const double e = ev[static_cast<std::size_t>(3 - i)];
    rep.signature[static_cast<std::size_t>(i)] = (e > 0) ? 1 : (e < 0 ? -1 : 0);
  }
  rep.is_admissible = std::abs(det) > det_tol;
  if (!rep.is_admissible) {
    rep.region = Region::Inadmissible;
  } else if (std::abs(Lval) <= null_tol) {
    rep.region = Region::NullAdjacent;
  } else if (Lval > 0 && rep.lorentzian_signature()) {
    rep.region = Region::Timelike;
  } else {
    rep.region = Region::SpacelikeSigned;
  }
  return rep;
}

namespace {

bool in_timelike_region(const FinslerModel& m, const std::array<double, 4>& x,
                        const std::array<double, 4>& v) {
  ChartPoint pt{x, v};
  const auto rep = admissibility_report(m, pt);
  return rep.region == Region::Timelike;
}

}  // namespace

std::array<double, 4> normalize_observer(const FinslerModel& m, const std::array<double, 4>& x,
                                         const std::array<double, 4>& v) {
  double Lval;
  try {
    Lval = lagrangian_value(m, x, v);
  } catch (const FinslerError& e) {
    throw FinslerError(ErrorCode::NotTimelike, std::string("L not evaluable: ") + e.what());
  }
  if (!(Lval > 0)) throw FinslerError(ErrorCode::NotTimelike, "L <= 0, cannot normalize");
  double alpha = 1.0 / std::sqrt(Lval);
  std::array<double, 4> w;
  for (int it = 0; it < 8; ++it) {
    for (int i = 0; i < 4; ++i) w[static_cast<std::size_t>(i)] = alpha * v[i];
    const double Lw = lagrangian_value(m, x, w);
    const double res = Lw - 1.0;
    if (std::abs(res) < 1e-15) break;
    // dL/dα = 2 L(αv)/α by homogeneity
    alpha -= res * alpha / (2.0 * Lw);
  }
  for (int i = 0; i < 4; ++i) w[static_cast<std::size_t>(i)] = alpha * v[i];
  return w;
}

bool timelike_membership(const FinslerModel& m, const std::array<double, 4>& x,
                         const std::array<double, 4>& v, const std::array<double, 4>& seed,
                         int n_path) {
  if (!in_timelike_region(m, x, seed))
    throw FinslerError(ErrorCode::SeedNotTimelike, "seed direction is not timelike");
  double Lv;
  try {
    Lv = lagrangian_value(m, x, v);
  } catch (const FinslerError&) {
    return false;
  }
  if (!(Lv > 0)) return false;
  const auto shat = normalize_observer(m, x, seed);
  const auto vhat = normalize_observer(m, x, v);
  for (int k = 0; k <= n_path; ++k) {
    const double t = static_cast<double>(k) / n_path;
    std::array<double, 4> w;
    for (int i = 0; i < 4; ++i)
      w[static_cast<std::size_t>(i)] = (1.0 - t) * shat[static_cast<std::size_t>(i)] + t * vhat[static_cast<std::size_t>(i)];
    if (!in_timelike_region(m, x, w)) return false;
  }
  return true;
}

ConeProbe convexity_probe(const FinslerModel& m, const std::array<double, 4>& x, int n_pairs,
                          std::uint64_t seed) {
  ConeProbe probe;
  probe.x = x;
  probe.seed_direction = m.timelike_seed;
  Rng rng(seed);

  auto sample_timelike = [&]() -> std::array<double, 4> {
    for (int tries = 0; tries < 400; ++tries) {
      const double chi = rng.uniform(0.0, 1.2);
      const double ct = rng.uniform(-1.0, 1.0);
      const double phi = rng.uniform(0.0, 2.0 * M_PI);
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      // crude rapidity shell around the seed in coordinate axes
      std::array<double, 4> dir;
      const double sh = std::sinh(chi) * 0.5;
      dir[0] = std::cosh(chi) * m.timelike_seed[0];
      dir[1] = m.timelike_seed[1] + sh * st * std::cos(phi);
      dir[2] = m.timelike_seed[2] + sh * st * std::sin(phi);
      dir[3] = m.timelike_seed[3] + sh * ct;
      if (in_timelike_region(m, x, dir)) return dir;
    }
    throw FinslerError(ErrorCode::SeedNotTimelike, "could not sample the timelike cone");
  };

  for (int p = 0; p < n_pairs; ++p) {
    const auto u = sample_timelike();
    const auto v = sample_timelike();
    ++probe.samples;
    for (int a = 1; a <= 9; ++a) {
      const double alpha = 0.1 * a;
      std::array<double, 4> w;
      for (int i = 0; i < 4; ++i)
        w[static_cast<std::size_t>(i)] = (1.0 - alpha) * u[static_cast<std::size_t>(i)] + alpha * v[static_cast<std::size_t>(i)];
      if (!in_timelike_region(m, x, w)) probe.failures.push_back({u, v, alpha});
    }
  }
  return probe;
}

}  // namespace finsler
