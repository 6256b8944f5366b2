#include "finsler/gas.hpp"

#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace finsler {

namespace {

// exp(1 - 1/(1-t^2)) for |t| < 1, else 0. The cutoff keeps the reciprocal
// well away from its guard; below it the true value underflows anyway.
constexpr double kBumpCut = 1e-3;

double bump_value(double t) {
  const double w = 1.0 - t * t;
  if (w <= kBumpCut) return 0.0;
  return std::exp(1.0 - 1.0 / w);
}

Jet bump_jet(const Jet& t) {
  const ChartPoint& pt = t.base_point();
  Jet w = 1.0 - t * t;
  if (w.value() <= kBumpCut) return Jet::constant(pt, 0.0, t.order());
  return exp(1.0 - recip(w));
}

}  // namespace

double support_rapidity(const GasProfile& profile) {
  if (profile.type == GasProfileType::RapidityBump)
    return profile.center_rapidity + profile.width;
  return std::numeric_limits<double>::infinity();
}

double phi_value(const FinslerModel& m, const KineticGas& gas, const std::array<double, 4>& x,
                 const std::array<double, 4>& v) {
  double L;
  try {
    L = lagrangian_value(m, x, v);
  } catch (const FinslerError&) {
    return 0.0;
  }
  if (!(L > 0)) return 0.0;
  const double sqrtL = std::sqrt(L);
  const GasProfile& p = gas.profile;
  if (p.type == GasProfileType::RapidityBump) {
    double wv = 0.0;
    for (int i = 0; i < 4; ++i) wv += p.pairing_covector[static_cast<std::size_t>(i)] * v[i];
    const double u = wv / sqrtL;
    const double u0 = std::cosh(p.center_rapidity);
    const double du = std::cosh(p.center_rapidity + p.width) - u0;
    return p.amplitude * p.x_modulation.eval(x) * bump_value((u - u0) / du);
  }
  // constants of motion (Schwarzschild chart)
  const auto d = m.a.diag_values(x);
  const double e_c = d[0] * v[0] / sqrtL;
  const double l_c = -d[3] * v[3] / sqrtL;
  return p.amplitude * bump_value((e_c - p.e_center) / p.e_width) *
         bump_value((l_c - p.l_center) / p.l_width);
}

Jet phi_jet(const FinslerModel& m, const KineticGas& gas, const ChartPoint& pt,
            TruncationOrder ord) {
  Jet L;
  try {
    L = lagrangian_jet(m, pt, ord);
  } catch (const FinslerError&) {
    return Jet::constant(pt, 0.0, ord);
  }
  if (!(L.value() > eps_div(L.guard_scale()))) return Jet::constant(pt, 0.0, ord);
  const auto seeds = Jet::seed_chart(pt, ord);
  Jet inv_sqrtL = recip(sqrt(L));
  const GasProfile& p = gas.profile;
  if (p.type == GasProfileType::RapidityBump) {
    Jet wv = p.pairing_covector[0] * seeds[4];
    for (int i = 1; i < 4; ++i) wv += p.pairing_covector[static_cast<std::size_t>(i)] * seeds[static_cast<std::size_t>(4 + i)];
    Jet u = wv * inv_sqrtL;
    const double u0 = std::cosh(p.center_rapidity);
    const double du = std::cosh(p.center_rapidity + p.width) - u0;
    Jet t = (u - u0) / du;
    return (p.amplitude * p.x_modulation.eval(seeds)) * bump_jet(t);
  }
  if (m.a.kind != MetricKind::Schwarzschild)
    throw FinslerError(ErrorCode::InvalidParameter,
                       "constants-of-motion gas profile needs a Schwarzschild base");
  const auto d = m.a.diag_jets(seeds);
  Jet e_c = d[0] * seeds[4] * inv_sqrtL;
  Jet l_c = -(d[3] * seeds[7]) * inv_sqrtL;
  Jet be = bump_jet((e_c - p.e_center) / p.e_width);
  Jet bl = bump_jet((l_c - p.l_center) / p.l_width);
  return p.amplitude * (be * bl);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

using nlohmann::json;

std::string gas_to_json(const KineticGas& gas) {
  json p;
  p["type"] = gas.profile.type == GasProfileType::RapidityBump ? "rapidity_bump" : "constants_of_motion";
  p["center_rapidity"] = gas.profile.center_rapidity;
  p["width"] = gas.profile.width;
  p["amplitude"] = gas.profile.amplitude;
  p["pairing_covector"] = gas.profile.pairing_covector;
  p["e_center"] = gas.profile.e_center;
  p["e_width"] = gas.profile.e_width;
  p["l_center"] = gas.profile.l_center;
  p["l_width"] = gas.profile.l_width;
  // constant modulation is the default; only a scalar factor is serialized
  json j;
  j["mass"] = gas.mass;
  j["kappa_sq"] = gas.kappa_sq;
  j["profile"] = p;
  return j.dump(2);
}

KineticGas gas_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw FinslerError(ErrorCode::ConfigError, std::string("gas JSON parse: ") + e.what());
  }
  KineticGas g;
  try {
    g.mass = j.value("mass", 1.0);
    g.kappa_sq = j.value("kappa_sq", 1.0);
    if (g.mass <= 0 || g.kappa_sq <= 0)
      throw FinslerError(ErrorCode::InvalidParameter, "gas mass and kappa_sq must be positive");
    if (j.contains("profile")) {
      const auto& p = j.at("profile");
      const std::string type = p.value("type", std::string("rapidity_bump"));
      if (type == "rapidity_bump") g.profile.type = GasProfileType::RapidityBump;
      else if (type == "constants_of_motion") g.profile.type = GasProfileType::ConstantsOfMotion;
      else throw FinslerError(ErrorCode::ConfigError, "unknown gas profile type: " + type);
      g.profile.center_rapidity = p.value("center_rapidity", g.profile.center_rapidity);
      g.profile.width = p.value("width", g.profile.width);
      g.profile.amplitude = p.value("amplitude", g.profile.amplitude);
      if (p.contains("pairing_covector"))
        for (int i = 0; i < 4; ++i)
          g.profile.pairing_covector[static_cast<std::size_t>(i)] = p.at("pairing_covector").at(static_cast<std::size_t>(i)).get<double>();
      g.profile.e_center = p.value("e_center", g.profile.e_center);
      g.profile.e_width = p.value("e_width", g.profile.e_width);
      g.profile.l_center = p.value("l_center", g.profile.l_center);
      g.profile.l_width = p.value("l_width", g.profile.l_width);
      if (p.contains("x_modulation")) {
        // mirrors the model coefficient descriptor
        const auto& xm = p.at("x_modulation");
        if (xm.is_number()) {
          g.profile.x_modulation = CoefficientFn::constant(xm.get<double>());
        } else if (xm.contains("poly")) {
          Polynomial poly;
          for (const auto& t : xm.at("poly")) {
            Monomial mo;
            mo.coef = t.at(0).get<double>();
            for (int i = 0; i < 4; ++i) mo.powers[static_cast<std::size_t>(i)] = t.at(static_cast<std::size_t>(1 + i)).get<int>();
            poly.terms.push_back(mo);
          }
          g.profile.x_modulation = CoefficientFn::polynomial(poly);
        } else {
          throw FinslerError(ErrorCode::ConfigError, "bad x_modulation descriptor");
        }
      }
    }
  } catch (const FinslerError&) {
    throw;
  } catch (const std::exception& e) {
    throw FinslerError(ErrorCode::ConfigError, std::string("gas JSON: ") + e.what());
  }
  return g;
}

KineticGas gas_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FinslerError(ErrorCode::IOError, "cannot open gas file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return gas_from_json(os.str());
}

}  // namespace finsler
