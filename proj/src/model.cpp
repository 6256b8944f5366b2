#include "finsler/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "finsler/rng.hpp"
#include "json.hpp"

namespace finsler {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Base metric
// ---------------------------------------------------------------------------

std::array<double, 4> BaseMetric::diag_values(const std::array<double, 4>& x) const {
  switch (kind) {
    case MetricKind::Minkowski:
      return {1.0, -1.0, -1.0, -1.0};
    case MetricKind::Schwarzschild: {
      const double r = x[1], th = x[2];
      const double f = 1.0 - 2.0 * mass / r;
      const double s = std::sin(th);
      return {f, -1.0 / f, -r * r, -r * r * s * s};
    }
    case MetricKind::UserDiagonal: {
      std::array<double, 4> d;
      for (int i = 0; i < 4; ++i) d[static_cast<std::size_t>(i)] = diag[static_cast<std::size_t>(i)].eval(x);
      return d;
    }
  }
  return {};
}

std::array<Jet, 4> BaseMetric::diag_jets(const std::array<Jet, 8>& seeds) const {
  const ChartPoint& pt = seeds[0].base_point();
  const TruncationOrder ord = seeds[0].order();
  switch (kind) {
    case MetricKind::Minkowski: {
      return {Jet::constant(pt, 1.0, ord), Jet::constant(pt, -1.0, ord),
              Jet::constant(pt, -1.0, ord), Jet::constant(pt, -1.0, ord)};
    }
    case MetricKind::Schwarzschild: {
      const Jet& r = seeds[1];
      Jet f = 1.0 - (2.0 * mass) * recip(r);
      Jet sth = sin(seeds[2]);
      Jet r2 = r * r;
      return {f, -recip(f), -r2, -(r2 * (sth * sth))};
    }
    case MetricKind::UserDiagonal: {
      return {diag[0].eval(seeds), diag[1].eval(seeds), diag[2].eval(seeds), diag[3].eval(seeds)};
    }
  }
  return {Jet{}, Jet{}, Jet{}, Jet{}};
}

bool BaseMetric::in_domain(const std::array<double, 4>& x) const {
  if (kind == MetricKind::Schwarzschild) {
    return x[1] > 2.0 * mass && x[2] > 0.1 && x[2] < M_PI - 0.1;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Lagrangian evaluation
// ---------------------------------------------------------------------------

namespace {

double quadratic_value(const BaseMetric& a, const std::array<double, 4>& x,
                       const std::array<double, 4>& v) {
  const auto d = a.diag_values(x);
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += d[static_cast<std::size_t>(i)] * v[i] * v[i];
  return s;
}

Jet quadratic_jet(const BaseMetric& a, const std::array<Jet, 8>& seeds) {
  const auto d = a.diag_jets(seeds);
  Jet s = d[0] * (seeds[4] * seeds[4]);
  for (int i = 1; i < 4; ++i)
    s += d[static_cast<std::size_t>(i)] * (seeds[static_cast<std::size_t>(4 + i)] * seeds[static_cast<std::size_t>(4 + i)]);
  return s;
}

double mth_root_scalar_value(const FinslerModel& m, const std::array<double, 4>& x,
                             const std::array<double, 4>& v) {
  double s = 0.0;
  for (const auto& t : m.mth_root_terms) {
    double term = t.coef.eval(x);
    for (int i = 0; i < 4; ++i)
      for (int p = 0; p < t.powers[i]; ++p) term *= v[i];
    s += term;
  }
  return s;
}

Jet mth_root_scalar_jet(const FinslerModel& m, const std::array<Jet, 8>& seeds) {
  const ChartPoint& pt = seeds[0].base_point();
  Jet s = Jet::constant(pt, 0.0, seeds[0].order());
  for (const auto& t : m.mth_root_terms) {
    Jet term = t.coef.eval(seeds);
    for (int i = 0; i < 4; ++i)
      for (int p = 0; p < t.powers[i]; ++p) term = term * seeds[static_cast<std::size_t>(4 + i)];
    s += term;
  }
  return s;
}

double sign_of(double x) { return x < 0 ? -1.0 : 1.0; }

}  // namespace

double lagrangian_value(const FinslerModel& m, const std::array<double, 4>& x,
                        const std::array<double, 4>& v) {
  if (!m.a.in_domain(x))
    throw FinslerError(ErrorCode::OutsideDomain, "base point outside chart domain");
  switch (m.kind) {
    case ModelKind::Lorentzian:
      return quadratic_value(m.a, x, v);
    case ModelKind::Randers: {
      const double A = quadratic_value(m.a, x, v);
      if (A == 0.0) throw FinslerError(ErrorCode::OutsideDomain, "a(v,v) = 0 for Randers");
      const double B = m.b.eval(x, v);
      const double F = std::sqrt(std::abs(A)) + B;
      return sign_of(A) * F * F;
    }
    case ModelKind::Bogoslovsky: {
      const double A = quadratic_value(m.a, x, v);
      const double B = m.b.eval(x, v);
      if (A == 0.0 || B <= 0.0)
        throw FinslerError(ErrorCode::OutsideDomain, "Bogoslovsky outside smooth domain");
      return sign_of(A) * std::pow(std::abs(A), 1.0 - m.q) * std::pow(B, 2.0 * m.q);
    }
    case ModelKind::MthRoot: {
      const double S = mth_root_scalar_value(m, x, v);
      if (S == 0.0) throw FinslerError(ErrorCode::OutsideDomain, "G(v,..,v) = 0 for m-th root");
      return sign_of(S) * std::pow(std::abs(S), 2.0 / m.m);
    }
    case ModelKind::SignatureReversed: {
      double E = 0.0;
      for (int i = 0; i < 4; ++i)
        E += m.sigrev.fhat_metric[static_cast<std::size_t>(i)].eval(x) * v[i] * v[i];
      if (E <= 0.0) throw FinslerError(ErrorCode::OutsideDomain, "degenerate F-hat norm");
      const double Fhat = std::sqrt(E) + m.sigrev.fhat_one_form.eval(x, v);
      const double W = m.sigrev.omega.eval(x, v);
      return W * W - Fhat * Fhat;
    }
  }
  throw FinslerError(ErrorCode::InvalidParameter, "unknown model kind");
}

Jet lagrangian_jet(const FinslerModel& m, const ChartPoint& pt, TruncationOrder ord) {
  if (!m.a.in_domain(pt.x))
    throw FinslerError(ErrorCode::OutsideDomain, "base point outside chart domain");
  const auto seeds = Jet::seed_chart(pt, ord);
  try {
    switch (m.kind) {
      case ModelKind::Lorentzian:
        return quadratic_jet(m.a, seeds);
      case ModelKind::Randers: {
        Jet A = quadratic_jet(m.a, seeds);
        Jet F = sqrt(signed_abs(A)) + m.b.eval(seeds);
        return sign_of(A.value()) * (F * F);
      }
      case ModelKind::Bogoslovsky: {
        Jet A = quadratic_jet(m.a, seeds);
        Jet B = m.b.eval(seeds);
        Jet L = pow(signed_abs(A), 1.0 - m.q) * pow(B, 2.0 * m.q);
        return sign_of(A.value()) * L;
      }
      case ModelKind::MthRoot: {
        Jet S = mth_root_scalar_jet(m, seeds);
        return sign_of(S.value()) * pow(signed_abs(S), 2.0 / m.m);
      }
      case ModelKind::SignatureReversed: {
        Jet E = m.sigrev.fhat_metric[0].eval(seeds) * (seeds[4] * seeds[4]);
        for (int i = 1; i < 4; ++i)
          E += m.sigrev.fhat_metric[static_cast<std::size_t>(i)].eval(seeds) *
               (seeds[static_cast<std::size_t>(4 + i)] * seeds[static_cast<std::size_t>(4 + i)]);
        Jet Fhat = sqrt(E) + m.sigrev.fhat_one_form.eval(seeds);
        Jet W = m.sigrev.omega.eval(seeds);
        return W * W - Fhat * Fhat;
      }
    }
  } catch (const FinslerError& e) {
    if (e.code() == ErrorCode::SqrtDomain || e.code() == ErrorCode::DivisionNearZero)
      throw FinslerError(ErrorCode::OutsideDomain, std::string("non-smooth direction: ") + e.what());
    throw;
  }
  throw FinslerError(ErrorCode::InvalidParameter, "unknown model kind");
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

void validate_model(const FinslerModel& m) {
  if (m.a.kind == MetricKind::Schwarzschild && m.a.mass <= 0.0)
    throw FinslerError(ErrorCode::InvalidParameter, "Schwarzschild mass must be positive");

  Rng rng(0xF1A5u);
  auto sample_x = [&]() {
    std::array<double, 4> x;
    for (int i = 0; i < 4; ++i)
      x[static_cast<std::size_t>(i)] =
          rng.uniform(m.sampling.box_min[static_cast<std::size_t>(i)], m.sampling.box_max[static_cast<std::size_t>(i)]);
    return x;
  };

  if (m.kind == ModelKind::Bogoslovsky && std::abs(m.q - 1.0) < 1e-12)
    throw FinslerError(ErrorCode::InvalidParameter, "Bogoslovsky with q = 1 is degenerate");
  if (m.kind == ModelKind::Randers) {
    // Norm condition sampled over the chart box; b = 0 (the Lorentzian
    // degeneration) is admitted.
    for (int s = 0; s < 100; ++s) {
      const auto x = sample_x();
      if (!m.a.in_domain(x)) continue;
      const auto d = m.a.diag_values(x);
      double norm2 = 0.0;
      for (int i = 0; i < 4; ++i) {
        const double bi = m.b.components[static_cast<std::size_t>(i)].eval(x);
        norm2 += bi * bi / d[static_cast<std::size_t>(i)];
      }
      if (!(norm2 >= 0.0 && norm2 < 1.0)) {
        std::ostringstream os;
        os << "Randers norm condition a^{ij} b_i b_j in (0,1) fails: " << norm2;
        throw FinslerError(ErrorCode::InvalidParameter, os.str());
      }
    }
  }
  if (m.kind == ModelKind::MthRoot) {
    if (m.m < 2) throw FinslerError(ErrorCode::InvalidParameter, "m-th root needs m >= 2");
    if (m.mth_root_terms.empty())
      throw FinslerError(ErrorCode::InvalidParameter, "m-th root needs at least one term");
    for (const auto& t : m.mth_root_terms) {
      if (t.powers[0] + t.powers[1] + t.powers[2] + t.powers[3] != m.m)
        throw FinslerError(ErrorCode::InvalidParameter, "m-th root term degree != m");
    }
  }
  if (m.kind == ModelKind::SignatureReversed) {
    for (int s = 0; s < 100; ++s) {
      const auto x = sample_x();
      double norm2 = 0.0;
      bool posdef = true;
      for (int i = 0; i < 4; ++i) {
        const double ei = m.sigrev.fhat_metric[static_cast<std::size_t>(i)].eval(x);
        if (ei <= 0.0) posdef = false;
        const double bi = m.sigrev.fhat_one_form.components[static_cast<std::size_t>(i)].eval(x);
        norm2 += (ei > 0) ? bi * bi / ei : 0.0;
      }
      if (!posdef)
        throw FinslerError(ErrorCode::InvalidParameter, "F-hat metric must be positive definite");
      if (norm2 >= 1.0)
        throw FinslerError(ErrorCode::InvalidParameter, "F-hat one-form norm must be < 1");
    }
  }
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

namespace {

json poly_to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& t : p.terms)
    terms.push_back(json::array({t.coef, t.powers[0], t.powers[1], t.powers[2], t.powers[3]}));
  return terms;
}

Polynomial poly_from_json(const json& j) {
  Polynomial p;
  for (const auto& t : j) {
    Monomial mo;
    mo.coef = t.at(0).get<double>();
    for (int i = 0; i < 4; ++i) mo.powers[static_cast<std::size_t>(i)] = t.at(static_cast<std::size_t>(1 + i)).get<int>();
    p.terms.push_back(mo);
  }
  return p;
}

json coeff_to_json(const CoefficientFn& f) {
  if (!f.is_rational()) {
    if (f.num().terms.size() == 1 && f.num().terms[0].powers == std::array<int, 4>{0, 0, 0, 0})
      return f.num().terms[0].coef;
    return json{{"poly", poly_to_json(f.num())}};
  }
  return json{{"rational", json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}}}};
}

CoefficientFn coeff_from_json(const json& j) {
  if (j.is_number()) return CoefficientFn::constant(j.get<double>());
  if (j.contains("poly")) return CoefficientFn::polynomial(poly_from_json(j.at("poly")));
  if (j.contains("rational"))
    return CoefficientFn::rational(poly_from_json(j.at("rational").at("num")),
                                   poly_from_json(j.at("rational").at("den")));
  throw FinslerError(ErrorCode::ConfigError, "bad coefficient descriptor");
}

json oneform_to_json(const OneForm& b) {
  json c = json::array();
  for (int i = 0; i < 4; ++i) c.push_back(coeff_to_json(b.components[static_cast<std::size_t>(i)]));
  return json{{"components", c}};
}

OneForm oneform_from_json(const json& j) {
  OneForm b;
  const auto& c = j.at("components");
  for (int i = 0; i < 4; ++i) b.components[static_cast<std::size_t>(i)] = coeff_from_json(c.at(static_cast<std::size_t>(i)));
  return b;
}

const char* kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Lorentzian: return "lorentzian";
    case ModelKind::Randers: return "randers";
    case ModelKind::Bogoslovsky: return "bogoslovsky";
    case ModelKind::MthRoot: return "mth_root";
    case ModelKind::SignatureReversed: return "signature_reversed";
  }
  return "?";
}

SamplingBox default_sampling(const BaseMetric& a) {
  SamplingBox s;
  if (a.kind == MetricKind::Schwarzschild) {
    s.box_min = {0.0, 3.0 * a.mass, 0.5, 0.0};
    s.box_max = {10.0, 12.0 * a.mass, M_PI - 0.5, 2.0 * M_PI};
    s.velocity_spread = 0.3;
  }
  return s;
}

}  // namespace

std::string model_to_json(const FinslerModel& m) {
  json j;
  j["name"] = m.name;
  j["kind"] = kind_name(m.kind);
  json bm;
  switch (m.a.kind) {
    case MetricKind::Minkowski:
      bm["kind"] = "minkowski";
      break;
    case MetricKind::Schwarzschild:
      bm["kind"] = "schwarzschild";
      bm["mass"] = m.a.mass;
      break;
    case MetricKind::UserDiagonal: {
      bm["kind"] = "user_diagonal";
      json c = json::array();
      for (int i = 0; i < 4; ++i) c.push_back(coeff_to_json(m.a.diag[static_cast<std::size_t>(i)]));
      bm["coefficients"] = c;
      break;
    }
  }
  j["base_metric"] = bm;
  if (m.kind == ModelKind::Randers || m.kind == ModelKind::Bogoslovsky) j["one_form"] = oneform_to_json(m.b);
  if (m.kind == ModelKind::Bogoslovsky) j["q"] = m.q;
  if (m.kind == ModelKind::MthRoot) {
    j["m"] = m.m;
    json terms = json::array();
    for (const auto& t : m.mth_root_terms)
      terms.push_back(json{{"coef", coeff_to_json(t.coef)},
                           {"powers", json::array({t.powers[0], t.powers[1], t.powers[2], t.powers[3]})}});
    j["mth_root_terms"] = terms;
  }
  if (m.kind == ModelKind::SignatureReversed) {
    json fm = json::array();
    for (int i = 0; i < 4; ++i) fm.push_back(coeff_to_json(m.sigrev.fhat_metric[static_cast<std::size_t>(i)]));
    j["signature_reversed"] = json{{"omega", oneform_to_json(m.sigrev.omega)},
                                   {"fhat_metric", fm},
                                   {"fhat_one_form", oneform_to_json(m.sigrev.fhat_one_form)}};
  }
  j["timelike_seed"] = json::array({m.timelike_seed[0], m.timelike_seed[1], m.timelike_seed[2], m.timelike_seed[3]});
  j["sampling"] = json{{"box_min", m.sampling.box_min},
                       {"box_max", m.sampling.box_max},
                       {"velocity_spread", m.sampling.velocity_spread}};
  return j.dump(2);
}

FinslerModel build_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw FinslerError(ErrorCode::ConfigError, std::string("model JSON parse: ") + e.what());
  }
  FinslerModel m;
  try {
    m.name = j.value("name", std::string("model"));
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lorentzian") m.kind = ModelKind::Lorentzian;
    else if (kind == "randers") m.kind = ModelKind::Randers;
    else if (kind == "bogoslovsky") m.kind = ModelKind::Bogoslovsky;
    else if (kind == "mth_root") m.kind = ModelKind::MthRoot;
    else if (kind == "signature_reversed") m.kind = ModelKind::SignatureReversed;
    else throw FinslerError(ErrorCode::ConfigError, "unknown model kind: " + kind);

    if (j.contains("base_metric")) {
      const auto& bm = j.at("base_metric");
      const std::string mk = bm.at("kind").get<std::string>();
      if (mk == "minkowski") m.a.kind = MetricKind::Minkowski;
      else if (mk == "schwarzschild") {
        m.a.kind = MetricKind::Schwarzschild;
        m.a.mass = bm.at("mass").get<double>();
      } else if (mk == "user_diagonal") {
        m.a.kind = MetricKind::UserDiagonal;
        for (int i = 0; i < 4; ++i)
          m.a.diag[static_cast<std::size_t>(i)] = coeff_from_json(bm.at("coefficients").at(static_cast<std::size_t>(i)));
      } else {
        throw FinslerError(ErrorCode::ConfigError, "unknown base metric kind: " + mk);
      }
    }
    if (j.contains("one_form")) m.b = oneform_from_json(j.at("one_form"));
    m.q = j.value("q", 0.0);
    m.m = j.value("m", 2);
    if (j.contains("mth_root_terms")) {
      for (const auto& t : j.at("mth_root_terms")) {
        MthRootTerm term;
        term.coef = coeff_from_json(t.at("coef"));
        for (int i = 0; i < 4; ++i) term.powers[static_cast<std::size_t>(i)] = t.at("powers").at(static_cast<std::size_t>(i)).get<int>();
        m.mth_root_terms.push_back(term);
      }
    }
    if (j.contains("signature_reversed")) {
      const auto& sr = j.at("signature_reversed");
      m.sigrev.omega = oneform_from_json(sr.at("omega"));
      for (int i = 0; i < 4; ++i)
        m.sigrev.fhat_metric[static_cast<std::size_t>(i)] = coeff_from_json(sr.at("fhat_metric").at(static_cast<std::size_t>(i)));
      m.sigrev.fhat_one_form = oneform_from_json(sr.at("fhat_one_form"));
    }
    if (j.contains("timelike_seed"))
      for (int i = 0; i < 4; ++i) m.timelike_seed[static_cast<std::size_t>(i)] = j.at("timelike_seed").at(static_cast<std::size_t>(i)).get<double>();
    m.sampling = default_sampling(m.a);
    if (j.contains("sampling")) {
      const auto& s = j.at("sampling");
      if (s.contains("box_min"))
        for (int i = 0; i < 4; ++i) m.sampling.box_min[static_cast<std::size_t>(i)] = s.at("box_min").at(static_cast<std::size_t>(i)).get<double>();
      if (s.contains("box_max"))
        for (int i = 0; i < 4; ++i) m.sampling.box_max[static_cast<std::size_t>(i)] = s.at("box_max").at(static_cast<std::size_t>(i)).get<double>();
      m.sampling.velocity_spread = s.value("velocity_spread", m.sampling.velocity_spread);
    }
  } catch (const FinslerError&) {
    throw;
  } catch (const std::exception& e) {
    throw FinslerError(ErrorCode::ConfigError, std::string("model JSON: ") + e.what());
  }
  validate_model(m);
  return m;
}

FinslerModel build_model_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FinslerError(ErrorCode::IOError, "cannot open model file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return build_model(os.str());
}

// ---------------------------------------------------------------------------
// Built-in instances
// ---------------------------------------------------------------------------

FinslerModel make_minkowski() {
  FinslerModel m;
  m.name = "minkowski";
  validate_model(m);
  return m;
}

FinslerModel make_schwarzschild(double mass) {
  FinslerModel m;
  m.name = "schwarzschild";
  m.a.kind = MetricKind::Schwarzschild;
  m.a.mass = mass;
  m.sampling.box_min = {0.0, 3.0 * mass, 0.5, 0.0};
  m.sampling.box_max = {10.0, 12.0 * mass, M_PI - 0.5, 2.0 * M_PI};
  m.sampling.velocity_spread = 0.3;
  validate_model(m);
  return m;
}

FinslerModel make_randers(double beta) {
  FinslerModel m;
  m.name = "randers";
  m.kind = ModelKind::Randers;
  m.b.components[0] = CoefficientFn::constant(beta);
  validate_model(m);
  return m;
}

FinslerModel make_randers_schwarzschild(double beta, double mass) {
  FinslerModel m = make_schwarzschild(mass);
  m.name = "randers_schwarzschild";
  m.kind = ModelKind::Randers;
  m.b.components[0] = CoefficientFn::constant(beta);
  validate_model(m);
  return m;
}

FinslerModel make_bogoslovsky(double q) {
  FinslerModel m;
  m.name = "bogoslovsky";
  m.kind = ModelKind::Bogoslovsky;
  m.q = q;
  m.b.components[0] = CoefficientFn::constant(1.0);
  validate_model(m);
  return m;
}

FinslerModel make_bogoslovsky_schwarzschild(double q, double mass) {
  FinslerModel m = make_schwarzschild(mass);
  m.name = "bogoslovsky_schwarzschild";
  m.kind = ModelKind::Bogoslovsky;
  m.q = q;
  m.b.components[0] = CoefficientFn::constant(1.0);
  validate_model(m);
  return m;
}

FinslerModel make_mth_root() {
  FinslerModel m;
  m.name = "mth_root";
  m.kind = ModelKind::MthRoot;
  m.m = 4;
  // (minkowski quadratic)^2 plus a small x-modulated quartic perturbation
  auto add = [&](double c, int p0, int p1, int p2, int p3) {
    MthRootTerm t;
    t.coef = CoefficientFn::constant(c);
    t.powers = {p0, p1, p2, p3};
    m.mth_root_terms.push_back(t);
  };
  add(1.0, 4, 0, 0, 0);
  add(1.0, 0, 4, 0, 0);
  add(1.0, 0, 0, 4, 0);
  add(1.0, 0, 0, 0, 4);
  add(-2.0, 2, 2, 0, 0);
  add(-2.0, 2, 0, 2, 0);
  add(-2.0, 2, 0, 0, 2);
  add(2.0, 0, 2, 2, 0);
  add(2.0, 0, 2, 0, 2);
  add(2.0, 0, 0, 2, 2);
  // eps(x) (v0 + 0.3 v1)^4 with eps(x) = 0.05 + 0.01 (x1)^2
  Polynomial eps;
  eps.terms.push_back({0.05, {0, 0, 0, 0}});
  eps.terms.push_back({0.01, {0, 2, 0, 0}});
  const double c1 = 0.3;
  const double binom[5] = {1, 4, 6, 4, 1};
  for (int k = 0; k <= 4; ++k) {
    MthRootTerm t;
    Polynomial scaled = eps;
    double factor = binom[k];
    for (int j = 0; j < k; ++j) factor *= c1;
    for (auto& term : scaled.terms) term.coef *= factor;
    t.coef = CoefficientFn::polynomial(scaled);
    t.powers = {4 - k, k, 0, 0};
    m.mth_root_terms.push_back(t);
  }
  validate_model(m);
  return m;
}

FinslerModel make_signature_reversed() {
  FinslerModel m;
  m.name = "signature_reversed";
  m.kind = ModelKind::SignatureReversed;
  m.sigrev.omega.components[0] = CoefficientFn::constant(2.0);
  // positive definite norm with a mild x-dependence in the first component
  Polynomial e0;
  e0.terms.push_back({1.0, {0, 0, 0, 0}});
  e0.terms.push_back({0.05, {2, 0, 0, 0}});
  m.sigrev.fhat_metric[0] = CoefficientFn::polynomial(e0);
  for (int i = 1; i < 4; ++i) m.sigrev.fhat_metric[static_cast<std::size_t>(i)] = CoefficientFn::constant(1.0);
  m.sigrev.fhat_one_form.components[1] = CoefficientFn::constant(0.1);
  validate_model(m);
  return m;
}

FinslerModel make_expanding_diagonal() {
  FinslerModel m;
  m.name = "expanding_diagonal";
  m.a.kind = MetricKind::UserDiagonal;
  m.a.diag[0] = CoefficientFn::constant(1.0);
  Polynomial t2;
  t2.terms.push_back({-1.0, {2, 0, 0, 0}});
  for (int i = 1; i < 4; ++i) m.a.diag[static_cast<std::size_t>(i)] = CoefficientFn::polynomial(t2);
  m.sampling.box_min = {1.0, -2.0, -2.0, -2.0};
  m.sampling.box_max = {2.0, 2.0, 2.0, 2.0};
  m.sampling.velocity_spread = 0.4;
  validate_model(m);
  return m;
}

std::vector<FinslerModel> catalog_models() {
  // one instance per catalog kind, each with genuine x-dependence
  return {make_schwarzschild(1.0), make_randers_schwarzschild(0.15, 1.0),
          make_bogoslovsky_schwarzschild(0.2, 1.0), make_mth_root(), make_signature_reversed()};
}

}  // namespace finsler
