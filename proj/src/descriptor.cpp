#include "finsler/descriptor.hpp"

#include <cmath>

namespace finsler {

double Polynomial::eval(const std::array<double, 4>& x) const {
  double s = 0.0;
  for (const auto& t : terms) {
    double m = t.coef;
    for (int i = 0; i < 4; ++i)
      for (int p = 0; p < t.powers[i]; ++p) m *= x[i];
    s += m;
  }
  return s;
}

Jet Polynomial::eval(const std::array<Jet, 8>& seeds) const {
  const ChartPoint& pt = seeds[0].base_point();
  Jet s = Jet::constant(pt, 0.0, seeds[0].order());
  for (const auto& t : terms) {
    Jet m = Jet::constant(pt, t.coef, seeds[0].order());
    for (int i = 0; i < 4; ++i)
      for (int p = 0; p < t.powers[i]; ++p) m = m * seeds[static_cast<std::size_t>(i)];
    s += m;
  }
  return s;
}

CoefficientFn CoefficientFn::constant(double c) {
  CoefficientFn f;
  f.num_.terms.push_back({c, {0, 0, 0, 0}});
  return f;
}

CoefficientFn CoefficientFn::polynomial(Polynomial p) {
  CoefficientFn f;
  f.num_ = std::move(p);
  return f;
}

CoefficientFn CoefficientFn::rational(Polynomial num, Polynomial den) {
  CoefficientFn f;
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  return f;
}

double CoefficientFn::eval(const std::array<double, 4>& x) const {
  double n = num_.eval(x);
  if (den_.empty()) return n;
  return n / den_.eval(x);
}

Jet CoefficientFn::eval(const std::array<Jet, 8>& seeds) const {
  Jet n = num_.eval(seeds);
  if (den_.empty()) return n;
  return n / den_.eval(seeds);
}

double OneForm::eval(const std::array<double, 4>& x, const std::array<double, 4>& v) const {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += components[static_cast<std::size_t>(i)].eval(x) * v[i];
  return s;
}

Jet OneForm::eval(const std::array<Jet, 8>& seeds) const {
  Jet s = components[0].eval(seeds) * seeds[4];
  for (int i = 1; i < 4; ++i) s += components[static_cast<std::size_t>(i)].eval(seeds) * seeds[static_cast<std::size_t>(4 + i)];
  return s;
}

}  // namespace finsler
