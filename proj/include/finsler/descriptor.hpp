#pragma once

#include <array>
#include <string>
#include <vector>

#include "finsler/jet.hpp"

namespace finsler {

/// One monomial c · ∏ (x^i)^{p_i} of a coefficient function of x.
struct Monomial {
  double coef = 0.0;
  std::array<int, 4> powers{};
};

struct Polynomial {
  std::vector<Monomial> terms;

  double eval(const std::array<double, 4>& x) const;
  Jet eval(const std::array<Jet, 8>& seeds) const;
  bool empty() const { return terms.empty(); }
};

/// Coefficient function of x restricted to polynomial/rational form, so it is
/// closed under jet arithmetic on every chart.
class CoefficientFn {
 public:
  CoefficientFn() = default;
  static CoefficientFn constant(double c);
  static CoefficientFn polynomial(Polynomial p);
  static CoefficientFn rational(Polynomial num, Polynomial den);

  double eval(const std::array<double, 4>& x) const;
  Jet eval(const std::array<Jet, 8>& seeds) const;

  bool is_rational() const { return !den_.empty(); }
  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

 private:
  Polynomial num_;
  Polynomial den_;  // empty = purely polynomial
};

/// A differential 1-form b = b_i dx^i with polynomial/rational components.
struct OneForm {
  std::array<CoefficientFn, 4> components;

  double eval(const std::array<double, 4>& x, const std::array<double, 4>& v) const;
  Jet eval(const std::array<Jet, 8>& seeds) const;
};

}  // namespace finsler
