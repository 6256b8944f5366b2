#include <cmath>

#include "doctest.h"
#include "finsler/jet.hpp"
#include "finsler/rng.hpp"

using namespace finsler;

namespace {

const ChartPoint kPt{{1.0, 2.0, -0.5, 0.7}, {1.3, 0.4, -0.2, 0.1}};
const TruncationOrder kOrd{3, 6};

MultiIndex vi(int i, int n = 1) {
  MultiIndex m;
  m.v[i] = n;
  return m;
}

MultiIndex xi(int i, int n = 1) {
  MultiIndex m;
  m.x[i] = n;
  return m;
}

}  // namespace

TEST_CASE("seeding: coordinate jets carry unit first-order coefficients") {
  ChartPoint pt{{1, 2, 3, 4}, {1, 0, 0, 0}};
  auto s = Jet::seed_chart(pt, kOrd);
  CHECK(s[0].value() == 1.0);
  CHECK(s[0].coefficient(xi(0)) == 1.0);
  CHECK(s[0].coefficient(xi(1)) == 0.0);
  CHECK(s[5].value() == 0.0);
  CHECK(s[5].coefficient(vi(1)) == 1.0);
  // linear seed: second derivative vanishes
  CHECK(s[0].partial(xi(0, 2)) == 0.0);
}

TEST_CASE("polynomial arithmetic matches closed forms") {
  ChartPoint pt{{0, 0, 0, 0}, {3, 0, 0, 0}};
  auto s = Jet::seed_chart(pt, kOrd);
  Jet f = s[4] * s[4];
  CHECK(f.value() == 9.0);
  CHECK(f.coefficient(vi(0)) == 6.0);
  CHECK(f.coefficient(vi(0, 2)) == 1.0);
  CHECK(f.partial(vi(0, 2)) == 2.0);
  Jet cube = f * s[4];
  CHECK(cube.partial(vi(0, 3)) == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("sqrt of a constant jet has no derivative content") {
  Jet c = Jet::constant(kPt, 4.0, kOrd);
  Jet r = sqrt(c);
  CHECK(r.value() == 2.0);
  CHECK(r.coefficient(vi(0)) == 0.0);
  CHECK(r.coefficient(xi(2)) == 0.0);
}

TEST_CASE("division and sqrt guards reject near-null input") {
  Jet tiny = Jet::constant(kPt, 1e-14, kOrd);
  CHECK_THROWS_AS((void)recip(tiny), FinslerError);
  Jet neg = Jet::constant(kPt, -2.0, kOrd);
  CHECK_THROWS_AS((void)sqrt(neg), FinslerError);
  CHECK(signed_abs(neg).value() == 2.0);
}

TEST_CASE("extraction beyond the truncation order throws") {
  auto s = Jet::seed_chart(kPt, TruncationOrder{1, 2});
  Jet f = s[4] * s[4];
  CHECK_THROWS_AS((void)f.partial(vi(0, 3)), FinslerError);
  CHECK_THROWS_AS((void)f.dv(0).dv(0).dv(0), FinslerError);
}

TEST_CASE("Leibniz: product coefficients equal the coefficient convolution") {
  // random sparse polynomials p, q in all 8 variables, degree <= 2 each side
  Rng rng(12345);
  auto s = Jet::seed_chart(kPt, kOrd);
  auto make_poly = [&](Jet& out, std::vector<std::pair<MultiIndex, double>>& terms) {
    out = Jet::constant(kPt, rng.uniform(-1, 1), kOrd);
    terms.push_back({MultiIndex{}, out.value()});
    for (int t = 0; t < 6; ++t) {
      MultiIndex mi;
      mi.x[static_cast<std::size_t>(rng.next_u64() % 4)] += 1;
      mi.v[static_cast<std::size_t>(rng.next_u64() % 4)] += 1;
      if (rng.uniform() < 0.5) mi.v[static_cast<std::size_t>(rng.next_u64() % 4)] += 1;
      const double c = rng.uniform(-2, 2);
      Jet term = Jet::constant(kPt, c, kOrd);
      for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < mi.x[i]; ++k) term = term * (s[static_cast<std::size_t>(i)] - kPt.x[i]);
        for (int k = 0; k < mi.v[i]; ++k) term = term * (s[static_cast<std::size_t>(4 + i)] - kPt.v[i]);
      }
      out += term;
      terms.push_back({mi, c});
    }
  };
  Jet p, q;
  std::vector<std::pair<MultiIndex, double>> pt_terms, qt_terms;
  make_poly(p, pt_terms);
  make_poly(q, qt_terms);
  Jet prod = p * q;

  // brute-force convolution of the sparse term lists
  for (const auto& [mi_p, cp] : pt_terms) {
    for (const auto& [mi_q, cq] : qt_terms) {
      MultiIndex sum;
      bool in_order = true;
      for (int i = 0; i < 4; ++i) {
        sum.x[i] = mi_p.x[i] + mi_q.x[i];
        sum.v[i] = mi_p.v[i] + mi_q.v[i];
      }
      in_order = sum.x_total() <= kOrd.max_x && sum.v_total() <= kOrd.max_v;
      if (!in_order) continue;
      // accumulate expected coefficient for this multi-index
      double expect = 0.0;
      for (const auto& [ap, acp] : pt_terms)
        for (const auto& [aq, acq] : qt_terms) {
          bool same = true;
          for (int i = 0; i < 4; ++i)
            same = same && (ap.x[i] + aq.x[i] == sum.x[i]) && (ap.v[i] + aq.v[i] == sum.v[i]);
          if (same) expect += acp * acq;
        }
      CHECK(prod.coefficient(sum) == doctest::Approx(expect).epsilon(1e-13));
    }
  }
}

TEST_CASE("composition chain: analytic partials of exp/log/sqrt mixtures") {
  auto s = Jet::seed_chart(kPt, kOrd);
  // f = sqrt(v0^2 + v1^2 + 1) * exp(0.1 x1) matches closed-form partials
  Jet f = sqrt(s[4] * s[4] + s[5] * s[5] + 1.0) * exp(0.1 * s[1]);
  const double v0 = kPt.v[0], v1 = kPt.v[1], x1 = kPt.x[1];
  const double root = std::sqrt(v0 * v0 + v1 * v1 + 1.0);
  const double ex = std::exp(0.1 * x1);
  CHECK(f.value() == doctest::Approx(root * ex).epsilon(1e-14));
  CHECK(f.partial(vi(0)) == doctest::Approx(v0 / root * ex).epsilon(1e-13));
  MultiIndex mixed = vi(0);
  mixed.x[1] = 1;
  CHECK(f.partial(mixed) == doctest::Approx(0.1 * v0 / root * ex).epsilon(1e-13));
  const double d2 = (1.0 / root - v0 * v0 / (root * root * root)) * ex;
  CHECK(f.partial(vi(0, 2)) == doctest::Approx(d2).epsilon(1e-12));
}

TEST_CASE("derivative extraction commutes with arithmetic") {
  auto s = Jet::seed_chart(kPt, kOrd);
  Jet f = s[4] * s[4] * s[1] + sin(s[2]);
  Jet df = f.dv(0);
  CHECK(df.value() == doctest::Approx(2 * kPt.v[0] * kPt.x[1]).epsilon(1e-14));
  Jet g = 2.0 * s[4] * s[1];
  CHECK(df.coefficient(vi(0)) == doctest::Approx(g.coefficient(vi(0))).epsilon(1e-14));
  Jet dfx = f.dx(2);
  CHECK(dfx.value() == doctest::Approx(std::cos(kPt.x[2])).epsilon(1e-14));
}

TEST_CASE("euler_value reads the degree of homogeneous polynomials") {
  auto s = Jet::seed_chart(kPt, kOrd);
  Jet L = s[4] * s[4] - s[5] * s[5] - s[6] * s[6] - s[7] * s[7];
  CHECK(euler_value(L) == doctest::Approx(2.0 * L.value()).epsilon(1e-14));
  Jet one_homog = sqrt(signed_abs(L));
  CHECK(euler_value(one_homog) == doctest::Approx(one_homog.value()).epsilon(1e-12));
}

TEST_CASE("truncation order of products takes the minimum per side") {
  auto s6 = Jet::seed_chart(kPt, TruncationOrder{3, 6});
  auto s2 = Jet::seed_chart(kPt, TruncationOrder{1, 2});
  Jet p = s6[4] * s2[4];
  CHECK(p.order().max_x == 1);
  CHECK(p.order().max_v == 2);
}

TEST_CASE("base point mismatch is rejected") {
  ChartPoint other = kPt;
  other.v[0] += 0.5;
  auto a = Jet::seed_chart(kPt, kOrd);
  auto b = Jet::seed_chart(other, kOrd);
  CHECK_THROWS_AS((void)(a[4] * b[4]), FinslerError);
}
