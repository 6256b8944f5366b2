#include "finsler/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace finsler {
namespace detail {

namespace {

// Enumerate all 4-variable multi-indices of the given total degree in
// lexicographic order (first variable most significant).
void enumerate_degree(int deg, std::vector<std::array<std::uint8_t, 4>>& out) {
  for (int a = deg; a >= 0; --a)
    for (int b = deg - a; b >= 0; --b)
      for (int c = deg - a - b; c >= 0; --c) {
        int d = deg - a - b - c;
        out.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                       static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)});
      }
}

SideTables build_tables() {
  SideTables t;
  for (int deg = 0; deg <= SideTables::kMaxCap; ++deg) {
    enumerate_degree(deg, t.multis);
    t.count_by_cap[deg] = static_cast<int>(t.multis.size());
  }
  t.count_by_cap[SideTables::kMaxCap + 1] = static_cast<int>(t.multis.size());

  const int n = static_cast<int>(t.multis.size());
  t.degree.resize(n);
  t.factorial.resize(n);
  std::map<std::array<std::uint8_t, 4>, int> lookup;
  for (int i = 0; i < n; ++i) {
    const auto& m = t.multis[i];
    t.degree[i] = m[0] + m[1] + m[2] + m[3];
    double f = 1.0;
    for (int k = 0; k < 4; ++k)
      for (int j = 2; j <= m[k]; ++j) f *= j;
    t.factorial[i] = f;
    lookup[m] = i;
  }

  t.up.assign(n, {-1, -1, -1, -1});
  for (int i = 0; i < n; ++i) {
    for (int var = 0; var < 4; ++var) {
      auto m = t.multis[i];
      if (t.degree[i] + 1 > SideTables::kMaxCap) continue;
      m[var] = static_cast<std::uint8_t>(m[var] + 1);
      auto it = lookup.find(m);
      if (it != lookup.end()) t.up[i][var] = it->second;
    }
  }

  // Product pair groups by (deg_a, deg_b).
  for (int da = 0; da <= SideTables::kMaxCap; ++da) {
    for (int db = 0; da + db <= SideTables::kMaxCap; ++db) {
      SideTables::PairGroup g;
      g.deg_a = da;
      g.deg_b = db;
      const int a_begin = (da == 0) ? 0 : t.count_by_cap[da - 1];
      const int a_end = t.count_by_cap[da];
      const int b_begin = (db == 0) ? 0 : t.count_by_cap[db - 1];
      const int b_end = t.count_by_cap[db];
      for (int ja = a_begin; ja < a_end; ++ja) {
        for (int jb = b_begin; jb < b_end; ++jb) {
          std::array<std::uint8_t, 4> s;
          for (int k = 0; k < 4; ++k) s[k] = static_cast<std::uint8_t>(t.multis[ja][k] + t.multis[jb][k]);
          g.entries.push_back({ja, jb, lookup.at(s)});
        }
      }
      t.pair_groups.push_back(std::move(g));
    }
  }
  t.splits.resize(t.multis.size());
  for (const auto& g : t.pair_groups)
    for (const auto& e : g.entries) t.splits[static_cast<std::size_t>(e[2])].push_back({e[0], e[1]});
  return t;
}

}  // namespace

int SideTables::index_of(const std::array<int, 4>& m) const {
  int deg = m[0] + m[1] + m[2] + m[3];
  if (deg > kMaxCap) return -1;
  const int begin = (deg == 0) ? 0 : count_by_cap[deg - 1];
  const int end = count_by_cap[deg];
  for (int i = begin; i < end; ++i) {
    if (multis[i][0] == m[0] && multis[i][1] == m[1] && multis[i][2] == m[2] && multis[i][3] == m[3])
      return i;
  }
  return -1;
}

const SideTables& SideTables::instance() {
  static const SideTables t = build_tables();
  return t;
}

}  // namespace detail

using detail::SideTables;

double eps_div(double scale) { return 1e-10 * scale; }

Jet::Jet(const ChartPoint& pt, TruncationOrder ord) : pt_(pt), ord_(ord) { c_.assign(1, 0.0); }

int Jet::nx_() const { return SideTables::instance().count_by_cap[content_x_]; }
int Jet::nv_() const { return SideTables::instance().count_by_cap[content_v_]; }

Jet Jet::constant(const ChartPoint& pt, double value, TruncationOrder ord) {
  Jet j(pt, ord);
  j.c_[0] = value;
  return j;
}

std::array<Jet, 8> Jet::seed_chart(const ChartPoint& pt, TruncationOrder ord) {
  const auto& t = SideTables::instance();
  std::array<Jet, 8> out;
  for (int k = 0; k < 8; ++k) {
    Jet j(pt, ord);
    const bool is_x = k < 4;
    const int var = is_x ? k : k - 4;
    const int cap = is_x ? ord.max_x : ord.max_v;
    j.c_[0] = is_x ? pt.x[var] : pt.v[var];
    if (cap >= 1) {
      if (is_x) {
        j.content_x_ = 1;
        j.c_.assign(static_cast<std::size_t>(t.count_by_cap[1]), 0.0);  // nx=5, nv=1
        j.c_[0] = pt.x[var];
        std::array<int, 4> e{};
        e[var] = 1;
        j.c_[static_cast<std::size_t>(t.index_of(e))] = 1.0;
      } else {
        j.content_v_ = 1;
        j.c_.assign(static_cast<std::size_t>(t.count_by_cap[1]), 0.0);  // nx=1, nv=5
        j.c_[0] = pt.v[var];
        std::array<int, 4> e{};
        e[var] = 1;
        j.c_[static_cast<std::size_t>(t.index_of(e))] = 1.0;
      }
    }
    out[k] = j;
  }
  return out;
}

double Jet::coefficient(const MultiIndex& idx) const {
  for (int k = 0; k < 4; ++k)
    if (idx.x[k] < 0 || idx.v[k] < 0)
      throw FinslerError(ErrorCode::InvalidParameter, "negative multi-index entry");
  if (idx.x_total() > ord_.max_x || idx.v_total() > ord_.max_v)
    throw FinslerError(ErrorCode::OrderExceeded, "multi-index outside truncation order");
  if (idx.x_total() > content_x_ || idx.v_total() > content_v_) return 0.0;
  const auto& t = SideTables::instance();
  const int ix = t.index_of(idx.x);
  const int iv = t.index_of(idx.v);
  return c_[static_cast<std::size_t>(ix) * nv_() + iv];
}

double Jet::partial(const MultiIndex& idx) const {
  const auto& t = SideTables::instance();
  double coef = coefficient(idx);
  const int ix = t.index_of(idx.x);
  const int iv = t.index_of(idx.v);
  return coef * t.factorial[ix] * t.factorial[iv];
}

Jet Jet::dx(int i) const {
  if (ord_.max_x < 1) throw FinslerError(ErrorCode::OrderExceeded, "no x-order left for dx");
  const auto& t = SideTables::instance();
  Jet r(pt_, {ord_.max_x - 1, ord_.max_v});
  r.content_x_ = std::max(content_x_ - 1, 0);
  r.content_v_ = content_v_;
  const int rnx = r.nx_(), rnv = r.nv_();
  const int nv = nv_();
  r.c_.assign(static_cast<std::size_t>(rnx) * rnv, 0.0);
  for (int jx = 0; jx < rnx; ++jx) {
    const int src = t.up[jx][i];
    if (src < 0 || src >= nx_()) continue;
    const double mult = t.multis[jx][i] + 1.0;
    const double* arow = c_.data() + static_cast<std::size_t>(src) * nv;
    double* rrow = r.c_.data() + static_cast<std::size_t>(jx) * rnv;
    for (int jv = 0; jv < rnv; ++jv) rrow[jv] = arow[jv] * mult;
  }
  return r;
}

Jet Jet::dv(int i) const {
  if (ord_.max_v < 1) throw FinslerError(ErrorCode::OrderExceeded, "no v-order left for dv");
  const auto& t = SideTables::instance();
  Jet r(pt_, {ord_.max_x, ord_.max_v - 1});
  r.content_x_ = content_x_;
  r.content_v_ = std::max(content_v_ - 1, 0);
  const int rnx = r.nx_(), rnv = r.nv_();
  const int nv = nv_();
  r.c_.assign(static_cast<std::size_t>(rnx) * rnv, 0.0);
  for (int jv = 0; jv < rnv; ++jv) {
    const int src = t.up[jv][i];
    if (src < 0 || src >= nv_()) continue;
    const double mult = t.multis[jv][i] + 1.0;
    for (int jx = 0; jx < rnx; ++jx)
      r.c_[static_cast<std::size_t>(jx) * rnv + jv] = c_[static_cast<std::size_t>(jx) * nv + src] * mult;
  }
  return r;
}

void Jet::check_compatible_(const Jet& a, const Jet& b) {
  if (!(a.pt_ == b.pt_))
    throw FinslerError(ErrorCode::InvalidParameter, "jet operands have different base points");
}

namespace {

// Accumulate src into a result laid out with row stride rnv; the source keeps
// its own row stride, only the overlapping prefix block is touched.
void accumulate(std::vector<double>& rc, int rnx, int rnv, const std::vector<double>& src,
                int src_nx, int src_nv, double sign) {
  const int copy_nx = std::min(src_nx, rnx);
  const int copy_nv = std::min(src_nv, rnv);
  for (int jx = 0; jx < copy_nx; ++jx) {
    double* rrow = rc.data() + static_cast<std::size_t>(jx) * rnv;
    const double* srow = src.data() + static_cast<std::size_t>(jx) * src_nv;
    for (int jv = 0; jv < copy_nv; ++jv) rrow[jv] += sign * srow[jv];
  }
}

}  // namespace

Jet operator+(const Jet& a, const Jet& b) {
  Jet::check_compatible_(a, b);
  Jet r(a.pt_, {std::min(a.ord_.max_x, b.ord_.max_x), std::min(a.ord_.max_v, b.ord_.max_v)});
  r.content_x_ = std::min(std::max(a.content_x_, b.content_x_), r.ord_.max_x);
  r.content_v_ = std::min(std::max(a.content_v_, b.content_v_), r.ord_.max_v);
  const auto& t = SideTables::instance();
  const int rnx = t.count_by_cap[r.content_x_], rnv = t.count_by_cap[r.content_v_];
  r.c_.assign(static_cast<std::size_t>(rnx) * rnv, 0.0);
  accumulate(r.c_, rnx, rnv, a.c_, a.nx_(), a.nv_(), 1.0);
  accumulate(r.c_, rnx, rnv, b.c_, b.nx_(), b.nv_(), 1.0);
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet::check_compatible_(a, b);
  Jet r(a.pt_, {std::min(a.ord_.max_x, b.ord_.max_x), std::min(a.ord_.max_v, b.ord_.max_v)});
  r.content_x_ = std::min(std::max(a.content_x_, b.content_x_), r.ord_.max_x);
  r.content_v_ = std::min(std::max(a.content_v_, b.content_v_), r.ord_.max_v);
  const auto& t = SideTables::instance();
  const int rnx = t.count_by_cap[r.content_x_], rnv = t.count_by_cap[r.content_v_];
  r.c_.assign(static_cast<std::size_t>(rnx) * rnv, 0.0);
  accumulate(r.c_, rnx, rnv, a.c_, a.nx_(), a.nv_(), 1.0);
  accumulate(r.c_, rnx, rnv, b.c_, b.nx_(), b.nv_(), -1.0);
  return r;
}

Jet& Jet::operator+=(const Jet& o) { return *this = *this + o; }
Jet& Jet::operator-=(const Jet& o) { return *this = *this - o; }
Jet& Jet::operator+=(double s) {
  c_[0] += s;
  return *this;
}
Jet& Jet::operator-=(double s) {
  c_[0] -= s;
  return *this;
}
Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet operator+(const Jet& a, double s) {
  Jet r = a;
  r.c_[0] += s;
  return r;
}
Jet operator-(const Jet& a, double s) {
  Jet r = a;
  r.c_[0] -= s;
  return r;
}
Jet operator*(const Jet& a, double s) {
  Jet r = a;
  for (double& x : r.c_) x *= s;
  return r;
}
Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
Jet operator+(double s, const Jet& a) { return a + s; }
Jet operator-(double s, const Jet& a) { return (-a) + s; }
Jet operator*(double s, const Jet& a) { return a * s; }
Jet operator-(const Jet& a) {
  Jet r = a;
  for (double& x : r.c_) x = -x;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet::check_compatible_(a, b);
  const auto& t = SideTables::instance();
  Jet r(a.pt_, {std::min(a.ord_.max_x, b.ord_.max_x), std::min(a.ord_.max_v, b.ord_.max_v)});
  r.content_x_ = std::min(a.content_x_ + b.content_x_, r.ord_.max_x);
  r.content_v_ = std::min(a.content_v_ + b.content_v_, r.ord_.max_v);
  const int rnv = t.count_by_cap[r.content_v_];
  const int rnx = t.count_by_cap[r.content_x_];
  r.c_.assign(static_cast<std::size_t>(rnx) * rnv, 0.0);

  const int anv = a.nv_(), bnv = b.nv_();
  for (const auto& gx : t.pair_groups) {
    if (gx.deg_a > a.content_x_ || gx.deg_b > b.content_x_ || gx.deg_a + gx.deg_b > r.content_x_)
      continue;
    for (const auto& gv : t.pair_groups) {
      if (gv.deg_a > a.content_v_ || gv.deg_b > b.content_v_ || gv.deg_a + gv.deg_b > r.content_v_)
        continue;
      for (const auto& ex : gx.entries) {
        const double* arow = a.c_.data() + static_cast<std::size_t>(ex[0]) * anv;
        const double* brow = b.c_.data() + static_cast<std::size_t>(ex[1]) * bnv;
        double* rrow = r.c_.data() + static_cast<std::size_t>(ex[2]) * rnv;
        for (const auto& ev : gv.entries) {
          rrow[ev[2]] += arow[ev[0]] * brow[ev[1]];
        }
      }
    }
  }
  return r;
}

double Jet::guard_scale() const {
  const auto& t = SideTables::instance();
  double s = std::max(1.0, std::abs(value()));
  // include first-order coefficients (both sides)
  const int nv = nv_();
  if (content_v_ >= 1)
    for (int iv = 1; iv < std::min(nv, t.count_by_cap[1]); ++iv) s = std::max(s, std::abs(c_[iv]));
  if (content_x_ >= 1)
    for (int ix = 1; ix < std::min(nx_(), t.count_by_cap[1]); ++ix)
      s = std::max(s, std::abs(c_[static_cast<std::size_t>(ix) * nv]));
  return s;
}

Jet Jet::compose_(const std::vector<double>& series) const {
  Jet abar = *this;
  abar.c_[0] = 0.0;
  // Terms of (a - a0)^k have total degree ≥ k on each side it has content in,
  // so the Horner depth only needs to cover the reachable truncation budget.
  int depth = (content_x_ > 0 ? ord_.max_x : 0) + (content_v_ > 0 ? ord_.max_v : 0);
  depth = std::min<int>(depth, static_cast<int>(series.size()) - 1);
  Jet r = Jet::constant(pt_, series[static_cast<std::size_t>(depth)], ord_);
  for (int k = depth - 1; k >= 0; --k) {
    r = r * abar;
    r.c_[0] += series[static_cast<std::size_t>(k)];
  }
  return r;
}

Jet recip(const Jet& a) {
  const double a0 = a.value();
  if (std::abs(a0) <= eps_div(a.guard_scale()))
    throw FinslerError(ErrorCode::DivisionNearZero, "reciprocal of a jet with near-zero value");
  const int depth = a.ord_.max_x + a.ord_.max_v;
  std::vector<double> series(static_cast<std::size_t>(depth) + 1);
  double p = 1.0 / a0;
  for (int k = 0; k <= depth; ++k) {
    series[static_cast<std::size_t>(k)] = p;
    p *= -1.0 / a0;
  }
  return a.compose_(series);
}

Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

Jet sqrt(const Jet& a) {
  const double a0 = a.value();
  if (a0 <= eps_div(a.guard_scale()))
    throw FinslerError(ErrorCode::SqrtDomain, "sqrt of a jet with non-positive value");
  const int depth = a.ord_.max_x + a.ord_.max_v;
  std::vector<double> series(static_cast<std::size_t>(depth) + 1);
  series[0] = std::sqrt(a0);
  for (int k = 1; k <= depth; ++k)
    series[static_cast<std::size_t>(k)] =
        series[static_cast<std::size_t>(k - 1)] * (0.5 - (k - 1)) / (k * a0);
  return a.compose_(series);
}

Jet pow(const Jet& a, double q) {
  const double a0 = a.value();
  if (a0 <= eps_div(a.guard_scale()))
    throw FinslerError(ErrorCode::SqrtDomain, "pow of a jet with non-positive base value");
  const int depth = a.ord_.max_x + a.ord_.max_v;
  std::vector<double> series(static_cast<std::size_t>(depth) + 1);
  series[0] = std::pow(a0, q);
  for (int k = 1; k <= depth; ++k)
    series[static_cast<std::size_t>(k)] =
        series[static_cast<std::size_t>(k - 1)] * (q - (k - 1)) / (k * a0);
  return a.compose_(series);
}

Jet exp(const Jet& a) {
  const int depth = a.ord_.max_x + a.ord_.max_v;
  std::vector<double> series(static_cast<std::size_t>(depth) + 1);
  series[0] = std::exp(a.value());
  for (int k = 1; k <= depth; ++k) series[static_cast<std::size_t>(k)] = series[static_cast<std::size_t>(k - 1)] / k;
  return a.compose_(series);
}

Jet log(const Jet& a) {
  const double a0 = a.value();
  if (a0 <= eps_div(a.guard_scale()))
    throw FinslerError(ErrorCode::SqrtDomain, "log of a jet with non-positive value");
  const int depth = a.ord_.max_x + a.ord_.max_v;
  std::vector<double> series(static_cast<std::size_t>(depth) + 1);
  series[0] = std::log(a0);
  double p = 1.0;
  for (int k = 1; k <= depth; ++k) {
    p *= 1.0 / a0;
    series[static_cast<std::size_t>(k)] = ((k % 2 == 1) ? 1.0 : -1.0) * p / k;
  }
  return a.compose_(series);
}

Jet sin(const Jet& a) {
  const int depth = a.ord_.max_x + a.ord_.max_v;
  std::vector<double> series(static_cast<std::size_t>(depth) + 1);
  const double s = std::sin(a.value()), c = std::cos(a.value());
  double fact = 1.0;
  for (int k = 0; k <= depth; ++k) {
    if (k > 0) fact *= k;
    const double d = (k % 4 == 0) ? s : (k % 4 == 1) ? c : (k % 4 == 2) ? -s : -c;
    series[static_cast<std::size_t>(k)] = d / fact;
  }
  return a.compose_(series);
}

Jet cos(const Jet& a) {
  const int depth = a.ord_.max_x + a.ord_.max_v;
  std::vector<double> series(static_cast<std::size_t>(depth) + 1);
  const double s = std::sin(a.value()), c = std::cos(a.value());
  double fact = 1.0;
  for (int k = 0; k <= depth; ++k) {
    if (k > 0) fact *= k;
    const double d = (k % 4 == 0) ? c : (k % 4 == 1) ? -s : (k % 4 == 2) ? -c : s;
    series[static_cast<std::size_t>(k)] = d / fact;
  }
  return a.compose_(series);
}

Jet signed_abs(const Jet& a) {
  const double a0 = a.value();
  if (std::abs(a0) <= eps_div(a.guard_scale()))
    throw FinslerError(ErrorCode::SqrtDomain, "signed_abs at a near-zero value (null direction)");
  return (a0 < 0) ? -a : a;
}

Jet Jet::from_raw(const ChartPoint& pt, TruncationOrder ord, int content_x, int content_v,
                  std::vector<double> coeffs) {
  const auto& t = SideTables::instance();
  Jet j(pt, ord);
  j.content_x_ = content_x;
  j.content_v_ = content_v;
  if (coeffs.size() != static_cast<std::size_t>(t.count_by_cap[content_x]) * t.count_by_cap[content_v])
    throw FinslerError(ErrorCode::InvalidParameter, "from_raw: coefficient size mismatch");
  j.c_ = std::move(coeffs);
  return j;
}

double euler_value(const Jet& q) {
  if (q.order().max_v < 1)
    throw FinslerError(ErrorCode::OrderExceeded, "euler_value needs one remaining v-order");
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    MultiIndex idx;
    idx.v[i] = 1;
    s += q.base_point().v[i] * q.coefficient(idx);
  }
  return s;
}

}  // namespace finsler
