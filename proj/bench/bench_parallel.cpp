// Compares the OpenMP point/node kernels against the serial reference path.
// Both must produce byte-identical results; the table reports the speedup.

#include <chrono>
#include <cstdio>
#include <vector>

#include "finsler/dynamics.hpp"
#include "finsler/geometry.hpp"
#include "finsler/parallel.hpp"
#include "finsler/quadrature.hpp"
#include "finsler/verify.hpp"

using namespace finsler;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Geometry bundles over a batch of points; returns R0 values per slot.
double bench_bundles(const FinslerModel& m, const std::vector<ChartPoint>& pts, ExecMode mode,
                     std::vector<double>& out) {
  out.assign(pts.size(), 0.0);
  const auto t0 = Clock::now();
  parallel_for(
      pts.size(),
      [&](std::size_t i) {
        auto gb = build_geometry(m, pts[i], TruncationOrder{}, Stage::Full);
        out[i] = gb.R0.value() + vacuum_scalar_E_jet(gb).value();
      },
      mode);
  return seconds_since(t0);
}

double bench_quadrature(const FinslerModel& m, ExecMode mode, double& value) {
  KineticGas gas;
  FiberQuadrature quad;
  quad.chi_max = 1.3;
  quad.orders = {20, 14, 14};
  const auto t0 = Clock::now();
  auto cons = averaged_conservation_check(m, gas, {0, 8.0, 1.5707963, 0.3}, quad, mode);
  value = cons[0].value + cons[1].value + cons[2].value + cons[3].value;
  return seconds_since(t0);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", max_threads());

  auto model = make_randers_schwarzschild(0.15, 1.0);
  auto pts = sample_admissible_points(model, 48, 2024);

  std::vector<double> serial_out, omp_out;
  const double ts = bench_bundles(model, pts, ExecMode::Serial, serial_out);
  const double tp = bench_bundles(model, pts, ExecMode::OpenMP, omp_out);
  bool identical = serial_out == omp_out;
  std::printf("%-34s serial %7.3f s   openmp %7.3f s   speedup %.2fx   identical %s\n",
              "geometry bundles (48 pts, full)", ts, tp, ts / tp, identical ? "yes" : "NO");

  double v1 = 0, v2 = 0;
  auto schw = make_schwarzschild(1.0);
  const double qs = bench_quadrature(schw, ExecMode::Serial, v1);
  const double qp = bench_quadrature(schw, ExecMode::OpenMP, v2);
  identical = v1 == v2;
  std::printf("%-34s serial %7.3f s   openmp %7.3f s   speedup %.2fx   identical %s\n",
              "fiber conservation integrals", qs, qp, qs / qp, identical ? "yes" : "NO");
  return 0;
}
