#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace finsler {

enum class ExecMode { Serial, OpenMP };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

// Parallel map over [0, n). Each index writes only to its own output slot, so
// results are identical for both modes and any thread count. Exceptions from
// workers are captured and rethrown after the region (OpenMP would otherwise
// terminate the process).
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, ExecMode mode = ExecMode::OpenMP) {
#ifdef _OPENMP
  if (mode == ExecMode::OpenMP) {
    std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(dynamic, 1) shared(eptr)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(finsler_parallel_for_error)
        if (!eptr) eptr = std::current_exception();
      }
    }
    if (eptr) std::rethrow_exception(eptr);
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

// Pairwise summation in fixed index order; result does not depend on how the
// values were produced.
inline double pairwise_sum(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace finsler
