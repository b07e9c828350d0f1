#include "search_kernel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "latmat/error.hpp"

namespace latmat {

SearchResult search_range_parallel(int n, Extremum extremum, std::uint64_t lo, std::uint64_t hi, int jobs) {
  if (n < 1 || n > kAbsoluteMaxSearchN) throw ValidationError("search size out of range");
  if (lo >= hi || hi > TriangularMask::count(n)) throw ValidationError("empty or out-of-range pattern range");
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  if (threads == 1) return search_range_serial(n, extremum, lo, hi);
  detail::Best best;
#pragma omp parallel num_threads(threads)
  {
    detail::Best local;
#pragma omp for schedule(static)
    for (std::uint64_t b = lo; b < hi; ++b) {
      const double v = detail::extreme_eigenvalue(n, b, extremum);
      if (detail::improves(extremum, v, b, local)) local = {v, b, true};
    }
#pragma omp critical(latmat_search_merge)
    detail::merge_into(extremum, best, local);
  }
  return detail::to_result(n, extremum, best, hi - lo);
#else
  (void)jobs;
  return search_range_serial(n, extremum, lo, hi);
#endif
}

}  // namespace latmat
