#include "search_kernel.hpp"

#include "latmat/error.hpp"

namespace latmat {

double gram_extreme_eigenvalue(const TriangularMask& mask, Extremum extremum) {
  if (mask.n < 1 || mask.n > kAbsoluteMaxSearchN) throw ValidationError("mask size out of range");
  return detail::extreme_eigenvalue(mask.n, mask.bits, extremum);
}

SearchResult search_range_serial(int n, Extremum extremum, std::uint64_t lo, std::uint64_t hi) {
  if (n < 1 || n > kAbsoluteMaxSearchN) throw ValidationError("search size out of range");
  if (lo >= hi || hi > TriangularMask::count(n)) throw ValidationError("empty or out-of-range pattern range");
  detail::Best best;
  for (std::uint64_t b = lo; b < hi; ++b) {
    const double v = detail::extreme_eigenvalue(n, b, extremum);
    if (detail::improves(extremum, v, b, best)) best = {v, b, true};
  }
  return detail::to_result(n, extremum, best, hi - lo);
}

}  // namespace latmat
