#pragma once

// Per-mask kernel shared by the serial and OpenMP searches.

#include <array>
#include <bit>
#include <cstdint>

#include "latmat/constants.hpp"
#include "latmat/spectra.hpp"

namespace latmat::detail {

struct Best {
  double value = 0.0;
  std::uint64_t pattern = 0;
  bool valid = false;
};

/// Strictly better value, or equal value with a smaller pattern.
inline bool improves(Extremum e, double value, std::uint64_t pattern, const Best& best) {
  if (!best.valid) return true;
  if (value == best.value) return pattern < best.pattern;
  return e == Extremum::min ? value < best.value : value > best.value;
}

inline void merge_into(Extremum e, Best& into, const Best& from) {
  if (from.valid && improves(e, from.value, from.pattern, into)) into = from;
}

/// Row i of X as a bitmask over columns (bit i set for the unit diagonal).
inline std::array<std::uint32_t, kAbsoluteMaxSearchN> mask_rows(int n, std::uint64_t bits) {
  std::array<std::uint32_t, kAbsoluteMaxSearchN> rows{};
  int k = 0;
  for (int i = 0; i < n; ++i) {
    rows[i] = std::uint32_t{1} << i;
    for (int j = 0; j < i; ++j, ++k)
      if ((bits >> k) & 1u) rows[i] |= std::uint32_t{1} << j;
  }
  return rows;
}

inline double extreme_eigenvalue(int n, std::uint64_t bits, Extremum e) {
  const auto rows = mask_rows(n, bits);
  std::array<double, kAbsoluteMaxSearchN * kAbsoluteMaxSearchN> a{};
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      a[i * un + j] = a[j * un + i] = static_cast<double>(std::popcount(rows[i] & rows[j]));
  jacobi_diagonalize(std::span<double>(a.data(), un * un), un);
  double v = a[0];
  for (std::size_t i = 1; i < un; ++i) {
    const double d = a[i * un + i];
    v = e == Extremum::min ? std::min(v, d) : std::max(v, d);
  }
  return v;
}

inline SearchResult to_result(int n, Extremum e, const Best& best, std::uint64_t scanned) {
  return {n, e, best.value, TriangularMask{n, best.pattern}, scanned};
}

}  // namespace latmat::detail
