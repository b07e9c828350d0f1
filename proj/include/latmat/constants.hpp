#pragma once

// The constants c_n and C_n: extremal smallest / largest eigenvalues of X X^T over K(n), the
// n x n lower unitriangular 0/1 matrices, found by exhaustive search; the closed-form upper
// bound T_n for C_n; the two closed-form lower bounds for c_n; and the conjectured extremal
// matrix Y0 with its Gram matrix N0 = Y0 Y0^T.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <ranges>
#include <string_view>
#include <vector>

#include "latmat/matrix.hpp"

namespace latmat {

inline constexpr int kDefaultMaxSearchN = 8;
/// Largest n the bit pattern fits in 64 bits.
inline constexpr int kAbsoluteMaxSearchN = 11;

/// Search cap: LATMAT_MAX_N when set to an integer, else kDefaultMaxSearchN.
int max_search_n();

/// A member of K(n): the n(n-1)/2 strictly-lower entries packed row by row
/// ((1,0), (2,0), (2,1), (3,0), ...) into the low bits of `bits`.
struct TriangularMask {
  int n = 1;
  std::uint64_t bits = 0;

  static constexpr std::uint64_t free_entries(int n) { return static_cast<std::uint64_t>(n) * (n - 1) / 2; }
  static constexpr std::uint64_t count(int n) { return std::uint64_t{1} << free_entries(n); }

  DenseMatrix matrix() const;
  /// X X^T, built from row bitmasks with integer arithmetic.
  DenseMatrix gram() const;

  friend bool operator==(const TriangularMask&, const TriangularMask&) = default;
};

/// Throws ValidationError unless 1 <= n <= cap (or n <= kAbsoluteMaxSearchN with `ignore_cap`).
void check_search_n(int n, bool ignore_cap = false);

/// Every member of K(n) once, in ascending bit-pattern order.
inline auto enumerate_kn(int n, bool ignore_cap = false) {
  check_search_n(n, ignore_cap);
  return std::views::iota(std::uint64_t{0}, TriangularMask::count(n)) |
         std::views::transform([n](std::uint64_t b) { return TriangularMask{n, b}; });
}

enum class Extremum { min, max };
std::string_view to_string(Extremum e);

struct SearchResult {
  int n = 0;
  Extremum extremum = Extremum::min;
  double value = 0.0;
  TriangularMask witness;
  std::uint64_t matrices_scanned = 0;
};

/// Smallest (min) or largest (max) eigenvalue of X X^T for one mask.
double gram_extreme_eigenvalue(const TriangularMask& mask, Extremum extremum);

/// Reference kernel: scans bit patterns [lo, hi) in order on the calling thread.
/// Ties keep the smallest pattern.
SearchResult search_range_serial(int n, Extremum extremum, std::uint64_t lo, std::uint64_t hi);
/// OpenMP kernel over the same range; the merge is deterministic, so the result equals
/// search_range_serial bit for bit. jobs <= 0 uses the OpenMP default.
SearchResult search_range_parallel(int n, Extremum extremum, std::uint64_t lo, std::uint64_t hi, int jobs);

struct SearchOptions {
  int jobs = 1;
  /// When set, the space is split into chunks (at most 256) with one checkpoint file per chunk;
  /// finished chunks are reused on the next run and the result is appended to results.csv.
  std::filesystem::path checkpoint_dir;
  bool ignore_cap = false;
};

SearchResult search_extremum(int n, Extremum extremum, const SearchOptions& options = {});
/// c_n.
inline SearchResult search_lower_constant(int n, const SearchOptions& options = {}) {
  return search_extremum(n, Extremum::min, options);
}
/// C_n.
inline SearchResult search_upper_constant(int n, const SearchOptions& options = {}) {
  return search_extremum(n, Extremum::max, options);
}

/// One chunk of a checkpointed search.
struct Checkpoint {
  int n = 0;
  Extremum extremum = Extremum::min;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t scanned = 0;
  double best_value = 0.0;
  std::uint64_t best_pattern = 0;
};

/// Write-then-rename, so a crash never leaves a partial file under the final name.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& c);
/// nullopt when the file is missing or malformed.
std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path);
/// Appends `n,extremum,value,witness_bits,scanned` to dir/results.csv (header on creation).
void append_result_ledger(const std::filesystem::path& dir, const SearchResult& r);

/// T_n^2 as the sum (2n-1) + (2n-3) 4 + ... + 3 (n-1)^2 + n^2.
std::uint64_t tn_squared_sum(int n);
/// T_n^2 as n(n+1)(n^2+n+1)/6.
std::uint64_t tn_squared_closed(int n);
/// Upper bound for C_n.
double t_n(int n);

/// (6 / (n^4 + 2n^3 + 2n^2 + n))^((n-1)/2) = T_n^(1-n); unconditional lower bound for c_n.
double cn_lower_bound_tn(int n);
/// Lower bound for c_n valid when c_n = kappa(N0): the Frobenius norm of N0 in place of T_n.
double cn_lower_bound_n0(int n);

/// (Y0)_ij = 1 on the diagonal and below it where i + j is odd, 0 elsewhere (1-based i, j).
DenseMatrix y0_matrix(int n);
/// Y0 Y0^T.
DenseMatrix n0_matrix(int n);
double n0_frobenius(int n);
double n0_frobenius_closed_form(int n);

struct ConjectureCheck {
  int n = 0;
  bool holds = false;
  double c_n = 0.0;
  double kappa_y0 = 0.0;
};

inline constexpr double kConjectureTolerance = 1e-9;

/// |c_n - kappa(Y0 Y0^T)| <= kConjectureTolerance, with c_n from exhaustive search.
ConjectureCheck verify_conjecture(int n, const SearchOptions& options = {});

struct Table1Row {
  int n = 0;
  double bound_tn = 0.0;
  double bound_n0 = 0.0;
  double c_n = 0.0;
};

std::vector<Table1Row> table1(int n_max, const SearchOptions& options = {});
/// Columns n, both lower bounds and c_n at 6 significant digits.
void write_table1(std::ostream& out, const std::vector<Table1Row>& rows);

}  // namespace latmat
