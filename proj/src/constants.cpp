#include "latmat/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "latmat/error.hpp"
#include "latmat/spectra.hpp"
#include "latmat/text.hpp"
#include "search_kernel.hpp"

namespace latmat {

namespace fs = std::filesystem;

int max_search_n() {
  if (const char* env = std::getenv("LATMAT_MAX_N")) {
    if (auto v = try_parse_integer(env); v && *v >= 1) return static_cast<int>(std::min<std::int64_t>(*v, kAbsoluteMaxSearchN));
  }
  return kDefaultMaxSearchN;
}

void check_search_n(int n, bool ignore_cap) {
  if (n < 1) throw ValidationError("search size must be at least 1, got " + std::to_string(n));
  if (n > kAbsoluteMaxSearchN)
    throw ValidationError("search size " + std::to_string(n) + " exceeds the 64-bit pattern limit " +
                          std::to_string(kAbsoluteMaxSearchN));
  if (!ignore_cap && n > max_search_n())
    throw ValidationError("search size " + std::to_string(n) + " exceeds the cap " + std::to_string(max_search_n()) +
                          " (2^" + std::to_string(TriangularMask::free_entries(n)) +
                          " matrices); set LATMAT_MAX_N or pass --i-know");
}

std::string_view to_string(Extremum e) { return e == Extremum::min ? "min" : "max"; }

DenseMatrix TriangularMask::matrix() const {
  const auto rows = detail::mask_rows(n, bits);
  DenseMatrix x(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = (rows[i] >> j) & 1u ? 1.0 : 0.0;
  return x;
}

DenseMatrix TriangularMask::gram() const {
  const auto rows = detail::mask_rows(n, bits);
  DenseMatrix g(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = static_cast<double>(std::popcount(rows[i] & rows[j]));
  return g;
}

// ---------------------------------------------------------------------------
// Checkpointed search

void write_checkpoint(const fs::path& path, const Checkpoint& c) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint '" + tmp.string() + "'");
    out << "latmat-checkpoint 1\n"
        << "n " << c.n << '\n'
        << "extremum " << to_string(c.extremum) << '\n'
        << "lo " << c.lo << '\n'
        << "hi " << c.hi << '\n'
        << "scanned " << c.scanned << '\n'
        << "best_value " << format_real(c.best_value) << '\n'
        << "best_pattern " << c.best_pattern << '\n';
    out.flush();
    if (!out) throw Error("failed writing checkpoint '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::optional<Checkpoint> read_checkpoint(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || trim(line) != "latmat-checkpoint 1") return std::nullopt;
  std::map<std::string, std::string> fields;
  while (std::getline(in, line)) {
    const auto parts = split(line, " \t");
    if (parts.size() != 2) return std::nullopt;
    fields[parts[0]] = parts[1];
  }
  for (const char* key : {"n", "extremum", "lo", "hi", "scanned", "best_value", "best_pattern"})
    if (!fields.count(key)) return std::nullopt;
  Checkpoint c;
  const auto n = try_parse_integer(fields["n"]);
  const auto lo = try_parse_integer(fields["lo"]);
  const auto hi = try_parse_integer(fields["hi"]);
  const auto scanned = try_parse_integer(fields["scanned"]);
  const auto pattern = try_parse_integer(fields["best_pattern"]);
  const auto value = try_parse_real(fields["best_value"]);
  if (!n || !lo || !hi || !scanned || !pattern || !value) return std::nullopt;
  if (fields["extremum"] != "min" && fields["extremum"] != "max") return std::nullopt;
  c.n = static_cast<int>(*n);
  c.extremum = fields["extremum"] == "min" ? Extremum::min : Extremum::max;
  c.lo = static_cast<std::uint64_t>(*lo);
  c.hi = static_cast<std::uint64_t>(*hi);
  c.scanned = static_cast<std::uint64_t>(*scanned);
  c.best_value = *value;
  c.best_pattern = static_cast<std::uint64_t>(*pattern);
  return c;
}

void append_result_ledger(const fs::path& dir, const SearchResult& r) {
  const auto path = dir / "results.csv";
  const bool fresh = !fs::exists(path);
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot append to '" + path.string() + "'");
  if (fresh) out << "n,extremum,value,witness_bits,scanned\n";
  out << r.n << ',' << to_string(r.extremum) << ',' << format_real(r.value) << ',' << r.witness.bits << ','
      << r.matrices_scanned << '\n';
}

SearchResult search_extremum(int n, Extremum extremum, const SearchOptions& options) {
  check_search_n(n, options.ignore_cap);
  const std::uint64_t total = TriangularMask::count(n);
  if (options.checkpoint_dir.empty()) return search_range_parallel(n, extremum, 0, total, options.jobs);

  fs::create_directories(options.checkpoint_dir);
  const std::uint64_t chunks = std::min<std::uint64_t>(256, total);
  const std::uint64_t chunk_size = (total + chunks - 1) / chunks;
  detail::Best best;
  std::uint64_t scanned = 0;
  for (std::uint64_t lo = 0; lo < total; lo += chunk_size) {
    const std::uint64_t hi = std::min(total, lo + chunk_size);
    std::ostringstream name;
    name << 'n' << n << '-' << to_string(extremum) << '-' << lo << '-' << hi << ".ckpt";
    const auto path = options.checkpoint_dir / name.str();
    auto ck = read_checkpoint(path);
    if (!ck || ck->n != n || ck->extremum != extremum || ck->lo != lo || ck->hi != hi || ck->scanned != hi - lo) {
      const auto r = search_range_parallel(n, extremum, lo, hi, options.jobs);
      ck = Checkpoint{n, extremum, lo, hi, r.matrices_scanned, r.value, r.witness.bits};
      write_checkpoint(path, *ck);
    }
    detail::merge_into(extremum, best, detail::Best{ck->best_value, ck->best_pattern, true});
    scanned += ck->scanned;
  }
  const auto result = detail::to_result(n, extremum, best, scanned);
  append_result_ledger(options.checkpoint_dir, result);
  return result;
}

// ---------------------------------------------------------------------------
// Closed forms

std::uint64_t tn_squared_sum(int n) {
  if (n < 1) throw ValidationError("T_n needs n >= 1");
  std::uint64_t sum = 0;
  for (std::uint64_t k = 1; k <= static_cast<std::uint64_t>(n); ++k) sum += (2 * (n - k) + 1) * k * k;
  return sum;
}

std::uint64_t tn_squared_closed(int n) {
  if (n < 1) throw ValidationError("T_n needs n >= 1");
  const auto m = static_cast<std::uint64_t>(n);
  return m * (m + 1) * (m * m + m + 1) / 6;
}

double t_n(int n) { return std::sqrt(static_cast<double>(tn_squared_closed(n))); }

double cn_lower_bound_tn(int n) {
  if (n < 1) throw ValidationError("bound needs n >= 1");
  const double m = n;
  return std::pow(6.0 / (m * m * m * m + 2 * m * m * m + 2 * m * m + m), (m - 1) / 2);
}

namespace {

// 48 ||N0||_F^2 as an exact integer.
std::int64_t n0_frobenius_squared_times_48(int n) {
  const std::int64_t m = n;
  return n % 2 == 0 ? m * m * m * m + 56 * m * m + 48 * m : m * m * m * m + 50 * m * m + 48 * m - 51;
}

}  // namespace

double cn_lower_bound_n0(int n) {
  if (n < 1) throw ValidationError("bound needs n >= 1");
  return std::pow(48.0 / static_cast<double>(n0_frobenius_squared_times_48(n)), (n - 1) / 2.0);
}

DenseMatrix y0_matrix(int n) {
  if (n < 1) throw ValidationError("Y0 needs n >= 1");
  DenseMatrix y(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) y(i - 1, j - 1) = (j == i || (i + j) % 2 == 1) ? 1.0 : 0.0;
  return y;
}

DenseMatrix n0_matrix(int n) {
  const auto y = y0_matrix(n);
  return y * y.transpose();
}

double n0_frobenius(int n) { return frobenius_norm(n0_matrix(n)); }

double n0_frobenius_closed_form(int n) {
  if (n < 1) throw ValidationError("N0 needs n >= 1");
  return std::sqrt(static_cast<double>(n0_frobenius_squared_times_48(n)) / 48.0);
}

ConjectureCheck verify_conjecture(int n, const SearchOptions& options) {
  const auto search = search_lower_constant(n, options);
  const double k = kappa(n0_matrix(n));
  return {n, std::abs(search.value - k) <= kConjectureTolerance, search.value, k};
}

std::vector<Table1Row> table1(int n_max, const SearchOptions& options) {
  check_search_n(n_max, options.ignore_cap);
  std::vector<Table1Row> rows;
  for (int n = 1; n <= n_max; ++n)
    rows.push_back({n, cn_lower_bound_tn(n), cn_lower_bound_n0(n), search_lower_constant(n, options).value});
  return rows;
}

void write_table1(std::ostream& out, const std::vector<Table1Row>& rows) {
  out << "n,lower_bound_tn,lower_bound_n0,c_n\n";
  for (const auto& r : rows)
    out << r.n << ',' << format_real(r.bound_tn, 6) << ',' << format_real(r.bound_n0, 6) << ','
        << format_real(r.c_n, 6) << '\n';
}

}  // namespace latmat
