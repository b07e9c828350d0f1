#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "latmat/constants.hpp"
#include "latmat/error.hpp"
#include "latmat/spectra.hpp"
#include "oracles.hpp"

using namespace latmat;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("latmat-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("K(n) enumeration") {
  CHECK(std::ranges::distance(enumerate_kn(1)) == 1);
  CHECK(std::ranges::distance(enumerate_kn(2)) == 2);
  CHECK(TriangularMask::count(7) == 2097152);
  std::set<std::uint64_t> seen;
  for (const auto m : enumerate_kn(4)) {
    const auto x = m.matrix();
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(x(i, i) == 1.0);
      for (std::size_t j = i + 1; j < 4; ++j) CHECK(x(i, j) == 0.0);
    }
    seen.insert(m.bits);
  }
  CHECK(seen.size() == 64);
  CHECK_THROWS_AS(enumerate_kn(0), ValidationError);
  CHECK_THROWS_AS(enumerate_kn(kAbsoluteMaxSearchN + 1, true), ValidationError);
}

TEST_CASE("search cap") {
  CHECK_THROWS_AS(check_search_n(max_search_n() + 1), ValidationError);
  CHECK_NOTHROW(check_search_n(max_search_n() + 1 <= kAbsoluteMaxSearchN ? max_search_n() + 1 : 1, true));
}

TEST_CASE("mask packing is row by row") {
  // bits: (1,0), (2,0), (2,1)
  const TriangularMask m{3, 0b101};
  CHECK(m.matrix() == DenseMatrix{{1, 0, 0}, {1, 1, 0}, {0, 1, 1}});
  const auto x = m.matrix();
  CHECK(m.gram() == x * x.transpose());
}

TEST_CASE("c_2 is (3 - sqrt 5) / 2 with the ones-below witness") {
  const auto r = search_lower_constant(2);
  CHECK(r.value == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-12));
  CHECK(r.witness.bits == 1);
  CHECK(r.matrices_scanned == 2);
  const auto one = search_lower_constant(1);
  CHECK(one.value == 1.0);
  CHECK(search_upper_constant(1).value == 1.0);
}

TEST_CASE("witness value matches its own Gram spectrum") {
  for (int n = 2; n <= 5; ++n) {
    for (auto e : {Extremum::min, Extremum::max}) {
      const auto r = search_extremum(n, e);
      const auto s = eigen_symmetric(r.witness.gram()).eigenvalues;
      CHECK(r.value == doctest::Approx(e == Extremum::min ? s.front() : s.back()).epsilon(1e-10));
      CHECK(r.matrices_scanned == TriangularMask::count(n));
    }
  }
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
  for (int n = 1; n <= 6; ++n)
    for (auto e : {Extremum::min, Extremum::max})
      for (int jobs : {1, 2, 4}) {
        const auto total = TriangularMask::count(n);
        const auto a = search_range_serial(n, e, 0, total);
        const auto b = search_range_parallel(n, e, 0, total, jobs);
        CHECK(a.value == b.value);
        CHECK(a.witness == b.witness);
        CHECK(a.matrices_scanned == b.matrices_scanned);
      }
  // Sub-ranges too.
  const auto a = search_range_serial(5, Extremum::min, 100, 700);
  const auto b = search_range_parallel(5, Extremum::min, 100, 700, 3);
  CHECK(a.witness == b.witness);
  CHECK(a.matrices_scanned == 600);
  CHECK_THROWS_AS(search_range_serial(3, Extremum::min, 5, 4), ValidationError);
  CHECK_THROWS_AS(search_range_serial(3, Extremum::min, 0, 9), ValidationError);
}

TEST_CASE("checkpointed search resumes and logs") {
  const auto dir = fresh_dir("ckpt");
  SearchOptions o;
  o.checkpoint_dir = dir;
  const auto first = search_lower_constant(5, o);
  CHECK(first.value == search_lower_constant(5).value);
  CHECK(first.witness == search_lower_constant(5).witness);
  std::size_t chunks = 0;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".ckpt") ++chunks;
  CHECK(chunks == 256);

  // Corrupt one chunk and poison another with a fake best: the fake one is trusted on resume,
  // the corrupt one is recomputed.
  const auto victim = dir / "n5-min-0-4.ckpt";
  REQUIRE(fs::exists(victim));
  { std::ofstream(victim) << "garbage\n"; }
  const auto again = search_lower_constant(5, o);
  CHECK(again.value == first.value);
  CHECK(read_checkpoint(victim).has_value());

  auto ck = *read_checkpoint(dir / "n5-min-8-12.ckpt");
  ck.best_value = 1e-6;
  write_checkpoint(dir / "n5-min-8-12.ckpt", ck);
  CHECK(search_lower_constant(5, o).value == 1e-6);

  std::ifstream ledger(dir / "results.csv");
  std::string header, line;
  std::getline(ledger, header);
  CHECK(header == "n,extremum,value,witness_bits,scanned");
  int rows = 0;
  while (std::getline(ledger, line)) ++rows;
  CHECK(rows == 3);
  fs::remove_all(dir);
}

TEST_CASE("checkpoint round trip") {
  const auto dir = fresh_dir("rt");
  fs::create_directories(dir);
  const Checkpoint c{6, Extremum::max, 10, 20, 10, 1.0 / 3.0, 17};
  write_checkpoint(dir / "x.ckpt", c);
  const auto r = read_checkpoint(dir / "x.ckpt");
  REQUIRE(r);
  CHECK(r->best_value == c.best_value);
  CHECK(r->extremum == Extremum::max);
  CHECK(r->best_pattern == 17);
  CHECK_FALSE(fs::exists(dir / "x.ckpt.tmp"));
  CHECK_FALSE(read_checkpoint(dir / "missing.ckpt"));
  fs::remove_all(dir);
}

TEST_CASE("T_n") {
  CHECK(t_n(1) == 1.0);
  CHECK(t_n(2) == doctest::Approx(std::sqrt(7.0)));
  for (int n = 1; n <= 50; ++n) CHECK(tn_squared_sum(n) == tn_squared_closed(n));
}

TEST_CASE("closed-form lower bounds") {
  CHECK(cn_lower_bound_tn(1) == 1.0);
  CHECK(cn_lower_bound_n0(3) == doctest::Approx(1.0 / 13.0));
  CHECK(cn_lower_bound_n0(2) == doctest::Approx(cn_lower_bound_tn(2)));
  for (int n = 1; n <= 30; ++n) {
    CHECK(cn_lower_bound_tn(n) == doctest::Approx(std::pow(t_n(n), 1 - n)).epsilon(1e-12));
    CHECK(cn_lower_bound_tn(n) <= cn_lower_bound_n0(n) * (1 + 1e-12));
  }
}

TEST_CASE("Y0 and N0") {
  CHECK(y0_matrix(2) == DenseMatrix{{1, 0}, {1, 1}});
  CHECK(y0_matrix(4) == DenseMatrix{{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 1}});
  CHECK(n0_matrix(2) == DenseMatrix{{1, 1}, {1, 2}});
  CHECK(n0_frobenius_closed_form(2) == doctest::Approx(std::sqrt(7.0)));
  CHECK(n0_frobenius_closed_form(3) == doctest::Approx(std::sqrt(13.0)));
  for (int n = 1; n <= 12; ++n) {
    const auto y = y0_matrix(n);
    // Y0 belongs to K(n).
    for (int i = 0; i < n; ++i) {
      CHECK(y(i, i) == 1.0);
      for (int j = i + 1; j < n; ++j) CHECK(y(i, j) == 0.0);
    }
    const auto n0 = n0_matrix(n);
    const auto row = oracle::n0_last_row(n);
    for (int j = 0; j < n; ++j) {
      CHECK(n0(n - 1, j) == row[j]);
      CHECK(n0(j, n - 1) == row[j]);
    }
  }
  for (int n = 2; n <= 40; ++n)
    CHECK(std::abs(n0_frobenius(n) - n0_frobenius_closed_form(n)) <= 1e-12 * n0_frobenius_closed_form(n));
}

TEST_CASE("conjecture holds for small n") {
  for (int n = 1; n <= 6; ++n) {
    const auto r = verify_conjecture(n);
    CHECK(r.holds);
  }
  CHECK(verify_conjecture(3).c_n == doctest::Approx(0.198062).epsilon(1e-5));
}

TEST_CASE("table rows") {
  const auto rows = table1(5);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    const auto& expected = oracle::kTable1[r.n - 1];
    CHECK(oracle::same_to_six_digits(r.bound_tn, expected.bound_tn));
    CHECK(oracle::same_to_six_digits(r.bound_n0, expected.bound_n0));
    CHECK(std::abs(r.c_n - expected.c_n) <= 1e-5);
  }
  std::ostringstream out;
  write_table1(out, rows);
  CHECK(out.str().rfind("n,lower_bound_tn,lower_bound_n0,c_n\n1,1,1,1\n2,0.377964,0.377964,0.381966\n", 0) == 0);
}

TEST_CASE("ordering chain and positive definiteness on small n") {
  for (int n = 1; n <= 5; ++n) {
    const double c = search_lower_constant(n).value;
    const double cap = search_upper_constant(n).value;
    CHECK(cn_lower_bound_tn(n) <= cn_lower_bound_n0(n) + 1e-15);
    CHECK(cn_lower_bound_n0(n) <= c + 1e-15);
    CHECK(c <= 1.0 + 1e-12);
    CHECK(cap >= 1.0 - 1e-12);
    CHECK(cap <= t_n(n) + 1e-12);
    for (const auto m : enumerate_kn(n)) REQUIRE(eigen_symmetric(m.gram()).eigenvalues.front() > 0);
  }
  double prev = 2.0;
  for (int n = 1; n <= 6; ++n) {
    const double c = search_lower_constant(n).value;
    CHECK(c < prev);
    prev = c;
  }
}

TEST_CASE("random K(6), K(7) samples have unit determinant") {
  std::mt19937_64 rng(99);
  for (int n : {6, 7}) {
    std::uniform_int_distribution<std::uint64_t> bits(0, TriangularMask::count(n) - 1);
    for (int k = 0; k < 200; ++k) {
      const auto s = eigen_symmetric(TriangularMask{n, bits(rng)}.gram()).eigenvalues;
      double product = 1;
      for (double v : s) product *= v;
      CHECK(std::abs(product - 1.0) <= 1e-8);
    }
  }
}
