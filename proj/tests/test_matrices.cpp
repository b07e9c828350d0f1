#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "latmat/error.hpp"
#include "latmat/instances.hpp"
#include "latmat/lattice_matrices.hpp"
#include "latmat/matrix.hpp"
#include "oracles.hpp"

using namespace latmat;

namespace {

constexpr double kTol = 1e-10;

Poset divisors_of(std::int64_t m) {
  const std::int64_t l[] = {m};
  return divisor_lattice_of(l);
}

ElementSubset sorted_subset(const ElementSubset& s) {
  std::vector<Index> m(s.members().begin(), s.members().end());
  std::sort(m.begin(), m.end());
  return ElementSubset(s.parent(), m);
}

}  // namespace

TEST_CASE("dense matrix basics") {
  const DenseMatrix a{{1, 2}, {3, 4}};
  const DenseMatrix b{{0, 1}, {1, 0}};
  CHECK((a * b) == DenseMatrix{{2, 1}, {4, 3}});
  CHECK(a.transpose()(0, 1) == 3);
  CHECK(hadamard(a, b) == DenseMatrix{{0, 2}, {3, 0}});
  CHECK_THROWS_AS(a * DenseMatrix(3, 3), ValidationError);
  CHECK_FALSE(a.is_symmetric());
  CHECK(DenseMatrix::identity(3).is_symmetric());
}

TEST_CASE("csv round trip is bit exact") {
  DenseMatrix m(3, 2);
  m(0, 0) = 1.0 / 3.0;
  m(1, 1) = -2.5e-300;
  m(2, 0) = 12345678.901234567;
  std::stringstream io;
  write_csv(io, m);
  CHECK(read_csv(io) == m);

  std::istringstream ragged("1,2\n3\n");
  try {
    read_csv(ragged);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("GCD and LCM matrices") {
  const auto inst = first_n_integers(6);
  const auto s = inst.subset();
  const auto f = inst.function();
  const auto g = meet_matrix(s, f);
  const auto l = join_matrix(s, f);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const std::int64_t a = i + 1, b = j + 1;
      CHECK(g(i, j) == std::gcd(a, b));
      CHECK(l(i, j) == oracle::lcm(a, b));
    }
}

TEST_CASE("combined matrix entries") {
  const auto inst = first_n_integers(6);
  const Exponents e{2, 1, 1, 0};
  const auto m = combined_matrix(inst.spec(e));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const double a = i + 1, b = j + 1;
      const double g = std::gcd<std::int64_t>(i + 1, j + 1);
      const double l = oracle::lcm(i + 1, j + 1);
      CHECK(m(i, j) == doctest::Approx(g * g * l / a));
    }
  CHECK_FALSE(m.is_symmetric());
  const auto sym = combined_matrix(inst.spec({0.5, -0.5, 0.25, 0.25}));
  CHECK(sym.is_symmetric(0.0));
}

TEST_CASE("combined matrix existence clauses") {
  const auto c = chain_poset(3);
  const PosetFunction f(c, {0.0, 1.0, 2.0});
  const CombinedSpec whole{ElementSubset::whole(c), f, {1, 0, 1, 1}};
  CHECK_THROWS_AS(combined_matrix(whole), ValidationError);
  CHECK_NOTHROW(combined_matrix({ElementSubset::whole(c), f, {1, 0, 0, 0}}));
  CHECK_THROWS_AS(combined_matrix({ElementSubset::whole(c), f, {-1, 0, 0, 0}}), ValidationError);
  CHECK_THROWS_AS(combined_matrix({ElementSubset::whole(c), f, {0, -1, 0, 0}}), ValidationError);
  // S avoids the zero: the meet 0 of members never appears on a chain.
  CHECK_NOTHROW(combined_matrix({ElementSubset(c, {1, 2}), f, {-1, -1, 1, 1}}));
}

TEST_CASE("meet matrices do not need joins") {
  const std::int64_t xs[] = {1, 2, 3};
  const auto p = divisor_poset(xs);
  const auto f = PosetFunction::identity(p);
  const auto s = ElementSubset::whole(p);
  CHECK(combined_matrix({s, f, {1, 0, 0, 0}}) == DenseMatrix{{1, 1, 1}, {1, 2, 1}, {1, 1, 3}});
  CHECK_THROWS_AS(combined_matrix({s, f, {1, 1, 0, 0}}), LatticeError);
}

TEST_CASE("ideal factorization of a GCD matrix") {
  const auto inst = first_n_integers(8);
  const auto s = inst.subset();
  const auto f = inst.function();
  const auto g = factor_ideal(s, f);
  CHECK(g.support.size() == 8);  // {1..8} is already a down-set
  CHECK(relative_error(g.product(), meet_matrix(s, f)) <= kTol);
  CHECK(g.trailing_block().cols() == 0);
}

TEST_CASE("negative convolution blocks the real factor") {
  const auto c = chain_poset(3);
  const PosetFunction f(c, {2.0, 1.0, 3.0});
  try {
    factor_ideal(ElementSubset::whole(c), f);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("'2'") != std::string::npos);
  }
}

TEST_CASE("triangular factorizations") {
  const auto p = divisors_of(36);
  const auto f = PosetFunction::identity(p);
  const auto s = ElementSubset::whole(p);
  const auto m = factor_meet_closed(s, f, 1.0);
  CHECK(relative_error(m.product(), meet_matrix(s, f)) <= kTol);
  // On a divisor-closed set the diagonal is Euler's phi.
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(m.d[i] == doctest::Approx(oracle::phi(std::stoll(p.label(s[i])))));
  const auto j = factor_join_closed(s, f, -1.0);
  CHECK(relative_error(j.product(), join_matrix(s, f, -1.0)) <= kTol);

  const std::string not_closed[] = {"4", "6"};
  CHECK_THROWS_AS(factor_meet_closed(ElementSubset::from_labels(p, not_closed), f), ValidationError);
  CHECK_THROWS_AS(factor_meet_closed(order_ideal(ElementSubset::from_labels(p, not_closed)), f), ValidationError);
  const std::string not_join_closed[] = {"1", "2", "3"};
  CHECK_THROWS_AS(factor_join_closed(ElementSubset::from_labels(p, not_join_closed), f), ValidationError);
}

TEST_CASE("G matrix is all ones for semimultiplicative f") {
  const auto p = divisors_of(60);
  std::mt19937_64 rng(3);
  const PosetFunction f(p, random_multiplicative_values(p, rng));
  const auto g = g_matrix(ElementSubset::whole(p), f, 1.5);
  for (double v : g.data()) CHECK(v == doctest::Approx(1.0));
  const auto c = chain_poset(4);
  CHECK(g_matrix(ElementSubset::whole(c), PosetFunction(c, {1, 5, 2, 7}), 2.0) == DenseMatrix::ones(4));
}

TEST_CASE("structure theorems with non-semimultiplicative f") {
  const auto d = diamond_poset();
  const PosetFunction f(d, {1.0, 2.0, 3.0, 5.0, 7.0});
  const CombinedSpec spec{ElementSubset::whole(d), f, {1.5, -0.5, 0.5, 1.0}};
  const auto m = combined_matrix(spec);
  CHECK(relative_error(structure_meet(spec).product(), m) <= kTol);
  CHECK(relative_error(structure_join(spec).product(), m) <= kTol);
}

TEST_CASE("Hadamard product with diagonal factors") {
  const DenseMatrix a{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  const DenseMatrix b{{2, 0, 1}, {1, 1, 1}, {0, 3, 1}};
  const auto c = DenseMatrix::diagonal(std::vector<double>{1, -2, 3});
  const auto e = DenseMatrix::diagonal(std::vector<double>{0.5, 4, -1});
  CHECK(hadamard_diag_identity_check(a, b, c, e));
  CHECK_THROWS_AS(hadamard_diag_identity_check(a, b, a, e), ValidationError);
}

TEST_CASE("reconstruction on chains, the diamond and random divisor lattices") {
  std::mt19937_64 rng(2024);
  std::vector<Instance> instances;
  for (int k = 0; k < 5; ++k) instances.push_back(random_chain_instance(rng));
  for (int k = 0; k < 5; ++k) instances.push_back(random_diamond_instance(rng));
  for (int k = 0; k < 50; ++k) instances.push_back(random_divisor_instance(rng));
  int factored = 0;
  for (const auto& inst : instances) {
    CAPTURE(inst.name);
    const auto s = inst.subset();
    const auto f = inst.function();
    const auto e = random_exponents(rng);
    const auto spec = inst.spec(e);
    const auto m = combined_matrix(spec);
    CHECK(relative_error(structure_meet(spec).product(), m) <= kTol);
    CHECK(relative_error(structure_join(spec).product(), m) <= kTol);
    const auto ideal = sorted_subset(order_ideal(s));
    const auto filter = sorted_subset(order_filter(s));
    CHECK(relative_error(factor_meet_closed(ideal, f, 1.0).product(), meet_matrix(ideal, f)) <= kTol);
    CHECK(relative_error(factor_join_closed(filter, f, -1.0).product(), join_matrix(filter, f, -1.0)) <= kTol);
    try {
      CHECK(relative_error(factor_ideal(s, f, 1.0).product(), meet_matrix(s, f)) <= kTol);
      CHECK(relative_error(factor_filter(s, f, -1.0).product(), join_matrix(s, f, -1.0)) <= kTol);
      ++factored;
    } catch (const ValidationError&) {
      // negative convolution somewhere: no real Gram factor
    }
  }
  CHECK(factored >= 50);
}
