#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "latmat/bounds.hpp"
#include "latmat/error.hpp"
#include "latmat/instances.hpp"
#include "latmat/spectra.hpp"
#include "oracles.hpp"

using namespace latmat;

namespace {

// Searches repeat across cases; keep them.
ConstantValue exact_c(int n) {
  static std::map<int, ConstantValue> seen;
  auto it = seen.find(n);
  if (it == seen.end()) it = seen.emplace(n, lower_constant(n, ConstantSource::exact_search)).first;
  return it->second;
}
ConstantValue exact_upper(int n) {
  static std::map<int, ConstantValue> seen;
  auto it = seen.find(n);
  if (it == seen.end()) it = seen.emplace(n, upper_constant(n, ConstantSource::exact_search)).first;
  return it->second;
}

std::string hypothesis_message(auto&& call) {
  try {
    call();
  } catch (const HypothesisError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("2x2 GCD matrix meets the bound with equality") {
  const std::int64_t xs[] = {1, 2};
  const auto p = divisor_poset(xs);
  const CombinedSpec spec{ElementSubset::whole(p), PosetFunction::identity(p), {1, 0, 0, 0}};
  const auto r = lower_bound_meet(spec, exact_c(2));
  const double golden = (3 - std::sqrt(5.0)) / 2;
  CHECK(std::abs(r.bound - golden) <= 1e-12);
  CHECK(std::abs(r.true_kappa - golden) <= 1e-12);
  CHECK(r.holds);
  CHECK(r.min_conv == 1.0);
  CHECK(r.min_fpow == 1.0);
}

TEST_CASE("singleton") {
  const std::int64_t xs[] = {1};
  const auto p = divisor_poset(xs);
  const CombinedSpec spec{ElementSubset::whole(p), PosetFunction::identity(p), {1, 0, 0, 0}};
  const auto r = lower_bound_meet(spec, exact_c(1));
  CHECK(r.bound == 1.0);
  CHECK(r.true_kappa == doctest::Approx(1.0));
}

TEST_CASE("hypothesis violations are reported") {
  const auto c = chain_poset(3);
  const auto s = ElementSubset::whole(c);

  const auto negative = hypothesis_message([&] { lower_bound_meet({s, PosetFunction(c, {2.0, 1.0, 3.0}), {1, 0, 0, 0}}, exact_c(3)); });
  CHECK(negative.find("violated at w = '2'") != std::string::npos);

  CHECK_THROWS_AS(lower_bound_meet({s, PosetFunction(c, {1, 2, 3}), {1, 0, 0.5, 0.25}}, exact_c(3)), HypothesisError);

  // A zero of f above S is harmless when beta = gamma = 0, not otherwise.
  const std::string low[] = {"1", "2"};
  const auto s2 = ElementSubset::from_labels(c, low);
  const PosetFunction top_zero(c, {1.0, 2.0, 0.0});
  CHECK_NOTHROW(lower_bound_meet({s2, top_zero, {1, 0, 0, 0}}, exact_c(2)));
  const auto zero = hypothesis_message([&] { lower_bound_meet({s2, top_zero, {1, 0, 0.5, 0.5}}, exact_c(2)); });
  CHECK(zero.find("f('3') = 0") != std::string::npos);

  const auto d = diamond_poset();
  const PosetFunction skew(d, {1.0, 2.0, 3.0, 5.0, 12.0});
  const auto semi = hypothesis_message([&] { lower_bound_meet({ElementSubset::whole(d), skew, {1, 0.5, 0, 0}}, exact_c(5)); });
  CHECK(semi.find("semimultiplicative") != std::string::npos);
  CHECK(semi.find("x = 'a', y = 'b'") != std::string::npos);
  // beta = 0: semimultiplicativity is not needed on the meet side.
  CHECK_NOTHROW(lower_bound_meet({ElementSubset::whole(d), skew, {1, 0, 0, 0}}, exact_c(5)));
}

TEST_CASE("join side is the meet side of the dual lattice") {
  const auto c = chain_poset(5);
  const PosetFunction f(c, {16.0, 8.0, 4.0, 2.0, 1.0});
  const std::string labels[] = {"2", "4", "5"};
  const auto s = ElementSubset::from_labels(c, labels);
  const Exponents e{0.5, 1.5, 0.5, 0.5};
  const auto join = lower_bound_join({s, f, e}, exact_c(3));

  const auto d = c.dual();
  std::vector<double> dv(d.size());
  for (Index k = 0; k < c.size(); ++k) dv[d.index_of(c.label(k))] = f(k);
  const auto meet = lower_bound_meet({relabel(s, d), PosetFunction(d, dv), {e.beta, e.alpha, e.gamma, e.delta}}, exact_c(3));
  CHECK(join.bound == doctest::Approx(meet.bound).epsilon(1e-12));
  CHECK(join.true_kappa == doctest::Approx(meet.true_kappa).epsilon(1e-12));
  CHECK(join.holds);
}

TEST_CASE("bounds hold on random instances") {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int k = 0; k < 80; ++k) {
    const auto inst = random_instance(rng);
    const auto spec = inst.spec(random_exponents(rng));
    const auto c = exact_c(static_cast<int>(inst.members.size()));
    for (auto side : {ClosedSide::meet, ClosedSide::join}) {
      try {
        const auto r = side == ClosedSide::meet ? lower_bound_meet(spec, c) : lower_bound_join(spec, c);
        CAPTURE(inst.name);
        CHECK(r.holds);
        CHECK(r.bound > 0);
        ++checked;
      } catch (const HypothesisError&) {
      }
    }
  }
  CHECK(checked >= 40);
}

TEST_CASE("weaker constants give weaker bounds") {
  const auto inst = first_n_integers(5);
  const auto spec = inst.spec({1, 0, 0, 0});
  const auto exact = lower_bound_meet(spec, exact_c(5));
  const auto tn = lower_bound_meet(spec, lower_constant(5, ConstantSource::tn_lower_bound));
  const auto n0 = lower_bound_meet(spec, lower_constant(5, ConstantSource::n0_lower_bound));
  CHECK(tn.bound <= n0.bound);
  CHECK(n0.bound <= exact.bound);
  CHECK(exact.holds);
  CHECK(lower_constant(5, ConstantSource::conjectural_y0).value == doctest::Approx(exact.c.value).epsilon(1e-10));
  CHECK_THROWS_AS(lower_constant(5, ConstantSource::user_value), ValidationError);
  CHECK_THROWS_AS(upper_constant(5, ConstantSource::tn_lower_bound), ValidationError);
  CHECK(upper_constant(5, ConstantSource::tn_upper_bound).value == doctest::Approx(t_n(5)));
}

TEST_CASE("GCD matrix region") {
  for (int n = 1; n <= 6; ++n) {
    const auto inst = first_n_integers(n);
    const auto r = region_meet_closed(inst.spec({1, 0, 0, 0}), exact_upper(n));
    CHECK(r.contained);
    for (int i = 1; i <= n; ++i) CHECK(r.d_values[i - 1] == doctest::Approx(oracle::phi(i)));
  }
}

TEST_CASE("reciprocal matrix lcm/gcd") {
  for (int n = 2; n <= 6; ++n) {
    const auto inst = first_n_integers(n);
    const auto r = region_meet_closed(inst.spec({-1, 1, 0, 0}), exact_upper(n));
    for (const auto& d : r.discs) CHECK(d.center == doctest::Approx(1.0));
    CHECK(r.contained);
    const auto [lo, hi] = interval_from_discs(r);
    const auto [elo, ehi] = gcd_lcm_power_interval(n, -1, 1, exact_upper(n).value);
    CHECK(lo == doctest::Approx(elo).epsilon(1e-12));
    CHECK(hi == doctest::Approx(ehi).epsilon(1e-12));
  }
}

TEST_CASE("power GCD and LCM regions match the closed interval") {
  for (double alpha : {0.5, 1.0, 2.0})
    for (int n = 1; n <= 6; ++n) {
      const auto inst = first_n_integers(n);
      for (auto e : {Exponents{alpha, 0, 0, 0}, Exponents{0, alpha, 0, 0}}) {
        const auto r = region_meet_closed(inst.spec(e), exact_upper(n));
        CHECK(r.contained);
        const auto [lo, hi] = interval_from_discs(r);
        const auto [elo, ehi] = gcd_lcm_power_interval(n, e.alpha, e.beta, exact_upper(n).value);
        CHECK(lo == doctest::Approx(elo).epsilon(1e-12));
        CHECK(hi == doctest::Approx(ehi).epsilon(1e-12));
      }
    }
}

TEST_CASE("join-closed region") {
  const std::int64_t l[] = {12};
  const auto p = divisor_lattice_of(l);
  const std::string labels[] = {"4", "6", "12"};
  const auto s = ElementSubset::from_labels(p, labels);
  const auto r = region_join_closed({s, PosetFunction::identity(p), {1, -1, 0, 0}}, exact_upper(3));
  CHECK(r.contained);
  CHECK_THROWS_AS(region_meet_closed({s, PosetFunction::identity(p), {1, -1, 0, 0}}, exact_upper(3)), HypothesisError);
}

TEST_CASE("chains are closed both ways") {
  const auto c = chain_poset(4);
  const PosetFunction f(c, {1.0, 3.0, 4.0, 9.0});
  const auto s = ElementSubset::whole(c);
  const CombinedSpec spec{s, f, {1, 0.5, 0.5, 0.5}};
  CHECK(region_meet_closed(spec, exact_upper(4)).contained);
  CHECK(region_join_closed(spec, exact_upper(4)).contained);
}

TEST_CASE("ratio condition") {
  const auto d = diamond_poset();
  const PosetFunction f(d, {1.0, 2.0, 2.0, 2.0, 5.0});  // f(0) f(1) > f(a) f(b)
  const auto s = ElementSubset::whole(d);
  CHECK_NOTHROW(region_meet_closed({s, f, {1, 0, 0, 0}}, exact_upper(5)));
  const auto msg = hypothesis_message([&] { region_meet_closed({s, f, {1, 0.5, 0, 0}}, exact_upper(5)); });
  CHECK(msg.find("^b <= 1") != std::string::npos);
  CHECK_NOTHROW(region_meet_closed({s, f, {1, -0.5, 0, 0}}, exact_upper(5)));
}

TEST_CASE("interval from discs") {
  RegionReport r;
  r.discs = {{1.0, 0.25}};
  CHECK(interval_from_discs(r) == std::pair{0.75, 1.25});
  r.discs = {{1.0, -0.5}, {3.0, 1.0}};
  CHECK(interval_from_discs(r) == std::pair{2.0, 4.0});
  r.discs = {{1.0, -0.5}};
  CHECK_THROWS_AS(interval_from_discs(r), ValidationError);
  CHECK_THROWS_AS(gcd_lcm_power_interval(0, 1, 0, 1), ValidationError);
}

TEST_CASE("report fields") {
  const auto inst = first_n_integers(3);
  std::ostringstream out;
  write_report(out, lower_bound_meet(inst.spec({1, 0, 0, 0}), exact_c(3)));
  for (const char* key : {"side=meet", "bound=", "c_value=", "c_source=exact", "min_conv=", "min_fpow=", "true_kappa=", "holds=true"})
    CHECK(out.str().find(key) != std::string::npos);
  std::ostringstream region;
  write_report(region, region_meet_closed(inst.spec({1, 0, 0, 0}), exact_upper(3)));
  for (const char* key : {"C_value=", "H=", "d_values=1,1,2", "interval_lo=", "contained=true", "disc,center,radius\n1,1,"})
    CHECK(region.str().find(key) != std::string::npos);
}
