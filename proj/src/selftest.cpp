#include "latmat/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "latmat/bounds.hpp"
#include "latmat/constants.hpp"
#include "latmat/error.hpp"
#include "latmat/instances.hpp"
#include "latmat/number_theory.hpp"
#include "latmat/spectra.hpp"
#include "latmat/text.hpp"

namespace latmat {

namespace {

constexpr double kReconstructTol = 1e-10;

struct Tally {
  int checked = 0;
  int failed = 0;
  int skipped = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) first_failure = what;
  }

  CheckResult result(std::string name) const {
    std::string detail = std::to_string(checked) + " checked";
    if (skipped) detail += ", " + std::to_string(skipped) + " skipped";
    if (failed) detail += ", " + std::to_string(failed) + " failed (first: " + first_failure + ")";
    return {std::move(name), failed == 0 && checked > 0, detail};
  }
};

std::vector<Instance> make_instances(const SelftestOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<Instance> out;
  for (int i = 0; i < o.instances; ++i) out.push_back(random_instance(rng));
  return out;
}

CheckResult check_mobius(const std::vector<Instance>& instances) {
  Tally t;
  for (const auto& inst : instances) {
    const auto& p = *inst.poset;
    bool ok = mobius(p) == p.mobius();
    if (inst.name.starts_with("divisors"))
      for (Index z = 0; z < p.size(); ++z)
        for (Index w = 0; w < p.size(); ++w)
          if (p.leq(z, w)) ok = ok && p.mobius()(z, w) == mobius_mu(std::stoll(p.label(w)) / std::stoll(p.label(z)));
    t.record(ok, inst.name);
  }
  return t.result("mobius");
}

CheckResult check_gram_factorizations(const std::vector<Instance>& instances) {
  Tally t;
  for (const auto& inst : instances) {
    const auto s = inst.subset();
    const auto f = inst.function();
    // A real factor needs nonnegative convolution values; the diamond can violate that.
    try {
      const auto ideal = factor_ideal(s, f, 1.0);
      t.record(relative_error(ideal.product(), meet_matrix(s, f, 1.0)) <= kReconstructTol, inst.name + " ideal");
    } catch (const ValidationError&) {
      ++t.skipped;
    }
    try {
      const auto filter = factor_filter(s, f, -1.0);
      t.record(relative_error(filter.product(), join_matrix(s, f, -1.0)) <= kReconstructTol, inst.name + " filter");
    } catch (const ValidationError&) {
      ++t.skipped;
    }
  }
  return t.result("gram-factorizations");
}

CheckResult check_triangular_factorizations(const std::vector<Instance>& instances) {
  Tally t;
  for (const auto& inst : instances) {
    const auto s = ElementSubset::whole(*inst.poset);
    const auto f = inst.function();
    t.record(relative_error(factor_meet_closed(s, f, 1.0).product(), meet_matrix(s, f, 1.0)) <= kReconstructTol,
             inst.name + " meet");
    t.record(relative_error(factor_join_closed(s, f, -1.0).product(), join_matrix(s, f, -1.0)) <= kReconstructTol,
             inst.name + " join");
  }
  return t.result("triangular-factorizations");
}

CheckResult check_structure(const std::vector<Instance>& instances, std::mt19937_64& rng) {
  Tally t;
  for (const auto& inst : instances) {
    auto e = random_exponents(rng);
    e.delta = e.gamma + 0.5;  // the structure theorems do not need gamma = delta
    const auto spec = inst.spec(e);
    const auto m = combined_matrix(spec);
    t.record(relative_error(structure_meet(spec).product(), m) <= kReconstructTol, inst.name + " meet");
    t.record(relative_error(structure_join(spec).product(), m) <= kReconstructTol, inst.name + " join");
  }
  return t.result("structure-theorems");
}

CheckResult check_hadamard(std::mt19937_64& rng) {
  Tally t;
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 1 + rep % 6;
    DenseMatrix a(n, n), b(n, n);
    std::vector<double> c(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = u(rng);
      d[i] = u(rng);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = u(rng);
        b(i, j) = u(rng);
      }
    }
    t.record(hadamard_diag_identity_check(a, b, DenseMatrix::diagonal(c), DenseMatrix::diagonal(d)),
             "n = " + std::to_string(n));
  }
  return t.result("hadamard-diagonal");
}

CheckResult check_kn_determinant(int max_n) {
  Tally t;
  for (int n = 1; n <= max_n; ++n)
    for (const auto mask : enumerate_kn(n)) {
      const auto g = mask.gram();
      const auto spec = eigen_symmetric(g);
      double product = 1.0;
      for (double v : spec.eigenvalues) product *= v;
      t.record(std::abs(product - 1.0) <= 1e-8 && spec.eigenvalues.front() > 0,
               "n = " + std::to_string(n) + ", bits = " + std::to_string(mask.bits));
    }
  return t.result("kn-determinant");
}

CheckResult check_constants(int max_n) {
  Tally t;
  for (int n = 1; n <= max_n; ++n) {
    const double lo52 = cn_lower_bound_tn(n);
    const double lo53 = cn_lower_bound_n0(n);
    const double c = search_lower_constant(n).value;
    const double cap = search_upper_constant(n).value;
    const double slack = 1e-12;
    t.record(lo52 <= lo53 + slack && lo53 <= c + slack && c <= 1 + slack && 1 <= cap + slack && cap <= t_n(n) + slack,
             "n = " + std::to_string(n));
    t.record(std::abs(c - kappa(n0_matrix(n))) <= kConjectureTolerance, "conjecture n = " + std::to_string(n));
  }
  for (int n = 1; n <= 50; ++n) t.record(tn_squared_sum(n) == tn_squared_closed(n), "T_n n = " + std::to_string(n));
  for (int n = 1; n <= 40; ++n)
    t.record(std::abs(n0_frobenius(n) - n0_frobenius_closed_form(n)) <= 1e-12 * n0_frobenius_closed_form(n),
             "N0 n = " + std::to_string(n));
  return t.result("constants");
}

CheckResult check_search_kernels() {
  Tally t;
  for (int n = 1; n <= 4; ++n)
    for (auto e : {Extremum::min, Extremum::max}) {
      const auto total = TriangularMask::count(n);
      const auto a = search_range_serial(n, e, 0, total);
      const auto b = search_range_parallel(n, e, 0, total, 3);
      t.record(a.value == b.value && a.witness == b.witness && a.matrices_scanned == b.matrices_scanned,
               "n = " + std::to_string(n) + " " + std::string(to_string(e)));
    }
  return t.result("serial-vs-parallel");
}

ConstantValue c_for(std::size_t n, int max_n) {
  if (static_cast<int>(n) <= max_n) return lower_constant(static_cast<int>(n), ConstantSource::exact_search);
  return lower_constant(static_cast<int>(n), ConstantSource::tn_lower_bound);
}

CheckResult check_bounds(const std::vector<Instance>& instances, std::mt19937_64& rng, int max_n) {
  Tally t;
  for (const auto& inst : instances) {
    const auto spec = inst.spec(random_exponents(rng));
    const auto c = c_for(inst.members.size(), max_n);
    for (auto bound : {&lower_bound_meet, &lower_bound_join}) {
      try {
        const auto r = bound(spec, c);
        t.record(r.holds, inst.name + ": bound " + format_real(r.bound, 8) + " > kappa " + format_real(r.true_kappa, 8));
      } catch (const HypothesisError&) {
        ++t.skipped;
      }
    }
  }
  return t.result("lower-bound-soundness");
}

CheckResult check_regions(const std::vector<Instance>& instances, std::mt19937_64& rng) {
  Tally t;
  for (const auto& inst : instances) {
    auto e = random_exponents(rng);
    const auto s = inst.subset();
    const auto f = inst.function();
    const ElementSubset sides[] = {order_ideal(s), order_filter(s)};
    for (int k = 0; k < 2; ++k) {
      // Members of an ideal or filter in S-first order need not follow the lattice order.
      std::vector<Index> members(sides[k].members().begin(), sides[k].members().end());
      std::sort(members.begin(), members.end());
      const CombinedSpec spec{ElementSubset(*inst.poset, members), f, e};
      const auto c = upper_constant(static_cast<int>(members.size()), ConstantSource::tn_upper_bound);
      try {
        const auto r = k == 0 ? region_meet_closed(spec, c) : region_join_closed(spec, c);
        t.record(r.contained, inst.name + (k == 0 ? " meet" : " join"));
      } catch (const HypothesisError&) {
        ++t.skipped;
      }
    }
  }
  return t.result("region-soundness");
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  const auto instances = make_instances(options);
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  const std::pair<const char*, std::function<CheckResult()>> checks[] = {
      {"mobius", [&] { return check_mobius(instances); }},
      {"gram-factorizations", [&] { return check_gram_factorizations(instances); }},
      {"triangular-factorizations", [&] { return check_triangular_factorizations(instances); }},
      {"structure-theorems", [&] { return check_structure(instances, rng); }},
      {"hadamard-diagonal", [&] { return check_hadamard(rng); }},
      {"kn-determinant", [&] { return check_kn_determinant(options.max_n); }},
      {"constants", [&] { return check_constants(options.max_n); }},
      {"serial-vs-parallel", [&] { return check_search_kernels(); }},
      {"lower-bound-soundness", [&] { return check_bounds(instances, rng, options.max_n); }},
      {"region-soundness", [&] { return check_regions(instances, rng); }},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, check] : checks) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("aborted: ") + e.what()});
    }
  }
  return out;
}

bool print_results(std::ostream& out, const std::vector<CheckResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  return all;
}

}  // namespace latmat
