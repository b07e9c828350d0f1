#include "latmat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "latmat/error.hpp"
#include "latmat/number_theory.hpp"
#include "latmat/spectra.hpp"
#include "latmat/text.hpp"

namespace latmat {

namespace {

std::string quoted(const Poset& p, Index x) { return "'" + p.label(x) + "'"; }

const char* side_name(ClosedSide side) { return side == ClosedSide::meet ? "meet" : "join"; }

void require_symmetric_exponents(const CombinedSpec& spec, const char* what) {
  if (spec.exponents.gamma != spec.exponents.delta)
    throw HypothesisError(std::string(what) + " requires gamma = delta");
  if (spec.subset.size() == 0) throw ValidationError(std::string(what) + " needs a non-empty set S");
}

void require_nonzero(const PosetFunction& f, const std::string& what) {
  const auto& p = f.parent();
  for (Index z = 0; z < p.size(); ++z)
    if (f(z) == 0.0) throw HypothesisError(what + " requires f to be nonzero on the lattice; f(" + quoted(p, z) + ") = 0");
}

void require_semimultiplicative(const PosetFunction& f, const std::string& what) {
  if (is_semimultiplicative(f)) return;
  const auto& p = f.parent();
  for (Index x = 0; x < p.size(); ++x)
    for (Index y = x + 1; y < p.size(); ++y) {
      const double lhs = f(x) * f(y);
      const double rhs = f(p.meet(x, y)) * f(p.join(x, y));
      if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs)))
        throw HypothesisError(what + " requires f to be semimultiplicative; f(x)f(y) = " + format_real(lhs, 12) +
                              " but f(x^y)f(xvy) = " + format_real(rhs, 12) + " for x = " + quoted(p, x) +
                              ", y = " + quoted(p, y));
    }
  throw HypothesisError(what + " requires f to be semimultiplicative");
}

BoundReport lower_bound(const CombinedSpec& spec, ConstantValue c, ClosedSide side) {
  const bool meet = side == ClosedSide::meet;
  const std::string what = std::string("lower bound (") + side_name(side) + " side)";
  require_symmetric_exponents(spec, what.c_str());
  const auto& s = spec.subset;
  const auto& p = s.parent();
  const auto& f = spec.f;
  const auto& [alpha, beta, gamma, delta] = spec.exponents;
  // The exponent that couples f to the opposite lattice operation.
  const double other = meet ? beta : alpha;
  if (!(other == 0.0 && gamma == 0.0)) require_nonzero(f, what);
  if (other != 0.0) require_semimultiplicative(f, what);

  const double conv_exponent = meet ? alpha - beta : beta - alpha;
  const auto conv = meet ? down_convolution(f, conv_exponent, s) : up_convolution(f, conv_exponent, s);
  for (std::size_t k = 0; k < conv.support.size(); ++k)
    if (!(conv.entries[k] > 0.0))
      throw HypothesisError(what + " requires " +
                            (meet ? "(f_d^(a-b) * mu)(0, w) > 0 for every w in the down-set of S"
                                  : "(mu * f_u^(b-a))(w, 1) > 0 for every w in the up-set of S") +
                            "; violated at w = " + quoted(p, conv.support[k]) + " (value " +
                            format_real(conv.entries[k], 12) + ")");

  BoundReport r;
  r.side = side;
  r.c = c;
  r.min_conv = std::numeric_limits<double>::infinity();
  r.min_fpow = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    r.min_conv = std::min(r.min_conv, conv.entries[i]);  // S comes first in the support
    r.min_fpow = std::min(r.min_fpow, power_value(f(s[i]) * f(s[i]), other - gamma));
  }
  r.bound = c.value * r.min_conv * r.min_fpow;
  r.true_kappa = kappa(combined_matrix(spec));
  r.holds = r.bound <= r.true_kappa + kBoundTolerance * std::max(1.0, std::abs(r.true_kappa));
  return r;
}

void check_ratio_condition(const CombinedSpec& spec, double exponent, const char* name, const std::string& what) {
  if (exponent == 0.0) return;
  const auto& s = spec.subset;
  const auto& p = s.parent();
  const auto& f = spec.f;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) {
      const double den = f(s[i]) * f(s[j]);
      const std::string pair = "x = " + quoted(p, s[i]) + ", y = " + quoted(p, s[j]);
      if (den == 0.0) throw HypothesisError(what + " needs f(x)f(y) != 0; zero at " + pair);
      const double ratio = std::abs(f(p.meet(s[i], s[j])) * f(p.join(s[i], s[j])) / den);
      const double v = power_value(ratio, exponent);
      if (!(v <= 1.0 + kConditionTolerance))
        throw HypothesisError(what + " requires |f(x^y)f(xvy)/(f(x)f(y))|^" +
                              name + " <= 1; value " + format_real(v, 12) +
                              " at " + pair);
    }
}

RegionReport region(const CombinedSpec& spec, ConstantValue c, ClosedSide side) {
  const bool meet = side == ClosedSide::meet;
  const std::string what = std::string("disc region (") + side_name(side) + " side)";
  require_symmetric_exponents(spec, what.c_str());
  const auto& s = spec.subset;
  const auto& f = spec.f;
  const auto& [alpha, beta, gamma, delta] = spec.exponents;
  if (meet ? !is_meet_closed(s) : !is_join_closed(s))
    throw HypothesisError(what + " requires S to be " + side_name(side) + " closed");
  check_ratio_condition(spec, meet ? beta : alpha, meet ? "b" : "a", what);

  const auto tf = meet ? factor_meet_closed(s, f, alpha - beta) : factor_join_closed(s, f, beta - alpha);
  const auto m = combined_matrix(spec);

  RegionReport r;
  r.side = side;
  r.c = c;
  r.d_values = tf.d;
  double fmax = 0.0;
  double dmax = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    fmax = std::max(fmax, power_value(std::abs(f(s[i])), 2.0 * ((meet ? beta : alpha) - gamma)));
    dmax = std::max(dmax, std::abs(tf.d[i]));
  }
  r.h = c.value * fmax * dmax;
  for (std::size_t k = 0; k < s.size(); ++k) r.discs.push_back({m(k, k), r.h - std::abs(m(k, k))});
  r.eigenvalues = eigen_symmetric(m).eigenvalues;
  r.contained = std::all_of(r.eigenvalues.begin(), r.eigenvalues.end(), [&](double lambda) {
    const double slack = kContainmentTolerance * std::max(1.0, std::abs(lambda));
    return std::any_of(r.discs.begin(), r.discs.end(),
                       [&](const Disc& d) { return std::abs(lambda - d.center) <= d.radius + slack; });
  });
  return r;
}

void write_list(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << format_real(values[i]);
}

}  // namespace

std::string_view to_string(ConstantSource s) {
  switch (s) {
    case ConstantSource::exact_search: return "exact";
    case ConstantSource::conjectural_y0: return "y0";
    case ConstantSource::tn_lower_bound: return "tn-lower-bound";
    case ConstantSource::n0_lower_bound: return "n0-lower-bound";
    case ConstantSource::tn_upper_bound: return "tn";
    case ConstantSource::user_value: return "user";
  }
  return "unknown";
}

ConstantValue lower_constant(int n, ConstantSource source, const SearchOptions& options) {
  switch (source) {
    case ConstantSource::exact_search: return {search_lower_constant(n, options).value, source};
    case ConstantSource::conjectural_y0: return {kappa(n0_matrix(n)), source};
    case ConstantSource::tn_lower_bound: return {cn_lower_bound_tn(n), source};
    case ConstantSource::n0_lower_bound: return {cn_lower_bound_n0(n), source};
    default: throw ValidationError("'" + std::string(to_string(source)) + "' does not give a value for c_n");
  }
}

ConstantValue upper_constant(int n, ConstantSource source, const SearchOptions& options) {
  switch (source) {
    case ConstantSource::exact_search: return {search_upper_constant(n, options).value, source};
    case ConstantSource::tn_upper_bound: return {t_n(n), source};
    default: throw ValidationError("'" + std::string(to_string(source)) + "' does not give a value for C_n");
  }
}

BoundReport lower_bound_meet(const CombinedSpec& spec, ConstantValue c) { return lower_bound(spec, c, ClosedSide::meet); }
BoundReport lower_bound_join(const CombinedSpec& spec, ConstantValue c) { return lower_bound(spec, c, ClosedSide::join); }

RegionReport region_meet_closed(const CombinedSpec& spec, ConstantValue c) { return region(spec, c, ClosedSide::meet); }
RegionReport region_join_closed(const CombinedSpec& spec, ConstantValue c) { return region(spec, c, ClosedSide::join); }

std::pair<double, double> interval_from_discs(const RegionReport& r) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& d : r.discs) {
    if (d.radius < 0) continue;
    lo = std::min(lo, d.center - d.radius);
    hi = std::max(hi, d.center + d.radius);
  }
  if (lo > hi) throw ValidationError("empty region: every disc has a negative radius");
  return {lo, hi};
}

std::pair<double, double> gcd_lcm_power_interval(int n, double alpha, double beta, double upper_c) {
  if (n < 1) throw ValidationError("interval needs n >= 1");
  double jmax = 0.0;
  for (int i = 1; i <= n; ++i) jmax = std::max(jmax, std::abs(jordan_totient(i, alpha - beta)));
  const double h = upper_c * std::max(1.0, std::pow(n, 2 * beta)) * jmax;
  return {2 * std::min(1.0, std::pow(n, alpha + beta)) - h, h};
}

void write_report(std::ostream& out, const BoundReport& r) {
  out << "side=" << side_name(r.side) << '\n'
      << "bound=" << format_real(r.bound) << '\n'
      << "c_value=" << format_real(r.c.value) << '\n'
      << "c_source=" << to_string(r.c.source) << '\n'
      << "min_conv=" << format_real(r.min_conv) << '\n'
      << "min_fpow=" << format_real(r.min_fpow) << '\n'
      << "true_kappa=" << format_real(r.true_kappa) << '\n'
      << "holds=" << (r.holds ? "true" : "false") << '\n';
}

void write_report(std::ostream& out, const RegionReport& r) {
  out << "side=" << side_name(r.side) << '\n'
      << "C_value=" << format_real(r.c.value) << '\n'
      << "C_source=" << to_string(r.c.source) << '\n'
      << "H=" << format_real(r.h) << '\n'
      << "d_values=";
  write_list(out, r.d_values);
  out << "\neigenvalues=";
  write_list(out, r.eigenvalues);
  out << '\n';
  const bool any = std::any_of(r.discs.begin(), r.discs.end(), [](const Disc& d) { return d.radius >= 0; });
  if (any) {
    const auto [lo, hi] = interval_from_discs(r);
    out << "interval_lo=" << format_real(lo) << '\n' << "interval_hi=" << format_real(hi) << '\n';
  }
  out << "contained=" << (r.contained ? "true" : "false") << '\n';
  out << "disc,center,radius\n";
  for (std::size_t k = 0; k < r.discs.size(); ++k)
    out << k + 1 << ',' << format_real(r.discs[k].center) << ',' << format_real(r.discs[k].radius) << '\n';
}

}  // namespace latmat
