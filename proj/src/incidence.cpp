#include "latmat/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "latmat/error.hpp"
#include "latmat/text.hpp"

namespace latmat {

namespace {

constexpr double kExactLimit = 9007199254740992.0;  // 2^53

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

std::string describe(double x) { return format_real(x, 12); }

// Integer power with overflow detection.
std::optional<std::int64_t> exact_power(std::int64_t base, std::int64_t exponent) {
  std::int64_t result = 1;
  for (std::int64_t k = 0; k < exponent; ++k)
    if (__builtin_mul_overflow(result, base, &result)) return std::nullopt;
  return result;
}

template <typename Terms>
double accumulate_terms(const PosetFunction& f, double alpha, const Terms& terms) {
  // terms: list of (element, mobius value)
  if (f.integral() && alpha >= 0 && is_integer(alpha) && alpha < 64) {
    const auto k = static_cast<std::int64_t>(alpha);
    __int128 sum = 0;
    bool exact = true;
    for (const auto& [z, mu] : terms) {
      auto pw = exact_power(static_cast<std::int64_t>(f(z)), k);
      if (!pw) { exact = false; break; }
      sum += static_cast<__int128>(*pw) * mu;
    }
    if (exact && sum < static_cast<__int128>(kExactLimit) && sum > -static_cast<__int128>(kExactLimit))
      return static_cast<double>(static_cast<std::int64_t>(sum));
  }
  double sum = 0.0;
  for (const auto& [z, mu] : terms) sum += power_value(f, z, alpha) * static_cast<double>(mu);
  return sum;
}

}  // namespace

PosetFunction::PosetFunction(const Poset& parent, std::vector<double> values)
    : parent_(&parent), values_(std::move(values)), integral_(true) {
  if (values_.size() != parent.size())
    throw ValidationError("function needs one value per poset element (" + std::to_string(parent.size()) +
                          "), got " + std::to_string(values_.size()));
  for (Index x = 0; x < values_.size(); ++x) {
    if (!std::isfinite(values_[x]))
      throw ValidationError("function value at '" + parent.label(x) + "' is not finite");
    if (!is_integer(values_[x]) || std::abs(values_[x]) >= kExactLimit) integral_ = false;
  }
}

PosetFunction PosetFunction::identity(const Poset& parent) {
  std::vector<double> values;
  values.reserve(parent.size());
  for (const auto& label : parent.labels()) {
    auto v = try_parse_real(label);
    if (!v) throw ValidationError("function N needs numeric labels, got '" + label + "'");
    values.push_back(*v);
  }
  return PosetFunction(parent, std::move(values));
}

PosetFunction PosetFunction::constant(const Poset& parent, double c) {
  return PosetFunction(parent, std::vector<double>(parent.size(), c));
}

double power_value(double base, double alpha) {
  if (alpha == 0.0) return 1.0;
  if (base == 0.0) {
    if (alpha < 0) throw DomainError("0 raised to negative power " + describe(alpha));
    return 0.0;
  }
  if (base < 0 && !is_integer(alpha))
    throw DomainError("negative base " + describe(base) + " raised to non-integer power " + describe(alpha));
  if (alpha == 1.0) return base;
  return std::pow(base, alpha);
}

double ConvolutionVector::at(Index w) const {
  auto it = std::find(support.begin(), support.end(), w);
  if (it == support.end()) throw ValidationError("element outside the convolution support");
  return entries[static_cast<std::size_t>(it - support.begin())];
}

double down_convolution_at(const PosetFunction& f, double alpha, Index w) {
  const auto& p = f.parent();
  if (!p.bottom()) throw ValidationError("down convolution requires a least element in the poset");
  const auto& mu = p.mobius();
  std::vector<std::pair<Index, std::int64_t>> terms;
  for (Index z = 0; z <= w; ++z)
    if (p.leq(z, w)) terms.emplace_back(z, mu(z, w));
  return accumulate_terms(f, alpha, terms);
}

double up_convolution_at(const PosetFunction& f, double alpha, Index w) {
  const auto& p = f.parent();
  if (!p.top()) throw ValidationError("up convolution requires a greatest element in the poset");
  const auto& mu = p.mobius();
  std::vector<std::pair<Index, std::int64_t>> terms;
  for (Index z = w; z < p.size(); ++z)
    if (p.leq(w, z)) terms.emplace_back(z, mu(w, z));
  return accumulate_terms(f, alpha, terms);
}

ConvolutionVector down_convolution(const PosetFunction& f, double alpha, const ElementSubset& s) {
  const auto ideal = order_ideal(s);
  ConvolutionVector v{Direction::down, alpha, {ideal.members().begin(), ideal.members().end()}, {}};
  v.entries.reserve(v.support.size());
  for (Index w : v.support) v.entries.push_back(down_convolution_at(f, alpha, w));
  return v;
}

ConvolutionVector up_convolution(const PosetFunction& f, double alpha, const ElementSubset& s) {
  const auto filter = order_filter(s);
  ConvolutionVector v{Direction::up, alpha, {filter.members().begin(), filter.members().end()}, {}};
  v.entries.reserve(v.support.size());
  for (Index w : v.support) v.entries.push_back(up_convolution_at(f, alpha, w));
  return v;
}

bool is_semimultiplicative(const PosetFunction& f, double tol) {
  const auto& p = f.parent();
  for (Index x = 0; x < p.size(); ++x)
    for (Index y = x + 1; y < p.size(); ++y) {
      const double lhs = f(x) * f(y);
      const double rhs = f(p.meet(x, y)) * f(p.join(x, y));
      if (std::abs(lhs - rhs) > tol * std::max(1.0, std::abs(lhs))) return false;
    }
  return true;
}

PosetFunction parse_function(std::istream& in, const Poset& parent) {
  std::vector<std::optional<double>> values(parent.size());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto fields = split(body, " \t");
    if (fields.size() != 2) throw ParseError("expected 'label value'", line_no);
    const auto x = parent.find(fields[0]);
    if (!x) throw ParseError("unknown element '" + fields[0] + "'", line_no);
    const auto v = try_parse_real(fields[1]);
    if (!v) throw ParseError("not a number: '" + fields[1] + "'", line_no);
    if (values[*x]) throw ParseError("second value for '" + fields[0] + "'", line_no);
    values[*x] = *v;
  }
  std::vector<double> dense;
  dense.reserve(values.size());
  for (Index x = 0; x < values.size(); ++x) {
    if (!values[x]) throw ParseError("no value given for element '" + parent.label(x) + "'");
    dense.push_back(*values[x]);
  }
  return PosetFunction(parent, std::move(dense));
}

PosetFunction function_from_source(const std::string& source, const Poset& parent) {
  if (source == "N") return PosetFunction::identity(parent);
  if (source.rfind("const:", 0) == 0) return PosetFunction::constant(parent, parse_real(source.substr(6)));
  std::ifstream in(source);
  if (!in) throw ValidationError("cannot open function file '" + source + "'");
  return parse_function(in, parent);
}

}  // namespace latmat
