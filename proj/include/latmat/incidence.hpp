#pragma once

// Real functions on a poset and the two restricted convolutions
//
//   down(w) = sum_{0 <= z <= w} f(z)^a mu(z, w)      (f_d^a * mu)(0, w)
//   up(w)   = sum_{w <= z <= 1} mu(w, z) f(z)^a      (mu * f_u^a)(w, 1)
//
// Powers follow the 0^0 = 1 convention. When f is integer valued and the exponent is a
// nonnegative integer, sums are accumulated exactly in 64-bit integers and widened once.

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "latmat/poset.hpp"

namespace latmat {

class PosetFunction {
 public:
  /// One value per element of `parent`, in the parent's element order.
  PosetFunction(const Poset& parent, std::vector<double> values);

  /// The identity N(m) = m on a poset whose labels are numbers.
  static PosetFunction identity(const Poset& parent);
  static PosetFunction constant(const Poset& parent, double c);

  const Poset& parent() const noexcept { return *parent_; }
  double operator()(Index x) const { return values_[x]; }
  std::span<const double> values() const noexcept { return values_; }
  /// Every value is an integer of magnitude below 2^53.
  bool integral() const noexcept { return integral_; }

 private:
  const Poset* parent_;
  std::vector<double> values_;
  bool integral_;
};

/// base^alpha with 0^0 = 1. Throws DomainError for 0 to a negative power and for a
/// negative base with a non-integer exponent.
double power_value(double base, double alpha);
inline double power_value(const PosetFunction& f, Index x, double alpha) {
  return power_value(f(x), alpha);
}

enum class Direction { down, up };

/// Convolution entries over the order ideal (down) or filter (up) of a set, S-first.
struct ConvolutionVector {
  Direction direction;
  double exponent;
  std::vector<Index> support;
  std::vector<double> entries;

  /// Entry at an element of the support; throws ValidationError otherwise.
  double at(Index w) const;
};

/// (f_d^alpha * mu)(0, w) for a single w. Requires a least element.
double down_convolution_at(const PosetFunction& f, double alpha, Index w);
/// (mu * f_u^alpha)(w, 1) for a single w. Requires a greatest element.
double up_convolution_at(const PosetFunction& f, double alpha, Index w);

ConvolutionVector down_convolution(const PosetFunction& f, double alpha, const ElementSubset& s);
ConvolutionVector up_convolution(const PosetFunction& f, double alpha, const ElementSubset& s);

/// |f(x)f(y) - f(x^y)f(xvy)| <= tol * max(1, |f(x)f(y)|) for every pair of the parent lattice.
bool is_semimultiplicative(const PosetFunction& f, double tol = 1e-9);

/// Reads `label value` lines ('#' starts a comment). Every element needs exactly one value.
PosetFunction parse_function(std::istream& in, const Poset& parent);

/// `N`, `const:c`, or a path to a function file.
PosetFunction function_from_source(const std::string& source, const Poset& parent);

}  // namespace latmat
