#pragma once

// Lower bounds for the smallest |eigenvalue| of a symmetric combined matrix M^{a,b,g,g}, and
// disc regions containing its eigenvalues when S is meet or join closed. Every report carries
// the directly computed spectrum so the bound can be checked against it.
//
// The constants c_n and C_n are inputs: the caller picks where they come from.

#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

#include "latmat/constants.hpp"
#include "latmat/lattice_matrices.hpp"

namespace latmat {

enum class ConstantSource {
  exact_search,    // c_n or C_n by exhaustive search
  conjectural_y0,  // kappa(Y0 Y0^T)
  tn_lower_bound,  // T_n^(1-n)
  n0_lower_bound,  // Frobenius norm of N0 in place of T_n
  tn_upper_bound,  // T_n for C_n
  user_value,
};

std::string_view to_string(ConstantSource s);

struct ConstantValue {
  double value = 0.0;
  ConstantSource source = ConstantSource::user_value;
};

/// c_n from the given source. user_value is rejected (there is nothing to compute).
ConstantValue lower_constant(int n, ConstantSource source, const SearchOptions& options = {});
/// C_n from exact_search or tn_upper_bound.
ConstantValue upper_constant(int n, ConstantSource source, const SearchOptions& options = {});

inline constexpr double kBoundTolerance = 1e-9;
inline constexpr double kConditionTolerance = 1e-12;
inline constexpr double kContainmentTolerance = 1e-9;

struct BoundReport {
  ClosedSide side = ClosedSide::meet;
  double bound = 0.0;
  ConstantValue c;
  /// min over S of the convolution (down for the meet side, up for the join side).
  double min_conv = 0.0;
  /// min over S of [f(x)^2]^(b-g) (meet side) or [f(x)^2]^(a-g) (join side).
  double min_fpow = 0.0;
  double true_kappa = 0.0;
  bool holds = false;
};

/// bound = c * min_i (f_d^(a-b) * mu)(0, x_i) * min_i [f(x_i)^2]^(b-g).
///
/// Throws HypothesisError when gamma != delta, when f vanishes somewhere on the lattice,
/// when f is not semimultiplicative, or when the down convolution is not positive on the
/// whole down-set of S (the message names the first offending element). With beta = 0 the
/// semimultiplicativity check is skipped, and with beta = gamma = 0 zeros of f are allowed.
BoundReport lower_bound_meet(const CombinedSpec& spec, ConstantValue c);
/// Dual: bound = c * min_i (mu * f_u^(b-a))(x_i, 1) * min_i [f(x_i)^2]^(a-g), positivity over
/// the up-set of S. Relaxations use alpha in place of beta.
BoundReport lower_bound_join(const CombinedSpec& spec, ConstantValue c);

struct Disc {
  double center = 0.0;
  double radius = 0.0;  // may be negative: the disc is empty
};

struct RegionReport {
  ClosedSide side = ClosedSide::meet;
  ConstantValue c;
  std::vector<Disc> discs;
  std::vector<double> d_values;
  double h = 0.0;
  std::vector<double> eigenvalues;
  bool contained = false;
};

/// Needs S meet closed and |f(x^y) f(xvy) / (f(x) f(y))|^b <= 1 for every pair of S.
/// Discs are centred at the diagonal entries M_kk with radius H - |M_kk|, where
/// H = C * max_i |f(x_i)|^(2(b-g)) * max_i |d_i|.
RegionReport region_meet_closed(const CombinedSpec& spec, ConstantValue c);
/// Join closed S; condition with exponent a; H uses |f(x_i)|^(2(a-g)).
RegionReport region_join_closed(const CombinedSpec& spec, ConstantValue c);

/// Smallest real interval containing every non-empty disc. Throws ValidationError when all
/// radii are negative.
std::pair<double, double> interval_from_discs(const RegionReport& r);

/// [2 min{1, n^(a+b)} - H, H] with H = C max{1, n^(2b)} max_{i<=n} |J_(a-b)(i)|: the region
/// for the n x n matrix with entries gcd(i,j)^a lcm(i,j)^b.
std::pair<double, double> gcd_lcm_power_interval(int n, double alpha, double beta, double upper_c);

/// key=value lines for every field.
void write_report(std::ostream& out, const BoundReport& r);
/// key=value lines, then a `disc,center,radius` CSV block.
void write_report(std::ostream& out, const RegionReport& r);

}  // namespace latmat
