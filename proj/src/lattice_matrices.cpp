#include "latmat/lattice_matrices.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "latmat/error.hpp"
#include "latmat/text.hpp"

namespace latmat {

namespace {

constexpr double kExactLimit = 9007199254740992.0;  // 2^53

bool is_integer(double x) { return std::floor(x) == x; }

// Multiplies acc by base^k (k >= 0) in 64-bit integers; false on overflow.
bool times_power(std::int64_t& acc, std::int64_t base, std::int64_t k) {
  for (std::int64_t i = 0; i < k; ++i)
    if (__builtin_mul_overflow(acc, base, &acc)) return false;
  return true;
}

struct Factor {
  double value;
  double exponent;  // positive: numerator, negative: denominator
};

std::optional<double> exact_entry(std::span<const Factor> factors) {
  std::int64_t num = 1;
  std::int64_t den = 1;
  for (const auto& [v, e] : factors) {
    if (std::abs(e) > 64) return std::nullopt;
    const auto base = static_cast<std::int64_t>(v);
    const auto k = static_cast<std::int64_t>(std::abs(e));
    if (!times_power(e >= 0 ? num : den, base, k)) return std::nullopt;
  }
  if (den == 0) return std::nullopt;
  if (std::abs(static_cast<double>(num)) > kExactLimit || std::abs(static_cast<double>(den)) > kExactLimit)
    return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

double float_entry(std::span<const Factor> factors) {
  double num = 1.0;
  double den = 1.0;
  for (const auto& [v, e] : factors) {
    if (e >= 0) num *= power_value(v, e);
    else den *= power_value(v, -e);
  }
  if (den == 0.0) throw DomainError("division by zero in matrix entry");
  return num / den;
}

void require_finite(const DenseMatrix& m, const char* what) {
  if (!m.all_finite()) throw DomainError(std::string(what) + " has a non-finite entry");
}

std::string quoted(const Poset& p, Index x) { return "'" + p.label(x) + "'"; }

// A zero exponent makes the factor 1, so the meet (join) need not exist. This lets
// pure meet-type matrices live on meet semilattices and vice versa.
std::optional<Index> meet_if(const Poset& p, Index x, Index y, double exponent) {
  if (exponent == 0.0) return std::nullopt;
  return p.meet(x, y);
}

std::optional<Index> join_if(const Poset& p, Index x, Index y, double exponent) {
  if (exponent == 0.0) return std::nullopt;
  return p.join(x, y);
}

double value_or_one(const PosetFunction& f, std::optional<Index> z) { return z ? f(*z) : 1.0; }

DenseMatrix pairwise_matrix(const ElementSubset& s, const PosetFunction& f, double alpha, bool meet) {
  const auto& p = s.parent();
  const std::size_t n = s.size();
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Index z = meet ? p.meet(s[i], s[j]) : p.join(s[i], s[j]);
      m(i, j) = m(j, i) = power_value(f, z, alpha);
    }
  require_finite(m, meet ? "meet matrix" : "join matrix");
  return m;
}

DenseMatrix incidence_e(const ElementSubset& s) {
  const auto& p = s.parent();
  const std::size_t n = s.size();
  DenseMatrix e(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e(i, j) = p.leq(s[j], s[i]) ? 1.0 : 0.0;
  return e;
}

GramFactorization gram_factor(const ElementSubset& s, const PosetFunction& f, double alpha, Direction dir) {
  const auto& p = s.parent();
  const auto conv = dir == Direction::down ? down_convolution(f, alpha, s) : up_convolution(f, alpha, s);
  const std::size_t m = conv.support.size();
  std::vector<double> roots(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double v = conv.entries[k];
    if (v < 0)
      throw ValidationError(std::string(dir == Direction::down ? "(f_d^a * mu)(0, w)" : "(mu * f_u^a)(w, 1)") +
                            " is negative at w = " + quoted(p, conv.support[k]) + " (" + format_real(v, 12) +
                            "); no real square-root factor");
    roots[k] = std::sqrt(v);
  }
  DenseMatrix a(s.size(), m);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t k = 0; k < m; ++k) {
      const Index w = conv.support[k];
      const bool related = dir == Direction::down ? p.leq(w, s[i]) : p.leq(s[i], w);
      if (related) a(i, k) = roots[k];
    }
  return {ElementSubset::with_order(p, conv.support), std::move(a)};
}

}  // namespace

DenseMatrix meet_matrix(const ElementSubset& s, const PosetFunction& f, double alpha) {
  return pairwise_matrix(s, f, alpha, true);
}

DenseMatrix join_matrix(const ElementSubset& s, const PosetFunction& f, double alpha) {
  return pairwise_matrix(s, f, alpha, false);
}

void check_existence(const CombinedSpec& spec) {
  const auto& s = spec.subset;
  const auto& p = s.parent();
  const auto& f = spec.f;
  const auto& [alpha, beta, gamma, delta] = spec.exponents;
  for (Index x : s.members())
    if (f(x) == 0.0 && (gamma != 0.0 || delta != 0.0))
      throw ValidationError("combined matrix does not exist: f(" + quoted(p, x) +
                            ") = 0 for a member of S requires gamma = delta = 0");
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) {
      const auto m = meet_if(p, s[i], s[j], alpha);
      const auto u = join_if(p, s[i], s[j], beta);
      if (m && f(*m) == 0.0 && alpha < 0)
        throw ValidationError("combined matrix does not exist: f vanishes at the meet " + quoted(p, *m) +
                              " of a pair of S, which requires alpha >= 0");
      if (u && f(*u) == 0.0 && beta < 0)
        throw ValidationError("combined matrix does not exist: f vanishes at the join " + quoted(p, *u) +
                              " of a pair of S, which requires beta >= 0");
    }
}

DenseMatrix combined_matrix(const CombinedSpec& spec) {
  check_existence(spec);
  const auto& s = spec.subset;
  const auto& p = s.parent();
  const auto& f = spec.f;
  const auto& [alpha, beta, gamma, delta] = spec.exponents;
  const bool exact = f.integral() && is_integer(alpha) && is_integer(beta) && is_integer(gamma) && is_integer(delta);
  const bool symmetric = gamma == delta;
  const std::size_t n = s.size();
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = symmetric ? i : 0; j < n; ++j) {
      const Index xi = s[i];
      const Index xj = s[j];
      const Factor factors[] = {{value_or_one(f, meet_if(p, xi, xj, alpha)), alpha},
                                {value_or_one(f, join_if(p, xi, xj, beta)), beta},
                                {f(xi), -gamma},
                                {f(xj), -delta}};
      std::optional<double> v;
      if (exact) v = exact_entry(factors);
      m(i, j) = v ? *v : float_entry(factors);
      if (symmetric) m(j, i) = m(i, j);
    }
  require_finite(m, "combined matrix");
  return m;
}

DenseMatrix g_matrix(const ElementSubset& s, const PosetFunction& f, double exponent) {
  const auto& p = s.parent();
  const std::size_t n = s.size();
  DenseMatrix g(n, n, 1.0);
  if (exponent == 0.0) return g;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Index xi = s[i];
      const Index xj = s[j];
      if (p.comparable(xi, xj)) continue;
      const double den = power_value(f, xi, exponent) * power_value(f, xj, exponent);
      if (den == 0.0)
        throw DomainError("G entry undefined: f vanishes at " + quoted(p, f(xi) == 0.0 ? xi : xj));
      g(i, j) = g(j, i) = power_value(f, p.meet(xi, xj), exponent) * power_value(f, p.join(xi, xj), exponent) / den;
    }
  require_finite(g, "G matrix");
  return g;
}

GramFactorization factor_ideal(const ElementSubset& s, const PosetFunction& f, double alpha) {
  return gram_factor(s, f, alpha, Direction::down);
}

GramFactorization factor_filter(const ElementSubset& s, const PosetFunction& f, double alpha) {
  return gram_factor(s, f, alpha, Direction::up);
}

DenseMatrix TriangularFactorization::product() const {
  const auto et = e.transpose();
  const auto dm = DenseMatrix::diagonal(d);
  return side == ClosedSide::meet ? e * dm * et : et * dm * e;
}

TriangularFactorization factor_meet_closed(const ElementSubset& s, const PosetFunction& f, double alpha) {
  if (!is_meet_closed(s)) throw ValidationError("set is not meet closed");
  if (!s.is_linear_extension()) throw ValidationError("meet-closed factorization needs x_i <= x_j => i <= j");
  const auto& p = s.parent();
  if (!p.bottom()) throw ValidationError("meet-closed factorization requires a least element in the poset");
  const std::size_t n = s.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (Index z = 0; z < p.size(); ++z) {
      if (!p.leq(z, s[i])) continue;
      bool fresh = true;
      for (std::size_t j = 0; j < i && fresh; ++j) fresh = !p.leq(z, s[j]);
      if (fresh) d[i] += down_convolution_at(f, alpha, z);
    }
  return {ClosedSide::meet, incidence_e(s), std::move(d)};
}

TriangularFactorization factor_join_closed(const ElementSubset& s, const PosetFunction& f, double alpha) {
  if (!is_join_closed(s)) throw ValidationError("set is not join closed");
  if (!s.is_linear_extension()) throw ValidationError("join-closed factorization needs x_i <= x_j => i <= j");
  const auto& p = s.parent();
  if (!p.top()) throw ValidationError("join-closed factorization requires a greatest element in the poset");
  const std::size_t n = s.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (Index z = 0; z < p.size(); ++z) {
      if (!p.leq(s[i], z)) continue;
      bool fresh = true;
      for (std::size_t j = i + 1; j < n && fresh; ++j) fresh = !p.leq(s[j], z);
      if (fresh) d[i] += up_convolution_at(f, alpha, z);
    }
  return {ClosedSide::join, incidence_e(s), std::move(d)};
}

namespace {

std::vector<double> diagonal_powers(const ElementSubset& s, const PosetFunction& f, double exponent) {
  std::vector<double> out;
  out.reserve(s.size());
  for (Index x : s.members()) out.push_back(power_value(f, x, exponent));
  return out;
}

}  // namespace

StructureFactors structure_meet(const CombinedSpec& spec) {
  check_existence(spec);
  const auto& [alpha, beta, gamma, delta] = spec.exponents;
  const auto& s = spec.subset;
  return {diagonal_powers(s, spec.f, beta - gamma), diagonal_powers(s, spec.f, beta - delta),
          meet_matrix(s, spec.f, alpha - beta), g_matrix(s, spec.f, beta)};
}

StructureFactors structure_join(const CombinedSpec& spec) {
  check_existence(spec);
  const auto& [alpha, beta, gamma, delta] = spec.exponents;
  const auto& s = spec.subset;
  return {diagonal_powers(s, spec.f, alpha - gamma), diagonal_powers(s, spec.f, alpha - delta),
          join_matrix(s, spec.f, beta - alpha), g_matrix(s, spec.f, alpha)};
}

bool hadamard_diag_identity_check(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                                  const DenseMatrix& d, double tol) {
  const std::size_t n = a.rows();
  for (const auto* m : {&a, &b, &c, &d})
    if (m->rows() != n || m->cols() != n) throw ValidationError("Hadamard identity needs four n x n matrices");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (c(i, j) != 0.0 || d(i, j) != 0.0))
        throw ValidationError("Hadamard identity needs diagonal C and D");
  const auto lhs = c * hadamard(a, b) * d;
  const auto rhs = hadamard(b, c * a * d);
  const double scale = std::max({1.0, lhs.max_abs(), rhs.max_abs()});
  for (std::size_t k = 0; k < lhs.data().size(); ++k)
    if (std::abs(lhs.data()[k] - rhs.data()[k]) > tol * scale) return false;
  return true;
}

}  // namespace latmat
