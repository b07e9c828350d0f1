#include "latmat/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "latmat/error.hpp"

namespace latmat {

namespace {

void require_positive(std::int64_t m) {
  if (m < 1) throw DomainError("arithmetic function needs a positive integer, got " + std::to_string(m));
}

}  // namespace

std::vector<std::int64_t> prime_factors(std::int64_t m) {
  require_positive(m);
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    out.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) out.push_back(m);
  return out;
}

std::int64_t euler_phi(std::int64_t m) {
  std::int64_t phi = m;
  for (auto p : prime_factors(m)) phi = phi / p * (p - 1);
  return phi;
}

double jordan_totient(std::int64_t m, double k) {
  double j = std::pow(static_cast<double>(m), k);
  for (auto p : prime_factors(m)) j *= 1.0 - std::pow(static_cast<double>(p), -k);
  return j;
}

int mobius_mu(std::int64_t m) {
  require_positive(m);
  int mu = 1;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    mu = -mu;
  }
  return m > 1 ? -mu : mu;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  require_positive(a);
  require_positive(b);
  std::int64_t out;
  if (__builtin_mul_overflow(a / std::gcd(a, b), b, &out)) throw DomainError("lcm overflows 64 bits");
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t m) {
  require_positive(m);
  std::vector<std::int64_t> low, high;
  for (std::int64_t d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    low.push_back(d);
    if (d != m / d) high.push_back(m / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

}  // namespace latmat
