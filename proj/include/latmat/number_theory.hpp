#pragma once

// Classical arithmetic functions, used as closed-form oracles for divisor lattices.

#include <cstdint>
#include <vector>

namespace latmat {

std::vector<std::int64_t> prime_factors(std::int64_t m);  // distinct, ascending
std::int64_t euler_phi(std::int64_t m);
/// J_k(m) = m^k prod_{p | m} (1 - p^-k), for real k.
double jordan_totient(std::int64_t m, double k);
int mobius_mu(std::int64_t m);
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);
/// All positive divisors of m, ascending.
std::vector<std::int64_t> divisors(std::int64_t m);

}  // namespace latmat
