#pragma once

// Ready-made lattices, sets and functions for sweeps and self checks. Every random
// generator takes the engine explicitly so a seed reproduces the instance.

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "latmat/incidence.hpp"
#include "latmat/lattice_matrices.hpp"
#include "latmat/poset.hpp"

namespace latmat {

/// Owns its lattice so the subset and function views stay valid while the instance lives.
struct Instance {
  std::string name;
  std::unique_ptr<Poset> poset;
  std::vector<Index> members;
  std::vector<double> values;

  ElementSubset subset() const { return ElementSubset(*poset, members); }
  PosetFunction function() const { return PosetFunction(*poset, values); }
  CombinedSpec spec(Exponents e) const { return {subset(), function(), e}; }
};

/// All divisors of lcm(values): a divisor-closed lattice with gcd and lcm as meet and join.
Poset divisor_lattice_of(std::span<const std::int64_t> values);

/// The diamond 0 < a, b, c < 1.
Poset diamond_poset();

/// S = {1, ..., n} in the divisors of lcm(1, ..., n), f = N.
Instance first_n_integers(int n);

/// f(m) = scale * prod_p g(p)^(v_p(m)) with random g(p) > 1, semimultiplicative on any divisor lattice.
std::vector<double> random_multiplicative_values(const Poset& divisor_lattice, std::mt19937_64& rng);

/// A few random integers up to max_value; lattice = divisors of their lcm (at most max_size
/// elements); f = N or a random multiplicative function.
Instance random_divisor_instance(std::mt19937_64& rng, std::int64_t max_value = 60, std::size_t max_size = 96);
/// Random subset of a chain with a strictly increasing positive f.
Instance random_chain_instance(std::mt19937_64& rng, std::size_t max_length = 12);
/// Random subset of the diamond with a random positive semimultiplicative f.
Instance random_diamond_instance(std::mt19937_64& rng);
/// One of the three families above, chosen at random.
Instance random_instance(std::mt19937_64& rng);

/// A random exponent quadruple with gamma = delta and alpha > beta, drawn from small halves.
Exponents random_exponents(std::mt19937_64& rng);

}  // namespace latmat
