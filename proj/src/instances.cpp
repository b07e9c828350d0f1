#include "latmat/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "latmat/error.hpp"
#include "latmat/number_theory.hpp"

namespace latmat {

namespace {

std::vector<Index> random_subset(std::size_t size, std::mt19937_64& rng) {
  std::vector<Index> all(size);
  std::iota(all.begin(), all.end(), Index{0});
  std::shuffle(all.begin(), all.end(), rng);
  const auto k = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(size, 7))(rng);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

std::int64_t label_value(const Poset& p, Index x) { return std::stoll(p.label(x)); }

}  // namespace

Poset divisor_lattice_of(std::span<const std::int64_t> values) {
  if (values.empty()) throw ValidationError("divisor lattice needs at least one integer");
  std::int64_t l = 1;
  for (auto v : values) l = checked_lcm(l, v);
  const auto ds = divisors(l);
  return divisor_poset(ds);
}

Poset diamond_poset() {
  return Poset::from_cover_relations({"0", "a", "b", "c", "1"},
                                     {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
}

Instance first_n_integers(int n) {
  if (n < 1) throw ValidationError("need n >= 1");
  std::vector<std::int64_t> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), std::int64_t{1});
  Instance inst;
  inst.name = "first " + std::to_string(n) + " integers";
  inst.poset = std::make_unique<Poset>(divisor_lattice_of(s));
  for (auto v : s) inst.members.push_back(inst.poset->index_of(std::to_string(v)));
  std::sort(inst.members.begin(), inst.members.end());
  for (Index x = 0; x < inst.poset->size(); ++x) inst.values.push_back(static_cast<double>(label_value(*inst.poset, x)));
  return inst;
}

std::vector<double> random_multiplicative_values(const Poset& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> g_dist(1.1, 3.0);
  std::uniform_real_distribution<double> scale_dist(0.5, 2.0);
  const double scale = scale_dist(rng);
  std::vector<std::pair<std::int64_t, double>> g;
  std::vector<double> out;
  for (Index x = 0; x < p.size(); ++x) {
    std::int64_t m = label_value(p, x);
    double v = scale;
    for (auto q : prime_factors(m)) {
      auto it = std::find_if(g.begin(), g.end(), [q](const auto& e) { return e.first == q; });
      if (it == g.end()) {
        g.emplace_back(q, g_dist(rng));
        it = std::prev(g.end());
      }
      while (m % q == 0) {
        m /= q;
        v *= it->second;
      }
    }
    out.push_back(v);
  }
  return out;
}

Instance random_divisor_instance(std::mt19937_64& rng, std::int64_t max_value, std::size_t max_size) {
  std::uniform_int_distribution<std::int64_t> value_dist(1, max_value);
  std::uniform_int_distribution<int> count_dist(1, 5);
  for (;;) {
    std::vector<std::int64_t> chosen;
    const int k = count_dist(rng);
    while (static_cast<int>(chosen.size()) < k) {
      const auto v = value_dist(rng);
      if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) chosen.push_back(v);
    }
    std::int64_t l = 1;
    for (auto v : chosen) l = checked_lcm(l, v);
    if (divisors(l).size() > max_size) continue;

    Instance inst;
    inst.poset = std::make_unique<Poset>(divisor_lattice_of(chosen));
    inst.name = "divisors of " + std::to_string(l);
    for (auto v : chosen) inst.members.push_back(inst.poset->index_of(std::to_string(v)));
    std::sort(inst.members.begin(), inst.members.end());
    if (std::bernoulli_distribution(0.5)(rng)) {
      for (Index x = 0; x < inst.poset->size(); ++x)
        inst.values.push_back(static_cast<double>(label_value(*inst.poset, x)));
      inst.name += ", f = N";
    } else {
      inst.values = random_multiplicative_values(*inst.poset, rng);
      inst.name += ", random multiplicative f";
    }
    return inst;
  }
}

Instance random_chain_instance(std::mt19937_64& rng, std::size_t max_length) {
  const auto length = std::uniform_int_distribution<std::size_t>(1, max_length)(rng);
  Instance inst;
  inst.name = "chain of " + std::to_string(length);
  inst.poset = std::make_unique<Poset>(chain_poset(length));
  inst.members = random_subset(length, rng);
  std::uniform_real_distribution<double> step(0.2, 2.0);
  double v = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
  for (std::size_t i = 0; i < length; ++i) {
    inst.values.push_back(v);
    v += step(rng);
  }
  return inst;
}

Instance random_diamond_instance(std::mt19937_64& rng) {
  Instance inst;
  inst.name = "diamond";
  inst.poset = std::make_unique<Poset>(diamond_poset());
  inst.members = random_subset(inst.poset->size(), rng);
  // f(a) = f(b) = f(c) = u r and f(0) f(1) = (u r)^2.
  const double u = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
  const double r = std::uniform_real_distribution<double>(1.2, 4.0)(rng);
  const auto& p = *inst.poset;
  inst.values.assign(p.size(), u * r);
  inst.values[p.index_of("0")] = u;
  inst.values[p.index_of("1")] = u * r * r;
  return inst;
}

Instance random_instance(std::mt19937_64& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return random_chain_instance(rng);
    case 1: return random_diamond_instance(rng);
    default: return random_divisor_instance(rng);
  }
}

Exponents random_exponents(std::mt19937_64& rng) {
  static constexpr double kAlpha[] = {0.5, 1.0, 1.5, 2.0};
  static constexpr double kBeta[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  static constexpr double kGamma[] = {0.0, 0.5, 1.0, -0.5};
  auto pick = [&rng](std::span<const double> xs) {
    return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
  };
  Exponents e;
  do {
    e.alpha = pick(kAlpha);
    e.beta = pick(kBeta);
  } while (!(e.alpha > e.beta));
  e.gamma = e.delta = pick(kGamma);
  return e;
}

}  // namespace latmat
