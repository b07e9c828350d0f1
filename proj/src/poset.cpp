#include "latmat/poset.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "latmat/error.hpp"

namespace latmat {

namespace {

constexpr std::int64_t kNone = -1;
constexpr std::int64_t kAmbiguous = -2;

std::unordered_map<std::string, Index> index_labels(const std::vector<std::string>& labels) {
  std::unordered_map<std::string, Index> index;
  for (Index i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) throw ValidationError("empty element label");
    if (!index.emplace(labels[i], i).second)
      throw ValidationError("duplicate label '" + labels[i] + "'");
  }
  return index;
}

// Greatest element among the common lower bounds of x and y (least among upper bounds when
// `upper`). Relies on the stored order being a linear extension: the candidate is the
// common bound with the largest (smallest) index.
std::int64_t extremal_common_bound(const std::vector<char>& leq, std::size_t n, Index x, Index y,
                                   bool upper) {
  auto rel = [&](Index a, Index b) { return leq[a * n + b] != 0; };
  auto bound = [&](Index z) { return upper ? rel(x, z) && rel(y, z) : rel(z, x) && rel(z, y); };
  std::int64_t candidate = kNone;
  if (upper) {
    for (Index z = 0; z < n; ++z)
      if (bound(z)) { candidate = static_cast<std::int64_t>(z); break; }
  } else {
    for (Index z = n; z-- > 0;)
      if (bound(z)) { candidate = static_cast<std::int64_t>(z); break; }
  }
  if (candidate == kNone) return kNone;
  const auto c = static_cast<Index>(candidate);
  for (Index z = 0; z < n; ++z) {
    if (!bound(z)) continue;
    if (upper ? !rel(c, z) : !rel(z, c)) return kAmbiguous;
  }
  return candidate;
}

}  // namespace

Poset Poset::from_cover_relations(std::vector<std::string> labels,
                                  const std::vector<std::pair<std::string, std::string>>& covers) {
  const auto input_index = index_labels(labels);
  const std::size_t n = labels.size();
  std::vector<std::vector<Index>> up(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [lo, hi] : covers) {
    auto a = input_index.find(lo);
    auto b = input_index.find(hi);
    if (a == input_index.end()) throw ValidationError("cover endpoint '" + lo + "' is not an element");
    if (b == input_index.end()) throw ValidationError("cover endpoint '" + hi + "' is not an element");
    if (a->second == b->second) throw ValidationError("cycle detected at '" + lo + "'");
    up[a->second].push_back(b->second);
    ++indegree[b->second];
  }

  // Kahn's algorithm, always taking the earliest listed available element.
  std::priority_queue<Index, std::vector<Index>, std::greater<>> ready;
  for (Index i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(i);
  std::vector<Index> order;
  order.reserve(n);
  while (!ready.empty()) {
    const Index x = ready.top();
    ready.pop();
    order.push_back(x);
    for (Index y : up[x])
      if (--indegree[y] == 0) ready.push(y);
  }
  if (order.size() != n) {
    for (Index i = 0; i < n; ++i)
      if (indegree[i] != 0) throw ValidationError("cycle detected through '" + labels[i] + "'");
  }

  std::vector<Index> position(n);
  for (Index k = 0; k < n; ++k) position[order[k]] = k;

  Poset p;
  p.labels_.resize(n);
  for (Index k = 0; k < n; ++k) p.labels_[k] = labels[order[k]];
  p.leq_.assign(n * n, 0);
  // Reverse topological sweep: the up-set of x is x plus the up-sets of its upper covers.
  for (Index k = n; k-- > 0;) {
    p.leq_[k * n + k] = 1;
    for (Index y : up[order[k]]) {
      const Index m = position[y];
      for (Index z = 0; z < n; ++z)
        if (p.leq_[m * n + z]) p.leq_[k * n + z] = 1;
    }
  }
  p.finalize();
  return p;
}

Poset Poset::from_relation(std::vector<std::string> labels, const std::vector<char>& leq) {
  index_labels(labels);
  const std::size_t n = labels.size();
  if (leq.size() != n * n) throw ValidationError("relation size does not match element count");
  auto rel = [&](Index a, Index b) { return leq[a * n + b] != 0; };
  for (Index x = 0; x < n; ++x) {
    if (!rel(x, x)) throw ValidationError("relation is not reflexive at '" + labels[x] + "'");
    for (Index y = 0; y < n; ++y) {
      if (x != y && rel(x, y) && rel(y, x))
        throw ValidationError("relation is not antisymmetric at '" + labels[x] + "', '" + labels[y] + "'");
      if (!rel(x, y)) continue;
      for (Index z = 0; z < n; ++z)
        if (rel(y, z) && !rel(x, z))
          throw ValidationError("relation is not transitive at '" + labels[x] + "' <= '" + labels[y] +
                                "' <= '" + labels[z] + "'");
    }
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  bool linear = true;
  for (Index x = 0; x < n && linear; ++x)
    for (Index y = 0; y < x; ++y)
      if (rel(x, y)) { linear = false; break; }
  if (!linear) {
    // x < y implies |down(x)| < |down(y)|, so sorting by down-set size is a linear extension.
    std::vector<std::size_t> down(n, 0);
    for (Index x = 0; x < n; ++x)
      for (Index z = 0; z < n; ++z) down[x] += rel(z, x);
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return down[a] < down[b]; });
  }

  Poset p;
  p.labels_.resize(n);
  p.leq_.assign(n * n, 0);
  for (Index i = 0; i < n; ++i) {
    p.labels_[i] = std::move(labels[order[i]]);
    for (Index j = 0; j < n; ++j) p.leq_[i * n + j] = rel(order[i], order[j]) ? 1 : 0;
  }
  p.finalize();
  return p;
}

void Poset::finalize() {
  const std::size_t n = size();
  index_ = index_labels(labels_);

  covers_.clear();
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y) {
      if (!less(x, y)) continue;
      bool cover = true;
      for (Index z = x + 1; z < y && cover; ++z)
        if (less(x, z) && less(z, y)) cover = false;
      if (cover) covers_.emplace_back(x, y);
    }

  bottom_.reset();
  top_.reset();
  for (Index x = 0; x < n && !bottom_; ++x) {
    bool all = true;
    for (Index y = 0; y < n && all; ++y) all = leq(x, y);
    if (all) bottom_ = x;
  }
  for (Index x = n; x-- > 0 && !top_;) {
    bool all = true;
    for (Index y = 0; y < n && all; ++y) all = leq(y, x);
    if (all) top_ = x;
  }

  meet_.assign(n * n, kNone);
  join_.assign(n * n, kNone);
  lattice_ = true;
  for (Index x = 0; x < n; ++x)
    for (Index y = x; y < n; ++y) {
      const auto m = extremal_common_bound(leq_, n, x, y, false);
      const auto j = extremal_common_bound(leq_, n, x, y, true);
      meet_[x * n + y] = meet_[y * n + x] = m;
      join_[x * n + y] = join_[y * n + x] = j;
      if (m < 0 || j < 0) lattice_ = false;
    }
  if (n == 0) lattice_ = false;

  mobius_ = latmat::mobius(*this);
}

std::optional<Index> Poset::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Index Poset::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw ValidationError("unknown element '" + std::string(label) + "'");
}

std::optional<Index> Poset::try_meet(Index x, Index y) const {
  const auto m = meet_[x * size() + y];
  if (m < 0) return std::nullopt;
  return static_cast<Index>(m);
}

std::optional<Index> Poset::try_join(Index x, Index y) const {
  const auto j = join_[x * size() + y];
  if (j < 0) return std::nullopt;
  return static_cast<Index>(j);
}

Index Poset::meet(Index x, Index y) const {
  const auto m = meet_[x * size() + y];
  if (m == kNone)
    throw LatticeError("'" + label(x) + "' and '" + label(y) + "' have no common lower bound");
  if (m == kAmbiguous)
    throw LatticeError("'" + label(x) + "' and '" + label(y) +
                       "' have no greatest common lower bound (not a lattice at this pair)");
  return static_cast<Index>(m);
}

Index Poset::join(Index x, Index y) const {
  const auto j = join_[x * size() + y];
  if (j == kNone)
    throw LatticeError("'" + label(x) + "' and '" + label(y) + "' have no common upper bound");
  if (j == kAmbiguous)
    throw LatticeError("'" + label(x) + "' and '" + label(y) +
                       "' have no least common upper bound (not a lattice at this pair)");
  return static_cast<Index>(j);
}

Poset Poset::dual() const {
  const std::size_t n = size();
  std::vector<std::string> labels(labels_.rbegin(), labels_.rend());
  std::vector<char> rel(n * n, 0);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) rel[i * n + j] = leq(n - 1 - j, n - 1 - i) ? 1 : 0;
  return from_relation(std::move(labels), rel);
}

Poset Poset::subposet(std::span<const Index> elements) const {
  std::vector<Index> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ValidationError("subposet elements must be distinct");
  const std::size_t m = sorted.size();
  std::vector<std::string> labels;
  labels.reserve(m);
  for (Index x : sorted) labels.push_back(label(x));
  std::vector<char> rel(m * m, 0);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) rel[i * m + j] = leq(sorted[i], sorted[j]) ? 1 : 0;
  return from_relation(std::move(labels), rel);
}

Poset Poset::interval(Index a, Index b) const {
  if (!leq(a, b))
    throw ValidationError("interval requires '" + label(a) + "' <= '" + label(b) + "'");
  std::vector<Index> members;
  for (Index z = a; z <= b; ++z)
    if (leq(a, z) && leq(z, b)) members.push_back(z);
  return subposet(members);
}

MobiusTable mobius(const Poset& p) {
  const std::size_t n = p.size();
  // mu(x, y) = -sum_{x <= z < y} mu(x, z): fill each row left to right.
  MobiusTable left(n);
  for (Index x = 0; x < n; ++x) {
    left.at(x, x) = 1;
    for (Index y = x + 1; y < n; ++y) {
      if (!p.less(x, y)) continue;
      std::int64_t sum = 0;
      for (Index z = x; z < y; ++z)
        if (p.leq(x, z) && p.leq(z, y)) sum += left(x, z);
      left.at(x, y) = -sum;
    }
  }
  // mu(x, y) = -sum_{x < z <= y} mu(z, y): fill each column bottom to top.
  MobiusTable right(n);
  for (Index y = 0; y < n; ++y) {
    right.at(y, y) = 1;
    for (Index x = y; x-- > 0;) {
      if (!p.less(x, y)) continue;
      std::int64_t sum = 0;
      for (Index z = x + 1; z <= y; ++z)
        if (p.leq(x, z) && p.leq(z, y)) sum += right(z, y);
      right.at(x, y) = -sum;
    }
  }
  if (!(left == right)) throw std::logic_error("Möbius recursions disagree");
  return left;
}

Poset divisor_poset(std::span<const std::int64_t> integers) {
  std::vector<std::int64_t> values(integers.begin(), integers.end());
  for (auto v : values)
    if (v < 1) throw ValidationError("divisor poset entries must be positive, got " + std::to_string(v));
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end())
    throw ValidationError("duplicate entry in divisor poset");
  const std::size_t n = values.size();
  std::vector<std::string> labels;
  labels.reserve(n);
  for (auto v : values) labels.push_back(std::to_string(v));
  std::vector<char> rel(n * n, 0);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) rel[i * n + j] = values[j] % values[i] == 0 ? 1 : 0;
  return Poset::from_relation(std::move(labels), rel);
}

Poset chain_poset(std::size_t n) {
  if (n == 0) throw ValidationError("chain length must be positive");
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  std::vector<char> rel(n * n, 0);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) rel[i * n + j] = 1;
  return Poset::from_relation(std::move(labels), rel);
}

// ---------------------------------------------------------------------------

ElementSubset::ElementSubset(const Poset& parent, std::vector<Index> members, Unchecked)
    : parent_(&parent), members_(std::move(members)) {
  std::vector<char> seen(parent.size(), 0);
  for (Index x : members_) {
    if (x >= parent.size()) throw ValidationError("subset member out of range");
    if (seen[x]) throw ValidationError("subset member '" + parent.label(x) + "' repeated");
    seen[x] = 1;
  }
}

ElementSubset::ElementSubset(const Poset& parent, std::vector<Index> members)
    : ElementSubset(parent, std::move(members), Unchecked{}) {
  if (!is_linear_extension())
    throw ValidationError("subset order violates x_i <= x_j => i <= j");
}

ElementSubset ElementSubset::from_labels(const Poset& parent, std::span<const std::string> labels) {
  std::vector<Index> members;
  members.reserve(labels.size());
  for (const auto& l : labels) members.push_back(parent.index_of(l));
  std::sort(members.begin(), members.end());
  return ElementSubset(parent, std::move(members));
}

ElementSubset ElementSubset::whole(const Poset& parent) {
  std::vector<Index> members(parent.size());
  std::iota(members.begin(), members.end(), Index{0});
  return ElementSubset(parent, std::move(members));
}

ElementSubset ElementSubset::with_order(const Poset& parent, std::vector<Index> members) {
  return ElementSubset(parent, std::move(members), Unchecked{});
}

bool ElementSubset::contains(Index x) const {
  return std::find(members_.begin(), members_.end(), x) != members_.end();
}

bool ElementSubset::is_linear_extension() const {
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (parent_->less(members_[i], members_[j])) return false;
  return true;
}

bool is_meet_closed(const ElementSubset& s) {
  const auto& p = s.parent();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!s.contains(p.meet(s[i], s[j]))) return false;
  return true;
}

bool is_join_closed(const ElementSubset& s) {
  const auto& p = s.parent();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!s.contains(p.join(s[i], s[j]))) return false;
  return true;
}

namespace {

ElementSubset closure_s_first(const ElementSubset& s, bool downward) {
  const auto& p = s.parent();
  std::vector<Index> members(s.members().begin(), s.members().end());
  for (Index w = 0; w < p.size(); ++w) {
    if (s.contains(w)) continue;
    for (Index x : s.members())
      if (downward ? p.leq(w, x) : p.leq(x, w)) {
        members.push_back(w);
        break;
      }
  }
  return ElementSubset::with_order(p, std::move(members));
}

}  // namespace

ElementSubset order_ideal(const ElementSubset& s) {
  if (!s.parent().bottom()) throw ValidationError("order ideal requires a least element in the poset");
  return closure_s_first(s, true);
}

ElementSubset order_filter(const ElementSubset& s) {
  if (!s.parent().top()) throw ValidationError("order filter requires a greatest element in the poset");
  return closure_s_first(s, false);
}

Poset bounding_interval(const ElementSubset& s) {
  if (s.size() == 0) throw ValidationError("bounding interval of an empty set");
  const auto& p = s.parent();
  Index lo = s[0];
  Index hi = s[0];
  for (Index x : s.members()) {
    lo = p.meet(lo, x);
    hi = p.join(hi, x);
  }
  return p.interval(lo, hi);
}

ElementSubset relabel(const ElementSubset& s, const Poset& target) {
  std::vector<Index> members;
  members.reserve(s.size());
  for (Index x : s.members()) members.push_back(target.index_of(s.parent().label(x)));
  std::sort(members.begin(), members.end());
  return ElementSubset(target, std::move(members));
}

}  // namespace latmat
