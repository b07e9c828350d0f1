#pragma once

// Finite posets with a fully materialized order relation.
//
// Every Poset stores its elements in a linear extension of the order
// (leq(x, y) implies index(x) <= index(y)), the complete n x n relation,
// meet/join tables for every pair and the Möbius function. All target
// instances are small (a few hundred elements at most), so the O(n^3)
// construction cost is paid once and every query afterwards is a lookup.
// A Poset is immutable after construction.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace latmat {

using Index = std::size_t;

/// Möbius function of a finite poset, mu(x, y) for x <= y and 0 elsewhere.
class MobiusTable {
 public:
  MobiusTable() = default;
  explicit MobiusTable(std::size_t n) : n_(n), values_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::int64_t operator()(Index x, Index y) const { return values_[x * n_ + y]; }
  std::int64_t& at(Index x, Index y) { return values_[x * n_ + y]; }

  friend bool operator==(const MobiusTable&, const MobiusTable&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> values_;
};

class Poset {
 public:
  /// Builds a poset from its cover (Hasse) relations; each pair (x, y) means x is covered by y.
  /// Throws ValidationError on duplicate labels, unknown endpoints or cycles.
  static Poset from_cover_relations(std::vector<std::string> labels,
                                    const std::vector<std::pair<std::string, std::string>>& covers);

  /// Builds a poset from a full n x n relation (row-major, nonzero = related).
  /// The relation must be a partial order. Keeps the given element order when it already is a
  /// linear extension.
  static Poset from_relation(std::vector<std::string> labels, const std::vector<char>& leq);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(Index x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Index> find(std::string_view label) const;
  /// Index of a label; throws ValidationError when absent.
  Index index_of(std::string_view label) const;

  bool leq(Index x, Index y) const { return leq_[x * size() + y] != 0; }
  bool less(Index x, Index y) const { return x != y && leq(x, y); }
  bool comparable(Index x, Index y) const { return leq(x, y) || leq(y, x); }

  std::optional<Index> bottom() const noexcept { return bottom_; }
  std::optional<Index> top() const noexcept { return top_; }
  const std::vector<std::pair<Index, Index>>& covers() const noexcept { return covers_; }

  /// Greatest lower bound; throws LatticeError naming the pair when it does not exist.
  Index meet(Index x, Index y) const;
  /// Least upper bound; throws LatticeError naming the pair when it does not exist.
  Index join(Index x, Index y) const;
  std::optional<Index> try_meet(Index x, Index y) const;
  std::optional<Index> try_join(Index x, Index y) const;

  bool is_lattice() const noexcept { return lattice_; }

  const MobiusTable& mobius() const noexcept { return mobius_; }

  /// The order-dual poset (same labels, reversed relation).
  Poset dual() const;
  /// Induced sub-poset on the given elements.
  Poset subposet(std::span<const Index> elements) const;
  /// The closed interval [a, b]; throws ValidationError unless a <= b.
  Poset interval(Index a, Index b) const;

 private:
  Poset() = default;
  void finalize();

  std::vector<std::string> labels_;
  std::unordered_map<std::string, Index> index_;
  std::vector<char> leq_;
  std::vector<std::pair<Index, Index>> covers_;
  // Meet/join tables hold an index, kNone (no bound at all) or kAmbiguous (no unique extremum).
  std::vector<std::int64_t> meet_;
  std::vector<std::int64_t> join_;
  std::optional<Index> bottom_;
  std::optional<Index> top_;
  bool lattice_ = false;
  MobiusTable mobius_;
};

/// Positive integers under divisibility, elements in ascending order.
Poset divisor_poset(std::span<const std::int64_t> integers);
/// The chain 1 < 2 < ... < n.
Poset chain_poset(std::size_t n);

/// Möbius function computed by both interval recursions; throws std::logic_error if they differ.
MobiusTable mobius(const Poset& p);

/// A finite list x_1, ..., x_n of distinct elements of a parent poset.
///
/// Holds a non-owning pointer: the parent must outlive the subset. Subsets built through
/// the public constructor satisfy the ordering condition x_i <= x_j => i <= j.
class ElementSubset {
 public:
  /// Throws ValidationError on repeated members or when the ordering condition fails.
  ElementSubset(const Poset& parent, std::vector<Index> members);

  /// Members by label, reordered into the parent's linear extension.
  static ElementSubset from_labels(const Poset& parent, std::span<const std::string> labels);
  /// All elements of the parent, in its order.
  static ElementSubset whole(const Poset& parent);
  /// Keeps the given order even when it is not a linear extension (order ideal/filter lists).
  static ElementSubset with_order(const Poset& parent, std::vector<Index> members);

  const Poset& parent() const noexcept { return *parent_; }
  std::span<const Index> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  Index operator[](std::size_t i) const { return members_[i]; }
  bool contains(Index x) const;
  /// True when x_i <= x_j implies i <= j.
  bool is_linear_extension() const;

 private:
  struct Unchecked {};
  ElementSubset(const Poset& parent, std::vector<Index> members, Unchecked);

  const Poset* parent_;
  std::vector<Index> members_;
};

/// x_i ^ x_j belongs to S for every pair. Throws LatticeError if some meet is missing.
bool is_meet_closed(const ElementSubset& s);
/// x_i v x_j belongs to S for every pair. Throws LatticeError if some join is missing.
bool is_join_closed(const ElementSubset& s);

/// Down-set of S: the members of S first in S's order, then the rest in the parent's order.
/// Throws ValidationError when the parent has no least element.
ElementSubset order_ideal(const ElementSubset& s);
/// Up-set of S, same S-first convention. Throws ValidationError when the parent has no top.
ElementSubset order_filter(const ElementSubset& s);

/// [meet of S, join of S] as a poset of its own.
Poset bounding_interval(const ElementSubset& s);

/// The same labels looked up in another poset (e.g. after restricting to an interval),
/// reordered into the target's linear extension.
ElementSubset relabel(const ElementSubset& s, const Poset& target);

}  // namespace latmat
