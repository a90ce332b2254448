#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace runlattice {

using Bits = boost::dynamic_bitset<>;
using Index = std::size_t;
using Edge = std::pair<Index, Index>;

enum class ForbiddenShape { N5, M3 };

/// Five elements closed under meet and join. For N5: bottom < low < high < top
/// with `side` incomparable to low and high. For M3: low, high and side are
/// pairwise incomparable atoms of the interval [bottom, top].
struct SublatticeWitness {
  ForbiddenShape shape;
  Index bottom, low, high, side, top;

  std::array<Index, 5> elements() const { return {bottom, low, high, side, top}; }
};

struct DistributivityReport {
  bool distributive = true;
  /// (x, y, z) with x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z).
  std::optional<std::array<Index, 3>> witness;
  std::optional<SublatticeWitness> sublattice_witness;
};

/// A pair lacking a unique least upper (or greatest lower) bound.
struct MissingBound {
  Index x, y;
  bool join;  ///< true: no least upper bound; false: no greatest lower bound
  std::vector<Index> minimal_bounds;
};

struct Decomposition {
  Index element;
  std::vector<Index> parts;  ///< ascending indices
};

/// A finite poset on indices 0..n-1 with its cover relation and, where they
/// exist, meets and joins. Index order must be a linear extension of the order
/// (x <= y implies x <= y as integers); construction checks this.
///
/// Immutable once built. Distributivity is computed on first request and cached.
class FiniteLattice {
 public:
  /// `up[x]` holds bit y iff x <= y.
  explicit FiniteLattice(std::vector<Bits> up);

  static FiniteLattice from_relation(Index n, const std::function<bool(Index, Index)>& leq);

  Index size() const noexcept { return up_.size(); }
  bool leq(Index x, Index y) const { return up_[x].test(y); }
  const Bits& up_set(Index x) const { return up_[x]; }
  const Bits& down_set(Index x) const { return down_[x]; }

  /// Transitive reduction, sorted by (lower, upper).
  const std::vector<Edge>& covers() const noexcept { return covers_; }
  const std::vector<Index>& lower_covers(Index x) const { return lower_covers_[x]; }
  const std::vector<Index>& upper_covers(Index x) const { return upper_covers_[x]; }

  std::optional<Index> meet(Index x, Index y) const;
  std::optional<Index> join(Index x, Index y) const;
  std::optional<Index> join_all(const std::vector<Index>& xs) const;

  bool is_lattice() const noexcept { return !missing_bound_; }
  const std::optional<MissingBound>& missing_bound() const noexcept { return missing_bound_; }

  std::optional<Index> bottom() const noexcept { return bottom_; }
  std::optional<Index> top() const noexcept { return top_; }

  /// Non-bottom elements with exactly one lower cover. On lattices this is
  /// cross-checked against "x ∨ y = j implies x = j or y = j" at construction.
  const std::vector<Index>& join_irreducibles() const noexcept { return irreducibles_; }
  bool is_join_irreducible(Index x) const { return irreducible_mask_.test(x); }

  /// Exhaustive distributive-law check. Throws NotALattice on a partial structure.
  const DistributivityReport& distributivity() const;

  /// Unique irredundant join of join-irreducibles; requires a distributive lattice.
  Decomposition decompose(Index x) const;

  /// {z : lo <= z <= hi}, ascending. Throws NotComparable when lo is not below hi.
  std::vector<Index> interval(Index lo, Index hi) const;

  /// Closure of `generators` under the lattice's meet and join, ascending.
  std::vector<Index> generated_sublattice(const std::vector<Index>& generators) const;

  /// Searches `within` (which must be closed under meet and join) for an N5 or M3.
  std::optional<SublatticeWitness> find_forbidden_sublattice(const std::vector<Index>& within) const;

 private:
  static constexpr int kAbsent = -1;

  std::size_t at(Index x, Index y) const { return x * size() + y; }
  void compute_covers();
  void compute_bounds();
  void compute_irreducibles();
  DistributivityReport compute_distributivity() const;

  std::vector<Bits> up_;
  std::vector<Bits> down_;
  std::vector<Bits> down_rev_;  // bit (n-1-z) of down_rev_[x] set iff z <= x
  std::vector<Edge> covers_;
  std::vector<std::vector<Index>> lower_covers_, upper_covers_;
  std::vector<int> meet_, join_;
  std::optional<MissingBound> missing_bound_;
  std::optional<Index> bottom_, top_;
  std::vector<Index> irreducibles_;
  Bits irreducible_mask_;

  struct Cache;
  std::shared_ptr<Cache> cache_;
};

}  // namespace runlattice
