#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "runlattice/domain.hpp"
#include "runlattice/finite_lattice.hpp"
#include "runlattice/orderings.hpp"

namespace runlattice {

/// Meet/join tables are n x n, so lattices are capped well below the universe cap.
inline constexpr std::size_t kDefaultLatticeCap = 4096;

/// (R(N), ∧, ∨, ⪯) for one ordering, with elements indexed in universe order.
class RunLattice {
 public:
  const RunUniverse& universe() const noexcept { return universe_; }
  OrderingKind kind() const noexcept { return kind_; }
  const FiniteLattice& structure() const noexcept { return structure_; }

  std::size_t size() const noexcept { return universe_.size(); }
  const JudgedRun& run(Index i) const { return universe_[i]; }
  Index index_of(const JudgedRun& r) const { return universe_.require_index(r); }

  bool leq(Index x, Index y) const { return structure_.leq(x, y); }
  bool is_lattice() const noexcept { return structure_.is_lattice(); }
  const std::vector<Edge>& covers() const noexcept { return structure_.covers(); }
  /// Throws NotALattice when the pair has no meet (join).
  Index meet(Index x, Index y) const;
  Index join(Index x, Index y) const;
  Index bottom() const { return *structure_.bottom(); }
  Index top() const { return *structure_.top(); }

  /// One-line description of why this is not a lattice; empty when it is.
  std::string non_lattice_witness() const;

 private:
  friend RunLattice build_order(const RunUniverse&, OrderingKind, std::size_t);
  RunLattice(RunUniverse universe, OrderingKind kind, FiniteLattice structure)
      : universe_(std::move(universe)), kind_(kind), structure_(std::move(structure)) {}

  RunUniverse universe_;
  OrderingKind kind_;
  FiniteLattice structure_;
};

/// Order, covers and whatever meets/joins exist. Never throws NotALattice.
RunLattice build_order(const RunUniverse& universe, OrderingKind kind,
                       std::size_t cap = kDefaultLatticeCap);

/// As build_order, but requires every pair to have a meet and a join.
RunLattice build_lattice(const RunUniverse& universe, OrderingKind kind,
                         std::size_t cap = kDefaultLatticeCap);

struct MeetJoin {
  JudgedRun meet;
  JudgedRun join;
};

/// Meet and join without materializing the lattice: componentwise min/max on
/// canonical forms for the replacement orderings, min/max for the chains.
MeetJoin closed_meet_join(OrderingKind kind, const JudgedRun& r, const JudgedRun& s,
                          const RelevanceScale& scale);

std::vector<Index> join_irreducibles(const RunLattice& lattice);
const DistributivityReport& check_distributive(const RunLattice& lattice);
Decomposition decompose(const RunLattice& lattice, Index x);
std::vector<Index> interval(const RunLattice& lattice, Index lo, Index hi);

struct HasseOptions {
  bool highlight_irreducibles = false;
};

/// Graphviz DOT, bottom-to-top, nodes in canonical order, edges sorted by (lower, upper).
std::string export_hasse(const RunLattice& lattice, const HasseOptions& options = {});

/// {mode, c, N, ordering, elements[], covers[][2], irreducibles[]}
std::string export_json(const RunLattice& lattice);

std::string describe(const RunLattice& lattice, const SublatticeWitness& w);

}  // namespace runlattice
