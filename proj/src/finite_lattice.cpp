#include "runlattice/finite_lattice.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include <fmt/format.h>

#include "runlattice/error.hpp"

namespace runlattice {

struct FiniteLattice::Cache {
  std::once_flag once;
  DistributivityReport distributivity;
};

FiniteLattice FiniteLattice::from_relation(Index n, const std::function<bool(Index, Index)>& leq) {
  std::vector<Bits> up(n, Bits(n));
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      if (leq(x, y)) up[x].set(y);
  return FiniteLattice(std::move(up));
}

FiniteLattice::FiniteLattice(std::vector<Bits> up) : up_(std::move(up)), cache_(std::make_shared<Cache>()) {
  const Index n = size();
  if (n == 0) throw std::invalid_argument("empty poset");
  for (Index x = 0; x < n; ++x) {
    if (up_[x].size() != n) throw std::invalid_argument("up-set rows must have n bits");
    if (!up_[x].test(x)) throw std::invalid_argument(fmt::format("element {} is not reflexive", x));
    if (up_[x].find_first() != x)
      throw std::invalid_argument(
          fmt::format("index order is not a linear extension: {} <= {}", x, up_[x].find_first()));
  }
  for (Index x = 0; x < n; ++x)
    for (Index y = up_[x].find_next(x); y != Bits::npos; y = up_[x].find_next(y))
      if (!up_[y].is_subset_of(up_[x]))
        throw std::invalid_argument(fmt::format("relation is not transitive at {} <= {}", x, y));

  down_.assign(n, Bits(n));
  down_rev_.assign(n, Bits(n));
  for (Index x = 0; x < n; ++x)
    for (Index y = x; y != Bits::npos; y = up_[x].find_next(y)) {
      down_[y].set(x);
      down_rev_[y].set(n - 1 - x);
    }

  if (up_[0].all()) bottom_ = 0;
  if (down_rev_[n - 1].all()) top_ = n - 1;

  compute_covers();
  compute_bounds();
  compute_irreducibles();
}

void FiniteLattice::compute_covers() {
  const Index n = size();
  lower_covers_.assign(n, {});
  upper_covers_.assign(n, {});
  for (Index x = 0; x < n; ++x) {
    Bits strict_up = up_[x];
    strict_up.reset(x);
    for (Index y = strict_up.find_first(); y != Bits::npos; y = strict_up.find_next(y)) {
      // y covers x iff y is the only element of strict_up below y
      if ((strict_up & down_[y]).count() == 1) {
        covers_.emplace_back(x, y);
        lower_covers_[y].push_back(x);
        upper_covers_[x].push_back(y);
      }
    }
  }
  std::sort(covers_.begin(), covers_.end());
}

void FiniteLattice::compute_bounds() {
  const Index n = size();
  meet_.assign(n * n, kAbsent);
  join_.assign(n * n, kAbsent);
  for (Index x = 0; x < n; ++x) {
    for (Index y = x; y < n; ++y) {
      // Least upper bound: the lowest-index upper bound, if every other upper bound is above it.
      Bits ub = up_[x] & up_[y];
      Index cand = ub.find_first();
      if (cand != Bits::npos && ub.is_subset_of(up_[cand])) {
        join_[at(x, y)] = join_[at(y, x)] = static_cast<int>(cand);
      } else if (!missing_bound_) {
        MissingBound mb{x, y, true, {}};
        for (Index t = ub.find_first(); t != Bits::npos; t = ub.find_next(t)) {
          Bits below = ub & down_[t];
          if (below.count() == 1) mb.minimal_bounds.push_back(t);
        }
        missing_bound_ = std::move(mb);
      }
      Bits lb = down_rev_[x] & down_rev_[y];
      Index rc = lb.find_first();
      if (rc != Bits::npos && lb.is_subset_of(down_rev_[n - 1 - rc])) {
        meet_[at(x, y)] = meet_[at(y, x)] = static_cast<int>(n - 1 - rc);
      } else if (!missing_bound_) {
        MissingBound mb{x, y, false, {}};
        for (Index b = lb.find_first(); b != Bits::npos; b = lb.find_next(b)) {
          Index t = n - 1 - b;
          // t is maximal iff no other lower bound is above t
          bool maximal = true;
          for (Index b2 = lb.find_first(); b2 != Bits::npos; b2 = lb.find_next(b2)) {
            Index u = n - 1 - b2;
            if (u != t && up_[t].test(u)) {
              maximal = false;
              break;
            }
          }
          if (maximal) mb.minimal_bounds.push_back(t);
        }
        std::sort(mb.minimal_bounds.begin(), mb.minimal_bounds.end());
        missing_bound_ = std::move(mb);
      }
    }
  }
}

void FiniteLattice::compute_irreducibles() {
  const Index n = size();
  irreducible_mask_ = Bits(n);
  for (Index x = 0; x < n; ++x) {
    if (lower_covers_[x].size() == 1) {
      irreducibles_.push_back(x);
      irreducible_mask_.set(x);
    }
  }
  if (!is_lattice()) return;
  // Algebraic definition: j is reducible iff j = x ∨ y with x, y both different from j.
  Bits reducible(n);
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y) {
      auto j = static_cast<Index>(join_[at(x, y)]);
      if (j != x && j != y) reducible.set(j);
    }
  for (Index j = 0; j < n; ++j) {
    bool algebraic = j != *bottom_ && !reducible.test(j);
    if (algebraic != irreducible_mask_.test(j))
      throw std::logic_error(fmt::format(
          "join-irreducible criteria disagree at element {} (cover: {}, algebraic: {})", j,
          irreducible_mask_.test(j), algebraic));
  }
}

std::optional<Index> FiniteLattice::meet(Index x, Index y) const {
  int m = meet_[at(x, y)];
  if (m == kAbsent) return std::nullopt;
  return static_cast<Index>(m);
}

std::optional<Index> FiniteLattice::join(Index x, Index y) const {
  int j = join_[at(x, y)];
  if (j == kAbsent) return std::nullopt;
  return static_cast<Index>(j);
}

std::optional<Index> FiniteLattice::join_all(const std::vector<Index>& xs) const {
  if (xs.empty()) return bottom_;
  std::optional<Index> acc = xs.front();
  for (std::size_t i = 1; i < xs.size() && acc; ++i) acc = join(*acc, xs[i]);
  return acc;
}

const DistributivityReport& FiniteLattice::distributivity() const {
  if (!is_lattice()) {
    const auto& mb = *missing_bound_;
    throw Error(ErrorCode::NotALattice,
                fmt::format("elements {} and {} have no {}", mb.x, mb.y,
                            mb.join ? "least upper bound" : "greatest lower bound"));
  }
  std::call_once(cache_->once, [this] { cache_->distributivity = compute_distributivity(); });
  return cache_->distributivity;
}

DistributivityReport FiniteLattice::compute_distributivity() const {
  const Index n = size();
  DistributivityReport rep;
  const int* M = meet_.data();
  const int* J = join_.data();
  for (Index x = 0; x < n && rep.distributive; ++x) {
    const int* Mx = M + x * n;
    for (Index y = 0; y < n && rep.distributive; ++y) {
      const int* Jy = J + y * n;
      const auto xy = static_cast<Index>(Mx[y]);
      const int* Jxy = J + xy * n;
      // law is symmetric in y and z
      for (Index z = y + 1; z < n; ++z) {
        const int lhs = Mx[static_cast<Index>(Jy[z])];
        const int rhs = Jxy[static_cast<Index>(Mx[z])];
        if (lhs != rhs) {
          rep.distributive = false;
          rep.witness = std::array<Index, 3>{x, y, z};
          break;
        }
      }
    }
  }
  if (!rep.distributive) {
    const auto& w = *rep.witness;
    rep.sublattice_witness = find_forbidden_sublattice(generated_sublattice({w[0], w[1], w[2]}));
    if (!rep.sublattice_witness)
      throw std::logic_error("distributive law fails but no N5/M3 found in the generated sublattice");
  }
  return rep;
}

std::vector<Index> FiniteLattice::generated_sublattice(const std::vector<Index>& generators) const {
  if (!is_lattice()) throw Error(ErrorCode::NotALattice, "sublattice closure needs meets and joins");
  Bits in(size());
  std::vector<Index> members;
  for (Index g : generators)
    if (!in.test(g)) {
      in.set(g);
      members.push_back(g);
    }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t k = 0; k <= i; ++k) {
      for (Index r : {*meet(members[i], members[k]), *join(members[i], members[k])}) {
        if (!in.test(r)) {
          in.set(r);
          members.push_back(r);
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::optional<SublatticeWitness> FiniteLattice::find_forbidden_sublattice(
    const std::vector<Index>& within) const {
  const std::size_t m = within.size();
  // N5: a < b and c with a ∧ c = b ∧ c, a ∨ c = b ∨ c.
  for (std::size_t ia = 0; ia < m; ++ia) {
    for (std::size_t ib = 0; ib < m; ++ib) {
      Index a = within[ia], b = within[ib];
      if (a == b || !leq(a, b)) continue;
      for (std::size_t ic = 0; ic < m; ++ic) {
        Index c = within[ic];
        if (c == a || c == b) continue;
        if (*meet(a, c) == *meet(b, c) && *join(a, c) == *join(b, c))
          return SublatticeWitness{ForbiddenShape::N5, *meet(a, c), a, b, c, *join(a, c)};
      }
    }
  }
  // M3: three distinct elements with equal pairwise meets and joins.
  for (std::size_t ia = 0; ia < m; ++ia)
    for (std::size_t ib = ia + 1; ib < m; ++ib) {
      Index a = within[ia], b = within[ib];
      if (leq(a, b) || leq(b, a)) continue;
      Index lo = *meet(a, b), hi = *join(a, b);
      for (std::size_t ic = ib + 1; ic < m; ++ic) {
        Index c = within[ic];
        if (c == lo || c == hi) continue;
        if (*meet(a, c) == lo && *meet(b, c) == lo && *join(a, c) == hi && *join(b, c) == hi)
          return SublatticeWitness{ForbiddenShape::M3, lo, a, b, c, hi};
      }
    }
  return std::nullopt;
}

Decomposition FiniteLattice::decompose(Index x) const {
  if (!is_lattice())
    throw Error(ErrorCode::NotDistributive, "not a lattice, so decompositions need not be unique");
  if (!distributivity().distributive)
    throw Error(ErrorCode::NotDistributive, "lattice is not distributive; decomposition is not unique");
  if (x == *bottom_) throw Error(ErrorCode::BottomHasNoDecomposition, "the bottom element has no parts");

  std::vector<Index> below;
  for (Index j : irreducibles_)
    if (leq(j, x)) below.push_back(j);
  std::vector<Index> parts;
  for (Index j : below) {
    bool maximal = std::none_of(below.begin(), below.end(),
                                [&](Index k) { return k != j && leq(j, k); });
    if (maximal) parts.push_back(j);
  }

  if (join_all(parts) != x)
    throw std::logic_error(fmt::format("decomposition of {} does not join back to it", x));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<Index> rest;
    for (std::size_t k = 0; k < parts.size(); ++k)
      if (k != i) rest.push_back(parts[k]);
    if (!rest.empty() && join_all(rest) == x)
      throw std::logic_error(fmt::format("decomposition of {} is redundant", x));
  }
  return {x, std::move(parts)};
}

std::vector<Index> FiniteLattice::interval(Index lo, Index hi) const {
  if (!leq(lo, hi)) throw Error(ErrorCode::NotComparable, fmt::format("{} is not below {}", lo, hi));
  std::vector<Index> out;
  for (Index z = lo; z != Bits::npos && z <= hi; z = up_[lo].find_next(z))
    if (leq(z, hi)) out.push_back(z);
  return out;
}

}  // namespace runlattice
