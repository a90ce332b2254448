#include "runlattice/orderings.hpp"

#include <algorithm>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <fmt/format.h>

namespace runlattice {

std::string_view to_string(OrderingKind kind) {
  switch (kind) {
    case OrderingKind::ProjReplSet: return "proj-repl-set";
    case OrderingKind::ReplSet: return "repl-set";
    case OrderingKind::ProjReplRank: return "proj-repl-rank";
    case OrderingKind::ReplRank: return "repl-rank";
    case OrderingKind::ReplSwapRank: return "repl-swap-rank";
  }
  return "?";
}

OrderingKind parse_ordering(std::string_view name) {
  for (OrderingKind k : kAllOrderings)
    if (to_string(k) == name) return k;
  throw Error(ErrorCode::ParseError, fmt::format("unknown ordering '{}'", name));
}

RunMode mode_of(OrderingKind kind) {
  return (kind == OrderingKind::ProjReplSet || kind == OrderingKind::ReplSet) ? RunMode::SetBased
                                                                              : RunMode::RankBased;
}

std::string_view to_string(CompareResult r) {
  switch (r) {
    case CompareResult::Less: return "less";
    case CompareResult::Equal: return "equal";
    case CompareResult::Greater: return "greater";
    case CompareResult::Incomparable: return "incomparable";
  }
  return "?";
}

namespace {

void check_operands(OrderingKind kind, const JudgedRun& r, const JudgedRun& s) {
  const RunMode m = mode_of(kind);
  if (r.mode() != m || s.mode() != m)
    throw Error(ErrorCode::ModeMismatch,
                fmt::format("ordering {} needs {}-based runs", to_string(kind), to_string(m)));
  if (r.length() != s.length())
    throw Error(ErrorCode::LengthMismatch,
                fmt::format("runs of length {} and {}", r.length(), s.length()));
}

Degree max_degree_of(const JudgedRun& r, const JudgedRun& s) {
  Degree m = 0;
  for (Degree d : r.degrees()) m = std::max(m, d);
  for (Degree d : s.degrees()) m = std::max(m, d);
  return m;
}

// Count of documents at each degree.
std::vector<int> histogram(const JudgedRun& r, Degree top) {
  std::vector<int> h(static_cast<std::size_t>(top) + 1, 0);
  for (Degree d : r.degrees()) ++h[static_cast<std::size_t>(d)];
  return h;
}

// Highest degree whose count differs decides.
bool proj_repl_set(const JudgedRun& r, const JudgedRun& s) {
  const Degree top = max_degree_of(r, s);
  auto hr = histogram(r, top);
  auto hs = histogram(s, top);
  for (Degree k = top; k >= 0; --k) {
    auto i = static_cast<std::size_t>(k);
    if (hr[i] != hs[i]) return hr[i] < hs[i];
  }
  return true;
}

// Cumulated mass |{i : r_i >= a_j}| dominated for every j.
bool repl_set(const JudgedRun& r, const JudgedRun& s) {
  const Degree top = max_degree_of(r, s);
  auto hr = histogram(r, top);
  auto hs = histogram(s, top);
  int mr = 0, ms = 0;
  for (Degree j = top; j >= 0; --j) {
    mr += hr[static_cast<std::size_t>(j)];
    ms += hs[static_cast<std::size_t>(j)];
    if (mr > ms) return false;
  }
  return true;
}

// First differing rank position decides.
bool proj_repl_rank(const JudgedRun& r, const JudgedRun& s) {
  for (std::size_t k = 0; k < r.length(); ++k)
    if (r[k] != s[k]) return r[k] < s[k];
  return true;
}

// Positionwise dominance; equivalent to cumulated-mass dominance for every j.
bool repl_rank(const JudgedRun& r, const JudgedRun& s) {
  for (std::size_t k = 0; k < r.length(); ++k)
    if (r[k] > s[k]) return false;
  return true;
}

// Cumulated mass dominated for every degree j and every prefix k.
bool repl_swap_rank(const JudgedRun& r, const JudgedRun& s) {
  const Degree top = max_degree_of(r, s);
  std::vector<int> hr(static_cast<std::size_t>(top) + 1, 0), hs(hr);
  for (std::size_t k = 0; k < r.length(); ++k) {
    ++hr[static_cast<std::size_t>(r[k])];
    ++hs[static_cast<std::size_t>(s[k])];
    int mr = 0, ms = 0;
    for (Degree j = top; j >= 0; --j) {
      mr += hr[static_cast<std::size_t>(j)];
      ms += hs[static_cast<std::size_t>(j)];
      if (mr > ms) return false;
    }
  }
  return true;
}

bool precedes_unchecked(OrderingKind kind, const JudgedRun& r, const JudgedRun& s) {
  switch (kind) {
    case OrderingKind::ProjReplSet: return proj_repl_set(r, s);
    case OrderingKind::ReplSet: return repl_set(r, s);
    case OrderingKind::ProjReplRank: return proj_repl_rank(r, s);
    case OrderingKind::ReplRank: return repl_rank(r, s);
    case OrderingKind::ReplSwapRank: return repl_swap_rank(r, s);
  }
  return false;
}

}  // namespace

bool precedes(OrderingKind kind, const JudgedRun& r, const JudgedRun& s) {
  check_operands(kind, r, s);
  return precedes_unchecked(kind, r, s);
}

CompareResult compare(OrderingKind kind, const JudgedRun& r, const JudgedRun& s) {
  check_operands(kind, r, s);
  if (r == s) return CompareResult::Equal;
  const bool le = precedes_unchecked(kind, r, s);
  const bool ge = precedes_unchecked(kind, s, r);
  if (le && ge)
    throw std::logic_error(fmt::format("{} relates distinct runs {} and {} both ways",
                                       to_string(kind), to_literal(r), to_literal(s)));
  if (le) return CompareResult::Less;
  if (ge) return CompareResult::Greater;
  return CompareResult::Incomparable;
}

PosetReport verify_poset_axioms(OrderingKind kind, const RunUniverse& universe) {
  const std::size_t n = universe.size();
  std::vector<boost::dynamic_bitset<>> up(n, boost::dynamic_bitset<>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (precedes(kind, universe[x], universe[y])) up[x].set(y);

  PosetReport rep;
  for (std::size_t x = 0; x < n && rep.ok(); ++x) {
    if (!up[x].test(x)) {
      rep.reflexive = false;
      rep.witness = {x, x, x};
      rep.detail = fmt::format("{} is not related to itself", to_literal(universe[x]));
    }
  }
  for (std::size_t x = 0; x < n && rep.ok(); ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (up[x].test(y) && up[y].test(x)) {
        rep.antisymmetric = false;
        rep.witness = {x, y, y};
        rep.detail = fmt::format("{} and {} precede each other", to_literal(universe[x]),
                                 to_literal(universe[y]));
        break;
      }
    }
  }
  // x <= y implies up(y) is a subset of up(x)
  for (std::size_t x = 0; x < n && rep.ok(); ++x) {
    for (std::size_t y = up[x].find_first(); y != boost::dynamic_bitset<>::npos;
         y = up[x].find_next(y)) {
      if (!up[y].is_subset_of(up[x])) {
        auto missing = up[y] - up[x];
        std::size_t z = missing.find_first();
        rep.transitive = false;
        rep.witness = {x, y, z};
        rep.detail = fmt::format("{} <= {} <= {} but not {} <= {}", to_literal(universe[x]),
                                 to_literal(universe[y]), to_literal(universe[z]),
                                 to_literal(universe[x]), to_literal(universe[z]));
        break;
      }
    }
  }
  return rep;
}

TotalityReport is_total(OrderingKind kind, const RunUniverse& universe) {
  const std::size_t n = universe.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (compare(kind, universe[x], universe[y]) == CompareResult::Incomparable)
        return {false, std::pair{x, y}};
  return {};
}

}  // namespace runlattice
