#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "runlattice/domain.hpp"

namespace runlattice {

/// The five admissible combinations of replacement, projection and swapping.
enum class OrderingKind { ProjReplSet, ReplSet, ProjReplRank, ReplRank, ReplSwapRank };

inline constexpr std::array<OrderingKind, 5> kAllOrderings = {
    OrderingKind::ProjReplSet, OrderingKind::ReplSet, OrderingKind::ProjReplRank,
    OrderingKind::ReplRank, OrderingKind::ReplSwapRank};

std::string_view to_string(OrderingKind kind);
OrderingKind parse_ordering(std::string_view name);
RunMode mode_of(OrderingKind kind);

enum class CompareResult { Less, Equal, Greater, Incomparable };

std::string_view to_string(CompareResult r);

/// r precedes-or-equals s under `kind`.
bool precedes(OrderingKind kind, const JudgedRun& r, const JudgedRun& s);

CompareResult compare(OrderingKind kind, const JudgedRun& r, const JudgedRun& s);

struct PosetReport {
  bool reflexive = true;
  bool antisymmetric = true;
  bool transitive = true;
  /// First violation found, as universe indices; (x, y) for reflexivity/antisymmetry.
  std::optional<std::array<std::size_t, 3>> witness;
  std::string detail;

  bool ok() const { return reflexive && antisymmetric && transitive; }
};

PosetReport verify_poset_axioms(OrderingKind kind, const RunUniverse& universe);

struct TotalityReport {
  bool total = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// The witness is the first incomparable pair in canonical order.
TotalityReport is_total(OrderingKind kind, const RunUniverse& universe);

}  // namespace runlattice
