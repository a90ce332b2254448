#include "runlattice/lattice.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <json.hpp>

namespace runlattice {

RunLattice build_order(const RunUniverse& universe, OrderingKind kind, std::size_t cap) {
  if (mode_of(kind) != universe.mode())
    throw Error(ErrorCode::ModeMismatch,
                fmt::format("ordering {} needs a {}-based universe", to_string(kind),
                            to_string(mode_of(kind))));
  const std::size_t n = universe.size();
  if (n > cap)
    throw Error(ErrorCode::UniverseTooLarge,
                fmt::format("{} elements exceeds the lattice cap of {}", n, cap));
  // Lexicographic order on degree vectors is a linear extension of all five orderings.
  auto structure = FiniteLattice::from_relation(
      n, [&](Index x, Index y) { return precedes(kind, universe[x], universe[y]); });
  RunLattice lat(universe, kind, std::move(structure));
  if (lat.structure().bottom() != Index{0} || lat.structure().top() != n - 1)
    throw std::logic_error("all-a_0 / all-a_c runs are not the bottom / top");
  return lat;
}

RunLattice build_lattice(const RunUniverse& universe, OrderingKind kind, std::size_t cap) {
  RunLattice lat = build_order(universe, kind, cap);
  if (!lat.is_lattice()) throw Error(ErrorCode::NotALattice, lat.non_lattice_witness());
  return lat;
}

std::string RunLattice::non_lattice_witness() const {
  const auto& mb = structure_.missing_bound();
  if (!mb) return {};
  std::vector<std::string> bounds;
  for (Index t : mb->minimal_bounds) bounds.push_back(to_literal(run(t)));
  return fmt::format("{} and {} have no {} under {} (minimal {} bounds: {})",
                     to_literal(run(mb->x)), to_literal(run(mb->y)),
                     mb->join ? "join" : "meet", to_string(kind_),
                     mb->join ? "upper" : "lower", fmt::join(bounds, " | "));
}

Index RunLattice::meet(Index x, Index y) const {
  auto m = structure_.meet(x, y);
  if (!m)
    throw Error(ErrorCode::NotALattice, fmt::format("{} and {} have no meet", to_literal(run(x)),
                                                    to_literal(run(y))));
  return *m;
}

Index RunLattice::join(Index x, Index y) const {
  auto j = structure_.join(x, y);
  if (!j)
    throw Error(ErrorCode::NotALattice, fmt::format("{} and {} have no join", to_literal(run(x)),
                                                    to_literal(run(y))));
  return *j;
}

MeetJoin closed_meet_join(OrderingKind kind, const JudgedRun& r, const JudgedRun& s,
                          const RelevanceScale& scale) {
  switch (kind) {
    case OrderingKind::ReplSet:
    case OrderingKind::ReplRank: {
      (void)compare(kind, r, s);  // mode/length checks
      std::vector<Degree> lo(r.length()), hi(r.length());
      for (std::size_t i = 0; i < r.length(); ++i) {
        lo[i] = std::min(r[i], s[i]);
        hi[i] = std::max(r[i], s[i]);
      }
      return {make_run(r.mode(), lo, scale), make_run(r.mode(), hi, scale)};
    }
    case OrderingKind::ProjReplSet:
    case OrderingKind::ProjReplRank: {
      bool le = precedes(kind, r, s);
      return le ? MeetJoin{r, s} : MeetJoin{s, r};
    }
    case OrderingKind::ReplSwapRank: break;
  }
  throw Error(ErrorCode::NoClosedForm,
              fmt::format("{} has no closed-form meet/join", to_string(kind)));
}

std::vector<Index> join_irreducibles(const RunLattice& lattice) {
  return lattice.structure().join_irreducibles();
}

const DistributivityReport& check_distributive(const RunLattice& lattice) {
  if (!lattice.is_lattice()) throw Error(ErrorCode::NotALattice, lattice.non_lattice_witness());
  return lattice.structure().distributivity();
}

Decomposition decompose(const RunLattice& lattice, Index x) {
  if (!lattice.is_lattice())
    throw Error(ErrorCode::NotDistributive,
                fmt::format("not a lattice: {}", lattice.non_lattice_witness()));
  return lattice.structure().decompose(x);
}

std::vector<Index> interval(const RunLattice& lattice, Index lo, Index hi) {
  if (!lattice.leq(lo, hi))
    throw Error(ErrorCode::NotComparable,
                fmt::format("{} is not below {}", to_literal(lattice.run(lo)),
                            to_literal(lattice.run(hi))));
  return lattice.structure().interval(lo, hi);
}

std::string export_hasse(const RunLattice& lattice, const HasseOptions& options) {
  std::string out = "digraph hasse {\n  rankdir=BT;\n";
  const auto& s = lattice.structure();
  for (Index i = 0; i < lattice.size(); ++i) {
    if (options.highlight_irreducibles && s.is_join_irreducible(i))
      out += fmt::format("  \"{}\" [peripheries=2];\n", to_literal(lattice.run(i)));
    else
      out += fmt::format("  \"{}\";\n", to_literal(lattice.run(i)));
  }
  for (const auto& [lo, hi] : lattice.covers())
    out += fmt::format("  \"{}\" -> \"{}\";\n", to_literal(lattice.run(lo)),
                       to_literal(lattice.run(hi)));
  out += "}\n";
  return out;
}

std::string export_json(const RunLattice& lattice) {
  nlohmann::json j;
  j["mode"] = to_string(lattice.universe().mode());
  j["c"] = lattice.universe().scale().max_degree();
  j["N"] = lattice.universe().length();
  j["ordering"] = to_string(lattice.kind());
  auto& elements = j["elements"] = nlohmann::json::array();
  for (const auto& r : lattice.universe().elements()) elements.push_back(to_literal(r));
  auto& covers = j["covers"] = nlohmann::json::array();
  for (const auto& [lo, hi] : lattice.covers()) covers.push_back({lo, hi});
  j["irreducibles"] = lattice.structure().join_irreducibles();
  return j.dump(2) + "\n";
}

std::string describe(const RunLattice& lattice, const SublatticeWitness& w) {
  auto lit = [&](Index i) { return to_literal(lattice.run(i)); };
  if (w.shape == ForbiddenShape::N5)
    return fmt::format("N5: bottom {} < {} < {} < top {}, side {}", lit(w.bottom), lit(w.low),
                       lit(w.high), lit(w.top), lit(w.side));
  return fmt::format("M3: bottom {}, atoms {} | {} | {}, top {}", lit(w.bottom), lit(w.low),
                     lit(w.high), lit(w.side), lit(w.top));
}

}  // namespace runlattice
