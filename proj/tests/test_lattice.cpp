#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "runlattice/lattice.hpp"
#include "support.hpp"

using namespace runlattice;
using K = OrderingKind;
using testing_support::degrees;

namespace {

std::set<std::pair<std::string, std::string>> cover_literals(const RunLattice& lat) {
  std::set<std::pair<std::string, std::string>> out;
  for (auto [lo, hi] : lat.covers()) out.emplace(to_literal(lat.run(lo)), to_literal(lat.run(hi)));
  return out;
}

std::set<std::vector<int>> irreducible_runs(const RunLattice& lat) {
  std::set<std::vector<int>> out;
  for (Index j : join_irreducibles(lat)) out.insert(degrees(lat.run(j)));
  return out;
}

Index at(const RunLattice& lat, std::initializer_list<Degree> d) {
  return lat.index_of(make_run(lat.universe().mode(), d, lat.universe().scale()));
}

oracle::Ops ops_of(const RunLattice& lat) {
  return {lat.size(), [&lat](Index a, Index b) { return lat.leq(a, b); },
          [&lat](Index a, Index b) { return lat.meet(a, b); }, [&lat](Index a, Index b) { return lat.join(a, b); }};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Build, SetReplacementSixElements) {
  auto lat = testing_support::lattice(K::ReplSet, 2, 2);
  ASSERT_EQ(lat.size(), 6u);
  EXPECT_TRUE(lat.is_lattice());
  std::set<std::pair<std::string, std::string>> expected{
      {"0,0", "1,0"}, {"1,0", "1,1"}, {"1,0", "2,0"}, {"1,1", "2,1"}, {"2,0", "2,1"}, {"2,1", "2,2"}};
  EXPECT_EQ(cover_literals(lat), expected);
}

TEST(Build, RankChain) {
  auto lat = testing_support::lattice(K::ProjReplRank, 2, 3);
  ASSERT_EQ(lat.size(), 27u);
  ASSERT_EQ(lat.covers().size(), 26u);
  for (Index i = 0; i + 1 < lat.size(); ++i) EXPECT_EQ(lat.covers()[i], (Edge{i, i + 1}));
}

TEST(Build, SmallestIsTwoElementChain) {
  for (auto k : kAllOrderings) {
    auto lat = testing_support::lattice(k, 1, 1);
    EXPECT_EQ(lat.size(), 2u);
    EXPECT_EQ(lat.covers(), (std::vector<Edge>{{0, 1}})) << to_string(k);
  }
}

TEST(Build, RankReplacementEdgeCount) {
  auto lat = testing_support::lattice(K::ReplRank, 2, 3);
  std::size_t brute = 0;
  for (const auto& r : lat.universe().elements())
    for (const auto& s : lat.universe().elements())
      if (oracle::one_step_cover(degrees(r), degrees(s))) ++brute;
  EXPECT_EQ(brute, 54u);
  EXPECT_EQ(lat.covers().size(), 54u);
}

TEST(Build, ModeAndCapChecks) {
  auto u = testing_support::universe(2, 3, RunMode::SetBased);
  EXPECT_THROW(build_order(u, K::ReplRank), Error);
  auto big = testing_support::universe(3, 5, RunMode::RankBased);
  try {
    build_order(big, K::ReplRank, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UniverseTooLarge);
  }
}

TEST(Build, SwapIsNotALatticeBeyondOneDimension) {
  auto u = testing_support::universe(2, 3, RunMode::RankBased);
  try {
    build_lattice(u, K::ReplSwapRank);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotALattice);
  }
  auto lat = build_order(u, K::ReplSwapRank);
  EXPECT_FALSE(lat.is_lattice());
  const auto& mb = *lat.structure().missing_bound();
  EXPECT_EQ(to_literal(lat.run(mb.x)), "0,0,2");
  EXPECT_EQ(to_literal(lat.run(mb.y)), "0,1,0");

  // same verdict from the literal predicate and explicit bound search
  auto P = oracle::run_poset(K::ReplSwapRank, 2, 3);
  EXPECT_FALSE(P.join(at(lat, {0, 0, 2}), at(lat, {0, 1, 0})));
  EXPECT_EQ(lat.non_lattice_witness(),
            "0,0,2 and 0,1,0 have no join under repl-swap-rank (minimal upper bounds: 0,1,2 | 0,2,0)");

  for (std::size_t n = 1; n <= 5; ++n) EXPECT_TRUE(testing_support::lattice(K::ReplSwapRank, 1, n).is_lattice());
  EXPECT_TRUE(testing_support::lattice(K::ReplSwapRank, 3, 1).is_lattice());
}

TEST(Build, SwapIntervalIsAChain) {
  auto lat = testing_support::lattice(K::ReplSwapRank, 2, 3);
  auto lo = at(lat, {2, 1, 1}), hi = at(lat, {2, 2, 1});
  std::vector<std::string> got;
  for (Index i : interval(lat, lo, hi)) got.push_back(to_literal(lat.run(i)));
  EXPECT_EQ(got, (std::vector<std::string>{"2,1,1", "2,1,2", "2,2,1"}));

  auto P = oracle::run_poset(K::ReplSwapRank, 2, 3);
  std::vector<std::string> brute;
  for (const auto& t : P.elems)
    if (P.le({2, 1, 1}, t) && P.le(t, {2, 2, 1})) brute.push_back(to_literal(make_run(RunMode::RankBased, t, make_scale(2))));
  EXPECT_EQ(brute, got);
}

TEST(ClosedForm, Examples) {
  auto s2 = make_scale(2);
  auto mj = closed_meet_join(K::ReplSet, make_run(RunMode::SetBased, {1, 1, 0, 0, 0}, s2),
                             make_run(RunMode::SetBased, {2, 0, 0, 0, 0}, s2), s2);
  EXPECT_EQ(to_literal(mj.join), "2,1,0,0,0");
  EXPECT_EQ(to_literal(mj.meet), "1,0,0,0,0");
  auto rj = closed_meet_join(K::ReplRank, make_run(RunMode::RankBased, {1, 0, 0}, s2),
                             make_run(RunMode::RankBased, {0, 1, 0}, s2), s2);
  EXPECT_EQ(to_literal(rj.join), "1,1,0");
  EXPECT_EQ(to_literal(rj.meet), "0,0,0");
}

TEST(ClosedForm, Idempotent) {
  auto s = make_scale(2);
  for (auto k : {K::ReplSet, K::ReplRank, K::ProjReplSet, K::ProjReplRank}) {
    auto r = make_run(mode_of(k), {2, 0, 1}, s);
    auto mj = closed_meet_join(k, r, r, s);
    EXPECT_EQ(mj.meet, r);
    EXPECT_EQ(mj.join, r);
  }
  auto r = make_run(RunMode::RankBased, {2, 0, 1}, s);
  try {
    closed_meet_join(K::ReplSwapRank, r, r, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoClosedForm);
  }
}

TEST(ClosedForm, MatchesBoundSearchOracle) {
  // the explicit-list search is cubic; the full grid runs in the acceptance suite
  for (auto [c, n] : testing_support::grid(81)) {
    for (auto k : {K::ReplSet, K::ReplRank, K::ProjReplSet, K::ProjReplRank}) {
      auto lat = testing_support::lattice(k, c, n);
      auto P = oracle::run_poset(k, c, n);
      ASSERT_EQ(P.size(), lat.size());
      const auto& scale = lat.universe().scale();
      for (Index x = 0; x < lat.size(); ++x)
        for (Index y = 0; y < lat.size(); ++y) {
          auto mj = closed_meet_join(k, lat.run(x), lat.run(y), scale);
          ASSERT_EQ(degrees(mj.join), P.elems[*P.join(x, y)]);
          ASSERT_EQ(degrees(mj.meet), P.elems[*P.meet(x, y)]);
          ASSERT_EQ(lat.index_of(mj.join), lat.join(x, y));
          ASSERT_EQ(lat.index_of(mj.meet), lat.meet(x, y));
        }
    }
  }
}

TEST(ClosedForm, JoinIsLeastAmongUpperBoundsByMass) {
  for (auto k : {K::ReplSet, K::ReplRank}) {
    auto lat = testing_support::lattice(k, 2, 3);
    const auto& scale = lat.universe().scale();
    for (Index x = 0; x < lat.size(); ++x)
      for (Index y = 0; y < lat.size(); ++y) {
        auto j = closed_meet_join(k, lat.run(x), lat.run(y), scale).join;
        ASSERT_TRUE(precedes(k, lat.run(x), j));
        ASSERT_TRUE(precedes(k, lat.run(y), j));
        for (const auto& t : lat.universe().elements()) {
          if (!precedes(k, lat.run(x), t) || !precedes(k, lat.run(y), t)) continue;
          for (int d = 0; d <= 2; ++d) ASSERT_LE(cumulated_mass(j, d), cumulated_mass(t, d));
          ASSERT_TRUE(precedes(k, j, t));
        }
      }
  }
}

TEST(Covers, OneStepCharacterization) {
  for (auto [c, n] : testing_support::grid(256))
    for (auto k : {K::ReplSet, K::ReplRank}) {
      auto lat = testing_support::lattice(k, c, n);
      std::set<Edge> expected;
      for (Index x = 0; x < lat.size(); ++x)
        for (Index y = 0; y < lat.size(); ++y)
          if (oracle::one_step_cover(degrees(lat.run(x)), degrees(lat.run(y)))) expected.emplace(x, y);
      EXPECT_EQ(std::set<Edge>(lat.covers().begin(), lat.covers().end()), expected)
          << to_string(k) << " c=" << c << " N=" << n;
    }
}

TEST(Irreducibles, Examples) {
  auto set5 = testing_support::lattice(K::ReplSet, 2, 5);
  EXPECT_EQ(irreducible_runs(set5), oracle::set_irreducibles(2, 5));
  EXPECT_EQ(join_irreducibles(set5).size(), 10u);
  EXPECT_TRUE(irreducible_runs(set5).count({1, 0, 0, 0, 0}));
  EXPECT_TRUE(irreducible_runs(set5).count({2, 2, 2, 2, 2}));

  auto rank3 = testing_support::lattice(K::ReplRank, 2, 3);
  EXPECT_EQ(irreducible_runs(rank3), oracle::rank_irreducibles(2, 3));

  auto chain = testing_support::lattice(K::ProjReplSet, 2, 2);
  EXPECT_EQ(join_irreducibles(chain), (std::vector<Index>{1, 2, 3, 4, 5}));
}

TEST(Irreducibles, ClosedFormsAndCount) {
  for (auto [c, n] : testing_support::grid()) {
    auto sl = testing_support::lattice(K::ReplSet, c, n);
    EXPECT_EQ(irreducible_runs(sl), oracle::set_irreducibles(c, n));
    EXPECT_EQ(join_irreducibles(sl).size(), static_cast<std::size_t>(c) * n);
    if (universe_size(c, n, RunMode::RankBased) > 256) continue;
    auto rl = testing_support::lattice(K::ReplRank, c, n);
    EXPECT_EQ(irreducible_runs(rl), oracle::rank_irreducibles(c, n));
    EXPECT_EQ(join_irreducibles(rl).size(), static_cast<std::size_t>(c) * n);
  }
}

TEST(Distributive, Examples) {
  EXPECT_TRUE(check_distributive(testing_support::lattice(K::ReplSet, 2, 5)).distributive);
  EXPECT_TRUE(check_distributive(testing_support::lattice(K::ReplRank, 2, 3)).distributive);
  try {
    check_distributive(testing_support::lattice(K::ReplSwapRank, 2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotALattice);
  }
}

TEST(Decompose, Examples) {
  auto rank3 = testing_support::lattice(K::ReplRank, 2, 3);
  std::set<std::string> parts;
  for (Index p : decompose(rank3, at(rank3, {2, 1, 1})).parts) parts.insert(to_literal(rank3.run(p)));
  EXPECT_EQ(parts, (std::set<std::string>{"2,0,0", "0,1,0", "0,0,1"}));

  auto set5 = testing_support::lattice(K::ReplSet, 2, 5);
  parts.clear();
  for (Index p : decompose(set5, at(set5, {2, 1, 0, 0, 0})).parts) parts.insert(to_literal(set5.run(p)));
  EXPECT_EQ(parts, (std::set<std::string>{"1,1,0,0,0", "2,0,0,0,0"}));

  for (Index j : join_irreducibles(set5)) EXPECT_EQ(decompose(set5, j).parts, (std::vector<Index>{j}));

  try {
    decompose(testing_support::lattice(K::ReplSwapRank, 2, 3), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDistributive);
  }
}

TEST(Decompose, UniqueByAntichainSearch) {
  for (auto [c, n] : testing_support::grid(64)) {
    for (auto k : {K::ReplSet, K::ReplRank, K::ProjReplSet, K::ProjReplRank}) {
      auto lat = testing_support::lattice(k, c, n);
      auto irr = join_irreducibles(lat);
      for (Index x = 1; x < lat.size(); ++x) {
        ASSERT_EQ(oracle::count_irredundant_decompositions(ops_of(lat), irr, x, lat.bottom()), 1)
            << to_string(k) << " " << to_literal(lat.run(x));
      }
    }
  }
}

TEST(Interval, Examples) {
  auto lat = testing_support::lattice(K::ReplRank, 2, 2);
  for (Index x = 0; x < lat.size(); ++x) EXPECT_EQ(interval(lat, x, x), (std::vector<Index>{x}));
  EXPECT_EQ(interval(lat, lat.bottom(), lat.top()).size(), lat.size());
  std::vector<std::string> got;
  for (Index i : interval(lat, at(lat, {1, 0}), at(lat, {2, 1}))) got.push_back(to_literal(lat.run(i)));
  EXPECT_EQ(got, (std::vector<std::string>{"1,0", "1,1", "2,0", "2,1"}));
  try {
    interval(lat, at(lat, {1, 0}), at(lat, {0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotComparable);
  }
}

TEST(Hasse, GoldenSetReplacement) {
  auto dot = export_hasse(testing_support::lattice(K::ReplSet, 2, 2), {.highlight_irreducibles = true});
  EXPECT_EQ(dot, read_file(std::string(RUNLATTICE_GOLDEN_DIR) + "/hasse_repl_set_c2_n2.dot"));
}

TEST(Hasse, HighlightCount) {
  auto dot = export_hasse(testing_support::lattice(K::ReplSet, 2, 5), {.highlight_irreducibles = true});
  std::size_t nodes = 0, doubled = 0, edges = 0;
  std::istringstream in(dot);
  for (std::string line; std::getline(in, line);) {
    if (line.find("->") != std::string::npos) ++edges;
    else if (line.rfind("  \"", 0) == 0) {
      ++nodes;
      if (line.find("peripheries=2") != std::string::npos) ++doubled;
    }
  }
  EXPECT_EQ(nodes, 21u);
  EXPECT_EQ(doubled, 10u);
  EXPECT_EQ(edges, testing_support::lattice(K::ReplSet, 2, 5).covers().size());
}

TEST(Hasse, ChainIsAPath) {
  auto dot = export_hasse(testing_support::lattice(K::ProjReplRank, 1, 2));
  EXPECT_EQ(dot,
            "digraph hasse {\n  rankdir=BT;\n  \"0,0\";\n  \"0,1\";\n  \"1,0\";\n  \"1,1\";\n"
            "  \"0,0\" -> \"0,1\";\n  \"0,1\" -> \"1,0\";\n  \"1,0\" -> \"1,1\";\n}\n");
}

TEST(Export, Json) {
  auto lat = testing_support::lattice(K::ReplRank, 1, 2);
  auto j = nlohmann::json::parse(export_json(lat));
  EXPECT_EQ(j["mode"], "rank");
  EXPECT_EQ(j["c"], 1);
  EXPECT_EQ(j["N"], 2);
  EXPECT_EQ(j["ordering"], "repl-rank");
  EXPECT_EQ(j["elements"], nlohmann::json({"0,0", "0,1", "1,0", "1,1"}));
  EXPECT_EQ(j["covers"], nlohmann::json({{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(j["irreducibles"], nlohmann::json({1, 2}));
}
