#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "runlattice/domain.hpp"
#include "runlattice/lattice.hpp"

namespace testing_support {

struct Config {
  int c;
  std::size_t n;
};

/// (c, N) in {1,2,3} x {1..5} with (c+1)^N <= limit.
inline std::vector<Config> grid(std::size_t limit = 1024) {
  std::vector<Config> out;
  for (int c = 1; c <= 3; ++c)
    for (std::size_t n = 1; n <= 5; ++n)
      if (runlattice::universe_size(c, n, runlattice::RunMode::RankBased) <= limit) out.push_back({c, n});
  return out;
}

inline runlattice::RunUniverse universe(int c, std::size_t n, runlattice::RunMode mode) {
  return runlattice::enumerate_universe(runlattice::make_scale(c), n, mode);
}

inline runlattice::RunLattice lattice(runlattice::OrderingKind kind, int c, std::size_t n) {
  return runlattice::build_order(universe(c, n, runlattice::mode_of(kind)), kind);
}

inline std::vector<int> degrees(const runlattice::JudgedRun& r) {
  return {r.degrees().begin(), r.degrees().end()};
}

}  // namespace testing_support
