#include "runlattice/domain.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>

#include <fmt/format.h>

namespace runlattice {

std::string_view to_string(RunMode mode) {
  return mode == RunMode::SetBased ? "set" : "rank";
}

RunMode parse_mode(std::string_view name) {
  if (name == "set") return RunMode::SetBased;
  if (name == "rank") return RunMode::RankBased;
  throw Error(ErrorCode::ParseError, fmt::format("unknown mode '{}' (expected set or rank)", name));
}

RelevanceScale make_scale(int c, std::optional<std::vector<double>> gains) {
  if (c < 1) throw Error(ErrorCode::InvalidDegreeCount, fmt::format("c must be >= 1, got {}", c));
  std::vector<double> g;
  if (gains) {
    g = std::move(*gains);
    if (g.size() != static_cast<std::size_t>(c) + 1)
      throw Error(ErrorCode::InvalidDegreeCount,
                  fmt::format("expected {} gains for c={}, got {}", c + 1, c, g.size()));
    if (g.front() != 0.0)
      throw Error(ErrorCode::NonzeroGainAtBottom, fmt::format("g(a_0) must be 0, got {}", g.front()));
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      if (!(g[i] < g[i + 1]))
        throw Error(ErrorCode::NonIncreasingGains,
                    fmt::format("g(a_{}) = {} is not below g(a_{}) = {}", i, g[i], i + 1, g[i + 1]));
    }
  } else {
    g.resize(static_cast<std::size_t>(c) + 1);
    for (int i = 0; i <= c; ++i) g[static_cast<std::size_t>(i)] = i;
  }
  return RelevanceScale(c, std::move(g));
}

JudgedRun make_run(RunMode mode, std::span<const Degree> degrees, const RelevanceScale& scale) {
  if (degrees.empty()) throw Error(ErrorCode::EmptyRun, "a judged run needs at least one document");
  for (Degree d : degrees) {
    if (!scale.contains(d))
      throw Error(ErrorCode::DegreeOutOfRange,
                  fmt::format("degree {} outside [0, {}]", d, scale.max_degree()));
  }
  std::vector<Degree> v(degrees.begin(), degrees.end());
  if (mode == RunMode::SetBased) std::sort(v.begin(), v.end(), std::greater<>());
  return JudgedRun(mode, std::move(v));
}

std::vector<Degree> parse_degrees(std::string_view literal) {
  std::vector<Degree> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = literal.find(',', pos);
    std::string_view item = literal.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    Degree d{};
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), d);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size())
      throw Error(ErrorCode::ParseError, fmt::format("bad run literal '{}'", literal));
    out.push_back(d);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

JudgedRun parse_run(std::string_view literal, RunMode mode, const RelevanceScale& scale) {
  return make_run(mode, parse_degrees(literal), scale);
}

std::string to_literal(const JudgedRun& run) {
  return fmt::format("{}", fmt::join(run.degrees(), ","));
}

int cumulated_mass(const JudgedRun& run, Degree j, std::optional<std::size_t> k) {
  std::size_t limit = run.length();
  if (k) {
    if (run.mode() == RunMode::SetBased)
      throw Error(ErrorCode::PrefixOnSetBased, "a rank prefix is meaningless for a set-based run");
    if (*k < 1 || *k > run.length())
      throw Error(ErrorCode::LengthMismatch,
                  fmt::format("prefix {} outside [1, {}]", *k, run.length()));
    limit = *k;
  }
  auto d = run.degrees().first(limit);
  return static_cast<int>(std::count_if(d.begin(), d.end(), [j](Degree x) { return x >= j; }));
}

std::size_t universe_size(int c, std::size_t length, RunMode mode) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  if (mode == RunMode::RankBased) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < length; ++i) {
      if (n > kMax / static_cast<std::size_t>(c + 1)) return kMax;
      n *= static_cast<std::size_t>(c + 1);
    }
    return n;
  }
  // binomial(length + c, c), built incrementally so every prefix is an integer
  std::size_t n = 1;
  for (std::size_t i = 1; i <= static_cast<std::size_t>(c); ++i) {
    std::size_t num = length + i;
    if (n > kMax / num) return kMax;
    n = n * num / i;
  }
  return n;
}

RunUniverse::RunUniverse(RelevanceScale scale, std::size_t length, RunMode mode,
                         std::vector<JudgedRun> elements)
    : scale_(std::move(scale)), length_(length), mode_(mode), elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    auto d = elements_[i].degrees();
    index_.emplace(std::vector<Degree>(d.begin(), d.end()), i);
  }
}

std::optional<std::size_t> RunUniverse::index_of(const JudgedRun& run) const {
  if (run.mode() != mode_ || run.length() != length_) return std::nullopt;
  auto d = run.degrees();
  auto it = index_.find(std::vector<Degree>(d.begin(), d.end()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RunUniverse::require_index(const JudgedRun& run) const {
  if (run.mode() != mode_)
    throw Error(ErrorCode::ModeMismatch, fmt::format("run '{}' is {}-based, universe is {}-based",
                                                     to_literal(run), to_string(run.mode()),
                                                     to_string(mode_)));
  if (run.length() != length_)
    throw Error(ErrorCode::LengthMismatch,
                fmt::format("run '{}' has length {}, universe has N={}", to_literal(run),
                            run.length(), length_));
  auto i = index_of(run);
  if (!i) throw Error(ErrorCode::DegreeOutOfRange, fmt::format("run '{}' not in universe", to_literal(run)));
  return *i;
}

RunUniverse enumerate_universe(const RelevanceScale& scale, std::size_t length, RunMode mode,
                               std::size_t cap) {
  if (length < 1) throw Error(ErrorCode::EmptyRun, "N must be >= 1");
  const int c = scale.max_degree();
  const std::size_t expected = universe_size(c, length, mode);
  if (expected > cap)
    throw Error(ErrorCode::UniverseTooLarge,
                fmt::format("{} runs for c={}, N={} ({}-based) exceeds the cap of {}",
                            expected == std::numeric_limits<std::size_t>::max()
                                ? std::string("too many")
                                : std::to_string(expected),
                            c, length, to_string(mode), cap));

  std::vector<JudgedRun> elements;
  elements.reserve(expected);
  std::vector<Degree> cur(length, 0);
  while (true) {
    elements.push_back(make_run(mode, cur, scale));
    // Next vector in lexicographic order; in set mode the next non-increasing one.
    std::size_t pos = length;
    while (pos > 0) {
      Degree limit = (mode == RunMode::SetBased && pos > 1) ? cur[pos - 2] : c;
      if (cur[pos - 1] < limit) break;
      --pos;
    }
    if (pos == 0) break;
    ++cur[pos - 1];
    std::fill(cur.begin() + static_cast<std::ptrdiff_t>(pos), cur.end(), 0);
  }
  return RunUniverse(scale, length, mode, std::move(elements));
}

}  // namespace runlattice
