#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "runlattice/error.hpp"

namespace runlattice {

using Degree = int;

enum class RunMode { SetBased, RankBased };

std::string_view to_string(RunMode mode);
RunMode parse_mode(std::string_view name);

/// The totally ordered relevance degrees a_0 < ... < a_c with a gain per degree.
class RelevanceScale {
 public:
  Degree max_degree() const noexcept { return c_; }
  std::size_t degree_count() const noexcept { return gains_.size(); }
  double gain(Degree d) const { return gains_.at(static_cast<std::size_t>(d)); }
  double max_gain() const noexcept { return gains_.back(); }
  std::span<const double> gains() const noexcept { return gains_; }

  bool contains(Degree d) const noexcept { return d >= 0 && d <= c_; }

  friend bool operator==(const RelevanceScale&, const RelevanceScale&) = default;

 private:
  friend RelevanceScale make_scale(int c, std::optional<std::vector<double>> gains);
  RelevanceScale(Degree c, std::vector<double> gains) : c_(c), gains_(std::move(gains)) {}

  Degree c_;
  std::vector<double> gains_;
};

/// Builds a scale with c+1 degrees. Without explicit gains the gain is linear, g(a_i) = i.
RelevanceScale make_scale(int c, std::optional<std::vector<double>> gains = std::nullopt);

/// A judged run of length N. Set-based runs are kept sorted non-increasing so
/// multiset equality is plain vector equality.
class JudgedRun {
 public:
  RunMode mode() const noexcept { return mode_; }
  std::size_t length() const noexcept { return degrees_.size(); }
  std::span<const Degree> degrees() const noexcept { return degrees_; }
  Degree operator[](std::size_t i) const { return degrees_[i]; }

  friend bool operator==(const JudgedRun&, const JudgedRun&) = default;
  friend auto operator<=>(const JudgedRun& a, const JudgedRun& b) {
    if (auto m = a.mode_ <=> b.mode_; m != 0) return m;
    return a.degrees_ <=> b.degrees_;
  }

 private:
  friend JudgedRun make_run(RunMode, std::span<const Degree>, const RelevanceScale&);
  JudgedRun(RunMode mode, std::vector<Degree> degrees) : mode_(mode), degrees_(std::move(degrees)) {}

  RunMode mode_;
  std::vector<Degree> degrees_;
};

JudgedRun make_run(RunMode mode, std::span<const Degree> degrees, const RelevanceScale& scale);
inline JudgedRun make_run(RunMode mode, std::initializer_list<Degree> degrees,
                          const RelevanceScale& scale) {
  return make_run(mode, std::span<const Degree>(degrees.begin(), degrees.size()), scale);
}

/// "2,1,0" -> {2,1,0}. Whitespace around entries is ignored.
std::vector<Degree> parse_degrees(std::string_view literal);
JudgedRun parse_run(std::string_view literal, RunMode mode, const RelevanceScale& scale);
std::string to_literal(const JudgedRun& run);

/// Number of positions (within the first k when given) whose degree is at least a_j.
int cumulated_mass(const JudgedRun& run, Degree j, std::optional<std::size_t> k = std::nullopt);

inline constexpr std::size_t kDefaultUniverseCap = 100'000;
inline constexpr std::size_t kHardUniverseCap = 1'000'000;

/// Every distinct judged run of a given length, in lexicographic order of degree vectors.
class RunUniverse {
 public:
  const RelevanceScale& scale() const noexcept { return scale_; }
  std::size_t length() const noexcept { return length_; }
  RunMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<JudgedRun>& elements() const noexcept { return elements_; }
  const JudgedRun& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> index_of(const JudgedRun& run) const;
  std::size_t require_index(const JudgedRun& run) const;

 private:
  friend RunUniverse enumerate_universe(const RelevanceScale&, std::size_t, RunMode, std::size_t);
  RunUniverse(RelevanceScale scale, std::size_t length, RunMode mode, std::vector<JudgedRun> elements);

  RelevanceScale scale_;
  std::size_t length_;
  RunMode mode_;
  std::vector<JudgedRun> elements_;
  std::map<std::vector<Degree>, std::size_t> index_;
};

/// Predicted element count: (c+1)^N for rank-based, binomial(N+c, c) for set-based.
/// Saturates at SIZE_MAX.
std::size_t universe_size(int c, std::size_t length, RunMode mode);

RunUniverse enumerate_universe(const RelevanceScale& scale, std::size_t length, RunMode mode,
                               std::size_t cap = kDefaultUniverseCap);

}  // namespace runlattice
