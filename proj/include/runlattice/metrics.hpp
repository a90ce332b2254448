#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "runlattice/domain.hpp"
#include "runlattice/lattice.hpp"

namespace runlattice {

inline constexpr double kValuationTolerance = 1e-9;

enum class MetricKind { GP, GR, GRBP, DCG, Custom };

std::string_view to_string(MetricKind kind);
MetricKind parse_metric(std::string_view name);

/// Custom values are keyed by run degrees and resolved against a lattice on use.
struct CustomAssignment {
  std::map<std::vector<Degree>, double> values;
  double bottom_value = 0.0;
};

struct MetricSpec {
  MetricKind kind = MetricKind::GP;
  std::optional<double> recall_base;  ///< gR; defaults to N
  std::optional<double> persistence;  ///< gRBP p in (0, 1)
  std::optional<double> log_base;     ///< DCG b > 1
  CustomAssignment custom;

  static MetricSpec gp() { return {}; }
  static MetricSpec gr(std::optional<double> rb = std::nullopt) {
    MetricSpec s;
    s.kind = MetricKind::GR;
    s.recall_base = rb;
    return s;
  }
  static MetricSpec grbp(double p) {
    MetricSpec s;
    s.kind = MetricKind::GRBP;
    s.persistence = p;
    return s;
  }
  static MetricSpec dcg(double b) {
    MetricSpec s;
    s.kind = MetricKind::DCG;
    s.log_base = b;
    return s;
  }
  static MetricSpec custom_metric(CustomAssignment a) {
    MetricSpec s;
    s.kind = MetricKind::Custom;
    s.custom = std::move(a);
    return s;
  }

  std::string label() const;
};

/// Throws MissingParam / InvalidParam, or ModeMismatch for gRBP/DCG on set-based runs.
void validate(const MetricSpec& spec, RunMode mode);

/// Direct evaluation by the metric's closed formula. Custom specs throw RequiresLattice.
double eval_metric(const MetricSpec& spec, const JudgedRun& run, const RelevanceScale& scale);

/// Values of `spec` on every lattice element, in element order. Custom specs
/// are extended from their irreducible values.
std::vector<double> metric_values(const MetricSpec& spec, const RunLattice& lattice);

struct ValuationCounterexample {
  Index x, y;
  double vx, vy, vjoin, vmeet;
};

struct ValuationReport {
  bool is_valuation = true;
  std::optional<ValuationCounterexample> counterexample;
};

ValuationReport check_valuation(const std::vector<double>& values, const RunLattice& lattice,
                                double tolerance = kValuationTolerance);
ValuationReport check_valuation(const MetricSpec& spec, const RunLattice& lattice);

/// Rebuilds a valuation from its values on the join-irreducibles and the bottom
/// by folding v(A ∨ j) = v(A) + v(j) - v(A ∧ j) over each element's
/// decomposition. Memoized; one instance per lattice.
class Reconstructor {
 public:
  /// `seed[j]` must be set for every join-irreducible j; other entries are ignored.
  Reconstructor(const RunLattice& lattice, std::vector<std::optional<double>> seed,
                double bottom_value);

  double value(Index x);
  std::vector<double> all();

 private:
  const RunLattice& lattice_;
  std::vector<std::optional<double>> memo_;
};

/// Value of a built-in valuation (or custom metric) at x using only its values
/// on join-irreducibles and the bottom. Throws NotDistributive / NotAValuation.
double reconstruct(const MetricSpec& spec, const RunLattice& lattice, Index x);

struct CustomExtension {
  std::vector<double> values;
  bool monotone = true;
  std::optional<Edge> monotonicity_witness;  ///< cover x ⋖ y with v(x) > v(y)
};

CustomExtension extend_custom(const RunLattice& lattice, const CustomAssignment& assignment);

struct MetricRow {
  JudgedRun run;
  double value;
};

/// One row per universe element in canonical order. Built-ins need no lattice.
std::vector<MetricRow> metric_table(const MetricSpec& spec, const RunUniverse& universe);
std::vector<MetricRow> metric_table(const MetricSpec& spec, const RunLattice& lattice);

std::string table_csv(const std::vector<MetricRow>& rows, std::string_view label);
std::string table_json(const std::vector<MetricRow>& rows, std::string_view label);

/// Reads {"run literal": value, ..., "_bottom": value}.
CustomAssignment parse_custom_assignment(std::string_view json_text);

}  // namespace runlattice
