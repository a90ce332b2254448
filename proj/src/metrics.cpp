#include "runlattice/metrics.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

namespace runlattice {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::GP: return "gp";
    case MetricKind::GR: return "gr";
    case MetricKind::GRBP: return "grbp";
    case MetricKind::DCG: return "dcg";
    case MetricKind::Custom: return "custom";
  }
  return "?";
}

MetricKind parse_metric(std::string_view name) {
  for (MetricKind k : {MetricKind::GP, MetricKind::GR, MetricKind::GRBP, MetricKind::DCG,
                       MetricKind::Custom})
    if (to_string(k) == name) return k;
  throw Error(ErrorCode::ParseError, fmt::format("unknown metric '{}'", name));
}

std::string MetricSpec::label() const {
  switch (kind) {
    case MetricKind::GR:
      return recall_base ? fmt::format("gr(rb={})", *recall_base) : std::string("gr");
    case MetricKind::GRBP: return fmt::format("grbp(p={})", persistence.value_or(NAN));
    case MetricKind::DCG: return fmt::format("dcg(b={})", log_base.value_or(NAN));
    default: return std::string(to_string(kind));
  }
}

void validate(const MetricSpec& spec, RunMode mode) {
  switch (spec.kind) {
    case MetricKind::GP:
    case MetricKind::Custom: return;
    case MetricKind::GR:
      if (spec.recall_base && !(*spec.recall_base > 0))
        throw Error(ErrorCode::InvalidParam, fmt::format("recall base must be > 0, got {}", *spec.recall_base));
      return;
    case MetricKind::GRBP:
      if (mode != RunMode::RankBased) throw Error(ErrorCode::ModeMismatch, "grbp needs rank-based runs");
      if (!spec.persistence) throw Error(ErrorCode::MissingParam, "grbp needs a persistence p");
      if (!(*spec.persistence > 0 && *spec.persistence < 1))
        throw Error(ErrorCode::InvalidParam, fmt::format("grbp needs 0 < p < 1, got {}", *spec.persistence));
      return;
    case MetricKind::DCG:
      if (mode != RunMode::RankBased) throw Error(ErrorCode::ModeMismatch, "dcg needs rank-based runs");
      if (!spec.log_base) throw Error(ErrorCode::MissingParam, "dcg needs a log base b");
      if (!(*spec.log_base > 1))
        throw Error(ErrorCode::InvalidParam, fmt::format("dcg needs b > 1, got {}", *spec.log_base));
      return;
  }
}

double eval_metric(const MetricSpec& spec, const JudgedRun& run, const RelevanceScale& scale) {
  validate(spec, run.mode());
  const auto n = static_cast<double>(run.length());
  const double gc = scale.max_gain();
  switch (spec.kind) {
    case MetricKind::GP:
    case MetricKind::GR: {
      double sum = 0;
      for (Degree d : run.degrees()) sum += scale.gain(d);
      const double base = spec.kind == MetricKind::GP ? n : spec.recall_base.value_or(n);
      return sum / (base * gc);
    }
    case MetricKind::GRBP: {
      const double p = *spec.persistence;
      double sum = 0, w = 1;
      for (Degree d : run.degrees()) {
        sum += w * scale.gain(d);
        w *= p;
      }
      return (1 - p) / gc * sum;
    }
    case MetricKind::DCG: {
      const double lb = std::log(*spec.log_base);
      double sum = 0;
      for (std::size_t i = 1; i <= run.length(); ++i) {
        const double discount = std::max(1.0, std::log(static_cast<double>(i)) / lb);
        sum += scale.gain(run[i - 1]) / discount;
      }
      return sum;
    }
    case MetricKind::Custom: break;
  }
  throw Error(ErrorCode::RequiresLattice, "a custom metric is only defined through a lattice");
}

std::vector<double> metric_values(const MetricSpec& spec, const RunLattice& lattice) {
  if (spec.kind == MetricKind::Custom) return extend_custom(lattice, spec.custom).values;
  validate(spec, lattice.universe().mode());
  std::vector<double> v;
  v.reserve(lattice.size());
  for (const auto& r : lattice.universe().elements())
    v.push_back(eval_metric(spec, r, lattice.universe().scale()));
  return v;
}

ValuationReport check_valuation(const std::vector<double>& values, const RunLattice& lattice,
                                double tolerance) {
  if (!lattice.is_lattice()) throw Error(ErrorCode::NotALattice, lattice.non_lattice_witness());
  ValuationReport rep;
  const Index n = lattice.size();
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y) {
      const double vj = values[lattice.join(x, y)], vm = values[lattice.meet(x, y)];
      if (std::abs(values[x] + values[y] - vj - vm) > tolerance) {
        rep.is_valuation = false;
        rep.counterexample = ValuationCounterexample{x, y, values[x], values[y], vj, vm};
        return rep;
      }
    }
  return rep;
}

ValuationReport check_valuation(const MetricSpec& spec, const RunLattice& lattice) {
  return check_valuation(metric_values(spec, lattice), lattice);
}

namespace {

void require_distributive(const RunLattice& lattice) {
  if (!lattice.is_lattice())
    throw Error(ErrorCode::NotDistributive, fmt::format("not a lattice: {}", lattice.non_lattice_witness()));
  if (!check_distributive(lattice).distributive)
    throw Error(ErrorCode::NotDistributive,
                fmt::format("{} is not distributive", to_string(lattice.kind())));
}

}  // namespace

Reconstructor::Reconstructor(const RunLattice& lattice, std::vector<std::optional<double>> seed,
                             double bottom_value)
    : lattice_(lattice), memo_(lattice.size()) {
  require_distributive(lattice);
  for (Index j : join_irreducibles(lattice)) {
    if (j >= seed.size() || !seed[j])
      throw Error(ErrorCode::IncompleteAssignment,
                  fmt::format("no value for join-irreducible {}", to_literal(lattice.run(j))));
    memo_[j] = seed[j];
  }
  memo_[lattice.bottom()] = bottom_value;
}

double Reconstructor::value(Index x) {
  if (memo_[x]) return *memo_[x];
  const auto parts = decompose(lattice_, x).parts;
  Index acc = parts.front();
  double v = value(acc);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const Index j = parts[i];
    // every operand here lies strictly below x, so the recursion terminates
    v = v + value(j) - value(lattice_.meet(acc, j));
    acc = lattice_.join(acc, j);
    if (i + 1 < parts.size()) {
      if (memo_[acc] && std::abs(*memo_[acc] - v) > kValuationTolerance)
        throw Error(ErrorCode::InconsistentAssignment,
                    fmt::format("{} reached as {} and {}", to_literal(lattice_.run(acc)), *memo_[acc], v));
      if (!memo_[acc]) memo_[acc] = v;
    }
  }
  memo_[x] = v;
  return v;
}

std::vector<double> Reconstructor::all() {
  std::vector<double> out(lattice_.size());
  for (Index x = 0; x < lattice_.size(); ++x) out[x] = value(x);
  return out;
}

double reconstruct(const MetricSpec& spec, const RunLattice& lattice, Index x) {
  if (spec.kind == MetricKind::Custom) return extend_custom(lattice, spec.custom).values[x];
  require_distributive(lattice);
  const auto direct = metric_values(spec, lattice);
  if (auto rep = check_valuation(direct, lattice); !rep.is_valuation)
    throw Error(ErrorCode::NotAValuation,
                fmt::format("{} fails the valuation identity at {} , {}", spec.label(),
                            to_literal(lattice.run(rep.counterexample->x)),
                            to_literal(lattice.run(rep.counterexample->y))));
  std::vector<std::optional<double>> seed(lattice.size());
  for (Index j : join_irreducibles(lattice)) seed[j] = direct[j];
  return Reconstructor(lattice, std::move(seed), direct[lattice.bottom()]).value(x);
}

CustomExtension extend_custom(const RunLattice& lattice, const CustomAssignment& assignment) {
  require_distributive(lattice);
  const auto& u = lattice.universe();
  std::vector<std::optional<double>> seed(lattice.size());
  for (const auto& [degrees, value] : assignment.values) {
    const Index i = lattice.index_of(make_run(u.mode(), degrees, u.scale()));
    if (!lattice.structure().is_join_irreducible(i))
      throw Error(ErrorCode::InvalidParam,
                  fmt::format("{} is not join-irreducible", to_literal(lattice.run(i))));
    seed[i] = value;
  }
  CustomExtension ext;
  ext.values = Reconstructor(lattice, std::move(seed), assignment.bottom_value).all();
  if (auto rep = check_valuation(ext.values, lattice); !rep.is_valuation)
    throw Error(ErrorCode::InconsistentAssignment,
                fmt::format("extension breaks the valuation identity at {} , {}",
                            to_literal(lattice.run(rep.counterexample->x)),
                            to_literal(lattice.run(rep.counterexample->y))));
  for (const auto& [lo, hi] : lattice.covers()) {
    if (ext.values[lo] > ext.values[hi]) {
      ext.monotone = false;
      ext.monotonicity_witness = Edge{lo, hi};
      break;
    }
  }
  return ext;
}

std::vector<MetricRow> metric_table(const MetricSpec& spec, const RunUniverse& universe) {
  std::vector<MetricRow> rows;
  rows.reserve(universe.size());
  for (const auto& r : universe.elements()) rows.push_back({r, eval_metric(spec, r, universe.scale())});
  return rows;
}

std::vector<MetricRow> metric_table(const MetricSpec& spec, const RunLattice& lattice) {
  const auto values = metric_values(spec, lattice);
  std::vector<MetricRow> rows;
  rows.reserve(values.size());
  for (Index i = 0; i < values.size(); ++i) rows.push_back({lattice.run(i), values[i]});
  return rows;
}

std::string table_csv(const std::vector<MetricRow>& rows, std::string_view label) {
  std::string out = fmt::format("run,{}\n", label);
  for (const auto& row : rows) out += fmt::format("\"{}\",{}\n", to_literal(row.run), row.value);
  return out;
}

std::string table_json(const std::vector<MetricRow>& rows, std::string_view label) {
  nlohmann::json j;
  j["metric"] = label;
  auto& arr = j["rows"] = nlohmann::json::array();
  for (const auto& row : rows) arr.push_back({{"run", to_literal(row.run)}, {"value", row.value}});
  return j.dump(2) + "\n";
}

CustomAssignment parse_custom_assignment(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "custom assignment must be a JSON object");
  CustomAssignment a;
  bool have_bottom = false;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number())
      throw Error(ErrorCode::ParseError, fmt::format("value for '{}' is not a number", key));
    if (key == "_bottom") {
      a.bottom_value = value.get<double>();
      have_bottom = true;
    } else {
      a.values[parse_degrees(key)] = value.get<double>();
    }
  }
  if (!have_bottom) throw Error(ErrorCode::IncompleteAssignment, "missing \"_bottom\" value");
  return a;
}

}  // namespace runlattice
