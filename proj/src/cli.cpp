#include "runlattice/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "runlattice/domain.hpp"
#include "runlattice/lattice.hpp"
#include "runlattice/metrics.hpp"
#include "runlattice/orderings.hpp"

namespace runlattice {
namespace {

struct CliConfig {
  std::optional<std::string> mode;
  int c = 0;
  std::optional<std::size_t> n;
  std::optional<std::string> ordering;
  std::optional<std::string> metric;
  std::optional<double> rb, p, b;
  std::optional<std::string> gains;
  std::optional<std::string> format;
  std::optional<std::string> custom_file;
  std::optional<std::string> output;
  std::size_t cap = kDefaultUniverseCap;
  bool highlight = false;
  std::string what;
  std::string run;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UniverseTooLarge:
    case ErrorCode::NotALattice: return kExitScale;
    case ErrorCode::NotDistributive:
    case ErrorCode::BottomHasNoDecomposition:
    case ErrorCode::NotAValuation:
    case ErrorCode::InconsistentAssignment: return kExitProperty;
    default: return kExitUsage;
  }
}

std::string fmt_value(double v) { return fmt::format("{}", v); }

// Resolved view of the flags shared by every command.
struct Context {
  RelevanceScale scale;
  RunMode mode;
  std::optional<OrderingKind> ordering;
};

Context resolve(const CliConfig& cfg, bool need_ordering) {
  std::optional<std::vector<double>> gains;
  if (cfg.gains) {
    gains.emplace();
    std::stringstream ss(*cfg.gains);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        gains->push_back(std::stod(item));
      } catch (const std::exception&) {
        throw UsageError(fmt::format("bad gain '{}'", item));
      }
    }
  }
  if (cfg.cap > kHardUniverseCap)
    throw UsageError(fmt::format("--cap {} exceeds the hard limit {}", cfg.cap, kHardUniverseCap));
  auto scale = make_scale(cfg.c, std::move(gains));
  std::optional<OrderingKind> ordering;
  if (cfg.ordering) ordering = parse_ordering(*cfg.ordering);
  if (need_ordering && !ordering) throw UsageError("--ordering is required");
  std::optional<RunMode> mode;
  if (cfg.mode) mode = parse_mode(*cfg.mode);
  if (ordering) {
    if (mode && *mode != mode_of(*ordering))
      throw UsageError(fmt::format("--mode {} conflicts with ordering {}", *cfg.mode,
                                   to_string(*ordering)));
    mode = mode_of(*ordering);
  }
  if (!mode) throw UsageError("--mode (or --ordering) is required");
  return {std::move(scale), *mode, ordering};
}

std::size_t require_n(const CliConfig& cfg) {
  if (!cfg.n) throw UsageError("--n is required");
  if (*cfg.n < 1) throw UsageError("--n must be >= 1");
  return *cfg.n;
}

MetricSpec metric_from(const CliConfig& cfg) {
  if (!cfg.metric) throw UsageError("--metric is required");
  MetricSpec spec;
  spec.kind = parse_metric(*cfg.metric);
  spec.recall_base = cfg.rb;
  spec.persistence = cfg.p;
  spec.log_base = cfg.b;
  if (spec.kind == MetricKind::Custom) {
    if (!cfg.custom_file) throw UsageError("--metric custom needs --custom <file>");
    std::ifstream in(*cfg.custom_file);
    if (!in) throw UsageError(fmt::format("cannot read {}", *cfg.custom_file));
    std::stringstream buf;
    buf << in.rdbuf();
    spec.custom = parse_custom_assignment(buf.str());
  }
  return spec;
}

std::string format_or(const CliConfig& cfg, const char* fallback) {
  return cfg.format.value_or(fallback);
}

int cmd_enumerate(const CliConfig& cfg, std::ostream& out) {
  auto ctx = resolve(cfg, false);
  auto universe = enumerate_universe(ctx.scale, require_n(cfg), ctx.mode, cfg.cap);
  const auto format = format_or(cfg, "text");
  if (format == "text") {
    out << fmt::format("# {} runs (mode={}, c={}, N={})\n", universe.size(), to_string(ctx.mode),
                       cfg.c, universe.length());
    for (const auto& r : universe.elements()) out << to_literal(r) << '\n';
  } else if (format == "csv") {
    out << "run\n";
    for (const auto& r : universe.elements()) out << '"' << to_literal(r) << "\"\n";
  } else if (format == "json") {
    nlohmann::json j;
    j["mode"] = to_string(ctx.mode);
    j["c"] = cfg.c;
    j["N"] = universe.length();
    j["count"] = universe.size();
    auto& runs = j["runs"] = nlohmann::json::array();
    for (const auto& r : universe.elements()) runs.push_back(to_literal(r));
    out << j.dump(2) << '\n';
  } else {
    throw UsageError(fmt::format("enumerate cannot emit --format {}", format));
  }
  return kExitPass;
}

RunLattice order_for(const CliConfig& cfg, const Context& ctx) {
  auto universe = enumerate_universe(ctx.scale, require_n(cfg), ctx.mode, cfg.cap);
  return build_order(universe, *ctx.ordering);
}

int cmd_hasse(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  auto ctx = resolve(cfg, true);
  auto lat = order_for(cfg, ctx);
  if (!lat.is_lattice()) {
    err << "warning: not a lattice (" << lat.non_lattice_witness()
        << "); hence not a distributive lattice\n";
  } else if (!check_distributive(lat).distributive) {
    err << "warning: the lattice is not distributive\n";
  }
  const auto format = format_or(cfg, "dot");
  if (format == "dot")
    out << export_hasse(lat, {.highlight_irreducibles = cfg.highlight});
  else if (format == "json")
    out << export_json(lat);
  else
    throw UsageError(fmt::format("hasse cannot emit --format {}", format));
  return kExitPass;
}

int cmd_info(const CliConfig& cfg, std::ostream& out) {
  auto ctx = resolve(cfg, true);
  auto lat = order_for(cfg, ctx);
  const auto n = lat.universe().length();
  out << fmt::format("ordering {}\nmode {}\nc {}\nN {}\n", to_string(*ctx.ordering),
                     to_string(ctx.mode), cfg.c, n);
  out << fmt::format("universe {}\n", lat.size());
  out << fmt::format("rank_based_universe {}\n", universe_size(cfg.c, n, RunMode::RankBased));
  out << fmt::format("set_based_universe {}\n", universe_size(cfg.c, n, RunMode::SetBased));
  out << fmt::format("covers {}\n", lat.covers().size());
  out << fmt::format("irreducibles {}\n", join_irreducibles(lat).size());
  out << fmt::format("c_times_N {}\n", static_cast<std::size_t>(cfg.c) * n);
  out << fmt::format("lattice {}\n", lat.is_lattice() ? "yes" : "no");
  if (lat.is_lattice())
    out << fmt::format("distributive {}\n", check_distributive(lat).distributive ? "yes" : "no");
  return kExitPass;
}

int cmd_check(const CliConfig& cfg, std::ostream& out) {
  auto ctx = resolve(cfg, true);
  const auto& what = cfg.what;
  auto universe = enumerate_universe(ctx.scale, require_n(cfg), ctx.mode, cfg.cap);
  auto lit = [&](Index i) { return to_literal(universe[i]); };
  if (what == "poset") {
    auto rep = verify_poset_axioms(*ctx.ordering, universe);
    if (rep.ok()) {
      out << fmt::format("poset: pass ({} runs; reflexive, antisymmetric, transitive)\n", universe.size());
      return kExitPass;
    }
    out << "poset: fail (" << rep.detail << ")\n";
    return kExitProperty;
  }
  if (what == "total") {
    auto rep = is_total(*ctx.ordering, universe);
    if (rep.total) {
      out << fmt::format("total: pass ({} runs form a chain)\n", universe.size());
      return kExitPass;
    }
    out << fmt::format("total: fail ({} and {} are incomparable)\n", lit(rep.witness->first),
                       lit(rep.witness->second));
    return kExitProperty;
  }
  if (what == "distributive") {
    auto lat = build_order(universe, *ctx.ordering);
    if (!lat.is_lattice()) {
      out << "distributive: fail (not a lattice: " << lat.non_lattice_witness() << ")\n";
      return kExitProperty;
    }
    const auto& rep = check_distributive(lat);
    if (rep.distributive) {
      out << fmt::format("distributive: pass ({} runs, every triple satisfies the law)\n", lat.size());
      return kExitPass;
    }
    const auto& w = *rep.witness;
    out << fmt::format("distributive: fail (x={}, y={}, z={} violate x∧(y∨z) = (x∧y)∨(x∧z))\n",
                       lit(w[0]), lit(w[1]), lit(w[2]));
    if (rep.sublattice_witness) out << describe(lat, *rep.sublattice_witness) << '\n';
    return kExitProperty;
  }
  if (what == "valuation") {
    auto spec = metric_from(cfg);
    auto lat = build_lattice(universe, *ctx.ordering);
    auto rep = check_valuation(spec, lat);
    if (rep.is_valuation) {
      out << fmt::format("valuation: pass ({} on {}, {} runs, tolerance {})\n", spec.label(),
                         to_string(lat.kind()), lat.size(), kValuationTolerance);
      return kExitPass;
    }
    const auto& ce = *rep.counterexample;
    out << fmt::format("valuation: fail (x={}, y={}: v(x)+v(y)={} but v(x∨y)+v(x∧y)={})\n",
                       lit(ce.x), lit(ce.y), ce.vx + ce.vy, ce.vjoin + ce.vmeet);
    return kExitProperty;
  }
  throw UsageError(fmt::format("unknown check '{}' (poset, total, distributive, valuation)", what));
}

int cmd_decompose(const CliConfig& cfg, std::ostream& out) {
  auto ctx = resolve(cfg, true);
  auto lat = order_for(cfg, ctx);
  const Index x = lat.index_of(parse_run(cfg.run, ctx.mode, ctx.scale));
  auto d = decompose(lat, x);
  std::vector<std::string> parts;
  for (auto it = d.parts.rbegin(); it != d.parts.rend(); ++it) parts.push_back(to_literal(lat.run(*it)));
  out << fmt::format("{}\n", fmt::join(parts, " ∨ "));
  return kExitPass;
}

int cmd_eval(const CliConfig& cfg, std::ostream& out) {
  auto ctx = resolve(cfg, false);
  auto spec = metric_from(cfg);
  auto run = parse_run(cfg.run, ctx.mode, ctx.scale);
  if (cfg.n && *cfg.n != run.length())
    throw UsageError(fmt::format("run has {} entries but --n is {}", run.length(), *cfg.n));
  if (spec.kind == MetricKind::Custom) {
    if (!ctx.ordering) throw UsageError("a custom metric needs --ordering");
    auto universe = enumerate_universe(ctx.scale, run.length(), ctx.mode, cfg.cap);
    auto lat = build_order(universe, *ctx.ordering);
    out << fmt_value(extend_custom(lat, spec.custom).values[lat.index_of(run)]) << '\n';
    return kExitPass;
  }
  out << fmt_value(eval_metric(spec, run, ctx.scale)) << '\n';
  return kExitPass;
}

int cmd_reconstruct(const CliConfig& cfg, std::ostream& out) {
  auto ctx = resolve(cfg, true);
  auto spec = metric_from(cfg);
  auto lat = order_for(cfg, ctx);
  const Index x = lat.index_of(parse_run(cfg.run, ctx.mode, ctx.scale));
  const double rebuilt = reconstruct(spec, lat, x);
  out << "reconstructed " << fmt_value(rebuilt) << '\n';
  if (spec.kind != MetricKind::Custom) {
    const double direct = eval_metric(spec, lat.run(x), ctx.scale);
    out << "direct " << fmt_value(direct) << '\n';
    out << "abs_diff " << fmt_value(std::abs(rebuilt - direct)) << '\n';
  }
  return kExitPass;
}

int cmd_table(const CliConfig& cfg, std::ostream& out) {
  auto ctx = resolve(cfg, false);
  auto spec = metric_from(cfg);
  std::vector<MetricRow> rows;
  if (spec.kind == MetricKind::Custom) {
    if (!ctx.ordering) throw UsageError("a custom table needs --ordering");
    rows = metric_table(spec, order_for(cfg, ctx));
  } else {
    validate(spec, ctx.mode);
    rows = metric_table(spec, enumerate_universe(ctx.scale, require_n(cfg), ctx.mode, cfg.cap));
  }
  const auto format = format_or(cfg, "csv");
  if (format == "csv")
    out << table_csv(rows, spec.label());
  else if (format == "json")
    out << table_json(rows, spec.label());
  else
    throw UsageError(fmt::format("table cannot emit --format {}", format));
  return kExitPass;
}

void add_common(CLI::App* sub, CliConfig& cfg) {
  sub->add_option("--mode", cfg.mode, "set | rank");
  sub->add_option("--c", cfg.c, "maximum relevance degree index")->required();
  sub->add_option("--n", cfg.n, "run length N");
  sub->add_option("--gains", cfg.gains, "comma-separated gains g(a_0)..g(a_c); default linear");
  sub->add_option("--ordering", cfg.ordering,
                  "proj-repl-set | repl-set | proj-repl-rank | repl-rank | repl-swap-rank");
  sub->add_option("--cap", cfg.cap, "universe size cap");
  sub->add_option("--format", cfg.format, "json | csv | dot | text");
  sub->add_option("-o,--output", cfg.output, "write data here instead of standard output");
}

void add_metric(CLI::App* sub, CliConfig& cfg) {
  sub->add_option("--metric", cfg.metric, "gp | gr | grbp | dcg | custom");
  sub->add_option("--rb", cfg.rb, "gR recall base (default N)");
  sub->add_option("--p", cfg.p, "gRBP persistence");
  sub->add_option("--b", cfg.b, "DCG log base");
  sub->add_option("--custom", cfg.custom_file, "custom assignment JSON file");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattices of judged retrieval runs and metric valuations", "runlattice"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto* enumerate = app.add_subcommand("enumerate", "list every judged run of length N");
  add_common(enumerate, cfg);
  auto* hasse = app.add_subcommand("hasse", "emit the Hasse diagram");
  add_common(hasse, cfg);
  hasse->add_flag("--highlight-irreducibles", cfg.highlight, "double-border join-irreducibles");
  auto* info = app.add_subcommand("info", "universe, cover and join-irreducible counts");
  add_common(info, cfg);
  auto* check = app.add_subcommand("check", "check poset | total | distributive | valuation");
  add_common(check, cfg);
  add_metric(check, cfg);
  check->add_option("what", cfg.what, "poset | total | distributive | valuation")->required();
  auto* decomp = app.add_subcommand("decompose", "irredundant join of join-irreducibles");
  add_common(decomp, cfg);
  decomp->add_option("run", cfg.run, "run literal, e.g. 2,1,1")->required();
  auto* eval = app.add_subcommand("eval", "evaluate a metric on one run");
  add_common(eval, cfg);
  add_metric(eval, cfg);
  eval->add_option("run", cfg.run, "run literal")->required();
  auto* recon = app.add_subcommand("reconstruct", "rebuild a metric value from join-irreducibles");
  add_common(recon, cfg);
  add_metric(recon, cfg);
  recon->add_option("run", cfg.run, "run literal")->required();
  auto* table = app.add_subcommand("table", "metric value of every run");
  add_common(table, cfg);
  add_metric(table, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ostringstream buffer;
  int code = kExitPass;
  try {
    if (*enumerate) code = cmd_enumerate(cfg, buffer);
    else if (*hasse) code = cmd_hasse(cfg, buffer, err);
    else if (*info) code = cmd_info(cfg, buffer);
    else if (*check) code = cmd_check(cfg, buffer);
    else if (*decomp) code = cmd_decompose(cfg, buffer);
    else if (*eval) code = cmd_eval(cfg, buffer);
    else if (*recon) code = cmd_reconstruct(cfg, buffer);
    else if (*table) code = cmd_table(cfg, buffer);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    out << buffer.str();
    return exit_code_for(e.code());
  }

  if (cfg.output) {
    std::ofstream file(*cfg.output);
    if (!file) {
      err << "error: cannot write " << *cfg.output << '\n';
      return kExitUsage;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return code;
}

}  // namespace runlattice
