#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <future>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kemst/errors.hpp"
#include "kemst/event_stability.hpp"
#include "kemst/format.hpp"
#include "kemst/lipschitz.hpp"
#include "kemst/morph.hpp"
#include "kemst/scenario_io.hpp"
#include "kemst/trace_io.hpp"

namespace fs = std::filesystem;
using namespace kemst;

namespace {

constexpr int kUsageExit = 2;
constexpr int kAuditExit = 1;

// Options shared by the run subcommands.
struct RunOptions {
  std::vector<std::string> scenarios;
  std::vector<std::string> params;
  std::optional<int> n;
  std::optional<int> s;
  std::string out_dir = "out";
  int samples = 201;
  int jobs = 1;
  std::uint64_t seed = 1;
  bool svg = false;
  std::optional<double> k;
  std::optional<double> K;
  std::string mode;
  int steps = 201;
  int pairs = 2000;
  int l = 1;
  double allowance_scale = 1.0;
};

struct RunOutcome {
  int code = 0;
  std::string out;
  std::string err;
};

std::map<std::string, double> parse_params(const RunOptions& opt) {
  std::map<std::string, double> out;
  for (const std::string& p : opt.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw ParameterError("--param expects key=value, got '" + p + "'");
    try {
      out[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParameterError("--param value is not a number: '" + p + "'");
    }
  }
  if (opt.n) out["n"] = *opt.n;
  if (opt.s) out["s"] = *opt.s;
  return out;
}

// A scenario argument is a file path, a generator name, or "-" for stdin.
KineticScenario resolve_scenario(const std::string& source, const RunOptions& opt) {
  if (source == "-") {
    std::string text(std::istreambuf_iterator<char>(std::cin), {});
    return scenario_from_json(text);
  }
  if (fs::exists(source)) return load_scenario(source);
  for (const std::string& name : generator_names()) {
    if (name != source) continue;
    std::map<std::string, double> params = parse_params(opt);
    if (name == "random" || name == "stationary")
      params.emplace("seed", static_cast<double>(opt.seed));
    return make_generated(name, params);
  }
  throw ParameterError("'" + source + "' is neither a scenario file nor a generator name");
}

std::string summary(const std::string& label, int events, double max_ratio) {
  return label + " events=" + std::to_string(events) + " max_ratio=" + format_double(max_ratio) + "\n";
}

std::string emit(const RunOptions& opt, const std::string& label, const std::string& suffix, const std::string& csv,
                 const std::vector<PlotSeries>& series) {
  fs::create_directories(opt.out_dir);
  const fs::path base = fs::path(opt.out_dir) / (label + "_" + suffix);
  write_text_file(base.string() + ".csv", csv);
  if (opt.svg) write_text_file(base.string() + ".svg", svg_plot(label + " " + suffix, "time", series));
  return base.string() + ".csv";
}

RunOutcome run_event(KineticScenario sc, const RunOptions& opt) {
  if (opt.k) sc.k = *opt.k;
  const EventTrace trace = run_event_regime(sc, opt.samples);
  double max_ratio = 1.0;
  for (const auto& r : trace.records) max_ratio = std::max(max_ratio, r.ratio);
  emit(opt, sc.label, "event", event_trace_csv(trace), plot_series(trace));
  return {0, summary(sc.label, trace.event_count, max_ratio), {}};
}

RunOutcome run_topo(KineticScenario sc, const RunOptions& opt) {
  const MorphMode mode = opt.mode.empty() ? sc.morph_mode : morph_mode_from_string(opt.mode);
  const TopoTrace trace = run_topo_regime(sc, mode, opt.samples);
  emit(opt, sc.label, std::string("topo_") + to_string(mode), topo_trace_csv(trace), plot_series(trace));
  RunOutcome out{0, summary(sc.label, trace.swap_count, trace.max_ratio), {}};
  if (trace.fallback_count > 0)
    out.err = sc.label + ": rotation planner fell back to slides " + std::to_string(trace.fallback_count) + " times\n";
  return out;
}

RunOutcome run_lipschitz(KineticScenario sc, const RunOptions& opt) {
  double K = opt.K.value_or(sc.K);
  if (!(K > 0.0)) K = kSplitConstant / std::log(static_cast<double>(sc.size()));
  const LipschitzResult res = run_lipschitz_regime(sc, K, opt.samples);
  double max_ratio = res.final_ratio;
  for (const auto& r : res.records) max_ratio = std::max(max_ratio, r.ratio);
  emit(opt, sc.label, "lipschitz", lipschitz_trace_csv(res), plot_series(res));
  return {0, summary(sc.label, res.completed, max_ratio), {}};
}

RunOutcome run_oracle(KineticScenario sc, const RunOptions& opt) {
  const MorphMode mode = opt.mode.empty() ? sc.morph_mode : morph_mode_from_string(opt.mode);
  const OracleResult res = minimax_flip_oracle(sc, mode, opt.steps);
  std::string csv = "time,tree_length,opt_length,ratio\n";
  PlotSeries ratio{"ratio", {}, {}}, length{"tree_length", {}, {}};
  int moves = 0;
  for (std::size_t j = 0; j < res.times.size(); ++j) {
    const PointConfig cfg = sc.at(res.times[j]);
    const double opt_len = emst_length_prim(cfg);
    moves += static_cast<int>(res.schedule[j].size()) - 1;
    for (const SpanningTree& t : res.schedule[j]) {
      const double len = tree_length(cfg, t);
      csv += format_double(res.times[j]) + ',' + format_double(len) + ',' + format_double(opt_len) + ',' +
             format_double(quality_ratio(len, opt_len)) + '\n';
      ratio.x.push_back(res.times[j]);
      ratio.y.push_back(quality_ratio(len, opt_len));
      length.x.push_back(res.times[j]);
      length.y.push_back(len);
    }
  }
  emit(opt, sc.label, std::string("oracle_") + to_string(mode), csv, {ratio, length});
  return {0, summary(sc.label, moves, res.ratio), {}};
}

RunOutcome run_audit(KineticScenario sc, const RunOptions& opt) {
  if (opt.k) sc.k = *opt.k;
  const EventTrace trace = run_event_regime(sc, opt.samples);
  emit(opt, sc.label, "event", event_trace_csv(trace), plot_series(trace));
  try {
    const AuditReport rep = approximation_audit(trace, sc, opt.l, opt.allowance_scale);
    const double stab = estimate_stability_ratio(trace, sc, opt.pairs, opt.seed);
    std::string out = summary(sc.label, trace.event_count, rep.max_ratio);
    out += sc.label + " audit=ok max_slack=" + format_double(rep.max_slack) + " allowance=" +
           format_double(rep.allowance) + " k_l_delta=" + format_double(rep.max_k_l_delta) +
           " stability_estimate=" + format_double(stab) + "\n";
    return {0, out, {}};
  } catch (const AuditFailure& e) {
    const EventRecord& r = trace.records.at(e.record());
    std::ostringstream err;
    err << sc.label << ": audit failed at record " << e.record() << " (time=" << format_double(r.time)
        << " tree_length=" << format_double(r.tree_length) << " opt_length=" << format_double(r.opt_length)
        << "): " << e.what() << "\n";
    return {kAuditExit, summary(sc.label, trace.event_count, r.ratio), err.str()};
  }
}

int run_all(const RunOptions& opt, const std::function<RunOutcome(KineticScenario, const RunOptions&)>& fn) {
  std::vector<std::string> sources = opt.scenarios;
  if (sources.empty()) sources.push_back("-");
  std::vector<KineticScenario> scenarios;
  std::map<std::string, int> seen;
  for (const std::string& s : sources) {
    scenarios.push_back(resolve_scenario(s, opt));
    // Output files are named per label, so repeated labels get a suffix.
    const int count = ++seen[scenarios.back().label];
    if (count > 1) scenarios.back().label += "_" + std::to_string(count);
  }

  auto guarded = [&](std::size_t i) -> RunOutcome {
    try {
      return fn(scenarios[i], opt);
    } catch (const AuditFailure& e) {
      return {kAuditExit, {}, scenarios[i].label + ": " + e.what() + "\n"};
    } catch (const std::exception& e) {
      return {kUsageExit, {}, scenarios[i].label + ": " + e.what() + "\n"};
    }
  };

  std::vector<RunOutcome> outcomes(scenarios.size());
  const std::size_t jobs = static_cast<std::size_t>(std::max(opt.jobs, 1));
  for (std::size_t start = 0; start < scenarios.size(); start += jobs) {
    std::vector<std::future<RunOutcome>> batch;
    for (std::size_t i = start; i < std::min(start + jobs, scenarios.size()); ++i)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, guarded, i));
    for (std::size_t i = 0; i < batch.size(); ++i) outcomes[start + i] = batch[i].get();
  }

  int code = 0;
  for (const RunOutcome& o : outcomes) {
    std::cout << o.out;
    std::cerr << o.err;
    if (o.code == kAuditExit || (o.code != 0 && code == 0)) code = o.code;
  }
  return code;
}

void add_run_options(CLI::App* cmd, RunOptions& opt) {
  cmd->add_option("scenarios", opt.scenarios, "Scenario files or generator names; stdin when omitted");
  cmd->add_option("--scenario", opt.scenarios, "Scenario file or generator name");
  cmd->add_option("--param", opt.params, "Generator parameter key=value");
  cmd->add_option("--n", opt.n, "Generator parameter n");
  cmd->add_option("--s", opt.s, "Generator parameter s");
  cmd->add_option("--out", opt.out_dir, "Output directory")->envname("KEMST_OUT_DIR");
  cmd->add_option("--jobs", opt.jobs, "Scenarios run in parallel")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opt.seed, "Seed for random generators and pair sampling");
  cmd->add_flag("--svg", opt.svg, "Also write an SVG plot");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic EMST stability simulator"};
  app.require_subcommand(1);

  // gen <generator> [--<param> value ...]
  CLI::App* gen = app.add_subcommand("gen", "Write a generated scenario as JSON");
  gen->require_subcommand(1);
  std::string gen_output = "-";
  std::map<std::string, double> gen_values;
  std::optional<double> gen_k, gen_K;
  std::string gen_mode, gen_label;
  std::string chosen;
  for (const std::string& name : generator_names()) {
    CLI::App* sub = gen->add_subcommand(name, "Generator " + name);
    sub->add_option("-o,--output", gen_output, "Output path, '-' for stdout");
    sub->add_option("--k", gen_k, "Displacement budget k");
    sub->add_option("--K", gen_K, "Lipschitz budget K");
    sub->add_option("--morph-mode", gen_mode, "slide or rotation");
    sub->add_option("--label", gen_label, "Run label");
    const KineticScenario defaults = make_generated(name, {});
    for (const auto& [key, value] : defaults.generator->params) {
      gen_values[name + "." + key] = value;
      sub->add_option("--" + key, gen_values[name + "." + key], "Parameter " + key)->capture_default_str();
    }
    sub->callback([&chosen, name] { chosen = name; });
  }

  RunOptions event_opt, topo_opt, lip_opt, oracle_opt, audit_opt;
  CLI::App* run_event_cmd = app.add_subcommand("run-event", "k-optimal event regime");
  add_run_options(run_event_cmd, event_opt);
  run_event_cmd->add_option("--k", event_opt.k, "Displacement budget k")->check(CLI::PositiveNumber);
  run_event_cmd->add_option("--samples", event_opt.samples, "Uniform sample records")->check(CLI::NonNegativeNumber);

  CLI::App* run_topo_cmd = app.add_subcommand("run-topo", "Topological regime with morph charging");
  add_run_options(run_topo_cmd, topo_opt);
  run_topo_cmd->add_option("--mode", topo_opt.mode, "slide or rotation")->check(CLI::IsMember({"slide", "rotation"}));
  run_topo_cmd->add_option("--samples", topo_opt.samples, "Sample grid size")->check(CLI::Range(2, 1000000));

  CLI::App* run_lip_cmd = app.add_subcommand("run-lipschitz", "Lipschitz regime on the split construction");
  add_run_options(run_lip_cmd, lip_opt);
  run_lip_cmd->add_option("--K", lip_opt.K, "Lipschitz budget K")->check(CLI::PositiveNumber);
  run_lip_cmd->add_option("--samples", lip_opt.samples, "Sample records")->check(CLI::Range(2, 1000000));

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Minimax flip-graph oracle");
  add_run_options(oracle_cmd, oracle_opt);
  oracle_cmd->add_option("--mode", oracle_opt.mode, "slide or rotation")->check(CLI::IsMember({"slide", "rotation"}));
  oracle_cmd->add_option("--steps", oracle_opt.steps, "Time steps")->check(CLI::Range(2, 100000));

  CLI::App* audit_cmd = app.add_subcommand("audit", "Event regime plus approximation audit");
  add_run_options(audit_cmd, audit_opt);
  audit_cmd->add_option("--k", audit_opt.k, "Displacement budget k")->check(CLI::PositiveNumber);
  audit_cmd->add_option("--samples", audit_opt.samples, "Uniform sample records")->check(CLI::NonNegativeNumber);
  audit_cmd->add_option("--l", audit_opt.l, "Spread order l")->check(CLI::PositiveNumber);
  audit_cmd->add_option("--allowance-scale", audit_opt.allowance_scale, "Multiplier on the 4kn allowance")
      ->check(CLI::NonNegativeNumber);
  audit_cmd->add_option("--pairs", audit_opt.pairs, "Record pairs for the stability estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    if (gen->parsed()) {
      std::map<std::string, double> params;
      for (const auto& [key, value] : gen_values)
        if (key.rfind(chosen + ".", 0) == 0) params[key.substr(chosen.size() + 1)] = value;
      KineticScenario sc = make_generated(chosen, params);
      if (gen_k) sc.k = *gen_k;
      if (gen_K) sc.K = *gen_K;
      if (!gen_mode.empty()) sc.morph_mode = morph_mode_from_string(gen_mode);
      if (!gen_label.empty()) sc.label = gen_label;
      if (gen_output == "-") std::cout << scenario_to_json(sc);
      else save_scenario(sc, gen_output);
      return 0;
    }
    if (run_event_cmd->parsed()) return run_all(event_opt, run_event);
    if (run_topo_cmd->parsed()) return run_all(topo_opt, run_topo);
    if (run_lip_cmd->parsed()) return run_all(lip_opt, run_lipschitz);
    if (oracle_cmd->parsed()) return run_all(oracle_opt, run_oracle);
    if (audit_cmd->parsed()) return run_all(audit_opt, run_audit);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageExit;
  }
  return kUsageExit;
}
