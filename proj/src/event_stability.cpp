#include "kemst/event_stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "kemst/errors.hpp"
#include "kemst/flip_graph.hpp"

namespace kemst {

namespace {

std::vector<double> sample_times(double horizon, int samples) {
  std::vector<double> out;
  if (samples == 1) out.push_back(0.0);
  for (int i = 0; samples > 1 && i < samples; ++i)
    out.push_back(i == samples - 1 ? horizon : horizon * (static_cast<double>(i) / (samples - 1)));
  return out;
}

EventRecord make_record(double t, EventType type, const PointConfig& cfg, const SpanningTree& tree, double disp) {
  EventRecord r;
  r.time = t;
  r.type = type;
  r.tree_length = tree_length(cfg, tree);
  r.opt_length = emst_length_prim(cfg);
  r.ratio = quality_ratio(r.tree_length, r.opt_length);
  r.displacement_since_ref = disp;
  r.tree = tree;
  return r;
}

int symmetric_difference(const SpanningTree& a, const SpanningTree& b) {
  std::vector<Edge> out;
  std::set_symmetric_difference(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                                std::back_inserter(out));
  return static_cast<int>(out.size());
}

}  // namespace

const char* to_string(EventType type) { return type == EventType::recompute ? "recompute" : "sample"; }

EventTrace run_event_regime(const KineticScenario& sc, int samples) {
  sc.validate();
  if (!(sc.k > 0.0)) throw ParameterError("event regime needs k > 0");
  if (samples < 0) throw ParameterError("sample count must be non-negative");
  if (!is_unit_normalized(sc)) throw PreconditionError("event regime needs coordinates in [0,1]^d");

  EventTrace trace;
  trace.label = sc.label;
  trace.k = sc.k;
  const double horizon = sc.horizon();

  double t_ref = 0.0;
  SpanningTree tree = emst(sc.at(0.0));
  trace.records.push_back(make_record(0.0, EventType::recompute, sc.at(0.0), tree, 0.0));

  const std::vector<double> times = sample_times(horizon, samples);
  std::size_t next_sample = 0;
  std::optional<double> next_event = next_displacement_event(sc, t_ref, sc.k);
  while (true) {
    const double t_sample = next_sample < times.size() ? times[next_sample] : std::numeric_limits<double>::infinity();
    if (next_event && *next_event <= t_sample) {
      const double t = *next_event;
      const double disp = input_distance(sc, t_ref, t);
      const PointConfig cfg = sc.at(t);
      tree = emst(cfg);
      t_ref = t;
      ++trace.event_count;
      trace.records.push_back(make_record(t, EventType::recompute, cfg, tree, disp));
      next_event = next_displacement_event(sc, t_ref, sc.k);
      continue;
    }
    if (next_sample >= times.size()) break;
    const PointConfig cfg = sc.at(t_sample);
    trace.records.push_back(make_record(t_sample, EventType::sample, cfg, tree, input_distance(sc, t_ref, t_sample)));
    ++next_sample;
  }
  return trace;
}

EventTrace run_recompute_always(const KineticScenario& sc, int samples) {
  sc.validate();
  EventTrace trace;
  trace.label = sc.label;
  trace.k = sc.k;
  std::optional<SpanningTree> prev;
  for (double t : sample_times(sc.horizon(), samples)) {
    const PointConfig cfg = sc.at(t);
    SpanningTree tree = emst(cfg);
    if (prev && !(*prev == tree)) ++trace.event_count;
    trace.records.push_back(make_record(t, EventType::sample, cfg, tree, 0.0));
    prev = std::move(tree);
  }
  return trace;
}

SpreadReport spread(const PointConfig& cfg, int l) {
  const int n = static_cast<int>(cfg.size());
  if (l < 1 || l > n - 1) throw ParameterError("spread: l must lie in [1, n - 1]");
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> row(n - 1);
  for (int i = 0; i < n; ++i) {
    int k = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) row[k++] = cfg.distance(i, j);
    std::nth_element(row.begin(), row.begin() + (l - 1), row.end());
    best = std::min(best, row[l - 1]);
  }
  return {l, best, best > 0.0 ? 1.0 / best : std::numeric_limits<double>::infinity()};
}

ThinningReport thinning_lower_bound(const PointConfig& cfg, int l) {
  ThinningReport out;
  out.spread = spread(cfg, l);
  const double r = out.spread.mindist;
  const int n = static_cast<int>(cfg.size());
  std::vector<char> alive(n, 1);
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    out.kept.push_back(i);
    for (int j = i + 1; j < n; ++j)
      if (alive[j] && cfg.distance(i, j) < r) alive[j] = 0;
  }
  if (out.kept.size() >= 2) {
    PointConfig sub;
    for (int i : out.kept) sub.positions.push_back(cfg.positions[i]);
    out.kept_emst = emst_length_prim(sub);
    out.packing_bound = static_cast<double>(out.kept.size()) * r / 2.0;
  }
  out.bound = (static_cast<double>(n) / l - 1.0) * r;
  return out;
}

AuditReport approximation_audit(const EventTrace& trace, const KineticScenario& sc, int l,
                                double allowance_scale) {
  constexpr double kTolerance = 1e-9;
  AuditReport report;
  const double n = static_cast<double>(sc.size());
  report.allowance = allowance_scale * 4.0 * trace.k * n;
  report.min_mindist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const EventRecord& r = trace.records[i];
    const double slack = r.tree_length - r.opt_length;
    if (slack > report.allowance + kTolerance)
      throw AuditFailure("tree_length exceeds opt_length + allowance at t=" + std::to_string(r.time), i);
    report.max_slack = std::max(report.max_slack, slack);
    report.max_ratio = std::max(report.max_ratio, r.ratio);
    const SpreadReport s = spread(sc.at(r.time), l);
    report.min_mindist = std::min(report.min_mindist, s.mindist);
    report.max_k_l_delta = std::max(report.max_k_l_delta, trace.k * l * s.delta);
  }
  return report;
}

double estimate_stability_ratio(const EventTrace& trace, const KineticScenario& sc, int pair_samples,
                                std::uint64_t seed) {
  const auto& recs = trace.records;
  const std::size_t m = recs.size();
  if (m < 2) return 0.0;
  const int n = static_cast<int>(sc.size());

  std::optional<FlipGraph> graph;
  std::map<std::size_t, std::vector<int>> bfs_cache;
  if (n <= 7) graph.emplace(n, MorphMode::slide);
  auto solution_distance = [&](const SpanningTree& a, const SpanningTree& b) -> double {
    if (a == b) return 0.0;
    if (!graph) return symmetric_difference(a, b);
    const std::size_t src = graph->index_of(a);
    auto it = bfs_cache.find(src);
    if (it == bfs_cache.end()) it = bfs_cache.emplace(src, graph->distances_from(src)).first;
    return it->second[graph->index_of(b)];
  };

  double best = 0.0;
  auto consider = [&](std::size_t i, std::size_t j) {
    const double ds = solution_distance(recs[i].tree, recs[j].tree);
    if (ds == 0.0) return;
    const double di = input_distance(sc, recs[i].time, recs[j].time);
    best = std::max(best, di > 0.0 ? ds / di : std::numeric_limits<double>::infinity());
  };

  const std::size_t total = m * (m - 1) / 2;
  if (total <= static_cast<std::size_t>(std::max(pair_samples, 0))) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) consider(i, j);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (int s = 0; s < pair_samples; ++s) {
      const std::size_t i = pick(rng);
      const std::size_t j = pick(rng);
      if (i != j) consider(std::min(i, j), std::max(i, j));
    }
  }
  return best;
}

}  // namespace kemst
