#include "kemst/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kemst/errors.hpp"
#include "kemst/generators.hpp"

namespace kemst {

namespace {

constexpr double kQuadratureTolerance = 1e-10;
constexpr double kTimeResolution = 1e-12;

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, kQuadratureTolerance);
}

double split_progress(double x, double K, double t0, double t1) {
  return K * (std::asinh(t1 / x) - std::asinh(t0 / x));
}

std::optional<double> completion_time(double x, double K, double t0, double horizon) {
  if (!(x > 0.0) || !(K > 0.0)) throw ParameterError("completion_time: x and K must be positive");
  const double t = x * std::sinh(std::asinh(t0 / x) + 1.0 / K);
  if (!(t <= horizon)) return std::nullopt;
  return t;
}

std::optional<double> completion_time_numeric(const std::function<double(double)>& length, double K, double t0,
                                              double horizon) {
  if (!(K > 0.0)) throw ParameterError("completion_time: K must be positive");
  auto inv = [&](double t) { return K / length(t); };
  if (integrate(inv, t0, horizon) < 1.0) return std::nullopt;
  double lo = t0;
  double hi = horizon;
  while (hi - lo > kTimeResolution) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (integrate(inv, t0, mid) >= 1.0) hi = mid;
    else lo = mid;
  }
  return hi;
}

bool slide_cannot_finish(double x, double K) {
  return K * std::log(1.0 / x + std::sqrt(1.0 + 1.0 / (x * x))) < 1.0;
}

double slide_cost(const KineticScenario& sc, int v, int w, double p0, double p1, double t0, double t1) {
  if (!(t1 > t0)) return 0.0;
  const double rate = std::abs(p1 - p0) / (t1 - t0);
  return integrate(
      [&](double t) { return rate * distance(sc.points[v].evaluate(t), sc.points[w].evaluate(t)); }, t0, t1);
}

LipschitzResult run_lipschitz_regime(const KineticScenario& split, double K, int samples,
                                     const std::optional<SpanningTree>& initial) {
  if (!split.generator || split.generator->name != "split")
    throw UnsupportedError("the Lipschitz regime runs on the split construction only");
  if (!(K > 0.0)) throw ParameterError("Lipschitz regime needs K > 0");
  if (samples < 2) throw ParameterError("Lipschitz regime needs at least two samples");
  const int n = static_cast<int>(split.size());
  SpanningTree tree = initial ? *initial : emst(split.at(0.0));
  if (tree.n() != n) throw ParameterError("initial tree size does not match the scenario");
  const KineticScenario sc = recolor_split(split, split_colors_from_tree(tree));
  const double horizon = sc.horizon();
  const PointConfig end_cfg = sc.at(horizon);

  LipschitzResult result;
  result.label = sc.label;
  result.K = K;

  auto carrier_length = [&](int v, int w) {
    return [&sc, v, w](double t) { return distance(sc.points[v].evaluate(t), sc.points[w].evaluate(t)); };
  };
  auto progress_at = [&](const SlideSchedule& s, double t) {
    return std::min(1.0, integrate([&](double x) { return s.K / carrier_length(s.v, s.w)(x); }, s.t0, t));
  };

  std::vector<std::size_t> active;  // indices into result.slides
  SpanningTree target = tree;       // tree with every active slide applied

  auto used_edges = [&]() {
    std::set<Edge> used;
    for (std::size_t idx : active) {
      used.insert(make_edge(result.slides[idx].u, result.slides[idx].v));
      used.insert(make_edge(result.slides[idx].v, result.slides[idx].w));
    }
    return used;
  };

  auto start_slides = [&](double t) {
    struct Candidate {
      double gain;
      int u, v, w;
    };
    std::vector<Candidate> cands;
    const auto adj = tree.adjacency();
    for (const Edge& e : tree.edges()) {
      for (const auto& [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        for (int w : adj[v]) {
          if (w == u) continue;
          const double gain = end_cfg.distance(u, v) - end_cfg.distance(u, w);
          if (gain > 1e-12) cands.push_back({gain, u, v, w});
        }
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.gain != b.gain) return a.gain > b.gain;
      return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
    });
    std::set<Edge> used = used_edges();
    for (const Candidate& c : cands) {
      const Edge sliding = make_edge(c.u, c.v);
      const Edge carrier = make_edge(c.v, c.w);
      if (used.count(sliding) || used.count(carrier)) continue;
      SpanningTree next = target;
      try {
        next = target.with_swap(sliding, make_edge(c.u, c.w));
      } catch (const ParameterError&) {
        continue;
      }
      SlideSchedule s{c.u, c.v, c.w, K, t, std::nullopt, 0.0, 0.0};
      s.t_end = completion_time_numeric(carrier_length(c.v, c.w), K, t, horizon);
      target = std::move(next);
      used.insert(sliding);
      used.insert(carrier);
      active.push_back(result.slides.size());
      result.slides.push_back(s);
    }
  };

  auto length_at = [&](double t, const PointConfig& cfg) {
    double len = tree_length(cfg, tree);
    for (std::size_t idx : active) {
      const SlideSchedule& s = result.slides[idx];
      len += progress_at(s, t) * (cfg.distance(s.u, s.w) - cfg.distance(s.u, s.v));
    }
    return len;
  };

  auto record = [&](double t) {
    const PointConfig cfg = sc.at(t);
    LipschitzRecord r;
    r.time = t;
    r.active_slides = static_cast<int>(active.size());
    r.completed_slides = result.completed;
    r.tree_length = length_at(t, cfg);
    r.opt_length = emst_length_prim(cfg);
    r.ratio = quality_ratio(r.tree_length, r.opt_length);
    result.records.push_back(r);
  };

  start_slides(0.0);
  std::size_t next_sample = 0;
  auto sample_time = [&](std::size_t i) {
    return i + 1 == static_cast<std::size_t>(samples) ? horizon
                                                      : horizon * (static_cast<double>(i) / (samples - 1));
  };
  while (true) {
    double t_done = std::numeric_limits<double>::infinity();
    std::size_t which = 0;
    for (std::size_t k = 0; k < active.size(); ++k) {
      const auto& s = result.slides[active[k]];
      if (s.t_end && *s.t_end < t_done) {
        t_done = *s.t_end;
        which = k;
      }
    }
    const double t_sample =
        next_sample < static_cast<std::size_t>(samples) ? sample_time(next_sample) : std::numeric_limits<double>::infinity();
    if (t_done <= t_sample && std::isfinite(t_done)) {
      SlideSchedule& s = result.slides[active[which]];
      s.progress = 1.0;
      s.budget_integral = integrate([&](double x) { return s.K / carrier_length(s.v, s.w)(x); }, s.t0, *s.t_end);
      const double dy = std::abs(sc.points[s.v].evaluate(0.0)[1] - sc.points[s.w].evaluate(0.0)[1]);
      if (auto closed = completion_time(dy, K, s.t0, horizon))
        result.max_closed_form_gap = std::max(result.max_closed_form_gap, std::abs(*closed - *s.t_end));
      tree = tree.with_swap(make_edge(s.u, s.v), make_edge(s.u, s.w));
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(which));
      ++result.completed;
      start_slides(t_done);
      continue;
    }
    if (!std::isfinite(t_sample)) break;
    record(t_sample);
    ++next_sample;
  }

  for (std::size_t idx : active) {
    SlideSchedule& s = result.slides[idx];
    s.budget_integral = integrate([&](double x) { return s.K / carrier_length(s.v, s.w)(x); }, s.t0, horizon);
    s.progress = std::min(1.0, s.budget_integral);
  }
  result.final_tree = tree;
  result.final_length = length_at(horizon, end_cfg);
  result.final_opt = emst_length_prim(end_cfg);
  result.final_ratio = quality_ratio(result.final_length, result.final_opt);
  return result;
}

AnyTreeAudit any_tree_bound_audit(const PointConfig& cfg, const SpanningTree& tree) {
  AnyTreeAudit out;
  out.opt_length = emst_length_prim(cfg);
  const double tol = 1e-12 * std::max(1.0, out.opt_length);
  const int n = tree.n();
  for (std::size_t i = 0; i < tree.edges().size(); ++i) {
    const double len = edge_length(cfg, tree.edges()[i]);
    if (len > out.opt_length + tol) throw AuditFailure("tree edge longer than the EMST", i);
    out.max_edge = std::max(out.max_edge, len);
    out.total += len;
  }
  if (out.total > (n - 1) * out.opt_length + (n - 1) * tol)
    throw AuditFailure("tree longer than (n - 1) OPT", tree.edges().size());
  out.ratio = quality_ratio(out.total, out.opt_length);
  return out;
}

}  // namespace kemst
