#include "kemst/morph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "kemst/errors.hpp"
#include "kemst/format.hpp"

namespace kemst {

namespace {

constexpr double kLengthTolerance = 1e-9;

// Minimax monotone lattice path for the swap of cycle edge (c[i], c[i+1])
// into (c[0], c[m]). State (a, b) is the connecting edge (c[a], c[b]).
struct LatticePath {
  double worst = 0.0;       // largest connecting-edge length along the path
  std::vector<bool> moves;  // true: a -> a - 1, false: b -> b + 1
};

LatticePath lattice_plan(const std::vector<int>& c, int i, const PointConfig& cfg) {
  const int m = static_cast<int>(c.size()) - 1;
  const int rows = i + 1;      // a in [0, i]
  const int cols = m - i;      // b in [i + 1, m]
  std::vector<double> best(static_cast<std::size_t>(rows) * cols);
  auto at = [&](int a, int b) -> double& { return best[static_cast<std::size_t>(a) * cols + (b - i - 1)]; };
  for (int a = 0; a <= i; ++a) {
    for (int b = m; b > i; --b) {
      const double cost = cfg.distance(c[a], c[b]);
      double next = std::numeric_limits<double>::infinity();
      if (a > 0) next = std::min(next, at(a - 1, b));
      if (b < m) next = std::min(next, at(a, b + 1));
      if (a == 0 && b == m) next = 0.0;
      at(a, b) = std::max(cost, next);
    }
  }
  LatticePath out;
  out.worst = at(i, i + 1);
  int a = i;
  int b = i + 1;
  while (a > 0 || b < m) {
    const double via_a = a > 0 ? at(a - 1, b) : std::numeric_limits<double>::infinity();
    const double via_b = b < m ? at(a, b + 1) : std::numeric_limits<double>::infinity();
    const bool take_a = via_a <= via_b;
    out.moves.push_back(take_a);
    if (take_a) --a;
    else ++b;
  }
  return out;
}

int cycle_edge_index(const std::vector<int>& c, Edge e) {
  for (std::size_t k = 0; k + 1 < c.size(); ++k)
    if (make_edge(c[k], c[k + 1]) == e) return static_cast<int>(k);
  return -1;
}

void finish(MorphPlan& plan, const PointConfig& cfg) {
  plan.max_intermediate = 0.0;
  for (const SpanningTree& t : plan.trees) plan.max_intermediate = std::max(plan.max_intermediate, tree_length(cfg, t));
}

void append_lattice(MorphPlan& plan, const std::vector<int>& c, int i, const LatticePath& path) {
  int a = i;
  int b = i + 1;
  for (bool move_a : path.moves) {
    const SpanningTree& cur = plan.trees.back();
    if (move_a) {
      plan.steps.push_back({MorphMode::slide, c[b], c[a], c[a - 1]});
      plan.trees.push_back(apply_slide(cur, c[b], c[a], c[a - 1]));
      --a;
    } else {
      plan.steps.push_back({MorphMode::slide, c[a], c[b], c[b + 1]});
      plan.trees.push_back(apply_slide(cur, c[a], c[b], c[b + 1]));
      ++b;
    }
  }
}

void check_weight_order(const SwapEvent& ev, const PointConfig& cfg) {
  if (static_cast<std::size_t>(ev.old_tree.n()) != cfg.size())
    throw ParameterError("swap event and configuration disagree on the vertex count");
  if (edge_length(cfg, ev.e_prime) > edge_length(cfg, ev.e) + kLengthTolerance)
    throw ParameterError("swap is not weight-improving: |e'| > |e|");
}

}  // namespace

SpanningTree apply_slide(const SpanningTree& tree, int u, int v, int w) {
  if (w == u || w == v) throw InvalidMoveError("slide target must differ from both endpoints");
  if (!tree.contains(make_edge(u, v))) throw InvalidMoveError("sliding edge is not in the tree");
  if (!tree.contains(make_edge(v, w))) throw InvalidMoveError("slide target is not a tree neighbour of v");
  return tree.with_swap(make_edge(u, v), make_edge(u, w));
}

SpanningTree apply_rotation(const SpanningTree& tree, int u, int v, int w) {
  if (!tree.contains(make_edge(u, v))) throw InvalidMoveError("rotated edge is not in the tree");
  if (w == v) return tree;
  if (w == u || w < 0 || w >= tree.n()) throw InvalidMoveError("rotation target out of range");
  try {
    return tree.with_swap(make_edge(u, v), make_edge(u, w));
  } catch (const ParameterError& err) {
    throw InvalidMoveError(std::string("rotation does not yield a tree: ") + err.what());
  }
}

SwapEvent make_swap_event(double time, const SpanningTree& old_tree, Edge e, Edge e_prime) {
  e = make_edge(e.u, e.v);
  e_prime = make_edge(e_prime.u, e_prime.v);
  if (!old_tree.contains(e)) throw ParameterError("swap: e is not in the old tree");
  if (old_tree.contains(e_prime)) throw ParameterError("swap: e' is already in the old tree");
  SwapEvent ev{time, old_tree, e, e_prime, fundamental_cycle(old_tree, e_prime.u, e_prime.v)};
  if (cycle_edge_index(ev.cycle, e) < 0) throw ParameterError("swap: e is not on the cycle of e'");
  return ev;
}

std::string MorphPlan::serialize() const {
  std::string out;
  for (const MorphStep& s : steps) {
    out += s.kind == MorphMode::slide ? "slide " : "rotate ";
    out += std::to_string(s.u) + " " + std::to_string(s.v) + " -> " + std::to_string(s.w) + "\n";
  }
  out += "max_intermediate " + format_double(max_intermediate) + "\n";
  return out;
}

MorphPlan plan_slide_morph(const SwapEvent& ev, const PointConfig& cfg) {
  check_weight_order(ev, cfg);
  const std::vector<int>& c = ev.cycle;
  const int i = cycle_edge_index(c, ev.e);
  if (i < 0) throw ParameterError("swap: e is not on the cycle of e'");
  const double old_len = tree_length(cfg, ev.old_tree);

  const LatticePath direct = lattice_plan(c, i, cfg);
  double best_value = old_len - edge_length(cfg, ev.e) + direct.worst;
  int best_chord = -1;
  LatticePath best_first;
  LatticePath best_second;
  std::vector<int> best_second_cycle;
  int best_second_index = -1;

  // Two-phase plans: first f -> e', then e -> f.
  for (int j = 0; j + 1 < static_cast<int>(c.size()); ++j) {
    if (j == i) continue;
    const Edge f = make_edge(c[j], c[j + 1]);
    const LatticePath first = lattice_plan(c, j, cfg);
    const double first_value = old_len - edge_length(cfg, f) + first.worst;
    if (first_value >= best_value) continue;
    const SpanningTree mid = ev.old_tree.with_swap(f, ev.e_prime);
    std::vector<int> c2 = fundamental_cycle(mid, f.u, f.v);
    const int i2 = cycle_edge_index(c2, ev.e);
    const LatticePath second = lattice_plan(c2, i2, cfg);
    const double value = std::max(first_value, tree_length(cfg, mid) - edge_length(cfg, ev.e) + second.worst);
    if (value < best_value) {
      best_value = value;
      best_chord = j;
      best_first = first;
      best_second = second;
      best_second_cycle = std::move(c2);
      best_second_index = i2;
    }
  }

  MorphPlan plan;
  plan.trees.push_back(ev.old_tree);
  if (best_chord < 0) {
    append_lattice(plan, c, i, direct);
  } else {
    append_lattice(plan, c, best_chord, best_first);
    append_lattice(plan, best_second_cycle, best_second_index, best_second);
  }
  finish(plan, cfg);
  return plan;
}

MorphPlan plan_rotation_morph(const SwapEvent& ev, const PointConfig& cfg) {
  check_weight_order(ev, cfg);
  const std::vector<int>& c = ev.cycle;
  const int i = cycle_edge_index(c, ev.e);
  if (i < 0) throw ParameterError("swap: e is not on the cycle of e'");
  const double e_len = edge_length(cfg, ev.e);
  for (std::size_t k = 0; k + 1 < c.size(); ++k)
    if (cfg.distance(c[k], c[k + 1]) > e_len + kLengthTolerance)
      throw ParameterError("rotation strategy needs e to be a longest edge of the cycle");

  const int u = c[i];
  const int v = c[i + 1];
  const int u_prime = c.front();
  const int v_prime = c.back();
  // Left part from u back to u', right part from v on to v'.
  std::vector<int> left(c.begin(), c.begin() + i + 1);
  std::reverse(left.begin(), left.end());
  const std::vector<int> right(c.begin() + i + 1, c.end());
  auto part_length = [&](const std::vector<int>& p) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) s += cfg.distance(p[k], p[k + 1]);
    return s;
  };
  const double old_len = tree_length(cfg, ev.old_tree);
  const double left_len = part_length(left);
  const double right_len = part_length(right);

  using Steps = std::vector<MorphStep>;
  std::vector<Steps> candidates;
  auto rot = [](int keep, int from, int to) { return MorphStep{MorphMode::rotation, keep, from, to}; };
  if (left_len <= old_len / 3.0) candidates.push_back({rot(u, v, v_prime), rot(v_prime, u, u_prime)});
  if (right_len <= old_len / 3.0) candidates.push_back({rot(v, u, u_prime), rot(u_prime, v, v_prime)});
  if (candidates.empty()) {
    auto midpoint_edge = [&](const std::vector<int>& p, double total) {
      double s = 0.0;
      for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        s += cfg.distance(p[k], p[k + 1]);
        if (s >= 0.5 * total) return std::pair<int, int>{p[k], p[k + 1]};
      }
      return std::pair<int, int>{p[p.size() - 2], p.back()};
    };
    const auto [u_l, v_l] = midpoint_edge(left, left_len);
    const auto [u_r, v_r] = midpoint_edge(right, right_len);
    candidates.push_back({rot(u, v, v_r), rot(v_r, u, u_prime), rot(u_prime, v_r, v_prime)});
    candidates.push_back({rot(v, u, v_l), rot(v_l, v, v_prime), rot(v_prime, v_l, u_prime)});
    candidates.push_back({rot(u, v, u_r), rot(u_r, u, u_prime), rot(u_prime, u_r, v_prime)});
    candidates.push_back({rot(v, u, u_l), rot(u_l, v, v_prime), rot(v_prime, u_l, u_prime)});
  }

  std::optional<MorphPlan> best;
  for (const Steps& steps : candidates) {
    MorphPlan plan;
    plan.trees.push_back(ev.old_tree);
    for (const MorphStep& s : steps) {
      if (s.v == s.w) continue;
      plan.steps.push_back(s);
      plan.trees.push_back(apply_rotation(plan.trees.back(), s.u, s.v, s.w));
    }
    finish(plan, cfg);
    if (!best || plan.max_intermediate < best->max_intermediate) best = std::move(plan);
  }
  return *best;
}

void check_plan(const MorphPlan& plan, const SwapEvent& ev) {
  if (plan.trees.empty() || !(plan.trees.front() == ev.old_tree))
    throw ParameterError("plan does not start at the old tree");
  if (plan.trees.size() != plan.steps.size() + 1) throw ParameterError("plan trees and steps disagree");
  const SpanningTree target = ev.old_tree.with_swap(ev.e, ev.e_prime);
  if (!(plan.trees.back() == target)) throw ParameterError("plan does not end at old - e + e'");
  for (std::size_t k = 0; k < plan.steps.size(); ++k) {
    const MorphStep& s = plan.steps[k];
    const SpanningTree next = s.kind == MorphMode::slide ? apply_slide(plan.trees[k], s.u, s.v, s.w)
                                                         : apply_rotation(plan.trees[k], s.u, s.v, s.w);
    if (!(next == plan.trees[k + 1])) throw ParameterError("plan step does not produce the next tree");
  }
}

OracleResult minimax_flip_oracle(const KineticScenario& sc, MorphMode mode, int time_steps, int n_limit) {
  sc.validate();
  const int n = static_cast<int>(sc.size());
  if (n > n_limit || n > 8) throw SizeError("minimax oracle: n exceeds the limit");
  if (time_steps < 2) throw ParameterError("minimax oracle: need at least two time steps");
  const double horizon = sc.horizon();
  std::vector<double> times;
  for (int j = 0; j < time_steps; ++j) times.push_back(horizon * (static_cast<double>(j) / (time_steps - 1)));
  for (const auto& [name, t] : sc.markers)
    if (t >= 0.0 && t <= horizon) times.push_back(t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  const FlipGraph graph(n, mode);
  const std::size_t count = graph.size();
  auto ratios_at = [&](double t) {
    std::vector<double> len = graph.lengths(sc.at(t));
    const double opt = *std::min_element(len.begin(), len.end());
    for (double& x : len) x = quality_ratio(x, opt);
    return len;
  };

  std::vector<double> value = ratios_at(times[0]);
  std::vector<std::vector<std::uint32_t>> pred(times.size());
  using Item = std::pair<double, std::uint32_t>;
  for (std::size_t j = 1; j < times.size(); ++j) {
    const std::vector<double> r = ratios_at(times[j]);
    std::vector<double> key(count);
    std::vector<std::uint32_t>& p = pred[j];
    p.assign(count, UINT32_MAX);
    std::vector<Item> init;
    init.reserve(count);
    for (std::size_t x = 0; x < count; ++x) {
      key[x] = std::max(value[x], r[x]);
      init.emplace_back(key[x], static_cast<std::uint32_t>(x));
    }
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap(std::greater<>{}, std::move(init));
    while (!heap.empty()) {
      const auto [k, x] = heap.top();
      heap.pop();
      if (k > key[x]) continue;
      for (std::uint32_t y : graph.neighbors(x)) {
        const double cand = std::max(k, r[y]);
        if (cand < key[y]) {
          key[y] = cand;
          p[y] = x;
          heap.emplace(cand, y);
        }
      }
    }
    value = std::move(key);
  }

  OracleResult out;
  out.times = times;
  std::size_t cur = static_cast<std::size_t>(std::min_element(value.begin(), value.end()) - value.begin());
  out.ratio = value[cur];
  out.schedule.resize(times.size());
  for (std::size_t j = times.size(); j-- > 1;) {
    std::vector<std::size_t> ids{cur};
    while (pred[j][ids.back()] != UINT32_MAX) ids.push_back(pred[j][ids.back()]);
    std::reverse(ids.begin(), ids.end());
    for (std::size_t id : ids) out.schedule[j].push_back(graph.tree(id));
    cur = ids.front();
  }
  out.schedule[0].push_back(graph.tree(cur));
  return out;
}

const char* to_string(TopoEventType type) {
  switch (type) {
    case TopoEventType::sample:
      return "sample";
    case TopoEventType::swap:
      return "swap";
    case TopoEventType::morph:
      return "morph";
  }
  return "?";
}

TopoTrace run_topo_regime(const KineticScenario& sc, MorphMode mode, int samples) {
  sc.validate();
  if (samples < 2) throw ParameterError("run_topo_regime: need at least two samples");
  constexpr double kSwapResolution = 1e-9;
  constexpr int kMaxChangesPerInterval = 100000;
  const double horizon = sc.horizon();

  TopoTrace trace;
  trace.label = sc.label;
  SpanningTree current = emst(sc.at(0.0));

  auto record = [&](double t, TopoEventType type, const PointConfig& cfg, double len) {
    const double opt = emst_length_prim(cfg);
    const double ratio = quality_ratio(len, opt);
    trace.records.push_back({t, type, len, opt, ratio});
    trace.max_ratio = std::max(trace.max_ratio, ratio);
  };

  auto apply_change = [&](double t, const SpanningTree& target) {
    const PointConfig cfg = sc.at(t);
    while (!(current == target)) {
      Edge f{};
      for (const Edge& cand : target.edges()) {
        if (!current.contains(cand)) {
          f = cand;
          break;
        }
      }
      const std::vector<int> cyc = fundamental_cycle(current, f.u, f.v);
      Edge e{};
      double e_len = -1.0;
      for (std::size_t k = 0; k + 1 < cyc.size(); ++k) {
        const Edge g = make_edge(cyc[k], cyc[k + 1]);
        if (target.contains(g)) continue;
        const double len = edge_length(cfg, g);
        if (len > e_len || (len == e_len && g < e)) {
          e = g;
          e_len = len;
        }
      }
      const SwapEvent ev = make_swap_event(t, current, e, f);
      MorphPlan plan;
      if (mode == MorphMode::rotation) {
        try {
          plan = plan_rotation_morph(ev, cfg);
        } catch (const ParameterError&) {
          plan = plan_slide_morph(ev, cfg);
          plan.fallback = true;
          ++trace.fallback_count;
        }
      } else {
        plan = plan_slide_morph(ev, cfg);
      }
      for (std::size_t k = 1; k + 1 < plan.trees.size(); ++k)
        record(t, TopoEventType::morph, cfg, tree_length(cfg, plan.trees[k]));
      current = plan.trees.back();
      ++trace.swap_count;
      record(t, TopoEventType::swap, cfg, tree_length(cfg, current));
    }
  };

  double prev_t = 0.0;
  {
    const PointConfig cfg = sc.at(0.0);
    record(0.0, TopoEventType::sample, cfg, tree_length(cfg, current));
  }
  for (int s = 1; s < samples; ++s) {
    const double t_next = s == samples - 1 ? horizon : horizon * (static_cast<double>(s) / (samples - 1));
    double lo = prev_t;
    for (int guard = 0; guard < kMaxChangesPerInterval; ++guard) {
      SpanningTree at_next = emst(sc.at(t_next));
      if (at_next == current) break;
      double hi = t_next;
      while (hi - lo > kSwapResolution) {
        const double mid = 0.5 * (lo + hi);
        if (emst(sc.at(mid)) == current) lo = mid;
        else hi = mid;
      }
      apply_change(hi, emst(sc.at(hi)));
      lo = hi;
    }
    const PointConfig cfg = sc.at(t_next);
    record(t_next, TopoEventType::sample, cfg, tree_length(cfg, current));
    prev_t = t_next;
  }
  return trace;
}

const char* to_string(Connector c) {
  switch (c) {
    case Connector::top:
      return "top";
    case Connector::bottom:
      return "bottom";
    case Connector::cross:
      return "cross";
    case Connector::none:
      return "none";
  }
  return "?";
}

Connector classify_connector(const Point& a, const Point& b, const DiamondGeometry& g) {
  const double h = g.top[1];
  // Does the segment touch the axis-aligned diagonal {coord(axis) = 0, |other| <= h}?
  auto touches = [&](int axis) {
    const int other = 1 - axis;
    const double pa = a[axis];
    const double pb = b[axis];
    if ((pa > 0.0 && pb > 0.0) || (pa < 0.0 && pb < 0.0)) return false;
    double lo = 0.0;
    double hi = 0.0;
    if (pa == pb) {
      lo = std::min(a[other], b[other]);
      hi = std::max(a[other], b[other]);
    } else {
      const double f = pa / (pa - pb);
      lo = hi = a[other] + f * (b[other] - a[other]);
    }
    return hi >= -h && lo <= h;
  };
  const bool vertical = touches(0);
  const bool horizontal = touches(1);
  if (vertical && horizontal) return Connector::cross;
  if (!vertical) return Connector::none;
  if (a[1] > 0.0 && b[1] > 0.0) return Connector::top;
  if (a[1] < 0.0 && b[1] < 0.0) return Connector::bottom;
  return Connector::none;
}

DiamondCertificate diamond_certificate(int per_side) {
  const KineticScenario sc = gen_diamond(per_side);
  const DiamondGeometry g = DiamondGeometry::standard(per_side);
  const PointConfig cfg = sc.at(sc.markers.at("t_mid"));
  const int n = static_cast<int>(cfg.size());
  const int m = g.chain;

  struct Weighted {
    double length;
    Edge edge;
  };
  std::vector<Weighted> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.push_back({cfg.distance(u, v), Edge{u, v}});
  std::sort(all.begin(), all.end(), [](const Weighted& x, const Weighted& y) {
    return x.length != y.length ? x.length < y.length : x.edge < y.edge;
  });

  // Minimum spanning tree length subject to containing `forced`.
  auto forced_mst = [&](std::initializer_list<Edge> forced) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    double total = 0.0;
    int joined = 0;
    for (const Edge& e : forced) {
      const int a = find(e.u);
      const int b = find(e.v);
      if (a == b) return std::numeric_limits<double>::infinity();
      parent[a] = b;
      total += cfg.distance(e.u, e.v);
      ++joined;
    }
    for (const Weighted& w : all) {
      if (joined == n - 1) break;
      const int a = find(w.edge.u);
      const int b = find(w.edge.v);
      if (a == b) continue;
      parent[a] = b;
      total += w.length;
      ++joined;
    }
    return total;
  };

  std::vector<Edge> tops;
  std::vector<Edge> bottoms;
  std::vector<Edge> crosses;
  for (int u = 0; u < m; ++u) {
    for (int v = m; v < 2 * m; ++v) {
      switch (classify_connector(cfg.positions[u], cfg.positions[v], g)) {
        case Connector::top:
          tops.push_back({u, v});
          break;
        case Connector::bottom:
          bottoms.push_back({u, v});
          break;
        case Connector::cross:
          crosses.push_back({u, v});
          break;
        case Connector::none:
          break;
      }
    }
  }

  DiamondCertificate cert;
  cert.emst_length = emst_length_prim(cfg);
  cert.min_cross_tree = std::numeric_limits<double>::infinity();
  for (const Edge& c : crosses) cert.min_cross_tree = std::min(cert.min_cross_tree, forced_mst({c}));
  cert.min_top_bottom_tree = std::numeric_limits<double>::infinity();
  for (const Edge& t : tops)
    for (const Edge& b : bottoms) cert.min_top_bottom_tree = std::min(cert.min_top_bottom_tree, forced_mst({t, b}));
  cert.lower_bound = std::min(cert.min_cross_tree, cert.min_top_bottom_tree);

  // Explicit rotation path: close e' against the left chain, walk the gap up
  // the chain, then retire e.
  SpanningTree cur = emst(cfg);
  cert.witness.push_back(cur);
  cur = apply_rotation(cur, m - 1, m - 2, 2 * m - 1);
  cert.witness.push_back(cur);
  for (int k = m - 2; k >= 1; --k) {
    cur = apply_rotation(cur, k, k - 1, k + 1);
    cert.witness.push_back(cur);
  }
  cur = apply_rotation(cur, 0, m, 1);
  cert.witness.push_back(cur);
  for (const SpanningTree& t : cert.witness) cert.witness_max = std::max(cert.witness_max, tree_length(cfg, t));
  return cert;
}

}  // namespace kemst
