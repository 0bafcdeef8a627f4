#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kemst/flip_graph.hpp"
#include "kemst/generators.hpp"
#include "kemst/spanning.hpp"
#include "kemst/trajectory.hpp"

namespace kemst {

// tree - (u, v) + (u, w), where (v, w) must be a tree edge.
SpanningTree apply_slide(const SpanningTree& tree, int u, int v, int w);
// tree - (u, v) + (u, w) for any w that keeps a tree; w == v is the identity.
SpanningTree apply_rotation(const SpanningTree& tree, int u, int v, int w);

// An EMST update: remove e, insert e_prime. `cycle` is the fundamental cycle
// of e_prime in old_tree, from e_prime.u to e_prime.v.
struct SwapEvent {
  double time = 0.0;
  SpanningTree old_tree;
  Edge e;
  Edge e_prime;
  std::vector<int> cycle;
};

// Validates the combinatorial invariants; throws ParameterError.
SwapEvent make_swap_event(double time, const SpanningTree& old_tree, Edge e, Edge e_prime);

struct MorphStep {
  MorphMode kind = MorphMode::slide;
  int u = 0;  // kept endpoint
  int v = 0;  // endpoint that moves
  int w = 0;  // its new position
};

struct MorphPlan {
  std::vector<MorphStep> steps;
  std::vector<SpanningTree> trees;  // trees.front() = old tree, trees.back() = result
  double max_intermediate = 0.0;    // longest tree along the plan
  bool fallback = false;            // rotation planner fell back to slides

  // `slide u v -> w` / `rotate u v -> w` lines, then `max_intermediate <value>`.
  std::string serialize() const;
};

// Slides e's endpoints along the cycle toward e' (all monotone interleavings
// of the two directions) and also tries two-phase plans through another cycle
// edge f used as a chord. Returns the plan with the smallest maximum.
MorphPlan plan_slide_morph(const SwapEvent& ev, const PointConfig& cfg);

// Three-step rotation strategy; requires e to be a longest edge of the cycle.
MorphPlan plan_rotation_morph(const SwapEvent& ev, const PointConfig& cfg);

// Checks the plan's structural invariants (valid trees, single moves, correct
// ends); throws ParameterError on the first violation.
void check_plan(const MorphPlan& plan, const SwapEvent& ev);

// Minimax strategy over the flip graph for a whole scenario, on a uniform time
// grid (plus any scenario markers). Charging visited trees is exact because
// lengths are interpolated linearly along flip-graph edges.
struct OracleResult {
  double ratio = 1.0;
  std::vector<double> times;
  // Trees visited at each time step, in order; the first entry of step j is
  // the tree held since step j - 1.
  std::vector<std::vector<SpanningTree>> schedule;
};

OracleResult minimax_flip_oracle(const KineticScenario& sc, MorphMode mode, int time_steps, int n_limit = 7);

enum class TopoEventType { sample, swap, morph };
const char* to_string(TopoEventType type);

struct TopoRecord {
  double time = 0.0;
  TopoEventType type = TopoEventType::sample;
  double tree_length = 0.0;
  double opt_length = 0.0;
  double ratio = 1.0;
};

struct TopoTrace {
  std::string label;
  std::vector<TopoRecord> records;
  int swap_count = 0;
  int fallback_count = 0;
  double max_ratio = 1.0;
};

// Tracks EMST swaps (sampled grid, bisected to 1e-9) and charges every tree
// of the planned morph at the swap time. Simultaneous swaps are applied in
// lexicographic order of the inserted edge.
TopoTrace run_topo_regime(const KineticScenario& sc, MorphMode mode, int samples);

enum class Connector { top, bottom, cross, none };
const char* to_string(Connector c);

// Classification of a segment against the diagonals of the diamond.
Connector classify_connector(const Point& a, const Point& b, const DiamondGeometry& g);

// Lower bound certificate for the diamond at its critical configuration. A
// rotation keeps one endpoint, so it cannot turn a lone top-connector into a
// bottom-connector: every rotation path from the start tree to a tree with a
// bottom-connector passes a tree holding a cross-connector or both a top- and
// a bottom-connector. The cheapest such trees are forced-edge MSTs.
struct DiamondCertificate {
  double emst_length = 0.0;
  double min_cross_tree = 0.0;       // cheapest tree with a cross-connector
  double min_top_bottom_tree = 0.0;  // cheapest tree with top- and bottom-connectors
  double lower_bound = 0.0;          // min of the two
  double witness_max = 0.0;          // max length along an explicit rotation path
  std::vector<SpanningTree> witness; // start tree ... bottom-connector EMST
  double ratio() const { return lower_bound / emst_length; }
};

DiamondCertificate diamond_certificate(int per_side = 6);

}  // namespace kemst
