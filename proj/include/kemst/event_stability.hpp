#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kemst/spanning.hpp"
#include "kemst/trajectory.hpp"

namespace kemst {

enum class EventType { recompute, sample };
const char* to_string(EventType type);

struct EventRecord {
  double time = 0.0;
  EventType type = EventType::sample;
  double tree_length = 0.0;
  double opt_length = 0.0;
  double ratio = 1.0;
  // Max displacement since the reference time of the tree in use. Recompute
  // records carry the displacement that triggered them.
  double displacement_since_ref = 0.0;
  SpanningTree tree{1, {}};
};

struct EventTrace {
  std::string label;
  double k = 0.0;
  std::vector<EventRecord> records;
  int event_count = 0;  // recomputations after t = 0
};

// Keeps the EMST computed at t_ref until some point has moved k away from its
// position at t_ref, then recomputes. `samples` uniform observation records
// are interleaved. Throws PreconditionError unless coordinates stay in [0,1]^d.
EventTrace run_event_regime(const KineticScenario& sc, int samples);

// Baseline that holds the exact EMST at every sample time.
EventTrace run_recompute_always(const KineticScenario& sc, int samples);

struct SpreadReport {
  int l = 1;
  double mindist = 0.0;
  double delta = 0.0;  // 1 / mindist
};

// Smallest distance between a point and its l-th nearest neighbour.
SpreadReport spread(const PointConfig& cfg, int l);

// Greedy thinning: take the lowest-index remaining point and drop every point
// closer than mindist_l to it, until none remain. The kept points are
// pairwise at least mindist_l apart.
struct ThinningReport {
  SpreadReport spread;
  std::vector<int> kept;
  double kept_emst = 0.0;
  // (n / l - 1) * mindist_l, a lower bound on kept_emst.
  double bound = 0.0;
  // |kept| * mindist_l / 2: disjoint balls around kept points, a lower bound
  // on the EMST of the full set.
  double packing_bound = 0.0;
};

ThinningReport thinning_lower_bound(const PointConfig& cfg, int l);

struct AuditReport {
  double max_slack = 0.0;  // max of tree_length - opt_length
  double max_ratio = 1.0;
  double allowance = 0.0;  // 4 k n
  double min_mindist = 0.0;
  double max_k_l_delta = 0.0;  // largest k l Delta_l seen
};

// Checks tree_length <= opt_length + scale * 4 k n at every record (tolerance
// 1e-9); throws AuditFailure carrying the offending record index.
AuditReport approximation_audit(const EventTrace& trace, const KineticScenario& sc, int l = 1,
                                double allowance_scale = 1.0);

// Sampled lower estimate of sup d_S / d_I over pairs of trace records. d_S is
// the slide distance in the flip graph for n <= 7, otherwise the size of the
// symmetric difference of the edge sets. All pairs are used when there are at
// most `pair_samples` of them; otherwise pairs are drawn with `seed`.
double estimate_stability_ratio(const EventTrace& trace, const KineticScenario& sc, int pair_samples,
                                std::uint64_t seed = 1);

}  // namespace kemst
