#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kemst/spanning.hpp"
#include "kemst/trajectory.hpp"

namespace kemst {

// Pinned value of the "small enough" constant in K = c / ln n.
inline constexpr double kSplitConstant = 0.1;

// Adaptive Gauss-Kronrod integral of f over [a, b] (relative tolerance 1e-10).
double integrate(const std::function<double(double)>& f, double a, double b);

// K * integral of 1 / sqrt(x^2 + t^2) over [t0, t1] in closed form (asinh).
double split_progress(double x, double K, double t0, double t1);

// Smallest t* >= t0 with K * integral_{t0}^{t*} dt / sqrt(x^2 + t^2) = 1, or
// nothing if that happens after `horizon`.
std::optional<double> completion_time(double x, double K, double t0, double horizon = 1.0);

// Same rule for a general carrier length L(t): quadrature plus bisection on t*
// to 1e-12.
std::optional<double> completion_time_numeric(const std::function<double(double)>& length, double K, double t0,
                                              double horizon);

// Whether K * ln(1/x + sqrt(1 + 1/x^2)) < 1, i.e. no slide over a carrier of
// initial vertical span x can finish by t = 1 when started at t = 0.
bool slide_cannot_finish(double x, double K);

// An edge slide in progress: tree edge (u, v) moves its v end along carrier
// (v, w). progress is the relative position on the carrier.
struct SlideSchedule {
  int u = 0;
  int v = 0;
  int w = 0;
  double K = 0.0;
  double t0 = 0.0;
  std::optional<double> t_end;  // completion time, if reached
  double progress = 0.0;        // at the end of the run or at completion
  double budget_integral = 0.0; // K * integral of 1 / L over the active interval
};

// Slide-metric cost of moving relative position linearly from p0 to p1 over
// [t0, t1] on carrier (v, w): the integral of |dp/dt| * L(t).
double slide_cost(const KineticScenario& sc, int v, int w, double p0, double p1, double t0, double t1);

struct LipschitzRecord {
  double time = 0.0;
  int active_slides = 0;
  int completed_slides = 0;
  double tree_length = 0.0;
  double opt_length = 0.0;
  double ratio = 1.0;
};

struct LipschitzResult {
  std::string label;
  double K = 0.0;
  SpanningTree final_tree{1, {}};  // last completed tree (pending slides not applied)
  double final_length = 0.0;       // includes partial progress of pending slides
  double final_opt = 0.0;
  double final_ratio = 1.0;
  int completed = 0;
  std::vector<SlideSchedule> slides;
  std::vector<LipschitzRecord> records;
  double max_closed_form_gap = 0.0;  // |closed form - quadrature| over completed slides
};

// Simulates the split construction over [0, 1] with a K-Lipschitz greedy
// adversary: whenever edges are free, start the slide with the largest length
// gain at t = 1 among those whose sliding and carrier edges are unused.
// Concurrent slides each get their own budget K. The initial tree defaults to
// the EMST at t = 0; the scenario is recoloured from its 2-coloring.
LipschitzResult run_lipschitz_regime(const KineticScenario& split, double K, int samples,
                                     const std::optional<SpanningTree>& initial = std::nullopt);

struct AnyTreeAudit {
  double opt_length = 0.0;
  double max_edge = 0.0;
  double total = 0.0;
  double ratio = 1.0;
};

// Every edge of any spanning tree is at most OPT, so the total is at most
// (n - 1) OPT. Throws AuditFailure (record = edge index) on violation.
AnyTreeAudit any_tree_bound_audit(const PointConfig& cfg, const SpanningTree& tree);

}  // namespace kemst
