#pragma once

#include <cstdint>
#include <vector>

#include "kemst/spanning.hpp"
#include "kemst/trajectory.hpp"

namespace kemst {

// 1-D: point 0 follows (T_s(2t/T - 1) + 1) / 2, the remaining n - 1 points are
// stationary at j / n for j = 1..n-1.
KineticScenario gen_chebyshev(int s, int n, double horizon = 1.0);

// 1-D: n/2 movers followed by n/2 stationary points at j / (n/2 + 1).
// Mover i follows sum_{j=0}^{s/4} 1 / ((t - 10 j - 10 i s/4)^4 + 1), clamped
// to [0, 1]; the horizon leaves 10 time units after the last bump.
KineticScenario gen_appendix_rational(int s, int n);

// Planar circle of radius 1/2 centred at (1/2, 1/2), horizon 2, marker t_mid = 1.
// Points 0..a-1 (a = ceil(n/2)) start at the left end of a short top edge e and
// travel counterclockwise; points a..n-1 start at the right end and travel
// clockwise. At t_mid they are evenly spread with the top gap centred on the
// vertical axis; by T they converge to the ends of the mirrored bottom edge e'.
// e = (0, n-1), e' = (a-1, a).
KineticScenario gen_circle(int n, double e_len = 0.01);

// Planar diamond of side 2 centred at the origin, horizon 2, marker t_mid = 1.
// Each side chain runs from an endpoint of e through a corner to an endpoint of
// e'; `per_side` counts the points on one diamond side including both ends, so
// a chain has 2 * per_side - 1 points. Left chain 0..m-1 (0 on e, m-1 on e'),
// right chain m..2m-1. Points travel along the chain at constant speed: from
// e's endpoint to their chain slot during [0, 1], then on to e's mirror image.
KineticScenario gen_diamond(int per_side = 6);

// Static geometry of the diamond construction.
struct DiamondGeometry {
  double side = 2.0;
  Point top;
  Point bottom;
  Point left;
  Point right;
  int per_side = 6;
  int chain = 11;  // points per chain

  static DiamondGeometry standard(int per_side = 6);
  // Chain slot j on the left chain (mirror x for the right chain).
  Point left_slot(int j) const;
  double chain_spacing() const;
};

enum class SplitColor { red, blue };

// n points stacked vertically at y = (i + 1/2) / n, x = 1/2. Over [0, 1] red
// points move left by 1/2 and blue points right by 1/2. Without colors the
// points alternate, which is the 2-coloring of the initial EMST path.
KineticScenario gen_split(int n, const std::vector<SplitColor>& colors = {});

// Recolors a split scenario (e.g. from the 2-coloring of a chosen initial tree).
KineticScenario recolor_split(const KineticScenario& split, const std::vector<SplitColor>& colors);

std::vector<SplitColor> split_colors_from_tree(const SpanningTree& tree);

// n stationary points drawn uniformly from [0, 1]^d.
KineticScenario gen_stationary(int n, int d, double horizon, std::uint64_t seed);

// Random polynomial trajectories of degree <= s. Each coordinate is mapped
// affinely onto a random sub-range of [0, 1] (onto [0, 1] exactly when
// `full_range`).
KineticScenario gen_random_polynomial(int n, int s, int d, double horizon, std::uint64_t seed,
                                      bool full_range = false);

}  // namespace kemst
