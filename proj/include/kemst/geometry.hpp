#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace kemst {

using Point = std::vector<double>;

inline double distance(const Point& a, const Point& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

// Positions of all points of a kinetic scenario at one instant.
struct PointConfig {
  std::vector<Point> positions;

  std::size_t size() const { return positions.size(); }
  std::size_t dimension() const { return positions.empty() ? 0 : positions.front().size(); }
  double distance(int i, int j) const { return kemst::distance(positions[i], positions[j]); }
};

// Ratio of a maintained length to the optimum; coincident inputs with opt == 0 count as optimal.
inline double quality_ratio(double length, double opt) {
  if (opt > 0.0) return length / opt;
  return length > 0.0 ? INFINITY : 1.0;
}

}  // namespace kemst
