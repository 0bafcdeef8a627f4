#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kemst/geometry.hpp"
#include "kemst/polynomial.hpp"

namespace kemst {

// One coordinate per entry, each a polynomial in t.
struct PolynomialMotion {
  std::vector<Coeffs> coords;
};

// numerator(t - shift) / denominator(t - shift). Storing the shift keeps
// coefficients small for bumps centred far from t = 0.
struct RationalTerm {
  double shift = 0.0;
  Coeffs numerator;
  Coeffs denominator;
};

// Each coordinate is a sum of rational terms, optionally clamped to [0, 1].
struct RationalMotion {
  std::vector<std::vector<RationalTerm>> coords;
  bool clamp_unit = false;
};

struct LinearSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  Point start;
  Point end;
};

// Planar constant-angular-speed arc; the angle is interpolated linearly in time.
struct ArcSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  std::array<double, 2> center{};
  double radius = 0.0;
  double angle0 = 0.0;
  double angle1 = 0.0;
};

using Segment = std::variant<LinearSegment, ArcSegment>;

struct ScriptedMotion {
  std::vector<Segment> segments;
};

enum class TrajectoryKind { polynomial, rational, scripted };

const char* to_string(TrajectoryKind kind);

// The motion x_i : [0, T] -> R^d of a single point.
class Trajectory {
 public:
  using Motion = std::variant<PolynomialMotion, RationalMotion, ScriptedMotion>;

  static Trajectory polynomial(std::vector<Coeffs> coords, double horizon);
  static Trajectory rational(std::vector<std::vector<RationalTerm>> coords, double horizon,
                             bool clamp_unit = false);
  static Trajectory scripted(std::vector<Segment> segments, double horizon);
  static Trajectory stationary(const Point& p, double horizon);
  // Constant-velocity polynomial from `from` at t = 0 to `to` at t = horizon.
  static Trajectory linear(const Point& from, const Point& to, double horizon);

  TrajectoryKind kind() const;
  std::size_t dimension() const { return dimension_; }
  double horizon() const { return horizon_; }
  const Motion& motion() const { return motion_; }

  // Maximum coefficient degree; only meaningful for polynomial motions.
  int degree() const;

  // x(t); throws DomainError outside [0, T].
  Point evaluate(double t) const;

 private:
  Trajectory(Motion motion, std::size_t dimension, double horizon);
  void validate() const;

  Motion motion_;
  std::size_t dimension_ = 0;
  double horizon_ = 0.0;
};

enum class MorphMode { slide, rotation };

const char* to_string(MorphMode mode);
MorphMode morph_mode_from_string(const std::string& name);

// Provenance of a generated scenario (generator name and numeric parameters).
struct GeneratorInfo {
  std::string name;
  std::map<std::string, double> params;
};

struct KineticScenario {
  std::vector<Trajectory> points;
  double k = 0.0;  // displacement budget, coordinate units
  double K = 0.0;  // Lipschitz budget, distance per time unit
  MorphMode morph_mode = MorphMode::slide;
  std::string label;
  std::optional<GeneratorInfo> generator;
  // Named instants of a construction, e.g. "t_mid" for the critical configuration.
  std::map<std::string, double> markers;

  std::size_t size() const { return points.size(); }
  std::size_t dimension() const;
  double horizon() const;

  // Throws ParameterError unless n >= 2 and all trajectories share d and T.
  void validate() const;

  PointConfig at(double t) const;
};

// max_i |x_i(t) - x_i(t')|.
double input_distance(const KineticScenario& sc, double t, double t_prime);

// Largest |h'(t)| over [0, T] across coordinates of a polynomial trajectory.
// Throws UnsupportedError for other kinds.
double max_speed(const Trajectory& traj);

// Whether every trajectory stays inside [0, 1]^d (sampled, with tolerance).
bool is_unit_normalized(const KineticScenario& sc, double tolerance = 1e-9, int samples = 2048);

// Earliest t > t_ref at which some point has moved distance k from its
// position at t_ref; std::nullopt if that does not happen by T. An event at
// exactly T counts.
std::optional<double> next_displacement_event(const KineticScenario& sc, double t_ref, double k,
                                              int grid = 2048);

}  // namespace kemst
