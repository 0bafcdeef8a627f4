#include "kemst/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kemst/errors.hpp"
#include "kemst/root_finding.hpp"

namespace kemst {

namespace {

constexpr double kTimeSlack = 1e-12;
constexpr double kContinuityTolerance = 1e-9;

// A displacement within this relative distance of k counts as reaching k.
// Without it, events at turning points that sit exactly k away (Chebyshev
// extremes for 1/k integral) would hinge on rounding.
constexpr double kBudgetSlack = 1e-9;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double segment_t0(const Segment& s) {
  return std::visit([](const auto& seg) { return seg.t0; }, s);
}
double segment_t1(const Segment& s) {
  return std::visit([](const auto& seg) { return seg.t1; }, s);
}

Point segment_eval(const Segment& s, double t) {
  return std::visit(
      Overloaded{
          [t](const LinearSegment& seg) {
            const double span = seg.t1 - seg.t0;
            const double f = span > 0.0 ? std::clamp((t - seg.t0) / span, 0.0, 1.0) : 0.0;
            Point p(seg.start.size());
            for (std::size_t i = 0; i < p.size(); ++i)
              p[i] = seg.start[i] + f * (seg.end[i] - seg.start[i]);
            return p;
          },
          [t](const ArcSegment& seg) {
            const double span = seg.t1 - seg.t0;
            const double f = span > 0.0 ? std::clamp((t - seg.t0) / span, 0.0, 1.0) : 0.0;
            const double angle = seg.angle0 + f * (seg.angle1 - seg.angle0);
            return Point{seg.center[0] + seg.radius * std::cos(angle),
                         seg.center[1] + seg.radius * std::sin(angle)};
          }},
      s);
}

std::size_t motion_dimension(const Trajectory::Motion& m) {
  return std::visit(Overloaded{[](const PolynomialMotion& p) { return p.coords.size(); },
                               [](const RationalMotion& r) { return r.coords.size(); },
                               [](const ScriptedMotion& s) -> std::size_t {
                                 if (s.segments.empty()) return 0;
                                 if (const auto* lin = std::get_if<LinearSegment>(&s.segments[0]))
                                   return lin->start.size();
                                 return 2;
                               }},
                    m);
}

double rational_eval(const std::vector<RationalTerm>& terms, double t) {
  double sum = 0.0;
  for (const RationalTerm& term : terms) {
    const double u = t - term.shift;
    sum += poly_eval(term.numerator, u) / poly_eval(term.denominator, u);
  }
  return sum;
}

}  // namespace

const char* to_string(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::polynomial:
      return "polynomial";
    case TrajectoryKind::rational:
      return "rational";
    case TrajectoryKind::scripted:
      return "scripted";
  }
  return "?";
}

const char* to_string(MorphMode mode) { return mode == MorphMode::slide ? "slide" : "rotation"; }

MorphMode morph_mode_from_string(const std::string& name) {
  if (name == "slide") return MorphMode::slide;
  if (name == "rotation") return MorphMode::rotation;
  throw ParameterError("unknown morph mode '" + name + "'");
}

Trajectory::Trajectory(Motion motion, std::size_t dimension, double horizon)
    : motion_(std::move(motion)), dimension_(dimension), horizon_(horizon) {
  validate();
}

Trajectory Trajectory::polynomial(std::vector<Coeffs> coords, double horizon) {
  for (Coeffs& c : coords)
    if (c.empty()) c.push_back(0.0);
  const std::size_t d = coords.size();
  return Trajectory(PolynomialMotion{std::move(coords)}, d, horizon);
}

Trajectory Trajectory::rational(std::vector<std::vector<RationalTerm>> coords, double horizon,
                                bool clamp_unit) {
  const std::size_t d = coords.size();
  return Trajectory(RationalMotion{std::move(coords), clamp_unit}, d, horizon);
}

Trajectory Trajectory::scripted(std::vector<Segment> segments, double horizon) {
  Motion m = ScriptedMotion{std::move(segments)};
  const std::size_t d = motion_dimension(m);
  return Trajectory(std::move(m), d, horizon);
}

Trajectory Trajectory::stationary(const Point& p, double horizon) {
  std::vector<Coeffs> coords;
  coords.reserve(p.size());
  for (double x : p) coords.push_back({x});
  return polynomial(std::move(coords), horizon);
}

Trajectory Trajectory::linear(const Point& from, const Point& to, double horizon) {
  if (from.size() != to.size()) throw ParameterError("linear trajectory: dimension mismatch");
  if (!(horizon > 0.0)) throw ParameterError("linear trajectory: horizon must be positive");
  std::vector<Coeffs> coords;
  coords.reserve(from.size());
  for (std::size_t i = 0; i < from.size(); ++i)
    coords.push_back({from[i], (to[i] - from[i]) / horizon});
  return polynomial(std::move(coords), horizon);
}

void Trajectory::validate() const {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_))
    throw ParameterError("trajectory horizon must be positive and finite");
  if (dimension_ == 0) throw ParameterError("trajectory must have at least one coordinate");

  if (const auto* rat = std::get_if<RationalMotion>(&motion_)) {
    for (const auto& terms : rat->coords) {
      for (const RationalTerm& term : terms) {
        if (poly_degree(term.denominator) == 0 && term.denominator.at(0) == 0.0)
          throw ParameterError("rational term has zero denominator");
        const double lo = -term.shift;
        const double hi = horizon_ - term.shift;
        if (!poly_real_roots(term.denominator, lo, hi).empty())
          throw ParameterError("rational denominator vanishes inside [0, T]");
      }
    }
  }

  if (const auto* scr = std::get_if<ScriptedMotion>(&motion_)) {
    const auto& segs = scr->segments;
    if (segs.empty()) throw ParameterError("scripted trajectory needs at least one segment");
    const double tol = kTimeSlack * std::max(1.0, horizon_);
    if (std::abs(segment_t0(segs.front())) > tol) throw ParameterError("scripted motion must start at t = 0");
    if (std::abs(segment_t1(segs.back()) - horizon_) > tol)
      throw ParameterError("scripted motion must end at t = T");
    for (std::size_t i = 0; i < segs.size(); ++i) {
      if (segment_t1(segs[i]) < segment_t0(segs[i]))
        throw ParameterError("scripted segment ends before it starts");
      if (const auto* lin = std::get_if<LinearSegment>(&segs[i])) {
        if (lin->start.size() != dimension_ || lin->end.size() != dimension_)
          throw ParameterError("scripted segment dimension mismatch");
      } else if (dimension_ != 2) {
        throw ParameterError("arc segments are planar");
      }
      if (i == 0) continue;
      if (std::abs(segment_t0(segs[i]) - segment_t1(segs[i - 1])) > tol)
        throw ParameterError("scripted segments must tile [0, T] without gaps");
      const double t = segment_t0(segs[i]);
      if (distance(segment_eval(segs[i - 1], segment_t1(segs[i - 1])), segment_eval(segs[i], t)) >
          kContinuityTolerance)
        throw ParameterError("scripted segments must join continuously");
    }
  }
}

TrajectoryKind Trajectory::kind() const {
  return static_cast<TrajectoryKind>(motion_.index());
}

int Trajectory::degree() const {
  const auto* poly = std::get_if<PolynomialMotion>(&motion_);
  if (poly == nullptr) throw UnsupportedError("degree is defined for polynomial trajectories only");
  int s = 0;
  for (const Coeffs& c : poly->coords) s = std::max(s, poly_degree(c));
  return s;
}

Point Trajectory::evaluate(double t) const {
  const double tol = kTimeSlack * std::max(1.0, horizon_);
  if (!(t >= -tol && t <= horizon_ + tol)) {
    std::ostringstream msg;
    msg << "time " << t << " outside [0, " << horizon_ << "]";
    throw DomainError(msg.str());
  }
  t = std::clamp(t, 0.0, horizon_);
  return std::visit(
      Overloaded{[t](const PolynomialMotion& m) {
                   Point p(m.coords.size());
                   for (std::size_t i = 0; i < p.size(); ++i) p[i] = poly_eval(m.coords[i], t);
                   return p;
                 },
                 [t](const RationalMotion& m) {
                   Point p(m.coords.size());
                   for (std::size_t i = 0; i < p.size(); ++i) {
                     p[i] = rational_eval(m.coords[i], t);
                     if (m.clamp_unit) p[i] = std::clamp(p[i], 0.0, 1.0);
                   }
                   return p;
                 },
                 [t](const ScriptedMotion& m) {
                   auto it = std::upper_bound(
                       m.segments.begin(), m.segments.end(), t,
                       [](double value, const Segment& s) { return value < segment_t0(s); });
                   if (it != m.segments.begin()) --it;
                   return segment_eval(*it, t);
                 }},
      motion_);
}

std::size_t KineticScenario::dimension() const {
  return points.empty() ? 0 : points.front().dimension();
}

double KineticScenario::horizon() const { return points.empty() ? 0.0 : points.front().horizon(); }

void KineticScenario::validate() const {
  if (points.size() < 2) throw ParameterError("a scenario needs at least two points");
  const std::size_t d = dimension();
  const double horizon = this->horizon();
  for (const Trajectory& p : points) {
    if (p.dimension() != d) throw ParameterError("all trajectories must share the dimension");
    if (p.horizon() != horizon) throw ParameterError("all trajectories must share the horizon");
  }
  if (k < 0.0 || K < 0.0) throw ParameterError("budgets must be non-negative");
}

PointConfig KineticScenario::at(double t) const {
  PointConfig cfg;
  cfg.positions.reserve(points.size());
  for (const Trajectory& p : points) cfg.positions.push_back(p.evaluate(t));
  return cfg;
}

double input_distance(const KineticScenario& sc, double t, double t_prime) {
  double best = 0.0;
  for (const Trajectory& p : sc.points)
    best = std::max(best, distance(p.evaluate(t), p.evaluate(t_prime)));
  return best;
}

double max_speed(const Trajectory& traj) {
  const auto* poly = std::get_if<PolynomialMotion>(&traj.motion());
  if (poly == nullptr) throw UnsupportedError("max_speed is defined for polynomial trajectories only");
  double best = 0.0;
  for (const Coeffs& c : poly->coords) {
    const PolyRange r = poly_range(poly_derivative(c), 0.0, traj.horizon());
    best = std::max({best, std::abs(r.min), std::abs(r.max)});
  }
  return best;
}

bool is_unit_normalized(const KineticScenario& sc, double tolerance, int samples) {
  const double horizon = sc.horizon();
  for (const Trajectory& traj : sc.points) {
    if (const auto* poly = std::get_if<PolynomialMotion>(&traj.motion())) {
      for (const Coeffs& c : poly->coords) {
        const PolyRange r = poly_range(c, 0.0, horizon);
        if (r.min < -tolerance || r.max > 1.0 + tolerance) return false;
      }
      continue;
    }
    for (int i = 0; i <= samples; ++i) {
      const Point p = traj.evaluate(horizon * (static_cast<double>(i) / samples));
      for (double x : p)
        if (x < -tolerance || x > 1.0 + tolerance) return false;
    }
  }
  return true;
}

std::optional<double> next_displacement_event(const KineticScenario& sc, double t_ref, double k,
                                              int grid) {
  if (!(k > 0.0)) throw ParameterError("displacement budget k must be positive");
  const double horizon = sc.horizon();
  const double tol = kTimeSlack * std::max(1.0, horizon);
  if (!(t_ref >= -tol && t_ref <= horizon + tol)) throw DomainError("t_ref outside [0, T]");
  t_ref = std::clamp(t_ref, 0.0, horizon);
  if (t_ref >= horizon) return std::nullopt;

  const double k_eff = k * (1.0 - kBudgetSlack);
  const double k2 = k_eff * k_eff;
  std::optional<double> best;

  std::vector<std::size_t> sampled;
  for (std::size_t i = 0; i < sc.points.size(); ++i) {
    const Trajectory& traj = sc.points[i];
    const auto* poly = std::get_if<PolynomialMotion>(&traj.motion());
    if (poly == nullptr) {
      sampled.push_back(i);
      continue;
    }
    // |x(t) - x(t_ref)|^2 - k^2 as a polynomial of degree <= 2s. Its expanded
    // form loses precision, so it only supplies the monotone pieces; signs are
    // taken from the coordinates directly.
    Point ref(poly->coords.size());
    Coeffs g{-k * k};
    for (std::size_t d = 0; d < poly->coords.size(); ++d) {
      const Coeffs& c = poly->coords[d];
      ref[d] = poly_eval(c, t_ref);
      Coeffs diff(c);
      diff[0] -= ref[d];
      g = poly_add(g, poly_mul(diff, diff));
    }
    auto excess = [&](double t, double kk) {
      double sq = 0.0;
      for (std::size_t d = 0; d < poly->coords.size(); ++d) {
        const double x = poly_eval(poly->coords[d], t) - ref[d];
        sq += x * x;
      }
      return sq - kk * kk;
    };
    const double hi = best.value_or(horizon);
    std::vector<double> breaks = poly_real_roots(poly_derivative(g), t_ref, hi);
    const int pieces = std::max(grid, 1);
    for (int j = 1; j < pieces; ++j) breaks.push_back(t_ref + (hi - t_ref) * (static_cast<double>(j) / pieces));
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    auto first_nonnegative = [&](double kk, double lo, double end) -> std::optional<double> {
      auto f = [&](double t) { return excess(t, kk); };
      double prev = lo;
      for (double b : breaks) {
        if (b <= prev) continue;
        if (b > end) b = end;
        if (f(b) >= 0.0) return bisect_sign_change(f, prev, b, true);
        prev = b;
        if (b >= end) break;
      }
      return std::nullopt;
    };
    const auto reach = first_nonnegative(k_eff, t_ref, hi);
    if (!reach) continue;
    // The event is where k itself is crossed; if the displacement peaks just
    // short of k, it is the peak.
    double peak = hi;
    for (double c : poly_real_roots(poly_derivative(g), *reach, hi)) {
      if (c > *reach) {
        peak = c;
        break;
      }
    }
    if (excess(*reach, k) >= 0.0) {
      best = *reach;
    } else if (auto cross = first_nonnegative(k, *reach, peak)) {
      best = *cross;
    } else {
      best = peak;
    }
  }

  if (!sampled.empty()) {
    std::vector<Point> ref;
    ref.reserve(sampled.size());
    for (std::size_t i : sampled) ref.push_back(sc.points[i].evaluate(t_ref));
    auto excess = [&](double t) {
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < sampled.size(); ++j) {
        const double dist = distance(sc.points[sampled[j]].evaluate(t), ref[j]);
        worst = std::max(worst, dist * dist - k2);
      }
      return worst;
    };
    const double hi = best.value_or(horizon);
    double prev = t_ref;
    for (int i = 1; i <= grid; ++i) {
      const double t = i == grid ? hi : t_ref + (hi - t_ref) * (static_cast<double>(i) / grid);
      if (t <= prev) continue;
      if (excess(t) >= 0.0) {
        best = bisect_sign_change(excess, prev, t, true);
        break;
      }
      prev = t;
    }
  }
  return best;
}

}  // namespace kemst
