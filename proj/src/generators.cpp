#include "kemst/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "kemst/errors.hpp"

namespace kemst {

namespace {

std::string tag(const std::string& name, std::initializer_list<std::pair<const char*, int>> parts) {
  std::string out = name;
  for (const auto& [key, value] : parts) out += "_" + std::string(key) + std::to_string(value);
  return out;
}

// Constant-speed walk along a polyline between arclengths s0 and s1 over
// [t0, t1], split into linear segments at polyline vertices.
std::vector<Segment> walk(const std::vector<Point>& poly, double s0, double s1, double t0, double t1) {
  std::vector<double> cum{0.0};
  for (std::size_t i = 1; i < poly.size(); ++i) cum.push_back(cum.back() + distance(poly[i - 1], poly[i]));
  auto at = [&](double s) {
    std::size_t i = 1;
    while (i + 1 < poly.size() && s > cum[i]) ++i;
    const double len = cum[i] - cum[i - 1];
    const double f = len > 0.0 ? std::clamp((s - cum[i - 1]) / len, 0.0, 1.0) : 0.0;
    Point p(poly[i].size());
    for (std::size_t c = 0; c < p.size(); ++c) p[c] = poly[i - 1][c] + f * (poly[i][c] - poly[i - 1][c]);
    return p;
  };
  std::vector<double> cuts{s0};
  const double lo = std::min(s0, s1);
  const double hi = std::max(s0, s1);
  std::vector<double> inner;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i)
    if (cum[i] > lo && cum[i] < hi) inner.push_back(cum[i]);
  if (s1 < s0) std::reverse(inner.begin(), inner.end());
  cuts.insert(cuts.end(), inner.begin(), inner.end());
  cuts.push_back(s1);

  std::vector<Segment> out;
  const double total = std::abs(s1 - s0);
  double t = t0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double next =
        i + 2 == cuts.size() || total == 0.0 ? t1 : t0 + (t1 - t0) * (std::abs(cuts[i + 1] - s0) / total);
    out.push_back(LinearSegment{t, next, at(cuts[i]), at(cuts[i + 1])});
    t = next;
  }
  return out;
}

}  // namespace

KineticScenario gen_chebyshev(int s, int n, double horizon) {
  if (s < 1) throw ParameterError("chebyshev: degree s must be >= 1");
  if (n < 2) throw ParameterError("chebyshev: n must be >= 2");
  if (!(horizon > 0.0)) throw ParameterError("chebyshev: horizon must be positive");
  Coeffs h = poly_compose_affine(chebyshev_first_kind(s), 2.0 / horizon, -1.0);
  h = poly_scale(h, 0.5);
  h[0] += 0.5;

  KineticScenario sc;
  sc.points.push_back(Trajectory::polynomial({h}, horizon));
  for (int j = 1; j < n; ++j)
    sc.points.push_back(Trajectory::stationary({static_cast<double>(j) / n}, horizon));
  sc.label = tag("chebyshev", {{"s", s}, {"n", n}});
  sc.generator = GeneratorInfo{"chebyshev", {{"s", s}, {"n", n}, {"T", horizon}}};
  return sc;
}

KineticScenario gen_appendix_rational(int s, int n) {
  if (s < 4 || s % 4 != 0) throw ParameterError("appendix: s must be a positive multiple of 4");
  if (n < 2 || n % 2 != 0) throw ParameterError("appendix: n must be even and >= 2");
  const int m = n / 2;
  const int q = s / 4;
  const double horizon = 10.0 * q * m + 10.0;

  KineticScenario sc;
  for (int i = 0; i < m; ++i) {
    std::vector<RationalTerm> terms;
    for (int j = 0; j <= q; ++j)
      terms.push_back(RationalTerm{10.0 * j + 10.0 * i * q, {1.0}, {1.0, 0.0, 0.0, 0.0, 1.0}});
    sc.points.push_back(Trajectory::rational({terms}, horizon, true));
  }
  for (int j = 0; j < m; ++j)
    sc.points.push_back(Trajectory::stationary({static_cast<double>(j + 1) / (m + 1)}, horizon));
  sc.label = tag("appendix", {{"s", s}, {"n", n}});
  sc.generator = GeneratorInfo{"appendix", {{"s", s}, {"n", n}}};
  return sc;
}

KineticScenario gen_circle(int n, double e_len) {
  using std::numbers::pi;
  constexpr double radius = 0.5;
  if (n < 4) throw ParameterError("circle: n must be >= 4");
  if (!(e_len > 0.0) || e_len >= 2.0 * radius) throw ParameterError("circle: e_len out of range");
  const double delta = std::asin(e_len / (2.0 * radius));
  if (delta >= pi / n) throw ParameterError("circle: e_len too long for n");

  const std::array<double, 2> center{0.5, 0.5};
  const int a = (n + 1) / 2;
  KineticScenario sc;
  for (int i = 0; i < n; ++i) {
    const bool left = i < a;
    const double start = left ? pi / 2 + delta : pi / 2 - delta;
    double mid = pi / 2 + pi * (2 * i + 1) / n;
    if (!left) mid -= 2 * pi;
    const double end = left ? 3 * pi / 2 - delta : -pi / 2 + delta;
    sc.points.push_back(Trajectory::scripted(
        {ArcSegment{0.0, 1.0, center, radius, start, mid}, ArcSegment{1.0, 2.0, center, radius, mid, end}},
        2.0));
  }
  sc.morph_mode = MorphMode::slide;
  sc.label = tag("circle", {{"n", n}});
  sc.generator = GeneratorInfo{"circle", {{"n", n}, {"e_len", e_len}}};
  sc.markers["t_mid"] = 1.0;
  return sc;
}

DiamondGeometry DiamondGeometry::standard(int per_side) {
  if (per_side < 3) throw ParameterError("diamond: per_side must be >= 3");
  DiamondGeometry g;
  const double h = g.side / std::numbers::sqrt2;
  g.top = {0.0, h};
  g.bottom = {0.0, -h};
  g.left = {-h, 0.0};
  g.right = {h, 0.0};
  g.per_side = per_side;
  g.chain = 2 * per_side - 1;
  return g;
}

double DiamondGeometry::chain_spacing() const {
  // e's endpoints sit on the sides at distance |e| / sqrt(2) from the top corner.
  const double to_corner = side - 0.5 * std::numbers::sqrt2;
  return 2.0 * to_corner / (chain - 1);
}

Point DiamondGeometry::left_slot(int j) const {
  if (j < 0 || j >= chain) throw ParameterError("diamond: slot out of range");
  const double to_corner = side - 0.5 * std::numbers::sqrt2;
  const double s = j * chain_spacing();
  const double offset = 0.5 * std::numbers::sqrt2;  // from top/bottom corner along a side
  const double unit = 1.0 / std::numbers::sqrt2;
  const Point a{-offset * unit, top[1] - offset * unit};
  if (s <= to_corner) {
    const double f = s / to_corner;
    return {a[0] + f * (left[0] - a[0]), a[1] + f * (left[1] - a[1])};
  }
  const Point a_prime{a[0], -a[1]};
  const double f = (s - to_corner) / to_corner;
  return {left[0] + f * (a_prime[0] - left[0]), left[1] + f * (a_prime[1] - left[1])};
}

KineticScenario gen_diamond(int per_side) {
  const DiamondGeometry g = DiamondGeometry::standard(per_side);
  const Point a = g.left_slot(0);
  const Point a_prime = g.left_slot(g.chain - 1);
  const std::vector<Point> left_path{a, g.left, a_prime};
  const std::vector<Point> right_path{{-a[0], a[1]}, g.right, {-a_prime[0], a_prime[1]}};
  const double spacing = g.chain_spacing();
  const double total = spacing * (g.chain - 1);

  KineticScenario sc;
  for (const auto* path : {&left_path, &right_path}) {
    for (int j = 0; j < g.chain; ++j) {
      const double slot = j == g.chain - 1 ? total : j * spacing;
      std::vector<Segment> segs = walk(*path, 0.0, slot, 0.0, 1.0);
      for (Segment& seg : walk(*path, slot, total, 1.0, 2.0)) segs.push_back(std::move(seg));
      sc.points.push_back(Trajectory::scripted(std::move(segs), 2.0));
    }
  }
  sc.morph_mode = MorphMode::rotation;
  sc.label = tag("diamond", {{"p", per_side}});
  sc.generator = GeneratorInfo{"diamond", {{"per_side", per_side}}};
  sc.markers["t_mid"] = 1.0;
  return sc;
}

KineticScenario gen_split(int n, const std::vector<SplitColor>& colors) {
  if (n < 4) throw ParameterError("split: n must be >= 4");
  if (!colors.empty() && static_cast<int>(colors.size()) != n)
    throw ParameterError("split: one color per point required");
  KineticScenario sc;
  for (int i = 0; i < n; ++i) {
    const SplitColor c = colors.empty() ? (i % 2 == 0 ? SplitColor::red : SplitColor::blue) : colors[i];
    const double y = (i + 0.5) / n;
    const double x1 = c == SplitColor::red ? 0.0 : 1.0;
    sc.points.push_back(Trajectory::linear({0.5, y}, {x1, y}, 1.0));
  }
  sc.label = tag("split", {{"n", n}});
  sc.generator = GeneratorInfo{"split", {{"n", n}}};
  return sc;
}

KineticScenario recolor_split(const KineticScenario& split, const std::vector<SplitColor>& colors) {
  if (!split.generator || split.generator->name != "split")
    throw UnsupportedError("recolor_split needs a split scenario");
  KineticScenario out = gen_split(static_cast<int>(split.size()), colors);
  out.k = split.k;
  out.K = split.K;
  out.morph_mode = split.morph_mode;
  out.label = split.label;
  return out;
}

std::vector<SplitColor> split_colors_from_tree(const SpanningTree& tree) {
  std::vector<SplitColor> out;
  for (Color c : two_coloring(tree)) out.push_back(c == Color::red ? SplitColor::red : SplitColor::blue);
  return out;
}

KineticScenario gen_random_polynomial(int n, int s, int d, double horizon, std::uint64_t seed,
                                      bool full_range) {
  if (n < 2 || s < 0 || d < 1 || !(horizon > 0.0)) throw ParameterError("random polynomial: bad parameters");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  KineticScenario sc;
  for (int i = 0; i < n; ++i) {
    std::vector<Coeffs> coords;
    for (int c = 0; c < d; ++c) {
      Coeffs u(s + 1);
      for (double& x : u) x = coef(rng);
      Coeffs p = poly_compose_affine(u, 1.0 / horizon, 0.0);
      const PolyRange r = poly_range(p, 0.0, horizon);
      double lo = 0.0;
      double width = 1.0;
      if (!full_range) {
        width = 0.2 + 0.8 * unit(rng);
        lo = (1.0 - width) * unit(rng);
      }
      const double span = r.max - r.min;
      if (span < 1e-12) {
        coords.push_back({lo + 0.5 * width});
        continue;
      }
      p = poly_scale(p, width / span);
      p[0] += lo - r.min * width / span;
      coords.push_back(std::move(p));
    }
    sc.points.push_back(Trajectory::polynomial(std::move(coords), horizon));
  }
  sc.label = "random_s" + std::to_string(s) + "_n" + std::to_string(n) + "_seed" + std::to_string(seed);
  sc.generator = GeneratorInfo{"random",
                               {{"n", n}, {"s", s}, {"d", d}, {"T", horizon},
                                {"seed", static_cast<double>(seed)}, {"full_range", full_range ? 1.0 : 0.0}}};
  return sc;
}

KineticScenario gen_stationary(int n, int d, double horizon, std::uint64_t seed) {
  if (n < 2 || d < 1) throw ParameterError("stationary: need n >= 2 and d >= 1");
  if (!(horizon > 0.0)) throw ParameterError("stationary: horizon must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  KineticScenario sc;
  for (int i = 0; i < n; ++i) {
    Point p(d);
    for (double& x : p) x = unit(rng);
    sc.points.push_back(Trajectory::stationary(p, horizon));
  }
  sc.label = "stationary_n" + std::to_string(n) + "_seed" + std::to_string(seed);
  sc.generator = GeneratorInfo{"stationary",
                               {{"n", n}, {"d", d}, {"T", horizon}, {"seed", static_cast<double>(seed)}}};
  return sc;
}

}  // namespace kemst
