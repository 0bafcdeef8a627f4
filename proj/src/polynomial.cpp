#include "kemst/polynomial.hpp"

#include "kemst/root_finding.hpp"

#include <algorithm>
#include <cmath>

namespace kemst {

double poly_eval(std::span<const double> c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

int poly_degree(std::span<const double> c) {
  int d = static_cast<int>(c.size()) - 1;
  while (d > 0 && c[d] == 0.0) --d;
  return d;
}

Coeffs poly_derivative(std::span<const double> c) {
  if (c.size() <= 1) return {0.0};
  Coeffs out(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = c[i] * static_cast<double>(i);
  return out;
}

Coeffs poly_add(std::span<const double> a, std::span<const double> b) {
  Coeffs out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Coeffs poly_mul(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {0.0};
  Coeffs out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Coeffs poly_scale(std::span<const double> a, double factor) {
  Coeffs out(a.begin(), a.end());
  for (double& c : out) c *= factor;
  return out;
}

Coeffs poly_compose_affine(std::span<const double> p, double a, double b) {
  const Coeffs inner{b, a};
  Coeffs acc{0.0};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = poly_mul(acc, inner);
    acc[0] += *it;
  }
  return acc;
}

Coeffs chebyshev_first_kind(int s) {
  Coeffs prev{1.0};
  if (s == 0) return prev;
  Coeffs cur{0.0, 1.0};
  const Coeffs two_x{0.0, 2.0};
  for (int k = 1; k < s; ++k) {
    Coeffs next = poly_add(poly_mul(two_x, cur), poly_scale(prev, -1.0));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<double> poly_real_roots(std::span<const double> p, double lo, double hi) {
  const int deg = poly_degree(p);
  if (deg <= 0 || !(lo <= hi)) return {};
  if (deg == 1) {
    const double r = -p[0] / p[1];
    if (r >= lo && r <= hi) return {r};
    return {};
  }
  const Coeffs dp = poly_derivative(p.first(deg + 1));
  std::vector<double> breaks{lo};
  for (double c : poly_real_roots(dp, lo, hi))
    if (c > breaks.back()) breaks.push_back(c);
  if (hi > breaks.back()) breaks.push_back(hi);

  auto f = [&](double t) { return poly_eval(p, t); };
  std::vector<double> roots;
  auto push = [&](double r) {
    if (roots.empty() || r > roots.back()) roots.push_back(r);
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    const double fa = f(a);
    const double fb = f(b);
    if (fa == 0.0) {
      push(a);
    } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      push(bisect_sign_change(f, a, b, false));
    }
  }
  if (f(breaks.back()) == 0.0) push(breaks.back());
  return roots;
}

PolyRange poly_range(std::span<const double> p, double lo, double hi) {
  PolyRange r{poly_eval(p, lo), poly_eval(p, lo)};
  auto take = [&](double t) {
    const double v = poly_eval(p, t);
    r.min = std::min(r.min, v);
    r.max = std::max(r.max, v);
  };
  take(hi);
  for (double c : poly_real_roots(poly_derivative(p), lo, hi)) take(c);
  return r;
}

std::optional<double> poly_first_nonnegative(std::span<const double> p, double lo, double hi,
                                             int grid) {
  auto f = [&](double t) { return poly_eval(p, t); };
  if (f(lo) >= 0.0) return lo;
  if (!(hi > lo)) return std::nullopt;

  std::vector<double> breaks = poly_real_roots(poly_derivative(p), lo, hi);
  grid = std::max(grid, 1);
  breaks.reserve(breaks.size() + static_cast<std::size_t>(grid) + 1);
  for (int i = 1; i < grid; ++i) breaks.push_back(lo + (hi - lo) * (static_cast<double>(i) / grid));
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());

  double prev = lo;
  for (double b : breaks) {
    if (b <= prev) continue;
    if (f(b) >= 0.0) return bisect_sign_change(f, prev, b, true);
    prev = b;
  }
  return std::nullopt;
}

}  // namespace kemst
