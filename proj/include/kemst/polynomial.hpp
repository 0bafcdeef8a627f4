#pragma once

#include <optional>
#include <span>
#include <vector>

namespace kemst {

// Coefficients in ascending powers: c[0] + c[1] t + c[2] t^2 + ...
using Coeffs = std::vector<double>;

double poly_eval(std::span<const double> c, double t);
int poly_degree(std::span<const double> c);
Coeffs poly_derivative(std::span<const double> c);
Coeffs poly_add(std::span<const double> a, std::span<const double> b);
Coeffs poly_mul(std::span<const double> a, std::span<const double> b);
Coeffs poly_scale(std::span<const double> a, double factor);

// p(a t + b) as a polynomial in t.
Coeffs poly_compose_affine(std::span<const double> p, double a, double b);

// Chebyshev polynomial of the first kind T_s(x).
Coeffs chebyshev_first_kind(int s);

// Real roots of p in [lo, hi], ascending. Critical points are isolated
// recursively so every monotone piece is bracketed; each piece is then bisected.
std::vector<double> poly_real_roots(std::span<const double> p, double lo, double hi);

// Extreme values of p over [lo, hi] (endpoints and interior critical points).
struct PolyRange {
  double min;
  double max;
};
PolyRange poly_range(std::span<const double> p, double lo, double hi);

// Earliest t in (lo, hi] with p(t) >= 0, assuming p(lo) < 0. Breakpoints are a
// uniform grid of `grid` cells merged with the critical points of p; the
// crossing is bisected to the resolution of binary64.
std::optional<double> poly_first_nonnegative(std::span<const double> p, double lo, double hi,
                                             int grid = 2048);

}  // namespace kemst
