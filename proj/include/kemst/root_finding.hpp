#pragma once

namespace kemst {

// Shrinks [lo, hi] around a sign change of f (f(lo) < 0 <= f(hi) or the
// reverse) until the midpoint is no longer representable between the ends.
// With `nonnegative_end` the end where f >= 0 is returned, which makes the
// result a time at which the crossing has certainly happened.
template <typename F>
double bisect_sign_change(F&& f, double lo, double hi, bool nonnegative_end) {
  double f_lo = f(lo);
  for (int iter = 0; iter < 256; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  if (nonnegative_end) return f_lo >= 0.0 ? lo : hi;
  return 0.5 * (lo + hi);
}

}  // namespace kemst
