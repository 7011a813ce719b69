#pragma once

#include <cmath>
#include <optional>

namespace grk::detail {

// Bisection on [lo, hi] where fn(lo) and fn(hi) differ in sign (or one is
// zero). Stops once the interval is below `tolerance` or stops shrinking in
// floating point.
template <class Fn>
double bisect(Fn&& fn, double lo, double hi, double tolerance) {
  double f_lo = fn(lo);
  if (f_lo == 0.0) return lo;
  if (fn(hi) == 0.0) return hi;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = fn(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// First sub-interval of an even `cells`-way split of [lo, hi] on which fn
// changes sign.
template <class Fn>
std::optional<std::pair<double, double>> scan_bracket(Fn&& fn, double lo, double hi, int cells) {
  double x_prev = lo;
  double f_prev = fn(lo);
  for (int i = 1; i <= cells; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / cells;
    const double f = fn(x);
    if (f_prev == 0.0) return std::pair{x_prev, x_prev};
    if (f == 0.0 || std::signbit(f) != std::signbit(f_prev)) return std::pair{x_prev, x};
    x_prev = x;
    f_prev = f;
  }
  return std::nullopt;
}

}  // namespace grk::detail
