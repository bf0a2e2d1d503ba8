#pragma once

#include <cmath>
#include <optional>

namespace billiards {

// Safeguarded Newton on a sign-changing bracket [lo, hi]: Newton steps that
// leave the current bracket are replaced by bisection. Returns nullopt when
// f(lo) and f(hi) have the same sign.
template <typename F, typename DF>
std::optional<double> solve_bracketed(F&& f, DF&& df, double lo, double hi, double xtol = 1e-14,
                                      int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    if (hi - lo < xtol) return 0.5 * (lo + hi);
    const double d = df(x);
    double next = (d != 0.0) ? x - fx / d : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 0.25 * xtol) return next;
    x = next;
  }
  return x;
}

// Plain bisection, for functions without a convenient derivative.
template <typename F>
std::optional<double> bisect(F&& f, double lo, double hi, double xtol = 1e-15, int max_iter = 200) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  for (int it = 0; it < max_iter && hi - lo > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace billiards
