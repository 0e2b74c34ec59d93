#pragma once

#include <cmath>

namespace hamest::detail {

struct GoldenResult {
  double x;
  double fx;
};

// Maximizes f on [lo, hi] until the bracket is narrower than tol. Returns the
// best point evaluated.
template <typename F>
GoldenResult golden_section_maximize(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  GoldenResult best = fc >= fd ? GoldenResult{c, fc} : GoldenResult{d, fd};

  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
      if (fc > best.fx) best = {c, fc};
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
      if (fd > best.fx) best = {d, fd};
    }
  }
  return best;
}

}  // namespace hamest::detail
