// golden.hpp - golden-section maximization of a 1-d function
#pragma once

#include <utility>

namespace plank::detail {

// Maximizes f on [lo, hi] down to the given bracket width. Returns the best
// evaluated (x, f(x)); with a non-unimodal f this is still a lower bound that
// never falls below any point it probed.
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double width_tol) {
  constexpr double invphi = 0.6180339887498949;  // (sqrt(5)-1)/2
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  double best_x = c, best_f = fc;
  if (fd > best_f) {
    best_x = d;
    best_f = fd;
  }
  while (hi - lo > width_tol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = f(c);
      if (fc > best_f) {
        best_f = fc;
        best_x = c;
      }
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = f(d);
      if (fd > best_f) {
        best_f = fd;
        best_x = d;
      }
    }
  }
  return {best_x, best_f};
}

}  // namespace plank::detail
