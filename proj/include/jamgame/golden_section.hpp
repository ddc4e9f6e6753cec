#pragma once

#include <cmath>
#include <utility>

namespace jamgame {

/// Golden-section maximization of a unimodal function on [lo, hi].
/// Stops once the bracket is narrower than `width` or after `max_iter`
/// iterations. Returns the midpoint of the final bracket.
template <typename T, typename F>
T golden_section_maximize(F&& f, T lo, T hi, T width, int max_iter = 500) {
  const T inv_phi = (std::sqrt(T(5)) - T(1)) / T(2);
  T c = hi - inv_phi * (hi - lo);
  T d = lo + inv_phi * (hi - lo);
  T fc = f(c);
  T fd = f(d);
  for (int it = 0; it < max_iter && (hi - lo) > width; ++it) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return (lo + hi) / T(2);
}

}  // namespace jamgame
