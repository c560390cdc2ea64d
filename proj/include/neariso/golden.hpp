#pragma once

#include <cmath>

namespace neariso::detail {

struct LineMinimum {
  double x;
  double value;
};

/// Golden-section search for the minimum of a unimodal `f` on [a, b],
/// stopping once the bracket is narrower than `tol`.
template <class F>
LineMinimum golden_section_minimize(F&& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? LineMinimum{c, fc} : LineMinimum{d, fd};
}

}  // namespace neariso::detail
