#ifndef MAGDTN_SRC_ODE_HPP
#define MAGDTN_SRC_ODE_HPP

// Adaptive Dormand-Prince 5(4) stepper for a scalar first-order ODE.

#include <cmath>
#include <sstream>

#include "magdtn/error.hpp"

namespace magdtn::detail {

struct OdeResult {
  double y;
  bool escaped;  // |y| crossed the escape bound before reaching the end
};

// Integrates y' = f(x, y) from x0 to x1 (either direction). Stops early with
// escaped = true once y leaves (-escape, +inf) from above.
template <class F>
OdeResult dopri5(F&& f, double x0, double y0, double x1, double rtol, double atol,
                 double escape = INFINITY, int max_steps = 2000000) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double dir = (x1 >= x0) ? 1.0 : -1.0;
  const double span = std::abs(x1 - x0);
  double x = x0, y = y0;
  double h = dir * std::min(span, 1e-3 * span + 1e-12);
  double k1 = f(x, y);
  for (int step = 0; step < max_steps; ++step) {
    if (dir * (x1 - x) <= 0.0) return {y, false};
    if (dir * (x + h - x1) > 0.0) h = x1 - x;
    const double k2 = f(x + c2 * h, y + h * a21 * k1);
    const double k3 = f(x + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const double k4 = f(x + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = f(x + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 = f(x + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = f(x + h, ynew);
    const double err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double sc = atol + rtol * std::max(std::abs(y), std::abs(ynew));
    const double ratio = std::isfinite(err) && std::isfinite(ynew) ? std::abs(err) / sc : INFINITY;
    if (ratio <= 1.0) {
      x += h;
      y = ynew;
      k1 = k7;
      if (y < -escape) return {y, true};
      const double grow = (ratio == 0.0) ? 5.0 : std::min(5.0, 0.9 * std::pow(ratio, -0.2));
      h *= grow;
    } else {
      h *= std::isfinite(ratio) ? std::max(0.1, 0.9 * std::pow(ratio, -0.2)) : 0.1;
      if (std::abs(h) < 1e-15 * (std::abs(x) + 1e-300)) {
        std::ostringstream os;
        os << "dopri5: step size underflow at x=" << x;
        throw Error(ErrorKind::NonConvergence, os.str());
      }
    }
  }
  throw Error(ErrorKind::NonConvergence, "dopri5: step cap reached");
}

}  // namespace magdtn::detail

#endif  // MAGDTN_SRC_ODE_HPP
