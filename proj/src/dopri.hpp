#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta pair with local error control.
// Internal to the library; the state is a small fixed-size array.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace specinv::detail {

template <std::size_t N>
using OdeState = std::array<double, N>;

struct StepControl {
  double tol = 1e-12;       // absolute and relative local error bound
  double h_init = 1e-2;
  double h_min_rel = 1e-13; // fraction of the interval below which we give up
};

// Integrates y' = f(x, y) from x0 to x1 in place. `after_step(y)` runs after
// every accepted step and may rescale the state. Returns false on step
// underflow.
template <std::size_t N, class Rhs, class AfterStep>
bool dopri_integrate(Rhs&& f, OdeState<N>& y, double x0, double x1, const StepControl& ctl,
                     AfterStep&& after_step) {
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

  const double span = x1 - x0;
  if (span <= 0.0) return true;
  const double h_min = ctl.h_min_rel * span;
  double h = std::min(ctl.h_init, span);
  double x = x0;

  OdeState<N> k1, k2, k3, k4, k5, k6, k7, tmp, ynew;
  k1 = f(x, y);
  while (x < x1) {
    if (x + h > x1) h = x1 - x;
    auto stage = [&](auto&& combine) {
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * combine(i);
    };
    stage([&](std::size_t i) { return a21 * k1[i]; });
    k2 = f(x + c2 * h, tmp);
    stage([&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; });
    k3 = f(x + c3 * h, tmp);
    stage([&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; });
    k4 = f(x + c4 * h, tmp);
    stage([&](std::size_t i) { return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]; });
    k5 = f(x + c5 * h, tmp);
    stage([&](std::size_t i) {
      return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
    });
    k6 = f(x + h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = f(x + h, ynew);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                             e7 * k7[i]);
      const double scale = ctl.tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
      err = std::max(err, std::abs(ei) / scale);
    }
    if (!std::isfinite(err)) err = 1e10;

    if (err <= 1.0) {
      x = (x1 - x - h <= 1e-15 * span) ? x1 : x + h;
      y = ynew;
      k1 = k7;  // first-same-as-last
      if (after_step(y)) k1 = f(x, y);
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (x < x1 && h < h_min) return false;
  }
  return true;
}

}  // namespace specinv::detail
