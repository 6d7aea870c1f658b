#pragma once

#include <complex>
#include <random>
#include <vector>

#include "specinv/sl_forward.hpp"

namespace testing_support {

inline std::complex<double> random_complex(std::mt19937_64& rng, double re_bound, double im_bound) {
  std::uniform_real_distribution<double> re(-re_bound, re_bound), im(-im_bound, im_bound);
  const double r = re(rng);
  return {r, im(rng)};
}

// Piecewise-linear potential on nodes k/20 with values uniform in [-amp, amp].
inline specinv::sl::Potential random_grid(std::mt19937_64& rng, double amp = 5.0) {
  std::uniform_real_distribution<double> u(-amp, amp);
  std::vector<double> nodes, values;
  for (int k = 0; k <= 20; ++k) {
    nodes.push_back(k / 20.0);
    values.push_back(u(rng));
  }
  return specinv::sl::Potential::grid(nodes, values);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace testing_support
