#pragma once

// Forward solver for the Neumann problems
//     -y'' + q(x) y = lambda y,  y'(0) = 0,  y'(1) = 0,  x in [0, 1],
// by shooting with Pruefer-phase bracketing.

#include <span>
#include <utility>
#include <vector>

#include "specinv/core.hpp"

namespace specinv::sl {

enum class PotentialKind { constant, grid, cosine, poly_in_x };

const char* to_string(PotentialKind kind) noexcept;

class Potential {
public:
  static Potential constant(double c);
  // Piecewise-linear through (nodes[j], values[j]); nodes strictly increasing
  // from 0 to 1.
  static Potential grid(std::vector<double> nodes, std::vector<double> values);
  // offset + amplitude * cos(2 pi frequency x)
  static Potential cosine(double amplitude, double frequency, double offset = 0.0);
  // sum_k coeffs[k] x^k
  static Potential poly_in_x(std::vector<double> coeffs);

  PotentialKind kind() const noexcept { return kind_; }

  double operator()(double x) const noexcept;
  double derivative(double x) const noexcept;

  // q + c, same kind.
  Potential shifted(double c) const;

  // Composite Simpson on 2001 equispaced points.
  double mean() const;
  // Integral of |q'| over [0, 1].
  double total_variation() const;
  // Guaranteed lower and upper bounds of q on [0, 1].
  std::pair<double, double> bounds() const;
  // Interior points where q' may jump; integrators restart there.
  std::vector<double> breakpoints() const;

  // Kind-specific parameters, as stored.
  double constant_value() const noexcept { return params_.empty() ? 0.0 : params_[0]; }
  double amplitude() const noexcept { return params_[0]; }
  double frequency() const noexcept { return params_[1]; }
  double offset() const noexcept { return params_[2]; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& values() const noexcept { return params_; }
  const std::vector<double>& coeffs() const noexcept { return params_; }

private:
  Potential(PotentialKind kind, std::vector<double> nodes, std::vector<double> params)
      : kind_(kind), nodes_(std::move(nodes)), params_(std::move(params)) {}

  PotentialKind kind_;
  std::vector<double> nodes_;
  std::vector<double> params_;
};

// First `count` Neumann eigenvalues, strictly increasing, each simple.
class NeumannSpectrum {
public:
  explicit NeumannSpectrum(std::vector<double> values);
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t n) const { return values_.at(n); }
  Spectrum to_spectrum(double cluster_radius) const;

private:
  std::vector<double> values_;
};

// y'(1) of the solution with y(0) = 1, y'(0) = 0, after any renormalisation of
// (y, y') applied along the way. Its zeros in lambda are the eigenvalues.
double shoot_miss(const Potential& q, double lambda, const Tolerances& tol = {});

// Number of Neumann eigenvalues strictly below mu, from the Pruefer phase.
int eigenvalue_count_below(const Potential& q, double mu);

NeumannSpectrum neumann_eigenvalues(const Potential& q, int count, const Tolerances& tol = {});

// |lambda_n - (n pi)^2| <= tol for every entry.
bool free_spectrum_verdict(const NeumannSpectrum& s, double tol);

struct RayleighGap {
  double lambda0;
  double mean_q;
};

// lambda_0 never exceeds the mean of q (constant test function); equality
// holds only for constant q.
RayleighGap rayleigh_mean_gap(const Potential& q, const Tolerances& tol = {});

// |lambda_n - (n pi)^2 - mean(q)| <= max(1, total_variation(q)) for n >= 5.
bool asymptotic_gate(const NeumannSpectrum& s, const Potential& q);

}  // namespace specinv::sl
