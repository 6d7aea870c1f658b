#pragma once

// Experiment harness: round trips coefficients -> determinant zeros ->
// coefficients, uniqueness probes on coefficient pairs, and Neumann
// spectrum comparisons.

#include <chrono>
#include <cstdint>
#include <vector>

#include "specinv/char_det.hpp"
#include "specinv/core.hpp"
#include "specinv/reconstruct.hpp"
#include "specinv/sl_forward.hpp"

namespace specinv::bench {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int degree_min = 0;
  int degree_max = 3;
  double coeff_bound = 2.0;
  det::SearchBox search_box{-8.0, 8.0, -30.0, 30.0};
  Tolerances tolerances;
  int trials = 1;
  int max_roots = 256;
  recon::NodePolicy node_policy = recon::NodePolicy::smallest_modulus;

  void validate() const;
};

struct RoundTripReport {
  Polynomial true_coeffs;
  Polynomial recovered;
  double max_coeff_error = 0.0;
  double condition = 1.0;
  std::vector<Complex> nodes_used;
  std::chrono::duration<double, std::milli> wall_time{0};
};

// Fields that must agree bit for bit between repeated runs (everything but
// the wall time).
bool same_outcome(const RoundTripReport& a, const RoundTripReport& b) noexcept;

// Coefficients uniform on [-bound, bound], real, from a seed.
Polynomial random_polynomial(int degree, double bound, std::uint64_t seed);

// Seed for trial `index` of a suite; independent of scheduling.
std::uint64_t trial_seed(std::uint64_t suite_seed, std::uint64_t index) noexcept;

// Zeros of Delta for `a` in cfg.search_box, widening the box 4x (at most
// three times) until s+1 nonzero zeros are available. Returns the box used.
det::DetSpectrum gather_roots(const Polynomial& a, const ExperimentConfig& cfg, det::SearchBox* used = nullptr);

// Coefficients -> zeros -> coefficients. RootCountError if too few zeros
// turn up even after widening.
RoundTripReport roundtrip(const Polynomial& a, const ExperimentConfig& cfg);

// cfg.trials seeded random polynomials, degree uniform in the configured
// range. Trials may run on `threads` workers; the result is in trial order
// and independent of the thread count.
std::vector<RoundTripReport> roundtrip_suite(const ExperimentConfig& cfg, int threads = 1);

struct UniquenessReport {
  Polynomial a;
  Polynomial b;
  Spectrum spectrum_a;
  Spectrum spectrum_b;
  bool spectra_match = false;
  recon::ReconstructionResult from_a;
  recon::ReconstructionResult from_b;
  double error_a = 0.0;  // |recovered_a - a|
  double error_b = 0.0;
  bool passed = false;
};

// Injectivity check on one pair: each spectrum must reconstruct its own
// generator, and matching spectra must reconstruct the same polynomial.
UniquenessReport uniqueness_probe(const Polynomial& a, const Polynomial& b, const ExperimentConfig& cfg);

struct NeumannComparison {
  sl::NeumannSpectrum spectrum_a;
  sl::NeumannSpectrum spectrum_b;
  std::vector<double> gaps;  // lambda_b[n] - lambda_a[n]
  bool match = false;
  bool free_a = false;
  bool free_b = false;
  bool zero_potential = false;  // both spectra free: q = q~ = 0 by rigidity
};

NeumannComparison compare_neumann(const sl::Potential& a, const sl::Potential& b, int count, double tol,
                                  const Tolerances& tolerances = {});

}  // namespace specinv::bench
