#include "specinv/workbench.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include "specinv/errors.hpp"

namespace specinv::bench {

namespace {

constexpr int kMaxWidenings = 3;
constexpr double kWidenFactor = 4.0;
constexpr int kBoxPerturbations = 5;

// Uniform on [0, 1) from the top 53 bits; identical on every platform,
// unlike std::uniform_real_distribution.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

det::DetSpectrum find_with_perturbation(const Polynomial& a, det::SearchBox box, const ExperimentConfig& cfg,
                                        det::SearchBox* used) {
  const det::BoundaryPolynomialProblem prob{a};
  for (int attempt = 0;; ++attempt) {
    try {
      auto roots = det::find_det_eigenvalues(prob, box, cfg.max_roots, cfg.tolerances);
      if (used) *used = box;
      return roots;
    } catch (const BoundaryZeroError&) {
      if (attempt == kBoxPerturbations) throw;
      const double grow = 1.0 + 0.5 * cfg.tolerances.cluster_radius / std::max(box.diameter(), 1.0);
      box = box.widened(grow * (1.0 + 1e-9 * (attempt + 1)));
    }
  }
}

std::size_t nonzero_count(const det::DetSpectrum& roots, double radius) {
  return static_cast<std::size_t>(std::count_if(roots.begin(), roots.end(),
                                                [radius](const auto& r) { return std::abs(r.value) > radius; }));
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw InputError("trials must be >= 1");
  if (!(coeff_bound > 0.0)) throw InputError("coeff_bound must be positive");
  if (degree_min < 0 || degree_max < degree_min) throw InputError("degree range must satisfy 0 <= min <= max");
  if (max_roots < 1) throw InputError("max_roots must be >= 1");
  search_box.validate();
  tolerances.validate();
}

bool same_outcome(const RoundTripReport& a, const RoundTripReport& b) noexcept {
  return a.true_coeffs == b.true_coeffs && a.recovered == b.recovered && a.max_coeff_error == b.max_coeff_error &&
         a.condition == b.condition && a.nodes_used == b.nodes_used;
}

std::uint64_t trial_seed(std::uint64_t suite_seed, std::uint64_t index) noexcept {
  // splitmix64 finaliser over (seed, index)
  std::uint64_t z = suite_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Polynomial random_polynomial(int degree, double bound, std::uint64_t seed) {
  if (degree < 0) throw InputError("degree must be >= 0");
  std::mt19937_64 rng(seed);
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  for (auto& ck : c) ck = bound * (2.0 * unit(rng) - 1.0);
  return Polynomial(std::move(c));
}

det::DetSpectrum gather_roots(const Polynomial& a, const ExperimentConfig& cfg, det::SearchBox* used) {
  const auto needed = static_cast<std::size_t>(a.degree()) + 1;
  det::SearchBox box = cfg.search_box;
  det::DetSpectrum roots;
  for (int widening = 0;; ++widening) {
    roots = find_with_perturbation(a, box, cfg, used);
    if (nonzero_count(roots, cfg.tolerances.cluster_radius) >= needed) return roots;
    if (widening == kMaxWidenings) break;
    box = box.widened(kWidenFactor);
  }
  std::vector<Complex> found;
  for (const auto& r : roots) found.push_back(r.value);
  throw RootCountError("only " + std::to_string(found.size()) + " determinant zeros found, " +
                           std::to_string(needed) + " needed",
                       std::move(found));
}

RoundTripReport roundtrip(const Polynomial& a, const ExperimentConfig& cfg) {
  cfg.tolerances.validate();
  if (a.degree() < cfg.degree_min || a.degree() > cfg.degree_max)
    throw InputError("polynomial degree " + std::to_string(a.degree()) + " outside the configured range");
  const auto start = std::chrono::steady_clock::now();

  const auto roots = gather_roots(a, cfg);
  const auto spectrum = det::to_spectrum(roots, cfg.tolerances.cluster_radius);
  recon::ReconstructionInput input{recon::select_nodes(spectrum, a.degree() + 1, cfg.tolerances, cfg.node_policy),
                                   a.degree()};
  auto result = recon::reconstruct_coeffs(input, cfg.tolerances);

  RoundTripReport report{a, result.coefficients, poly_max_abs_diff(a, result.coefficients),
                         result.vandermonde_condition, std::move(input.nodes), {}};
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

std::vector<RoundTripReport> roundtrip_suite(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.trials);
  std::vector<RoundTripReport> reports(n);
  std::vector<std::exception_ptr> failures(n);

  auto run_trial = [&](std::size_t i) {
    try {
      std::mt19937_64 rng(trial_seed(cfg.seed, i));
      const int span = cfg.degree_max - cfg.degree_min + 1;
      const int degree = cfg.degree_min + static_cast<int>(unit(rng) * span);
      reports[i] = roundtrip(random_polynomial(degree, cfg.coeff_bound, rng()), cfg);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  const auto workers = static_cast<std::size_t>(std::clamp(threads, 1, cfg.trials));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) run_trial(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run_trial(i);
      });
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return reports;
}

UniquenessReport uniqueness_probe(const Polynomial& a, const Polynomial& b, const ExperimentConfig& cfg) {
  cfg.tolerances.validate();
  if (a.degree() != b.degree()) throw InputError("uniqueness probe needs polynomials of equal declared degree");
  const auto& tol = cfg.tolerances;

  UniquenessReport r;
  r.a = a;
  r.b = b;
  auto reconstruct_from = [&](const Polynomial& p, Spectrum& spectrum) {
    spectrum = det::to_spectrum(gather_roots(p, cfg), tol.cluster_radius);
    recon::ReconstructionInput input{recon::select_nodes(spectrum, p.degree() + 1, tol, cfg.node_policy),
                                     p.degree()};
    return recon::reconstruct_coeffs(input, tol);
  };
  r.from_a = reconstruct_from(a, r.spectrum_a);
  r.from_b = reconstruct_from(b, r.spectrum_b);
  r.spectra_match = spectra_match(r.spectrum_a, r.spectrum_b, tol.match_tol);
  r.error_a = poly_max_abs_diff(a, r.from_a.coefficients);
  r.error_b = poly_max_abs_diff(b, r.from_b.coefficients);

  const double bound_a = 1e-6 * std::max(1.0, r.from_a.vandermonde_condition);
  const double bound_b = 1e-6 * std::max(1.0, r.from_b.vandermonde_condition);
  const bool own_a = r.error_a <= bound_a;
  const bool own_b = r.error_b <= bound_b;
  const bool consistent =
      !r.spectra_match || poly_max_abs_diff(r.from_a.coefficients, r.from_b.coefficients) <= std::max(bound_a, bound_b);
  r.passed = own_a && own_b && consistent;
  return r;
}

NeumannComparison compare_neumann(const sl::Potential& a, const sl::Potential& b, int count, double tol,
                                  const Tolerances& tolerances) {
  if (!(tol > 0.0)) throw InputError("comparison tolerance must be positive");
  auto sa = sl::neumann_eigenvalues(a, count, tolerances);
  auto sb = sl::neumann_eigenvalues(b, count, tolerances);
  NeumannComparison c{sa, sb, {}, false, false, false, false};
  for (std::size_t n = 0; n < sa.size(); ++n) c.gaps.push_back(sb[n] - sa[n]);
  c.match = spectra_match(sa.to_spectrum(tolerances.cluster_radius), sb.to_spectrum(tolerances.cluster_radius), tol);
  c.free_a = sl::free_spectrum_verdict(sa, tol);
  c.free_b = sl::free_spectrum_verdict(sb, tol);
  c.zero_potential = c.free_a && c.free_b;
  return c;
}

}  // namespace specinv::bench
