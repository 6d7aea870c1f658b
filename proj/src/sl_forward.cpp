#include "specinv/sl_forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dopri.hpp"
#include "specinv/errors.hpp"

namespace specinv::sl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRenormThreshold = 1e6;
constexpr int kSimpsonPoints = 2001;

void require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw InputError(what + " is not finite");
}

template <class F>
double simpson(F&& f) {
  constexpr int n = kSimpsonPoints - 1;
  const double h = 1.0 / n;
  double acc = f(0.0) + f(1.0);
  for (int j = 1; j < n; ++j) acc += (j % 2 ? 4.0 : 2.0) * f(j * h);
  return acc * h / 3.0;
}

// Integration interval pieces between potential breakpoints.
std::vector<double> pieces(const Potential& q) {
  std::vector<double> cuts{0.0};
  for (double b : q.breakpoints()) cuts.push_back(b);
  cuts.push_back(1.0);
  return cuts;
}

}  // namespace

const char* to_string(PotentialKind kind) noexcept {
  switch (kind) {
    case PotentialKind::constant: return "constant";
    case PotentialKind::grid: return "grid";
    case PotentialKind::cosine: return "cosine";
    case PotentialKind::poly_in_x: return "poly_in_x";
  }
  return "unknown";
}

Potential Potential::constant(double c) {
  require_finite(c, "constant potential value");
  return Potential(PotentialKind::constant, {}, {c});
}

Potential Potential::grid(std::vector<double> nodes, std::vector<double> values) {
  if (nodes.size() < 2) throw InputError("grid potential needs at least two nodes");
  if (nodes.size() != values.size()) throw InputError("grid potential: nodes and values differ in length");
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    require_finite(nodes[j], "grid node " + std::to_string(j));
    require_finite(values[j], "grid value " + std::to_string(j));
    if (j > 0 && !(nodes[j] > nodes[j - 1]))
      throw InputError("grid nodes not strictly increasing at index " + std::to_string(j));
  }
  if (nodes.front() != 0.0) throw InputError("grid nodes must start at 0 (index 0)");
  if (nodes.back() != 1.0)
    throw InputError("grid nodes must end at 1 (index " + std::to_string(nodes.size() - 1) + ")");
  return Potential(PotentialKind::grid, std::move(nodes), std::move(values));
}

Potential Potential::cosine(double amplitude, double frequency, double offset) {
  require_finite(amplitude, "cosine amplitude");
  require_finite(frequency, "cosine frequency");
  require_finite(offset, "cosine offset");
  return Potential(PotentialKind::cosine, {}, {amplitude, frequency, offset});
}

Potential Potential::poly_in_x(std::vector<double> coeffs) {
  if (coeffs.empty()) throw InputError("poly_in_x potential needs at least one coefficient");
  for (std::size_t k = 0; k < coeffs.size(); ++k) require_finite(coeffs[k], "poly_in_x coefficient " + std::to_string(k));
  return Potential(PotentialKind::poly_in_x, {}, std::move(coeffs));
}

double Potential::operator()(double x) const noexcept {
  switch (kind_) {
    case PotentialKind::constant: return params_[0];
    case PotentialKind::cosine: return params_[2] + params_[0] * std::cos(2.0 * kPi * params_[1] * x);
    case PotentialKind::poly_in_x: {
      double acc = 0.0;
      for (auto it = params_.rbegin(); it != params_.rend(); ++it) acc = acc * x + *it;
      return acc;
    }
    case PotentialKind::grid: {
      x = std::clamp(x, 0.0, 1.0);
      auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
      std::size_t j = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
      if (j + 1 >= nodes_.size()) return params_.back();
      const double t = (x - nodes_[j]) / (nodes_[j + 1] - nodes_[j]);
      return params_[j] + t * (params_[j + 1] - params_[j]);
    }
  }
  return 0.0;
}

double Potential::derivative(double x) const noexcept {
  switch (kind_) {
    case PotentialKind::constant: return 0.0;
    case PotentialKind::cosine: {
      const double w = 2.0 * kPi * params_[1];
      return -params_[0] * w * std::sin(w * x);
    }
    case PotentialKind::poly_in_x: {
      double acc = 0.0;
      for (std::size_t k = params_.size() - 1; k >= 1; --k) acc = acc * x + static_cast<double>(k) * params_[k];
      return acc;
    }
    case PotentialKind::grid: {
      x = std::clamp(x, 0.0, 1.0);
      auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
      std::size_t j = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
      j = std::min(j, nodes_.size() - 2);
      return (params_[j + 1] - params_[j]) / (nodes_[j + 1] - nodes_[j]);
    }
  }
  return 0.0;
}

Potential Potential::shifted(double c) const {
  require_finite(c, "potential shift");
  Potential out = *this;
  switch (kind_) {
    case PotentialKind::constant: out.params_[0] += c; break;
    case PotentialKind::grid:
      for (auto& v : out.params_) v += c;
      break;
    case PotentialKind::cosine: out.params_[2] += c; break;
    case PotentialKind::poly_in_x: out.params_[0] += c; break;
  }
  return out;
}

double Potential::mean() const {
  return simpson([this](double x) { return (*this)(x); });
}

double Potential::total_variation() const {
  switch (kind_) {
    case PotentialKind::constant: return 0.0;
    case PotentialKind::grid: {
      double tv = 0.0;
      for (std::size_t j = 1; j < params_.size(); ++j) tv += std::abs(params_[j] - params_[j - 1]);
      return tv;
    }
    default: return simpson([this](double x) { return std::abs(derivative(x)); });
  }
}

std::pair<double, double> Potential::bounds() const {
  switch (kind_) {
    case PotentialKind::constant: return {params_[0], params_[0]};
    case PotentialKind::grid: {
      auto [lo, hi] = std::minmax_element(params_.begin(), params_.end());
      return {*lo, *hi};
    }
    case PotentialKind::cosine: return {params_[2] - std::abs(params_[0]), params_[2] + std::abs(params_[0])};
    case PotentialKind::poly_in_x: {
      double spread = 0.0;
      for (std::size_t k = 1; k < params_.size(); ++k) spread += std::abs(params_[k]);
      return {params_[0] - spread, params_[0] + spread};
    }
  }
  return {0.0, 0.0};
}

std::vector<double> Potential::breakpoints() const {
  if (kind_ != PotentialKind::grid) return {};
  return {nodes_.begin() + 1, nodes_.end() - 1};
}

NeumannSpectrum::NeumannSpectrum(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t n = 0; n < values_.size(); ++n) {
    require_finite(values_[n], "eigenvalue " + std::to_string(n));
    if (n > 0 && !(values_[n] > values_[n - 1]))
      throw InputError("Neumann spectrum not strictly increasing at index " + std::to_string(n));
  }
}

Spectrum NeumannSpectrum::to_spectrum(double cluster_radius) const {
  std::vector<Complex> v(values_.begin(), values_.end());
  return Spectrum::from_values(v, cluster_radius);
}

double shoot_miss(const Potential& q, double lambda, const Tolerances& tol) {
  if (!std::isfinite(lambda)) throw InputError("shooting parameter lambda is not finite");
  detail::OdeState<2> state{1.0, 0.0};
  detail::StepControl ctl;
  ctl.tol = tol.eig_tol / 100.0;
  ctl.h_init = std::min(0.05, 0.5 / std::sqrt(std::abs(lambda) + 1.0));

  auto rhs = [&](double x, const detail::OdeState<2>& s) {
    return detail::OdeState<2>{s[1], (q(x) - lambda) * s[0]};
  };
  auto renormalise = [](detail::OdeState<2>& s) {
    const double n = std::hypot(s[0], s[1]);
    if (n <= kRenormThreshold) return false;
    s[0] /= n;
    s[1] /= n;
    return true;
  };
  const auto cuts = pieces(q);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!detail::dopri_integrate<2>(rhs, state, cuts[i], cuts[i + 1], ctl, renormalise))
      throw IntegratorError("shooting integrator step underflow at lambda = " + std::to_string(lambda), lambda);
  }
  return state[1];
}

namespace {

// Pruefer phase theta(1) for (y, y') = r (sin theta, cos theta), started at
// theta(0) = pi/2 (y'(0) = 0). theta' = cos^2 theta + (mu - q) sin^2 theta.
double pruefer_phase(const Potential& q, double mu) {
  detail::OdeState<1> theta{kPi / 2};
  detail::StepControl ctl;
  ctl.tol = 1e-10;
  ctl.h_init = std::min(0.05, 0.5 / std::sqrt(std::abs(mu) + 1.0));
  auto rhs = [&](double x, const detail::OdeState<1>& t) {
    const double s = std::sin(t[0]), c = std::cos(t[0]);
    return detail::OdeState<1>{c * c + (mu - q(x)) * s * s};
  };
  auto no_rescale = [](detail::OdeState<1>&) { return false; };
  const auto cuts = pieces(q);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!detail::dopri_integrate<1>(rhs, theta, cuts[i], cuts[i + 1], ctl, no_rescale))
      throw IntegratorError("Pruefer integrator step underflow at mu = " + std::to_string(mu), mu);
  }
  return theta[0];
}

}  // namespace

int eigenvalue_count_below(const Potential& q, double mu) {
  if (!std::isfinite(mu)) throw InputError("counting threshold mu is not finite");
  // The k-th eigenvalue has theta(1) = pi/2 + k pi, and theta(1) increases with mu.
  const double turns = (pruefer_phase(q, mu) - kPi / 2) / kPi;
  return std::max(0, static_cast<int>(std::ceil(turns - 1e-9)));
}

NeumannSpectrum neumann_eigenvalues(const Potential& q, int count, const Tolerances& tol) {
  if (count < 1) throw InputError("eigenvalue count must be >= 1");
  tol.validate();
  const auto [qmin, qmax] = q.bounds();

  std::vector<double> eigs;
  eigs.reserve(static_cast<std::size_t>(count));
  double lo = qmin - 1.0;
  if (eigenvalue_count_below(q, lo) != 0) {
    const double widened = lo - 10.0 * (qmax - qmin + 1.0);
    if (eigenvalue_count_below(q, widened) != 0)
      throw BracketError("no eigenvalue-free lower window found", widened, lo);
    lo = widened;
  }

  for (int k = 0; k < count; ++k) {
    double hi = (k * kPi) * (k * kPi) + qmax + 1.0;
    hi = std::max(hi, lo + 1.0);
    int c_hi = eigenvalue_count_below(q, hi);
    if (c_hi < k + 1) {
      hi = lo + 10.0 * (hi - lo);
      c_hi = eigenvalue_count_below(q, hi);
      if (c_hi < k + 1)
        throw BracketError("eigenvalue " + std::to_string(k) + " not bracketed in [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]",
                           lo, hi);
    }

    // Isolate lambda_k: count(a) == k, count(b) == k + 1.
    double a = lo, b = hi;
    int c_a = std::min(eigenvalue_count_below(q, a), k);
    for (int it = 0; !(c_a == k && c_hi == k + 1); ++it) {
      if (it > 200 || b - a <= tol.eig_tol * std::max(1.0, std::abs(a)))
        throw BracketError("could not isolate eigenvalue " + std::to_string(k), a, b);
      const double m = 0.5 * (a + b);
      const int c = eigenvalue_count_below(q, m);
      if (c <= k) {
        a = m;
        c_a = c;
      } else {
        b = m;
        c_hi = c;
      }
    }

    // Bisection on the miss: left of lambda_k its sign is (-1)^k.
    const double left_sign = (k % 2 == 0) ? 1.0 : -1.0;
    double fa = 0.0, fb = 0.0;
    bool exact = false;
    while (b - a > tol.eig_tol * std::max(1.0, std::abs(0.5 * (a + b)))) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      const double fm = shoot_miss(q, m, tol);
      if (fm == 0.0) {
        a = b = m;
        exact = true;
        break;
      }
      if (fm * left_sign > 0.0) {
        a = m;
        fa = fm;
      } else {
        b = m;
        fb = fm;
      }
    }
    double root = 0.5 * (a + b);
    if (!exact && fa * fb < 0.0) {
      const double secant = a - fa * (b - a) / (fb - fa);
      if (secant >= a && secant <= b) root = secant;
    }
    if (!eigs.empty() && !(root > eigs.back()))
      throw NumericalError("eigenvalue " + std::to_string(k) + " failed to separate from its predecessor");
    eigs.push_back(root);
    lo = root;
  }
  return NeumannSpectrum(std::move(eigs));
}

bool free_spectrum_verdict(const NeumannSpectrum& s, double tol) {
  for (std::size_t n = 0; n < s.size(); ++n) {
    const double free = (static_cast<double>(n) * kPi) * (static_cast<double>(n) * kPi);
    if (!(std::abs(s[n] - free) <= tol)) return false;
  }
  return true;
}

RayleighGap rayleigh_mean_gap(const Potential& q, const Tolerances& tol) {
  return {neumann_eigenvalues(q, 1, tol)[0], q.mean()};
}

bool asymptotic_gate(const NeumannSpectrum& s, const Potential& q) {
  const double mean = q.mean();
  const double bound = std::max(1.0, q.total_variation());
  for (std::size_t n = 5; n < s.size(); ++n) {
    const double free = (static_cast<double>(n) * kPi) * (static_cast<double>(n) * kPi);
    if (std::abs(s[n] - free - mean) > bound) return false;
  }
  return true;
}

}  // namespace specinv::sl
