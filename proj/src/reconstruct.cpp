#include "specinv/reconstruct.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "specinv/char_det.hpp"
#include "specinv/errors.hpp"

namespace specinv::recon {

namespace {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr double kFallbackCondition = 1e12;

Matrix vandermonde_matrix(std::span<const Complex> nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Matrix v(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex p = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      v(i, j) = p;
      p *= nodes[static_cast<std::size_t>(i)];
    }
  }
  return v;
}

void check_distinct(std::span<const Complex> nodes, double min_separation) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    checked_finite(nodes[i], "Vandermonde node");
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (std::abs(nodes[i] - nodes[j]) <= min_separation)
        throw InputError("Vandermonde nodes " + std::to_string(i) + " and " + std::to_string(j) +
                         " coincide (separation " + std::to_string(std::abs(nodes[i] - nodes[j])) + ")");
  }
}

// Newton divided differences, then conversion from Newton to monomial form.
std::vector<Complex> bjorck_pereyra(std::span<const Complex> x, std::span<const Complex> f) {
  const std::size_t n = x.size() - 1;
  std::vector<Complex> a(f.begin(), f.end());
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = n; i > k; --i) a[i] = (a[i] - a[i - 1]) / (x[i] - x[i - k - 1]);
  for (std::size_t k = n; k-- > 0;)
    for (std::size_t i = k; i < n; ++i) a[i] -= a[i + 1] * x[k];
  return a;
}

std::vector<Complex> pivoted_qr(std::span<const Complex> x, std::span<const Complex> f) {
  const Matrix v = vandermonde_matrix(x);
  Vector rhs(static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = f[i];
  const Vector sol = v.colPivHouseholderQr().solve(rhs);
  return {sol.data(), sol.data() + sol.size()};
}

double interpolation_residual(const std::vector<Complex>& c, std::span<const Complex> x,
                              std::span<const Complex> f) {
  const Polynomial p(c);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(p(x[i]) - f[i]));
  return r;
}

}  // namespace

void ReconstructionInput::validate(const Tolerances& tol) const {
  if (degree < 0) throw InputError("reconstruction degree must be >= 0");
  if (nodes.size() != static_cast<std::size_t>(degree) + 1)
    throw InputError("reconstruction of degree " + std::to_string(degree) + " needs " +
                     std::to_string(degree + 1) + " nodes, got " + std::to_string(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    checked_finite(nodes[i], "reconstruction node");
    if (std::abs(nodes[i]) <= tol.cluster_radius)
      throw InputError("reconstruction node " + std::to_string(i) + " is zero");
  }
  check_distinct(nodes, tol.cluster_radius);
}

Complex rhs_value(Complex lambda, const Tolerances& tol) {
  checked_finite(lambda, "eigenvalue");
  if (std::abs(lambda) <= tol.cluster_radius) throw InputError("zero eigenvalue cannot be a reconstruction node");
  if (std::abs(std::exp(lambda) - 2.0) <= 1e-12)
    throw InputError("node sits on the pole e^lambda = 2 and is not a determinant zero");
  if (lambda.real() > 0.0) {
    const Complex em = std::exp(-lambda);
    return expm1(-lambda) / (lambda * (2.0 * em - 1.0));
  }
  return -expm1(lambda) / (lambda * (2.0 - std::exp(lambda)));
}

Complex rhs_value_unreduced(Complex lambda) {
  const Complex e1 = std::exp(lambda), e2 = std::exp(2.0 * lambda);
  return -(e2 - e1) / (-lambda * e2 + 2.0 * lambda * e1);
}

Polynomial vandermonde_solve(std::span<const Complex> nodes, std::span<const Complex> values,
                             double min_separation) {
  if (nodes.empty()) throw InputError("Vandermonde system needs at least one node");
  if (nodes.size() != values.size())
    throw InputError("Vandermonde system: " + std::to_string(nodes.size()) + " nodes but " +
                     std::to_string(values.size()) + " values");
  check_distinct(nodes, min_separation);
  for (auto v : values) checked_finite(v, "Vandermonde right-hand side");

  const double cond = condition_estimate(nodes);
  if (cond > kFallbackCondition) return Polynomial(pivoted_qr(nodes, values));

  auto coeffs = bjorck_pereyra(nodes, values);
  double scale = 0.0;
  for (auto v : values) scale = std::max(scale, std::abs(v));
  if (interpolation_residual(coeffs, nodes, values) > 1e-10 * cond * std::max(scale, 1e-300)) {
    auto qr = pivoted_qr(nodes, values);
    if (interpolation_residual(qr, nodes, values) < interpolation_residual(coeffs, nodes, values))
      coeffs = std::move(qr);
  }
  return Polynomial(std::move(coeffs));
}

double condition_estimate(std::span<const Complex> nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  if (n == 0) return 1.0;
  const Matrix v = vandermonde_matrix(nodes);
  const double norm_v = v.cwiseAbs().colwise().sum().maxCoeff();
  const Eigen::PartialPivLU<Matrix> lu(v);

  // Hager's iteration for ||V^{-1}||_1, complex form.
  Vector x = Vector::Constant(n, Complex(1.0 / static_cast<double>(n)));
  double est = 0.0;
  Eigen::Index last_j = -1;
  for (int iter = 0; iter < 5; ++iter) {
    const Vector y = lu.solve(x);
    est = std::max(est, y.cwiseAbs().sum());
    Vector xi(n);
    for (Eigen::Index i = 0; i < n; ++i) xi(i) = std::abs(y(i)) > 0.0 ? y(i) / std::abs(y(i)) : Complex(1.0);
    const Vector z = lu.adjoint().solve(xi);
    Eigen::Index j = 0;
    z.cwiseAbs().maxCoeff(&j);
    if (iter > 0 && (j == last_j || std::abs(z(j)) <= (z.adjoint() * x)(0).real())) break;
    x = Vector::Zero(n);
    x(j) = 1.0;
    last_j = j;
  }
  // Higham's extra probe guards against the iteration stalling early.
  if (n > 1) {
    Vector b(n);
    for (Eigen::Index i = 0; i < n; ++i)
      b(i) = (i % 2 ? -1.0 : 1.0) * (1.0 + static_cast<double>(i) / static_cast<double>(n - 1));
    est = std::max(est, 2.0 * lu.solve(b).cwiseAbs().sum() / (3.0 * static_cast<double>(n)));
  }
  const double cond = norm_v * est;
  return std::isfinite(cond) ? cond : std::numeric_limits<double>::infinity();
}

ReconstructionResult reconstruct_coeffs(const ReconstructionInput& input, const Tolerances& tol) {
  tol.validate();
  input.validate(tol);
  std::vector<Complex> values;
  values.reserve(input.nodes.size());
  for (auto node : input.nodes) values.push_back(rhs_value(node, tol));

  ReconstructionResult out{vandermonde_solve(input.nodes, values, tol.cluster_radius), {}, 1.0};
  const det::BoundaryPolynomialProblem recovered{out.coefficients};
  for (auto node : input.nodes) out.node_residuals.push_back(std::abs(det::delta_scaled_eval(recovered, node)));
  out.vandermonde_condition = condition_estimate(input.nodes);
  return out;
}

std::vector<Complex> select_nodes(const Spectrum& spectrum, int needed, const Tolerances& tol, NodePolicy policy) {
  if (needed < 1) throw InputError("need at least one reconstruction node");
  std::vector<Complex> pool;
  for (const auto& e : spectrum.entries())
    if (std::abs(e.value) > tol.cluster_radius) pool.push_back(e.value);
  if (pool.size() < static_cast<std::size_t>(needed))
    throw InputError("spectrum has " + std::to_string(pool.size()) + " nonzero eigenvalues, " +
                     std::to_string(needed) + " needed");
  if (policy == NodePolicy::smallest_modulus) {
    std::stable_sort(pool.begin(), pool.end(), [](Complex a, Complex b) {
      const double ma = std::abs(a), mb = std::abs(b);
      if (ma != mb) return ma < mb;
      return lex_less(a, b);
    });
  }
  pool.resize(static_cast<std::size_t>(needed));
  return pool;
}

}  // namespace specinv::recon
