#pragma once

// Recovery of the boundary polynomial a_0..a_s from s+1 distinct nonzero
// zeros of the characteristic determinant. At each zero lambda_i,
//
//   A(lambda_i) = -(e^{lambda_i} - 1) / (lambda_i (2 - e^{lambda_i})),
//
// so the coefficients solve a Vandermonde system in the nodes lambda_i.

#include <span>
#include <vector>

#include "specinv/core.hpp"

namespace specinv::recon {

struct ReconstructionInput {
  std::vector<Complex> nodes;
  int degree = 0;

  // Exactly degree+1 nodes, pairwise further apart than the cluster radius,
  // none within it of the origin.
  void validate(const Tolerances& tol) const;
};

struct ReconstructionResult {
  Polynomial coefficients;
  std::vector<double> node_residuals;  // |Dhat(node)| with the recovered polynomial
  double vandermonde_condition = 1.0;
};

// Value that A must take at a determinant zero, in the overflow-free reduced
// form. InputError at lambda = 0 or at the pole e^lambda = 2.
Complex rhs_value(Complex lambda, const Tolerances& tol = {});

// Same quantity in the unreduced form -(e^{2l} - e^l) / (-l e^{2l} + 2 l e^l).
// Overflows for large Re(lambda); kept as a cross-check.
Complex rhs_value_unreduced(Complex lambda);

// Coefficients c with sum_k c_k nodes[i]^k = values[i]. Bjoerck-Pereyra;
// column-pivoted QR on the explicit matrix when the condition estimate
// exceeds 1e12. InputError naming the pair when two nodes clash.
Polynomial vandermonde_solve(std::span<const Complex> nodes, std::span<const Complex> values,
                             double min_separation = 0.0);

// 1-norm condition of the Vandermonde matrix (rows 1, x_i, x_i^2, ...), via
// Hager-Higham estimation of ||V^{-1}||_1.
double condition_estimate(std::span<const Complex> nodes);

ReconstructionResult reconstruct_coeffs(const ReconstructionInput& input, const Tolerances& tol = {});

enum class NodePolicy {
  smallest_modulus,  // s+1 smallest |lambda|, ties broken by (re, im)
  as_given,          // first s+1 in the order supplied
};

// Picks `needed` distinct nonzero nodes from a spectrum. Entries within the
// cluster radius of the origin are skipped.
std::vector<Complex> select_nodes(const Spectrum& spectrum, int needed, const Tolerances& tol = {},
                                  NodePolicy policy = NodePolicy::smallest_modulus);

}  // namespace specinv::recon
