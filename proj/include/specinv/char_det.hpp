#pragma once

// Characteristic determinant of the boundary problem with polynomial
// boundary coefficient A(lambda):
//
//   Delta(lambda) = y2(1, lambda) + A(lambda) y1(1, lambda)
//                 = (e^{2 lambda} - e^{lambda}) / lambda
//                   + A(lambda) (-e^{2 lambda} + 2 e^{lambda}),
//
// where y1, y2 are the fundamental solutions of y'' - 3 lambda y' + 2 lambda^2 y = 0.
// Root finding works on the entire, overflow-safe rescaling
//
//   Dhat(lambda) = lambda e^{-2 lambda} Delta(lambda)
//                = (1 - e^{-lambda}) + lambda A(lambda) (2 e^{-lambda} - 1),
//
// which has an extra, artificial zero at the origin.

#include <vector>

#include "specinv/core.hpp"

namespace specinv::det {

struct BoundaryPolynomialProblem {
  Polynomial a;
  int degree() const noexcept { return a.degree(); }
};

struct SearchBox {
  double re_min = -1.0, re_max = 1.0, im_min = -1.0, im_max = 1.0;

  void validate() const;
  bool contains(Complex z, double slack = 0.0) const noexcept;
  // Origin strictly inside.
  bool contains_origin() const noexcept;
  double diameter() const noexcept;
  Complex center() const noexcept;
  // Same center, sides multiplied by `factor`.
  SearchBox widened(double factor) const noexcept;
};

struct DetEigenvalue {
  Complex value;
  int multiplicity = 1;
  double residual = 0.0;  // |Dhat(value)|
};

using DetSpectrum = std::vector<DetEigenvalue>;

// Fundamental solutions: y1(0) = 1, y1'(0) = 0, y2(0) = 0, y2'(0) = 1.
Complex y1_eval(Complex lambda, double x);
Complex y2_eval(Complex lambda, double x);

struct OdeResidual {
  double r1;
  double r2;
};

// |y'' - 3 lambda y' + 2 lambda^2 y| for y1 and y2, using analytic derivatives.
// Requires |lambda| >= 1e-6.
OdeResidual ode_residual(Complex lambda, double x);

// Delta as printed. Throws NumericalError when e^{2 lambda} would overflow;
// use delta_scaled_eval there.
Complex delta_eval(const BoundaryPolynomialProblem& prob, Complex lambda);
Complex delta_scaled_eval(const BoundaryPolynomialProblem& prob, Complex lambda) noexcept;
Complex delta_deriv(const BoundaryPolynomialProblem& prob, Complex lambda) noexcept;

// Zeros of Delta strictly inside the box, counted with multiplicity, from the
// winding number of Dhat along the boundary (the artificial zero at the
// origin is removed). BoundaryZeroError when Dhat is at or below
// tol.residual_tol on the boundary.
int count_zeros(const BoundaryPolynomialProblem& prob, const SearchBox& box, const Tolerances& tol = {});

// All zeros of Delta in the box, sorted by (re, im). Argument-principle
// quadrisection isolates them; Newton on Dhat polishes. RootCountError when
// more than `max_roots` distinct roots exist.
DetSpectrum find_det_eigenvalues(const BoundaryPolynomialProblem& prob, const SearchBox& box,
                                 int max_roots, const Tolerances& tol = {});

Spectrum to_spectrum(const DetSpectrum& roots, double cluster_radius);

}  // namespace specinv::det
