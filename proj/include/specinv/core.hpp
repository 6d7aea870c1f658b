#pragma once

// Shared numeric domain types: complex scalars, boundary polynomials,
// tolerances and multiplicity-aware spectra.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace specinv {

using Complex = std::complex<double>;

bool is_finite(Complex z) noexcept;

// Throws InputError naming `what` when z has a NaN or Inf component.
Complex checked_finite(Complex z, const char* what);

// exp(z) - 1 without cancellation for small |z|.
Complex expm1(Complex z) noexcept;

// Lexicographic (re, im) order used for every complex sort in the library.
bool lex_less(Complex a, Complex b) noexcept;

// A(z) = a_0 + a_1 z + ... + a_s z^s. The degree s is declared by the caller
// and never inferred, so a zero leading coefficient is legitimate.
class Polynomial {
public:
  // Constant zero polynomial of the given declared degree.
  explicit Polynomial(int degree = 0);
  explicit Polynomial(std::vector<Complex> coeffs);
  static Polynomial real(std::span<const double> coeffs);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  Complex operator[](std::size_t k) const { return coeffs_.at(k); }

  // Horner recurrence.
  Complex operator()(Complex z) const noexcept;
  // A'(z), Horner on the shifted coefficients k a_k.
  Complex derivative(Complex z) const noexcept;

  bool is_real(double tol = 0.0) const noexcept;

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
  std::vector<Complex> coeffs_;
};

Complex poly_eval(const Polynomial& p, Complex z) noexcept;

// max_k |p_k - q_k|; InputError when the declared degrees differ.
double poly_max_abs_diff(const Polynomial& p, const Polynomial& q);

struct Tolerances {
  double eig_tol = 1e-10;         // eigenvalue bracket width, relative to max(1, |lambda|)
  double residual_tol = 1e-12;    // floor for |Delta| on contours and at roots
  double cluster_radius = 1e-8;   // roots closer than this are one root
  double match_tol = 1e-8;        // spectrum comparison

  // InputError unless all positive and cluster_radius >= residual_tol.
  void validate() const;
};

struct SpectrumEntry {
  Complex value;
  int multiplicity = 1;
  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

// Sorted multiset of eigenvalues with algebraic multiplicities. Distinct
// entries are separated by more than the clustering radius used to build it.
class Spectrum {
public:
  Spectrum() = default;

  // Clusters points within `cluster_radius` (transitively), summing
  // multiplicities; the representative is the multiplicity-weighted mean.
  static Spectrum from_entries(std::vector<SpectrumEntry> entries, double cluster_radius);
  static Spectrum from_values(std::span<const Complex> values, double cluster_radius);

  const std::vector<SpectrumEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  int total_multiplicity() const noexcept;

private:
  std::vector<SpectrumEntry> entries_;
};

// Same entry count, and pairwise in order: values within tol, equal multiplicity.
bool spectra_match(const Spectrum& s1, const Spectrum& s2, double tol) noexcept;

}  // namespace specinv
