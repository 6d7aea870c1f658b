#include "specinv/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "specinv/errors.hpp"

namespace specinv {

bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Complex checked_finite(Complex z, const char* what) {
  if (!is_finite(z)) throw InputError(std::string(what) + " is not finite");
  return z;
}

Complex expm1(Complex z) noexcept {
  const double x = z.real(), y = z.imag();
  if (std::abs(x) > 0.5 || std::abs(y) > 0.5) return std::exp(z) - 1.0;
  // exp(x)cos(y) - 1 = expm1(x)cos(y) - 2 sin^2(y/2)
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

bool lex_less(Complex a, Complex b) noexcept {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

Polynomial::Polynomial(int degree) {
  if (degree < 0) throw InputError("polynomial degree must be >= 0");
  coeffs_.assign(static_cast<std::size_t>(degree) + 1, Complex{});
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InputError("polynomial needs at least one coefficient");
  for (const auto& c : coeffs_) checked_finite(c, "polynomial coefficient");
}

Polynomial Polynomial::real(std::span<const double> coeffs) {
  return Polynomial(std::vector<Complex>(coeffs.begin(), coeffs.end()));
}

Complex Polynomial::operator()(Complex z) const noexcept {
  Complex acc = coeffs_.back();
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex Polynomial::derivative(Complex z) const noexcept {
  const int s = degree();
  if (s == 0) return {};
  Complex acc = static_cast<double>(s) * coeffs_[s];
  for (int k = s - 1; k >= 1; --k) acc = acc * z + static_cast<double>(k) * coeffs_[k];
  return acc;
}

bool Polynomial::is_real(double tol) const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [tol](Complex c) { return std::abs(c.imag()) <= tol; });
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  if (p.degree() != q.degree()) throw InputError("cannot add polynomials of different declared degree");
  std::vector<Complex> out(p.coeffs_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.coeffs_[k] + q.coeffs_[k];
  return Polynomial(std::move(out));
}

Complex poly_eval(const Polynomial& p, Complex z) noexcept { return p(z); }

double poly_max_abs_diff(const Polynomial& p, const Polynomial& q) {
  if (p.degree() != q.degree()) {
    throw InputError("incomparable polynomials: declared degrees " + std::to_string(p.degree()) +
                     " and " + std::to_string(q.degree()));
  }
  double out = 0.0;
  for (int k = 0; k <= p.degree(); ++k) out = std::max(out, std::abs(p[k] - q[k]));
  return out;
}

void Tolerances::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError(std::string(name) + " must be positive and finite");
  };
  positive(eig_tol, "eig_tol");
  positive(residual_tol, "residual_tol");
  positive(cluster_radius, "cluster_radius");
  positive(match_tol, "match_tol");
  if (cluster_radius < residual_tol) throw InputError("cluster_radius must be >= residual_tol");
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<SpectrumEntry> merge_once(const std::vector<SpectrumEntry>& in, double radius) {
  const std::size_t n = in.size();
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(in[i].value - in[j].value) <= radius) sets.unite(i, j);

  std::vector<Complex> sum(n);
  std::vector<int> mult(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = sets.find(i);
    sum[r] += static_cast<double>(in[i].multiplicity) * in[i].value;
    mult[r] += in[i].multiplicity;
  }
  std::vector<SpectrumEntry> out;
  for (std::size_t i = 0; i < n; ++i)
    if (mult[i] > 0) out.push_back({sum[i] / static_cast<double>(mult[i]), mult[i]});
  return out;
}

}  // namespace

Spectrum Spectrum::from_entries(std::vector<SpectrumEntry> entries, double cluster_radius) {
  if (!(cluster_radius >= 0.0)) throw InputError("cluster_radius must be >= 0");
  for (const auto& e : entries) {
    checked_finite(e.value, "spectrum value");
    if (e.multiplicity < 1) throw InputError("spectrum multiplicity must be positive");
  }
  // Representatives of merged clusters can land within the radius of each
  // other; repeat until the set is stable.
  for (;;) {
    auto merged = merge_once(entries, cluster_radius);
    const bool stable = merged.size() == entries.size();
    entries = std::move(merged);
    if (stable) break;
  }
  std::sort(entries.begin(), entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) { return lex_less(a.value, b.value); });
  Spectrum s;
  s.entries_ = std::move(entries);
  return s;
}

Spectrum Spectrum::from_values(std::span<const Complex> values, double cluster_radius) {
  std::vector<SpectrumEntry> entries;
  entries.reserve(values.size());
  for (auto v : values) entries.push_back({v, 1});
  return from_entries(std::move(entries), cluster_radius);
}

int Spectrum::total_multiplicity() const noexcept {
  int total = 0;
  for (const auto& e : entries_) total += e.multiplicity;
  return total;
}

bool spectra_match(const Spectrum& s1, const Spectrum& s2, double tol) noexcept {
  if (s1.size() != s2.size()) return false;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    const auto& a = s1.entries()[i];
    const auto& b = s2.entries()[i];
    if (a.multiplicity != b.multiplicity || !(std::abs(a.value - b.value) <= tol)) return false;
  }
  return true;
}

}  // namespace specinv
