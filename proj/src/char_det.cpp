#include "specinv/char_det.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "specinv/errors.hpp"

namespace specinv::det {

namespace {

constexpr double kSeriesSwitch = 1e-6;
constexpr double kPi = std::numbers::pi;
constexpr int kMaxSplitRetries = 5;

std::string fmt(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

// (e^{2 z x} - e^{z x}) / z, continued to z = 0.
Complex y2_closed(Complex z, double x) {
  if (std::abs(z) < kSeriesSwitch) {
    const Complex zx = z * x;
    return x * (1.0 + 1.5 * zx + (7.0 / 6.0) * zx * zx);
  }
  const Complex zx = z * x;
  return std::exp(zx) * expm1(zx) / z;
}

}  // namespace

void SearchBox::validate() const {
  for (double v : {re_min, re_max, im_min, im_max})
    if (!std::isfinite(v)) throw InputError("search box bound is not finite");
  if (!(re_min < re_max)) throw InputError("search box needs re_min < re_max");
  if (!(im_min < im_max)) throw InputError("search box needs im_min < im_max");
}

bool SearchBox::contains(Complex z, double slack) const noexcept {
  return z.real() >= re_min - slack && z.real() <= re_max + slack && z.imag() >= im_min - slack &&
         z.imag() <= im_max + slack;
}

bool SearchBox::contains_origin() const noexcept {
  return re_min < 0.0 && re_max > 0.0 && im_min < 0.0 && im_max > 0.0;
}

double SearchBox::diameter() const noexcept { return std::hypot(re_max - re_min, im_max - im_min); }

Complex SearchBox::center() const noexcept { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }

SearchBox SearchBox::widened(double factor) const noexcept {
  const Complex c = center();
  const double hw = 0.5 * (re_max - re_min) * factor, hh = 0.5 * (im_max - im_min) * factor;
  return {c.real() - hw, c.real() + hw, c.imag() - hh, c.imag() + hh};
}

Complex y1_eval(Complex lambda, double x) {
  const Complex e = std::exp(lambda * x);
  return -e * e + 2.0 * e;
}

Complex y2_eval(Complex lambda, double x) { return y2_closed(lambda, x); }

OdeResidual ode_residual(Complex lambda, double x) {
  if (std::abs(lambda) < kSeriesSwitch) throw InputError("ode_residual needs |lambda| >= 1e-6");
  const Complex e1 = std::exp(lambda * x);
  const Complex e2 = std::exp(2.0 * lambda * x);
  const Complex l2 = lambda * lambda;

  const Complex y1 = -e2 + 2.0 * e1;
  const Complex d1 = -2.0 * lambda * e2 + 2.0 * lambda * e1;
  const Complex dd1 = -4.0 * l2 * e2 + 2.0 * l2 * e1;

  const Complex y2 = (e2 - e1) / lambda;
  const Complex d2 = 2.0 * e2 - e1;
  const Complex dd2 = 4.0 * lambda * e2 - lambda * e1;

  auto residual = [&](Complex y, Complex d, Complex dd) { return std::abs(dd - 3.0 * lambda * d + 2.0 * l2 * y); };
  return {residual(y1, d1, dd1), residual(y2, d2, dd2)};
}

Complex delta_eval(const BoundaryPolynomialProblem& prob, Complex lambda) {
  if (2.0 * lambda.real() > 700.0)
    throw NumericalError("delta_eval overflows at lambda = " + fmt(lambda) + "; use delta_scaled_eval");
  return y2_closed(lambda, 1.0) + prob.a(lambda) * y1_eval(lambda, 1.0);
}

Complex delta_scaled_eval(const BoundaryPolynomialProblem& prob, Complex lambda) noexcept {
  const Complex em = std::exp(-lambda);
  return -expm1(-lambda) + lambda * prob.a(lambda) * (2.0 * em - 1.0);
}

Complex delta_deriv(const BoundaryPolynomialProblem& prob, Complex lambda) noexcept {
  const Complex em = std::exp(-lambda);
  const Complex a = prob.a(lambda);
  const Complex da = prob.a.derivative(lambda);
  return em + (a + lambda * da) * (2.0 * em - 1.0) - 2.0 * lambda * a * em;
}

namespace {

// Winding of Dhat along a closed rectangle, by argument continuation over
// adaptively refined boundary segments.
class Winding {
public:
  Winding(const BoundaryPolynomialProblem& prob, double floor) : prob_(prob), floor_(floor) {}

  int around(const SearchBox& box) const {
    const std::array<Complex, 5> corners{Complex{box.re_min, box.im_min}, Complex{box.re_max, box.im_min},
                                         Complex{box.re_max, box.im_max}, Complex{box.re_min, box.im_max},
                                         Complex{box.re_min, box.im_min}};
    const double scale = std::max(box.diameter(), 1e-300);
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
      const Complex a = corners[e], b = corners[e + 1];
      const int pieces = std::max(8, static_cast<int>(std::ceil(std::abs(b - a) / 0.25)));
      Complex z0 = a, f0 = sample(a);
      for (int i = 1; i <= pieces; ++i) {
        const Complex z1 = (i == pieces) ? b : a + (b - a) * (static_cast<double>(i) / pieces);
        const Complex f1 = sample(z1);
        total += phase(z0, z1, f0, f1, scale, 0);
        z0 = z1;
        f0 = f1;
      }
    }
    const double turns = total / (2.0 * kPi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.05)
      throw NumericalError("argument continuation did not close: winding " + std::to_string(turns));
    return static_cast<int>(rounded);
  }

private:
  Complex sample(Complex z) const {
    const Complex f = delta_scaled_eval(prob_, z);
    if (!is_finite(f)) throw NumericalError("Dhat not finite at " + fmt(z));
    if (std::abs(f) <= floor_)
      throw BoundaryZeroError("zero of the determinant on the contour near " + fmt(z) +
                                  "; perturb the box by cluster_radius",
                              z);
    return f;
  }

  double phase(Complex z0, Complex z1, Complex f0, Complex f1, double scale, int depth) const {
    const Complex zm = 0.5 * (z0 + z1);
    const Complex fm = sample(zm);
    const double d1 = std::arg(fm / f0), d2 = std::arg(f1 / fm);
    const double whole = std::arg(f1 / f0);
    if (std::abs(d1) < kPi / 4 && std::abs(d2) < kPi / 4 && std::abs(d1 + d2 - whole) < 1e-9) return d1 + d2;
    if (depth > 60 || std::abs(z1 - z0) < 1e-15 * scale)
      throw BoundaryZeroError("argument continuation stalled near " + fmt(zm) +
                                  "; perturb the box by cluster_radius",
                              zm);
    return phase(z0, zm, f0, fm, scale, depth + 1) + phase(zm, z1, fm, f1, scale, depth + 1);
  }

  const BoundaryPolynomialProblem& prob_;
  double floor_;
};

// Zeros of Dhat within this radius of the origin are attributed to the
// artificial zero and excluded.
double origin_radius(const Tolerances& tol) { return std::max(100.0 * tol.cluster_radius, 1e-6); }

class RootFinder {
public:
  RootFinder(const BoundaryPolynomialProblem& prob, const Tolerances& tol, int max_roots)
      : prob_(prob), tol_(tol), winding_(prob, tol.residual_tol), max_roots_(max_roots) {}

  int count(const SearchBox& box) {
    int w = winding_.around(box);
    if (box.contains_origin()) w -= origin_order();
    return w;
  }

  void search(const SearchBox& box, int n) {
    if (n <= 0) return;
    if (n == 1) {
      if (auto root = newton(box.center(), 1, box); root && box.contains(*root, slack(*root))) {
        record(*root, 1);
        return;
      }
    }
    if (box.diameter() <= tol_.cluster_radius) {
      record(newton(box.center(), n, box).value_or(box.center()), n);
      return;
    }
    static constexpr std::array<double, kMaxSplitRetries + 1> kSplits{0.5 - 0.0131, 0.5 + 0.0217, 0.5 - 0.0373,
                                                                      0.5 + 0.0529, 0.5 - 0.0611, 0.5 + 0.0797};
    for (int attempt = 0; attempt <= kMaxSplitRetries; ++attempt) {
      const double fr = kSplits[attempt], fi = kSplits[(attempt + 3) % kSplits.size()];
      const double rs = box.re_min + fr * (box.re_max - box.re_min);
      const double is = box.im_min + fi * (box.im_max - box.im_min);
      const std::array<SearchBox, 4> kids{SearchBox{box.re_min, rs, box.im_min, is},
                                          SearchBox{rs, box.re_max, box.im_min, is},
                                          SearchBox{box.re_min, rs, is, box.im_max},
                                          SearchBox{rs, box.re_max, is, box.im_max}};
      std::array<int, 4> counts{};
      try {
        for (int i = 0; i < 4; ++i) counts[i] = count(kids[i]);
      } catch (const BoundaryZeroError&) {
        continue;
      }
      if (counts[0] + counts[1] + counts[2] + counts[3] != n) continue;
      for (int i = 0; i < 4; ++i) search(kids[i], counts[i]);
      return;
    }
    // Every split ran into a zero: the n zeros here are numerically one cluster.
    if (n >= 2) {
      record(newton(box.center(), n, box).value_or(box.center()), n);
      return;
    }
    throw NumericalError("persistent boundary-zero collisions while subdividing the box around " +
                         fmt(box.center()));
  }

  DetSpectrum finish() {
    std::sort(roots_.begin(), roots_.end(),
              [](const DetEigenvalue& a, const DetEigenvalue& b) { return lex_less(a.value, b.value); });
    return std::move(roots_);
  }

private:
  int origin_order() {
    if (!origin_order_) {
      const double r = origin_radius(tol_);
      origin_order_ = winding_.around(SearchBox{-r, r, -r, r});
    }
    return *origin_order_;
  }

  static double slack(Complex z) { return 1e-12 * (1.0 + std::abs(z)); }

  // Newton (multiplicity-scaled for clusters) on Dhat from `z`. Gives up when
  // the iterate wanders far from the box or stalls.
  std::optional<Complex> newton(Complex z, int multiplicity, const SearchBox& box) const {
    const double reach = 2.0 * box.diameter() + 1e-6;
    const Complex c = box.center();
    for (int it = 0; it < 100; ++it) {
      const Complex f = delta_scaled_eval(prob_, z);
      const Complex df = delta_deriv(prob_, z);
      if (f == Complex{}) return accept(z);
      if (df == Complex{} || !is_finite(df)) return std::nullopt;
      const Complex step = static_cast<double>(multiplicity) * f / df;
      z -= step;
      if (!is_finite(z) || std::abs(z - c) > reach) return std::nullopt;
      if (std::abs(step) <= 1e-13 * (1.0 + std::abs(z))) return accept(z);
    }
    return std::nullopt;
  }

  // The artificial zero at the origin is never a root.
  std::optional<Complex> accept(Complex z) const {
    if (std::abs(z) <= origin_radius(tol_)) return std::nullopt;
    return z;
  }

  void record(Complex z, int multiplicity) {
    roots_.push_back({z, multiplicity, std::abs(delta_scaled_eval(prob_, z))});
    if (static_cast<int>(roots_.size()) > max_roots_) {
      std::vector<Complex> partial;
      for (const auto& r : finish()) partial.push_back(r.value);
      throw RootCountError("more than " + std::to_string(max_roots_) + " roots in the search box", partial);
    }
  }

  const BoundaryPolynomialProblem& prob_;
  Tolerances tol_;
  Winding winding_;
  int max_roots_;
  std::optional<int> origin_order_;
  DetSpectrum roots_;
};

}  // namespace

int count_zeros(const BoundaryPolynomialProblem& prob, const SearchBox& box, const Tolerances& tol) {
  box.validate();
  tol.validate();
  return RootFinder(prob, tol, 0).count(box);
}

DetSpectrum find_det_eigenvalues(const BoundaryPolynomialProblem& prob, const SearchBox& box, int max_roots,
                                 const Tolerances& tol) {
  box.validate();
  tol.validate();
  if (max_roots < 0) throw InputError("max_roots must be >= 0");
  RootFinder finder(prob, tol, max_roots);
  const int n = finder.count(box);
  if (n < 0) throw NumericalError("negative zero count in search box");
  finder.search(box, n);
  return finder.finish();
}

Spectrum to_spectrum(const DetSpectrum& roots, double cluster_radius) {
  std::vector<SpectrumEntry> entries;
  entries.reserve(roots.size());
  for (const auto& r : roots) entries.push_back({r.value, r.multiplicity});
  return Spectrum::from_entries(std::move(entries), cluster_radius);
}

}  // namespace specinv::det
