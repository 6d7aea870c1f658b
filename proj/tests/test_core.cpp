#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/clustering.hpp"
#include "oracles/multiprecision.hpp"
#include "specinv/core.hpp"
#include "specinv/errors.hpp"
#include "support.hpp"

using namespace specinv;
using testing_support::random_complex;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int degree) {
  std::vector<Complex> c;
  for (int k = 0; k <= degree; ++k) c.push_back(random_complex(rng, 2.0, 2.0));
  return Polynomial(c);
}

}  // namespace

TEST_CASE("poly_eval small cases") {
  const double c[] = {1.0, 2.0};
  CHECK(poly_eval(Polynomial::real(c), 2.0) == Complex(5.0));
  const Polynomial k(std::vector<Complex>{{0.3, -1.0}});
  CHECK(poly_eval(k, {17.0, 4.0}) == Complex(0.3, -1.0));
  CHECK(Polynomial(3).degree() == 3);
  CHECK(Polynomial(3).coeffs().size() == 4);
}

TEST_CASE("declared degree survives trailing zeros") {
  const double c[] = {1.0, 0.0, 0.0};
  const auto p = Polynomial::real(c);
  CHECK(p.degree() == 2);
  CHECK(p[2] == Complex(0.0));
}

TEST_CASE("non-finite coefficients rejected") {
  CHECK_THROWS_AS(Polynomial(std::vector<Complex>{{NAN, 0.0}}), InputError);
  CHECK_THROWS_AS(Polynomial(std::vector<Complex>{}), InputError);
  CHECK_THROWS_AS(checked_finite({1.0, INFINITY}, "z"), InputError);
}

TEST_CASE("poly_eval against extended-precision power sums") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const int degree = static_cast<int>(rng() % 7);
    const auto p = random_poly(rng, degree);
    const auto z = random_complex(rng, 1.5, 1.5);
    const auto want = oracle::power_sum(p.coeffs(), z);
    // relative to the sum of term magnitudes; a bare |want| can be tiny by cancellation
    double scale = 0.0;
    for (int k = 0; k <= degree; ++k) scale += std::abs(p[k]) * std::pow(std::abs(z), k);
    CHECK(std::abs(poly_eval(p, z) - want) <= 1e-14 * std::max(std::abs(want), 1e-300) + 4e-16 * scale);
  }
}

TEST_CASE("derivative against central differences") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_poly(rng, 1 + static_cast<int>(rng() % 5));
    const auto z = random_complex(rng, 1.0, 1.0);
    const double h = 1e-6;
    const Complex fd = (p(z + h) - p(z - h)) / (2.0 * h);
    CHECK(std::abs(p.derivative(z) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("poly_eval is linear in the coefficients") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int degree = static_cast<int>(rng() % 7);
    const auto p = random_poly(rng, degree);
    const auto q = random_poly(rng, degree);
    const auto z = random_complex(rng, 1.5, 1.5);
    const Complex lhs = poly_eval(p + q, z);
    const Complex rhs = poly_eval(p, z) + poly_eval(q, z);
    const double scale = std::max({1.0, std::abs(poly_eval(p, z)), std::abs(poly_eval(q, z))});
    CHECK(std::abs(lhs - rhs) <= 1e-13 * scale);
  }
}

TEST_CASE("poly_max_abs_diff") {
  const double a[] = {1.0, 2.0}, b[] = {1.0, 2.5}, c[] = {1.0};
  CHECK(poly_max_abs_diff(Polynomial::real(a), Polynomial::real(a)) == 0.0);
  CHECK(poly_max_abs_diff(Polynomial::real(a), Polynomial::real(b)) == 0.5);
  CHECK_THROWS_AS(poly_max_abs_diff(Polynomial::real(a), Polynomial::real(c)), InputError);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int degree = static_cast<int>(rng() % 5);
    const auto p = random_poly(rng, degree);
    const auto q = random_poly(rng, degree);
    double scan = 0.0;
    for (int k = 0; k <= degree; ++k) scan = std::max(scan, std::abs(p.coeffs()[k] - q.coeffs()[k]));
    CHECK(poly_max_abs_diff(p, q) == scan);
  }
}

TEST_CASE("spectra_match definition") {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const auto s = Spectrum::from_entries({{0.0, 1}, {pi2, 1}}, 1e-8);
  CHECK(spectra_match(s, s, 1e-8));
  CHECK_FALSE(spectra_match(Spectrum::from_entries({{0.0, 1}}, 1e-8), Spectrum::from_entries({{0.0, 2}}, 1e-8), 1e-8));
  const double tol = 1e-6;
  CHECK(spectra_match(Spectrum::from_entries({{1.0, 1}}, 1e-8), Spectrum::from_entries({{1.0 + tol / 2, 1}}, 1e-8), tol));
  CHECK_FALSE(spectra_match(s, Spectrum::from_entries({{0.0, 1}}, 1e-8), 1.0));
}

TEST_CASE("spectra_match reflexive and symmetric") {
  std::mt19937_64 rng(99);
  std::vector<Spectrum> all;
  for (int i = 0; i < 100; ++i) {
    std::vector<SpectrumEntry> e;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < n; ++k) e.push_back({random_complex(rng, 1.0, 1.0), 1 + static_cast<int>(rng() % 2)});
    all.push_back(Spectrum::from_entries(e, 1e-8));
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(spectra_match(all[i], all[i], 0.0));
    const auto& j = all[(i * 37 + 11) % all.size()];
    CHECK(spectra_match(all[i], j, 0.5) == spectra_match(j, all[i], 0.5));
  }
}

TEST_CASE("spectrum clustering against brute force") {
  std::mt19937_64 rng(2024);
  const double radius = 1e-3;
  for (int trial = 0; trial < 40; ++trial) {
    // well-separated centres, jittered members: clusters are unambiguous
    const int centres = 1 + static_cast<int>(rng() % 4);
    std::vector<Complex> pts;
    std::vector<int> mult;
    std::vector<SpectrumEntry> entries;
    for (int c = 0; c < centres; ++c) {
      const Complex centre{0.1 * c + 0.01 * (rng() % 5), 0.2 * (rng() % 3)};
      const int members = 1 + static_cast<int>(rng() % 3);
      for (int m = 0; m < members && pts.size() < 10; ++m) {
        const Complex p = centre + random_complex(rng, radius / 4, radius / 4);
        pts.push_back(p);
        mult.push_back(1 + static_cast<int>(rng() % 2));
        entries.push_back({p, mult.back()});
      }
    }
    std::shuffle(entries.begin(), entries.end(), rng);
    const auto s = Spectrum::from_entries(entries, radius);
    const auto want = oracle::brute_force_clusters(pts, mult, radius);
    REQUIRE(s.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(s.entries()[i].multiplicity == want[i].multiplicity);
      CHECK(std::abs(s.entries()[i].value - want[i].mean) <= 1e-15);
    }
  }
}

TEST_CASE("spectrum sorted lexicographically") {
  const auto s = Spectrum::from_values(std::vector<Complex>{{1, 2}, {1, -2}, {-3, 0}, {1, 0}}, 1e-8);
  REQUIRE(s.size() == 4);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(lex_less(s.entries()[i - 1].value, s.entries()[i].value));
  CHECK(s.total_multiplicity() == 4);
}

TEST_CASE("tolerance validation") {
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.cluster_radius = 1e-14;
  CHECK_THROWS_AS(t.validate(), InputError);
  t = {};
  t.match_tol = 0.0;
  CHECK_THROWS_AS(t.validate(), InputError);
}

TEST_CASE("expm1 for small complex arguments") {
  const Complex z{1e-10, -2e-10};
  const auto want = oracle::narrow(boost::multiprecision::exp(oracle::widen(z)) - oracle::Complex50(1));
  CHECK(std::abs(specinv::expm1(z) - want) <= 1e-15 * std::abs(want));
  const Complex big{0.5, 3.0};
  CHECK(std::abs(specinv::expm1(big) - (std::exp(big) - 1.0)) <= 1e-15);
}
