// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/fd_neumann.hpp"
#include "oracles/multiprecision.hpp"
#include "specinv/char_det.hpp"
#include "specinv/errors.hpp"
#include "specinv/io.hpp"
#include "specinv/reconstruct.hpp"
#include "specinv/sl_forward.hpp"
#include "specinv/workbench.hpp"
#include "support.hpp"

using namespace specinv;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<double> oracle_spectrum(const sl::Potential& q, int count) {
  return oracle::fd_neumann_richardson([&q](double x) { return q(x); }, count);
}

// ---------------------------------------------------------------- 1
Outcome free_spectrum() {
  Outcome o;
  const auto s = sl::neumann_eigenvalues(sl::Potential::constant(0.0), 20);
  double worst = std::abs(s[0]);
  o.require(s.size() == 20, "wrong count");
  o.require(std::abs(s[0]) <= 1e-8, "lambda_0 off by " + fmt("%.2e", s[0]));
  for (int n = 1; n < 20; ++n) {
    const double want = n * n * kPi * kPi;
    const double rel = std::abs(s[n] - want) / want;
    worst = std::max(worst, rel);
    o.require(rel <= 1e-8, "lambda_" + std::to_string(n) + " relative error " + fmt("%.2e", rel));
  }
  o.detail = o.pass ? "worst relative error " + fmt("%.2e", worst) : o.detail;
  return o;
}

// ---------------------------------------------------------------- 2
Outcome shift_covariance() {
  Outcome o;
  std::mt19937_64 rng(20);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto q = testing_support::random_grid(rng);
    const auto base = sl::neumann_eigenvalues(q, 8);
    for (double c : {-3.0, 1.0, 7.0}) {
      const auto moved = sl::neumann_eigenvalues(q.shifted(c), 8);
      for (int n = 0; n < 8; ++n) worst = std::max(worst, std::abs(moved[n] - base[n] - c));
    }
  }
  o.require(worst <= 1e-8, "max deviation " + fmt("%.2e", worst));
  if (o.pass) o.detail = "60 shifted spectra, max deviation " + fmt("%.2e", worst);
  return o;
}

// ---------------------------------------------------------------- 3
Outcome method_cross_check() {
  Outcome o;
  std::mt19937_64 rng(30);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto q = testing_support::random_grid(rng);
    const auto s = sl::neumann_eigenvalues(q, 5);
    const auto want = oracle_spectrum(q, 5);
    for (int n = 0; n < 5; ++n) worst = std::max(worst, std::abs(s[n] - want[n]));
  }
  o.require(worst <= 1e-6, "max disagreement " + fmt("%.2e", worst));
  if (o.pass) o.detail = "10 potentials x 5 eigenvalues, max disagreement " + fmt("%.2e", worst);
  return o;
}

// ---------------------------------------------------------------- 4
sl::Potential random_potential(std::mt19937_64& rng, int i) {
  std::uniform_real_distribution<double> u(-3.0, 3.0), amp(0.5, 3.0);
  switch (i % 4) {
    case 0: return sl::Potential::constant(u(rng));
    case 1: return testing_support::random_grid(rng);
    case 2: return sl::Potential::cosine(amp(rng), 1.0 + static_cast<double>(rng() % 3), u(rng));
    default: {
      const double a = u(rng), b = u(rng);
      return sl::Potential::poly_in_x({u(rng), b, a + (a >= 0 ? 0.5 : -0.5)});
    }
  }
}

Outcome rigidity_witness() {
  Outcome o;
  std::mt19937_64 rng(40);
  int constants = 0;
  double worst_excess = -INFINITY, min_gap = INFINITY, worst_constant = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto q = random_potential(rng, i);
    const auto g = sl::rayleigh_mean_gap(q);
    worst_excess = std::max(worst_excess, g.lambda0 - g.mean_q);
    o.require(g.lambda0 <= g.mean_q + 1e-8, "lambda_0 exceeds the mean for potential " + std::to_string(i));
    const bool constant = q.kind() == sl::PotentialKind::constant;
    const bool equal = std::abs(g.lambda0 - g.mean_q) <= 1e-8;
    o.require(equal == constant, "equality/constancy mismatch for potential " + std::to_string(i));
    if (constant) {
      ++constants;
      worst_constant = std::max(worst_constant, std::abs(g.lambda0 - g.mean_q));
    } else {
      min_gap = std::min(min_gap, g.mean_q - g.lambda0);
    }
  }
  const auto cq = sl::Potential::cosine(1.0, 1.0);
  const auto cg = sl::rayleigh_mean_gap(cq);
  const double oracle_l0 = oracle_spectrum(cq, 1)[0];
  o.require(cg.mean_q - cg.lambda0 > 1e-8, "cos(2 pi x) shows no gap");
  o.require(std::abs(cg.lambda0 - oracle_l0) <= 1e-6,
            "cos(2 pi x) lambda_0 differs from oracle by " + fmt("%.2e", std::abs(cg.lambda0 - oracle_l0)));
  if (o.pass)
    o.detail = std::to_string(constants) + " constant / " + std::to_string(50 - constants) +
               " non-constant; max constant |gap| " + fmt("%.1e", worst_constant) + ", min non-constant gap " +
               fmt("%.2e", min_gap) + "; cos gap " + fmt("%.6f", cg.mean_q - cg.lambda0) + " (oracle " +
               fmt("%.6f", cg.mean_q - oracle_l0) + ")";
  return o;
}

// ---------------------------------------------------------------- 5
Outcome analytic_zero_set() {
  Outcome o;
  const det::BoundaryPolynomialProblem zero{Polynomial(0)};
  const auto roots = det::find_det_eigenvalues(zero, {-1, 1, -20, 20}, 64);
  o.require(roots.size() == 6, "found " + std::to_string(roots.size()) + " roots, expected 6");
  double worst = 0.0;
  for (int k : {-3, -2, -1, 1, 2, 3}) {
    const Complex want{0.0, 2.0 * kPi * k};
    double best = INFINITY;
    for (const auto& r : roots) best = std::min(best, std::abs(r.value - want));
    worst = std::max(worst, best);
    o.require(best <= 1e-9, "2 pi i k for k = " + std::to_string(k) + " missed by " + fmt("%.2e", best));
  }
  for (const auto& r : roots) o.require(r.multiplicity == 1, "multiplicity other than 1");
  if (o.pass) o.detail = "6 roots, max error " + fmt("%.2e", worst);
  return o;
}

// ---------------------------------------------------------------- 6, 8
struct SuiteResult {
  std::vector<bench::RoundTripReport> reports;
  bench::ExperimentConfig cfg;
};

std::vector<SuiteResult> roundtrip_suites() {
  std::vector<SuiteResult> out;
  for (int s = 0; s <= 3; ++s) {
    bench::ExperimentConfig cfg;
    cfg.seed = 8000 + s;
    cfg.degree_min = cfg.degree_max = s;
    cfg.coeff_bound = 2.0;
    cfg.trials = 20;
    out.push_back({bench::roundtrip_suite(cfg), cfg});
  }
  return out;
}

Outcome roundtrip_witness(const std::vector<SuiteResult>& suites) {
  Outcome o;
  int trials = 0, well_conditioned = 0;
  double worst_ratio = 0.0, worst_error = 0.0, worst_cond = 0.0;
  for (const auto& suite : suites)
    for (const auto& r : suite.reports) {
      ++trials;
      well_conditioned += r.condition < 1e6;
      worst_ratio = std::max(worst_ratio, r.max_coeff_error / r.condition);
      worst_error = std::max(worst_error, r.max_coeff_error);
      worst_cond = std::max(worst_cond, r.condition);
      o.require(r.max_coeff_error <= 1e-6 * r.condition,
                "trial with degree " + std::to_string(r.true_coeffs.degree()) + " error " +
                    fmt("%.2e", r.max_coeff_error));
    }
  o.require(trials == 80, "expected 80 trials");
  o.require(well_conditioned >= 0.9 * trials, std::to_string(well_conditioned) + "/80 trials with condition < 1e6");
  if (o.pass)
    o.detail = "80 trials, max error " + fmt("%.2e", worst_error) + ", max condition " + fmt("%.2e", worst_cond) +
               ", " + std::to_string(well_conditioned) + "/80 with condition < 1e6";
  return o;
}

struct BoxCheck {
  int boxes = 0;
  int violations = 0;
};

void check_box(const Polynomial& a, const bench::ExperimentConfig& cfg, BoxCheck& acc) {
  det::SearchBox used;
  const auto roots = bench::gather_roots(a, cfg, &used);
  int total = 0;
  for (const auto& r : roots) total += r.multiplicity;
  ++acc.boxes;
  acc.violations += det::count_zeros({a}, used, cfg.tolerances) != total;
}

// ---------------------------------------------------------------- 7
Outcome derivative_validation() {
  Outcome o;
  std::mt19937_64 rng(70);
  const double h = 1e-6;
  double worst = 0.0;
  int points = 0;
  for (int s = 0; s <= 3; ++s)
    for (int p = 0; p < 3; ++p) {
      const det::BoundaryPolynomialProblem prob{bench::random_polynomial(s, 2.0, rng())};
      for (int i = 0; i < 100; ++i, ++points) {
        const Complex l = testing_support::random_complex(rng, 8.0, 30.0);
        const Complex fd = (det::delta_scaled_eval(prob, l + h) - det::delta_scaled_eval(prob, l - h)) / (2.0 * h);
        const Complex d = det::delta_deriv(prob, l);
        const double rel = std::abs(d - fd) / std::abs(d);
        worst = std::max(worst, rel);
      }
    }
  o.require(worst <= 1e-5, "worst relative error " + fmt("%.2e", worst));
  if (o.pass) o.detail = std::to_string(points) + " points over 12 polynomials, worst relative " + fmt("%.2e", worst);
  return o;
}

// ---------------------------------------------------------------- 9
Outcome vandermonde_oracle() {
  Outcome o;
  std::mt19937_64 rng(90);
  double worst = 0.0;
  int systems = 0;
  for (int degree = 0; degree <= 6; ++degree)
    for (int t = 0; t < 10; ++t, ++systems) {
      std::vector<Complex> nodes, values;
      if (t % 2 == 0) {
        for (int i = 0; i <= degree; ++i) nodes.push_back(testing_support::random_complex(rng, 3.0, 3.0));
      } else {
        // determinant zeros as nodes, as the reconstruction uses them
        const auto a = bench::random_polynomial(degree, 2.0, rng());
        bench::ExperimentConfig cfg;
        cfg.degree_max = 6;
        const auto sp = det::to_spectrum(bench::gather_roots(a, cfg), cfg.tolerances.cluster_radius);
        nodes = recon::select_nodes(sp, degree + 1, cfg.tolerances);
      }
      for (const auto& z : nodes) values.push_back(testing_support::random_complex(rng, 1.0, 1.0));
      const auto got = recon::vandermonde_solve(nodes, values);
      const auto ref = oracle::vandermonde_gauss(nodes, values);
      double diff = 0.0, scale = 0.0;
      for (int k = 0; k <= degree; ++k) {
        diff = std::max(diff, std::abs(got[k] - ref[k]));
        scale = std::max(scale, std::abs(ref[k]));
      }
      worst = std::max(worst, diff / scale);
    }
  o.require(worst <= 1e-8, "worst relative disagreement " + fmt("%.2e", worst));
  if (o.pass) o.detail = std::to_string(systems) + " systems, degrees 0..6, worst relative " + fmt("%.2e", worst);
  return o;
}

// ---------------------------------------------------------------- 10
Outcome uniqueness_probes(BoxCheck& boxes) {
  Outcome o;
  std::mt19937_64 rng(100);
  bench::ExperimentConfig cfg;
  int matches = 0;
  for (int pair = 0; pair < 10; ++pair) {
    const int s = pair % 3;
    const auto a = bench::random_polynomial(s, 2.0, rng());
    auto b = bench::random_polynomial(s, 2.0, rng());
    while (poly_max_abs_diff(a, b) < 0.1) b = bench::random_polynomial(s, 2.0, rng());
    const auto u = bench::uniqueness_probe(a, b, cfg);
    matches += u.spectra_match;
    o.require(u.passed, "pair " + std::to_string(pair) + " failed (errors " + fmt("%.2e", u.error_a) + ", " +
                            fmt("%.2e", u.error_b) + ")");
    check_box(a, cfg, boxes);
    check_box(b, cfg, boxes);
  }
  if (o.pass) o.detail = "10 pairs passed; " + std::to_string(matches) + " with matching spectra";
  return o;
}

// ---------------------------------------------------------------- 11
struct CliRun {
  int code;
  std::string err;
};

CliRun run_cli(const std::string& args, const fs::path& dir) {
  const auto err = dir / "stderr.txt";
  const std::string cmd = std::string(SPECINV_CLI_PATH) + " " + args + " >/dev/null 2>" + err.string();
  const int status = std::system(cmd.c_str());
  std::ifstream in(err);
  std::ostringstream os;
  os << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, os.str()};
}

double awkward(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> m(-1.0, 1.0);
  std::uniform_int_distribution<int> e(-40, 40);
  return std::ldexp(m(rng), e(rng));
}

Outcome serialization() {
  Outcome o;
  std::mt19937_64 rng(110);
  int identical = 0;
  auto list = [&rng](int n) {
    std::vector<Complex> z;
    for (int k = 0; k < n; ++k) z.push_back({awkward(rng), awkward(rng)});
    return z;
  };
  for (int i = 0; i < 20; ++i) {
    std::vector<double> nodes{0.0}, values{awkward(rng)};
    for (int j = 1; j <= 3 + i; ++j) {
      nodes.push_back(static_cast<double>(j) / (3 + i));
      values.push_back(awkward(rng));
    }
    const sl::Potential potentials[] = {sl::Potential::grid(nodes, values),
                                        sl::Potential::cosine(awkward(rng), awkward(rng))};
    const auto& q = potentials[i % 2];
    const auto qt = io::emit_potential(q);
    identical += io::emit_potential(io::parse_potential(qt)) == qt;

    std::vector<SpectrumEntry> entries;
    for (auto z : list(1 + i % 5)) entries.push_back({z, 1 + static_cast<int>(rng() % 3)});
    const auto st = io::emit_spectrum(Spectrum::from_entries(entries, 0.0));
    identical += io::emit_spectrum(io::parse_spectrum(st)) == st;

    const int s = i % 4;
    bench::RoundTripReport r{Polynomial(list(s + 1)), Polynomial(list(s + 1)), std::abs(awkward(rng)),
                             std::abs(awkward(rng)), list(s + 1),
                             std::chrono::duration<double, std::milli>(std::abs(awkward(rng)))};
    const auto rt = io::emit_report(r);
    identical += io::emit_report(io::parse_report(rt)) == rt;
  }
  o.require(identical == 60, std::to_string(identical) + "/60 documents round-tripped");

  const auto dir = fs::temp_directory_path() / ("specinv_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto file = [&dir](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  struct Case {
    std::string args, field;
  };
  const std::vector<Case> cases{
      {"eigen --count 3 --potential " +
           file("unsorted.json", R"({"kind":"grid","nodes":[0,0.6,0.4,1],"values":[1,2,3,4]})"),
       "nodes[2]"},
      {"eigen --count 3 --potential " + file("kind.json", R"({"kind":"wobbly"})"), "kind"},
      {"eigen --count 3 --potential " + file("freq.json", R"({"kind":"cosine","amplitude":1})"), "frequency"},
      {"reconstruct --degree 0 --eigs " + file("empty.json", R"({"entries":[]})"), "entries"},
      {"reconstruct --degree 0 --eigs " + file("mult.json", R"({"entries":[{"re":1,"multiplicity":"two"}]})"),
       "entries[0].multiplicity"},
      {"reconstruct --degree 0 --eigs " + file("syntax.json", "{\n  \"entries\": [\n    {\"re\": 1,,}\n  ]\n}\n"),
       "line 3"},
      {"det-roots --coeffs 1,x --box -1,1,-1,1", "--coeffs"},
  };
  int good = 0;
  for (const auto& c : cases) {
    const auto r = run_cli(c.args, dir);
    const bool ok = r.code == 2 && r.err.find(c.field) != std::string::npos;
    good += ok;
    o.require(ok, "'" + c.args.substr(0, 40) + "...' gave exit " + std::to_string(r.code) + ": " + r.err);
  }
  fs::remove_all(dir);
  if (o.pass)
    o.detail = "60/60 documents identical after parse/emit; " + std::to_string(good) + "/" +
               std::to_string(cases.size()) + " malformed inputs exit 2 naming the field";
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&failures](int id, const std::string& name, double limit_s, const std::function<Outcome()>& f) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0 && secs >= limit_s) {
      o.pass = false;
      o.detail += " (runtime " + fmt("%.1f", secs) + " s over the " + fmt("%.0f", limit_s) + " s limit)";
    }
    failures += !o.pass;
    std::printf("criterion %2d %s  %-32s %7.2fs  %s\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "free Neumann spectrum", 2, free_spectrum);
  report(2, "shift covariance", 30, shift_covariance);
  report(3, "shooting vs finite differences", 60, method_cross_check);
  report(4, "rigidity witness", 0, rigidity_witness);
  report(5, "analytic zero set", 5, analytic_zero_set);

  std::vector<SuiteResult> suites;
  BoxCheck boxes;
  report(8, "round-trip witness", 120, [&] {
    suites = roundtrip_suites();
    return roundtrip_witness(suites);
  });
  report(10, "uniqueness probes", 60, [&] { return uniqueness_probes(boxes); });
  report(6, "argument-principle consistency", 0, [&] {
    for (const auto& suite : suites)
      for (const auto& r : suite.reports) check_box(r.true_coeffs, suite.cfg, boxes);
    Outcome o;
    o.require(boxes.boxes == 100, "expected 100 boxes, checked " + std::to_string(boxes.boxes));
    o.require(boxes.violations == 0, std::to_string(boxes.violations) + " boxes with count mismatch");
    if (o.pass) o.detail = std::to_string(boxes.boxes) + " suite boxes, 0 violations";
    return o;
  });
  report(7, "derivative validation", 0, derivative_validation);
  report(9, "Vandermonde oracle equivalence", 0, vandermonde_oracle);
  report(11, "serialization", 0, serialization);

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
