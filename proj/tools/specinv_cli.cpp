// Command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 numerical failure, 2 invalid input.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "specinv/specinv.h"

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitInvalid = 2;

struct Failure {
  int code;
  std::string message;
};

int exit_code(specinv_status s) {
  switch (s) {
    case SPECINV_OK: return 0;
    case SPECINV_ERR_INVALID_INPUT: return kExitInvalid;
    default: return kExitNumerical;
  }
}

void check(specinv_status s) {
  if (s != SPECINV_OK) throw Failure{exit_code(s), specinv_last_error()};
}

[[noreturn]] void invalid(const std::string& msg) { throw Failure{kExitInvalid, msg}; }

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Potential = std::unique_ptr<specinv_potential, Deleter<specinv_potential, specinv_potential_free>>;
using Poly = std::unique_ptr<specinv_polynomial, Deleter<specinv_polynomial, specinv_polynomial_free>>;
using Spectrum = std::unique_ptr<specinv_spectrum, Deleter<specinv_spectrum, specinv_spectrum_free>>;
using Recon = std::unique_ptr<specinv_reconstruction, Deleter<specinv_reconstruction, specinv_reconstruction_free>>;
using Reports = std::unique_ptr<specinv_report_list, Deleter<specinv_report_list, specinv_report_list_free>>;
using Unique = std::unique_ptr<specinv_uniqueness, Deleter<specinv_uniqueness, specinv_uniqueness_free>>;
using Compare = std::unique_ptr<specinv_comparison, Deleter<specinv_comparison, specinv_comparison_free>>;

std::string take(char* s) {
  std::string out(s ? s : "");
  specinv_string_free(s);
  return out;
}

std::vector<double> numbers(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0')
      invalid(std::string(flag) + ": entry " + std::to_string(out.size()) + " is not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) invalid(std::string(flag) + ": empty list");
  return out;
}

Poly polynomial(const std::string& text, const char* flag) {
  const auto c = numbers(text, flag);
  specinv_polynomial* p = nullptr;
  check(specinv_polynomial_create(c.data(), nullptr, c.size(), &p));
  return Poly(p);
}

specinv_box box_from(const std::string& text) {
  const auto v = numbers(text, "--box");
  if (v.size() != 4) invalid("--box: expected re0,re1,im0,im1");
  return {v[0], v[1], v[2], v[3]};
}

void write_or_print(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) invalid("cannot open '" + path + "' for writing");
  out << text;
}

struct Options {
  std::string potential, potential_b, coeffs, coeffs_b, box, eigs, out, csv;
  int count = 10, max_roots = 256, degree = -1, trials = 1, threads = 1;
  double tol = -1.0;
  std::optional<std::uint64_t> seed;
};

int run_eigen(const Options& o) {
  specinv_potential* raw = nullptr;
  check(specinv_potential_load(o.potential.c_str(), &raw));
  Potential q(raw);
  specinv_tolerances tol;
  specinv_tolerances_default(&tol);
  if (o.tol > 0.0) tol.eig_tol = o.tol;
  specinv_spectrum* s = nullptr;
  check(specinv_neumann_eigenvalues(q.get(), o.count, &tol, &s));
  Spectrum spectrum(s);
  char* json = nullptr;
  check(specinv_spectrum_to_json(spectrum.get(), &json));
  write_or_print(take(json), o.out);
  return 0;
}

int run_det_roots(const Options& o) {
  auto a = polynomial(o.coeffs, "--coeffs");
  const auto box = box_from(o.box);
  specinv_spectrum* s = nullptr;
  check(specinv_det_roots(a.get(), &box, o.max_roots, nullptr, &s));
  Spectrum spectrum(s);
  char* json = nullptr;
  check(specinv_spectrum_to_json(spectrum.get(), &json));
  write_or_print(take(json), o.out);
  if (!o.out.empty()) std::cout << specinv_spectrum_size(spectrum.get()) << " roots written to " << o.out << "\n";
  return 0;
}

int run_reconstruct(const Options& o) {
  specinv_spectrum* s = nullptr;
  check(specinv_spectrum_load(o.eigs.c_str(), &s));
  Spectrum spectrum(s);
  specinv_reconstruction* r = nullptr;
  check(specinv_reconstruct(o.degree, spectrum.get(), nullptr, &r));
  Recon rec(r);
  char* json = nullptr;
  check(specinv_reconstruction_to_json(rec.get(), &json));
  write_or_print(take(json), o.out);
  return 0;
}

specinv_experiment experiment(const Options& o) {
  specinv_experiment cfg;
  specinv_experiment_default(&cfg);
  if (!o.box.empty()) cfg.box = box_from(o.box);
  cfg.max_roots = o.max_roots;
  cfg.threads = o.threads;
  return cfg;
}

int run_roundtrip(const Options& o) {
  auto cfg = experiment(o);
  specinv_report_list* raw = nullptr;
  if (!o.coeffs.empty()) {
    if (o.seed) invalid("--coeffs and --seed are mutually exclusive");
    auto a = polynomial(o.coeffs, "--coeffs");
    check(specinv_roundtrip(a.get(), &cfg, &raw));
  } else {
    if (!o.seed || o.degree < 0) invalid("roundtrip needs --coeffs, or --seed with --degree");
    cfg.seed = *o.seed;
    cfg.degree_min = cfg.degree_max = o.degree;
    cfg.trials = o.trials;
    check(specinv_roundtrip_suite(&cfg, &raw));
  }
  Reports reports(raw);
  char* json = nullptr;
  check(specinv_report_to_json(reports.get(), &json));
  write_or_print(take(json), o.out);
  if (!o.csv.empty()) {
    char* csv = nullptr;
    check(specinv_report_to_csv(reports.get(), &csv));
    write_or_print(take(csv), o.csv);
  }
  int failures = 0;
  for (std::size_t i = 0; i < specinv_report_count(reports.get()); ++i) {
    double err = 0.0, cond = 0.0;
    check(specinv_report_metrics(reports.get(), i, &err, &cond));
    if (!(err <= 1e-6 * cond)) ++failures;
    if (!o.out.empty())
      std::printf("trial %zu: max_coeff_error %.3e, condition %.3e\n", i, err, cond);
  }
  if (failures > 0) {
    std::fprintf(stderr, "%d trial(s) exceeded max_coeff_error <= 1e-6 * condition\n", failures);
    return kExitNumerical;
  }
  return 0;
}

int run_uniqueness(const Options& o) {
  auto a = polynomial(o.coeffs, "--coeffs-a");
  auto b = polynomial(o.coeffs_b, "--coeffs-b");
  auto cfg = experiment(o);
  specinv_uniqueness* raw = nullptr;
  check(specinv_uniqueness_probe(a.get(), b.get(), &cfg, &raw));
  Unique u(raw);
  char* json = nullptr;
  check(specinv_uniqueness_to_json(u.get(), &json));
  write_or_print(take(json), o.out);
  if (!o.out.empty())
    std::printf("spectra %s; probe %s\n", specinv_uniqueness_spectra_match(u.get()) ? "match" : "differ",
                specinv_uniqueness_passed(u.get()) ? "passed" : "FAILED");
  return specinv_uniqueness_passed(u.get()) ? 0 : kExitNumerical;
}

int run_compare(const Options& o) {
  specinv_potential *ra = nullptr, *rb = nullptr;
  check(specinv_potential_load(o.potential.c_str(), &ra));
  Potential a(ra);
  check(specinv_potential_load(o.potential_b.c_str(), &rb));
  Potential b(rb);
  specinv_comparison* raw = nullptr;
  check(specinv_compare_neumann(a.get(), b.get(), o.count, o.tol > 0.0 ? o.tol : 1e-8, nullptr, &raw));
  Compare c(raw);
  char* json = nullptr;
  check(specinv_comparison_to_json(c.get(), &json));
  std::cout << take(json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"specinv: Neumann spectra, characteristic-determinant zeros and boundary-polynomial recovery"};
  app.require_subcommand(1);
  Options o;

  auto* eigen = app.add_subcommand("eigen", "first N Neumann eigenvalues of a potential");
  eigen->add_option("--potential", o.potential, "potential file")->required();
  eigen->add_option("--count", o.count, "number of eigenvalues")->required();
  eigen->add_option("--tol", o.tol, "eigenvalue tolerance");
  eigen->add_option("--out", o.out, "spectrum file (stdout if omitted)");

  auto* roots = app.add_subcommand("det-roots", "zeros of the characteristic determinant in a box");
  roots->add_option("--coeffs", o.coeffs, "c0,c1,...")->required();
  roots->add_option("--box", o.box, "re0,re1,im0,im1")->required();
  roots->add_option("--max-roots", o.max_roots, "maximum number of roots");
  roots->add_option("--out", o.out, "spectrum file (stdout if omitted)");

  auto* rec = app.add_subcommand("reconstruct", "recover a_0..a_s from determinant zeros");
  rec->add_option("--degree", o.degree, "declared degree s")->required();
  rec->add_option("--eigs", o.eigs, "spectrum file")->required();
  rec->add_option("--out", o.out, "result file (stdout if omitted)");

  auto* rt = app.add_subcommand("roundtrip", "coefficients -> zeros -> coefficients");
  rt->add_option("--coeffs", o.coeffs, "c0,c1,...");
  rt->add_option("--seed", o.seed, "seed for random coefficients");
  rt->add_option("--degree", o.degree, "degree for random coefficients");
  rt->add_option("--trials", o.trials, "number of seeded trials");
  rt->add_option("--threads", o.threads, "worker threads for seeded trials");
  rt->add_option("--box", o.box, "re0,re1,im0,im1");
  rt->add_option("--max-roots", o.max_roots, "maximum number of roots");
  rt->add_option("--out", o.out, "report file (stdout if omitted)");
  rt->add_option("--csv", o.csv, "CSV export, one trial per row");

  auto* uq = app.add_subcommand("uniqueness", "injectivity probe for a coefficient pair");
  uq->add_option("--coeffs-a", o.coeffs, "c0,c1,...")->required();
  uq->add_option("--coeffs-b", o.coeffs_b, "c0,c1,...")->required();
  uq->add_option("--box", o.box, "re0,re1,im0,im1");
  uq->add_option("--max-roots", o.max_roots, "maximum number of roots");
  uq->add_option("--out", o.out, "report file (stdout if omitted)");

  auto* cmp = app.add_subcommand("compare", "compare the Neumann spectra of two potentials");
  cmp->add_option("--potential-a", o.potential, "potential file")->required();
  cmp->add_option("--potential-b", o.potential_b, "potential file")->required();
  cmp->add_option("--count", o.count, "number of eigenvalues")->required();
  cmp->add_option("--tol", o.tol, "match tolerance")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (eigen->parsed()) return run_eigen(o);
    if (roots->parsed()) return run_det_roots(o);
    if (rec->parsed()) return run_reconstruct(o);
    if (rt->parsed()) return run_roundtrip(o);
    if (uq->parsed()) return run_uniqueness(o);
    if (cmp->parsed()) return run_compare(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return kExitInvalid;
}
