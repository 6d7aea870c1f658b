#include "specinv/specinv.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "specinv/char_det.hpp"
#include "specinv/errors.hpp"
#include "specinv/io.hpp"
#include "specinv/reconstruct.hpp"
#include "specinv/sl_forward.hpp"
#include "specinv/workbench.hpp"

struct specinv_potential {
  specinv::sl::Potential q;
};
struct specinv_polynomial {
  specinv::Polynomial p;
};
struct specinv_spectrum {
  specinv::Spectrum s;
  std::vector<double> residuals;  // empty unless produced by the root finder
};
struct specinv_reconstruction {
  specinv::recon::ReconstructionResult result;
  std::vector<specinv::Complex> nodes;
};
struct specinv_report_list {
  std::vector<specinv::bench::RoundTripReport> reports;
};
struct specinv_uniqueness {
  specinv::bench::UniquenessReport report;
};
struct specinv_comparison {
  specinv::bench::NeumannComparison cmp;
};

namespace {

using namespace specinv;

thread_local std::string g_last_error;

specinv_status fail(specinv_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <class F>
specinv_status guarded(F&& f) {
  try {
    f();
    return SPECINV_OK;
  } catch (const InputError& e) {
    return fail(SPECINV_ERR_INVALID_INPUT, e.what());
  } catch (const NumericalError& e) {
    return fail(SPECINV_ERR_NUMERICAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SPECINV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SPECINV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SPECINV_ERR_INTERNAL, "unknown error");
  }
}

template <class... Ptrs>
void require(Ptrs... ptrs) {
  if (((ptrs == nullptr) || ...)) throw InputError("null argument");
}

char* to_c_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Tolerances to_tol(const specinv_tolerances* t) {
  if (!t) return {};
  Tolerances out{t->eig_tol, t->residual_tol, t->cluster_radius, t->match_tol};
  out.validate();
  return out;
}

det::SearchBox to_box(const specinv_box* b) {
  require(b);
  det::SearchBox box{b->re_min, b->re_max, b->im_min, b->im_max};
  box.validate();
  return box;
}

bench::ExperimentConfig to_config(const specinv_experiment* e) {
  bench::ExperimentConfig cfg;
  if (!e) return cfg;
  cfg.seed = e->seed;
  cfg.degree_min = e->degree_min;
  cfg.degree_max = e->degree_max;
  cfg.coeff_bound = e->coeff_bound;
  cfg.search_box = to_box(&e->box);
  cfg.tolerances = to_tol(&e->tol);
  cfg.trials = e->trials;
  cfg.max_roots = e->max_roots;
  cfg.validate();
  return cfg;
}

std::vector<Complex> complex_array(const double* re, const double* im, std::size_t n) {
  if (n > 0) require(re);
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {re[i], im ? im[i] : 0.0};
  return out;
}

void put(Complex z, double* re, double* im) {
  require(re, im);
  *re = z.real();
  *im = z.imag();
}

sl::NeumannSpectrum as_neumann(const Spectrum& s) {
  std::vector<double> values;
  for (const auto& e : s.entries()) {
    if (e.value.imag() != 0.0 || e.multiplicity != 1)
      throw InputError("not a Neumann spectrum: entries must be real and simple");
    values.push_back(e.value.real());
  }
  return sl::NeumannSpectrum(std::move(values));
}

}  // namespace

extern "C" {

const char* specinv_version(void) { return "0.1.0"; }
const char* specinv_last_error(void) { return g_last_error.c_str(); }
void specinv_string_free(char* s) { std::free(s); }

void specinv_tolerances_default(specinv_tolerances* out) {
  if (!out) return;
  const Tolerances t;
  *out = {t.eig_tol, t.residual_tol, t.cluster_radius, t.match_tol};
}

specinv_status specinv_potential_constant(double c, specinv_potential** out) {
  return guarded([&] {
    require(out);
    *out = new specinv_potential{sl::Potential::constant(c)};
  });
}

specinv_status specinv_potential_cosine(double amplitude, double frequency, specinv_potential** out) {
  return guarded([&] {
    require(out);
    *out = new specinv_potential{sl::Potential::cosine(amplitude, frequency)};
  });
}

specinv_status specinv_potential_grid(const double* nodes, const double* values, size_t n, specinv_potential** out) {
  return guarded([&] {
    require(nodes, values, out);
    *out = new specinv_potential{
        sl::Potential::grid(std::vector<double>(nodes, nodes + n), std::vector<double>(values, values + n))};
  });
}

specinv_status specinv_potential_poly(const double* coeffs, size_t n, specinv_potential** out) {
  return guarded([&] {
    require(coeffs, out);
    *out = new specinv_potential{sl::Potential::poly_in_x(std::vector<double>(coeffs, coeffs + n))};
  });
}

specinv_status specinv_potential_parse(const char* json, specinv_potential** out) {
  return guarded([&] {
    require(json, out);
    *out = new specinv_potential{io::parse_potential(json)};
  });
}

specinv_status specinv_potential_load(const char* path, specinv_potential** out) {
  return guarded([&] {
    require(path, out);
    *out = new specinv_potential{io::parse_potential(io::read_file(path))};
  });
}

specinv_status specinv_potential_to_json(const specinv_potential* q, char** out) {
  return guarded([&] {
    require(q, out);
    *out = to_c_string(io::emit_potential(q->q));
  });
}

specinv_status specinv_potential_eval(const specinv_potential* q, double x, double* out) {
  return guarded([&] {
    require(q, out);
    *out = q->q(x);
  });
}

void specinv_potential_free(specinv_potential* q) { delete q; }

specinv_status specinv_shoot_miss(const specinv_potential* q, double lambda, const specinv_tolerances* tol,
                                  double* out) {
  return guarded([&] {
    require(q, out);
    *out = sl::shoot_miss(q->q, lambda, to_tol(tol));
  });
}

specinv_status specinv_eigenvalue_count_below(const specinv_potential* q, double mu, int* out) {
  return guarded([&] {
    require(q, out);
    *out = sl::eigenvalue_count_below(q->q, mu);
  });
}

specinv_status specinv_neumann_eigenvalues(const specinv_potential* q, int count, const specinv_tolerances* tol,
                                           specinv_spectrum** out) {
  return guarded([&] {
    require(q, out);
    const auto t = to_tol(tol);
    *out = new specinv_spectrum{sl::neumann_eigenvalues(q->q, count, t).to_spectrum(0.0), {}};
  });
}

specinv_status specinv_free_spectrum_verdict(const specinv_spectrum* s, double tol, int* out) {
  return guarded([&] {
    require(s, out);
    if (s->s.empty()) throw InputError("empty spectrum");
    *out = sl::free_spectrum_verdict(as_neumann(s->s), tol) ? 1 : 0;
  });
}

specinv_status specinv_rayleigh_mean_gap(const specinv_potential* q, const specinv_tolerances* tol, double* lambda0,
                                         double* mean_q) {
  return guarded([&] {
    require(q, lambda0, mean_q);
    const auto g = sl::rayleigh_mean_gap(q->q, to_tol(tol));
    *lambda0 = g.lambda0;
    *mean_q = g.mean_q;
  });
}

specinv_status specinv_polynomial_create(const double* re, const double* im, size_t n, specinv_polynomial** out) {
  return guarded([&] {
    require(re, out);
    *out = new specinv_polynomial{Polynomial(complex_array(re, im, n))};
  });
}

specinv_status specinv_polynomial_random(int degree, double bound, uint64_t seed, specinv_polynomial** out) {
  return guarded([&] {
    require(out);
    if (!(bound > 0.0)) throw InputError("coefficient bound must be positive");
    *out = new specinv_polynomial{bench::random_polynomial(degree, bound, seed)};
  });
}

int specinv_polynomial_degree(const specinv_polynomial* p) { return p ? p->p.degree() : -1; }

specinv_status specinv_polynomial_coeff(const specinv_polynomial* p, int k, double* re, double* im) {
  return guarded([&] {
    require(p);
    if (k < 0 || k > p->p.degree()) throw InputError("coefficient index out of range");
    put(p->p[static_cast<std::size_t>(k)], re, im);
  });
}

specinv_status specinv_polynomial_eval(const specinv_polynomial* p, double re, double im, double* out_re,
                                       double* out_im) {
  return guarded([&] {
    require(p);
    put(poly_eval(p->p, {re, im}), out_re, out_im);
  });
}

specinv_status specinv_polynomial_max_abs_diff(const specinv_polynomial* p, const specinv_polynomial* q,
                                               double* out) {
  return guarded([&] {
    require(p, q, out);
    *out = poly_max_abs_diff(p->p, q->p);
  });
}

void specinv_polynomial_free(specinv_polynomial* p) { delete p; }

specinv_status specinv_delta(const specinv_polynomial* a, double re, double im, double* out_re, double* out_im) {
  return guarded([&] {
    require(a);
    put(det::delta_eval({a->p}, {re, im}), out_re, out_im);
  });
}

specinv_status specinv_delta_scaled(const specinv_polynomial* a, double re, double im, double* out_re,
                                    double* out_im) {
  return guarded([&] {
    require(a);
    put(det::delta_scaled_eval({a->p}, {re, im}), out_re, out_im);
  });
}

specinv_status specinv_delta_deriv(const specinv_polynomial* a, double re, double im, double* out_re,
                                   double* out_im) {
  return guarded([&] {
    require(a);
    put(det::delta_deriv({a->p}, {re, im}), out_re, out_im);
  });
}

specinv_status specinv_count_zeros(const specinv_polynomial* a, const specinv_box* box, const specinv_tolerances* tol,
                                   int* out) {
  return guarded([&] {
    require(a, out);
    *out = det::count_zeros({a->p}, to_box(box), to_tol(tol));
  });
}

specinv_status specinv_det_roots(const specinv_polynomial* a, const specinv_box* box, int max_roots,
                                 const specinv_tolerances* tol, specinv_spectrum** out) {
  return guarded([&] {
    require(a, out);
    const auto roots = det::find_det_eigenvalues({a->p}, to_box(box), max_roots, to_tol(tol));
    std::vector<SpectrumEntry> entries;
    std::vector<double> residuals;
    for (const auto& r : roots) {
      entries.push_back({r.value, r.multiplicity});
      residuals.push_back(r.residual);
    }
    // Already sorted and separated; radius 0 keeps every root.
    *out = new specinv_spectrum{Spectrum::from_entries(std::move(entries), 0.0), std::move(residuals)};
  });
}

specinv_status specinv_spectrum_create(const double* re, const double* im, const int* multiplicity, size_t n,
                                       double cluster_radius, specinv_spectrum** out) {
  return guarded([&] {
    require(re, out);
    const auto values = complex_array(re, im, n);
    std::vector<SpectrumEntry> entries;
    for (std::size_t i = 0; i < n; ++i) entries.push_back({values[i], multiplicity ? multiplicity[i] : 1});
    *out = new specinv_spectrum{Spectrum::from_entries(std::move(entries), cluster_radius), {}};
  });
}

specinv_status specinv_spectrum_parse(const char* json, specinv_spectrum** out) {
  return guarded([&] {
    require(json, out);
    *out = new specinv_spectrum{io::parse_spectrum(json), {}};
  });
}

specinv_status specinv_spectrum_load(const char* path, specinv_spectrum** out) {
  return guarded([&] {
    require(path, out);
    *out = new specinv_spectrum{io::parse_spectrum(io::read_file(path)), {}};
  });
}

namespace {
std::string spectrum_json(const specinv_spectrum& s) {
  if (s.residuals.empty()) return io::emit_spectrum(s.s);
  det::DetSpectrum roots;
  for (std::size_t i = 0; i < s.s.size(); ++i)
    roots.push_back({s.s.entries()[i].value, s.s.entries()[i].multiplicity, s.residuals[i]});
  return io::emit_spectrum(roots);
}
}  // namespace

specinv_status specinv_spectrum_to_json(const specinv_spectrum* s, char** out) {
  return guarded([&] {
    require(s, out);
    *out = to_c_string(spectrum_json(*s));
  });
}

specinv_status specinv_spectrum_save(const specinv_spectrum* s, const char* path) {
  return guarded([&] {
    require(s, path);
    io::write_file(path, spectrum_json(*s));
  });
}

size_t specinv_spectrum_size(const specinv_spectrum* s) { return s ? s->s.size() : 0; }

specinv_status specinv_spectrum_entry(const specinv_spectrum* s, size_t i, double* re, double* im, int* multiplicity,
                                      double* residual) {
  return guarded([&] {
    require(s);
    if (i >= s->s.size()) throw InputError("spectrum index out of range");
    const auto& e = s->s.entries()[i];
    if (re) *re = e.value.real();
    if (im) *im = e.value.imag();
    if (multiplicity) *multiplicity = e.multiplicity;
    if (residual) *residual = s->residuals.empty() ? 0.0 : s->residuals[i];
  });
}

specinv_status specinv_spectra_match(const specinv_spectrum* a, const specinv_spectrum* b, double tol, int* out) {
  return guarded([&] {
    require(a, b, out);
    *out = spectra_match(a->s, b->s, tol) ? 1 : 0;
  });
}

void specinv_spectrum_free(specinv_spectrum* s) { delete s; }

specinv_status specinv_rhs_value(double re, double im, double* out_re, double* out_im) {
  return guarded([&] { put(recon::rhs_value({re, im}), out_re, out_im); });
}

specinv_status specinv_vandermonde_solve(const double* node_re, const double* node_im, const double* val_re,
                                         const double* val_im, size_t n, specinv_polynomial** out) {
  return guarded([&] {
    require(out);
    const auto nodes = complex_array(node_re, node_im, n);
    const auto values = complex_array(val_re, val_im, n);
    *out = new specinv_polynomial{recon::vandermonde_solve(nodes, values)};
  });
}

specinv_status specinv_condition_estimate(const double* node_re, const double* node_im, size_t n, double* out) {
  return guarded([&] {
    require(out);
    *out = recon::condition_estimate(complex_array(node_re, node_im, n));
  });
}

specinv_status specinv_reconstruct(int degree, const specinv_spectrum* eigs, const specinv_tolerances* tol,
                                   specinv_reconstruction** out) {
  return guarded([&] {
    require(eigs, out);
    const auto t = to_tol(tol);
    if (degree < 0) throw InputError("degree must be >= 0");
    recon::ReconstructionInput input{recon::select_nodes(eigs->s, degree + 1, t), degree};
    auto result = recon::reconstruct_coeffs(input, t);
    *out = new specinv_reconstruction{std::move(result), std::move(input.nodes)};
  });
}

specinv_status specinv_reconstruction_coefficients(const specinv_reconstruction* r, specinv_polynomial** out) {
  return guarded([&] {
    require(r, out);
    *out = new specinv_polynomial{r->result.coefficients};
  });
}

double specinv_reconstruction_condition(const specinv_reconstruction* r) {
  return r ? r->result.vandermonde_condition : 0.0;
}

specinv_status specinv_reconstruction_to_json(const specinv_reconstruction* r, char** out) {
  return guarded([&] {
    require(r, out);
    *out = to_c_string(io::emit_reconstruction(r->result, r->nodes));
  });
}

void specinv_reconstruction_free(specinv_reconstruction* r) { delete r; }

void specinv_experiment_default(specinv_experiment* out) {
  if (!out) return;
  const bench::ExperimentConfig cfg;
  const auto& b = cfg.search_box;
  const auto& t = cfg.tolerances;
  *out = {cfg.seed,
          cfg.degree_min,
          cfg.degree_max,
          cfg.coeff_bound,
          {b.re_min, b.re_max, b.im_min, b.im_max},
          {t.eig_tol, t.residual_tol, t.cluster_radius, t.match_tol},
          cfg.trials,
          cfg.max_roots,
          1};
}

specinv_status specinv_roundtrip(const specinv_polynomial* a, const specinv_experiment* cfg,
                                 specinv_report_list** out) {
  return guarded([&] {
    require(a, out);
    auto c = to_config(cfg);
    c.degree_min = std::min(c.degree_min, a->p.degree());
    c.degree_max = std::max(c.degree_max, a->p.degree());
    *out = new specinv_report_list{{bench::roundtrip(a->p, c)}};
  });
}

specinv_status specinv_roundtrip_suite(const specinv_experiment* cfg, specinv_report_list** out) {
  return guarded([&] {
    require(cfg, out);
    *out = new specinv_report_list{bench::roundtrip_suite(to_config(cfg), cfg->threads)};
  });
}

size_t specinv_report_count(const specinv_report_list* r) { return r ? r->reports.size() : 0; }

specinv_status specinv_report_metrics(const specinv_report_list* r, size_t i, double* max_coeff_error,
                                      double* condition) {
  return guarded([&] {
    require(r, max_coeff_error, condition);
    if (i >= r->reports.size()) throw InputError("report index out of range");
    *max_coeff_error = r->reports[i].max_coeff_error;
    *condition = r->reports[i].condition;
  });
}

specinv_status specinv_report_to_json(const specinv_report_list* r, char** out) {
  return guarded([&] {
    require(r, out);
    *out = to_c_string(io::emit_reports(r->reports));
  });
}

specinv_status specinv_report_to_csv(const specinv_report_list* r, char** out) {
  return guarded([&] {
    require(r, out);
    *out = to_c_string(io::reports_csv(r->reports));
  });
}

specinv_status specinv_report_parse(const char* json, specinv_report_list** out) {
  return guarded([&] {
    require(json, out);
    *out = new specinv_report_list{{io::parse_report(json)}};
  });
}

void specinv_report_list_free(specinv_report_list* r) { delete r; }

specinv_status specinv_uniqueness_probe(const specinv_polynomial* a, const specinv_polynomial* b,
                                        const specinv_experiment* cfg, specinv_uniqueness** out) {
  return guarded([&] {
    require(a, b, out);
    *out = new specinv_uniqueness{bench::uniqueness_probe(a->p, b->p, to_config(cfg))};
  });
}

int specinv_uniqueness_passed(const specinv_uniqueness* u) { return u && u->report.passed ? 1 : 0; }
int specinv_uniqueness_spectra_match(const specinv_uniqueness* u) { return u && u->report.spectra_match ? 1 : 0; }

specinv_status specinv_uniqueness_to_json(const specinv_uniqueness* u, char** out) {
  return guarded([&] {
    require(u, out);
    *out = to_c_string(io::emit_uniqueness(u->report));
  });
}

void specinv_uniqueness_free(specinv_uniqueness* u) { delete u; }

specinv_status specinv_compare_neumann(const specinv_potential* a, const specinv_potential* b, int count, double tol,
                                       const specinv_tolerances* tolerances, specinv_comparison** out) {
  return guarded([&] {
    require(a, b, out);
    *out = new specinv_comparison{bench::compare_neumann(a->q, b->q, count, tol, to_tol(tolerances))};
  });
}

int specinv_comparison_match(const specinv_comparison* c) { return c && c->cmp.match ? 1 : 0; }
int specinv_comparison_zero_potential(const specinv_comparison* c) { return c && c->cmp.zero_potential ? 1 : 0; }

specinv_status specinv_comparison_to_json(const specinv_comparison* c, char** out) {
  return guarded([&] {
    require(c, out);
    *out = to_c_string(io::emit_comparison(c->cmp));
  });
}

void specinv_comparison_free(specinv_comparison* c) { delete c; }

}  // extern "C"
