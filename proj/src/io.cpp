#include "specinv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "specinv/errors.hpp"

namespace specinv::io {

namespace {

using Json = nlohmann::ordered_json;

int line_of(std::string_view text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what(), line_of(text, e.byte));
  }
}

const Json& field(const Json& obj, const std::string& name, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(path.empty() ? name : path + "." + name, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& name) { return path.empty() ? name : path + "." + name; }

double real_of(const Json& v, const std::string& path) {
  if (v.is_null()) return std::numeric_limits<double>::infinity();
  if (!v.is_number()) throw ParseError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(path, "not finite");
  return d;
}

double finite_real(const Json& v, const std::string& path) {
  if (v.is_null()) throw ParseError(path, "expected a number");
  return real_of(v, path);
}

Json real_json(double d) {
  if (!std::isfinite(d)) return nullptr;
  return d;
}

int int_of(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  const auto i = v.get<std::int64_t>();
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max())
    throw ParseError(path, "integer out of range");
  return static_cast<int>(i);
}

std::vector<double> real_list(const Json& v, const std::string& path, bool nonempty = true) {
  if (!v.is_array()) throw ParseError(path, "expected an array");
  if (nonempty && v.empty()) throw ParseError(path, "must not be empty");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(finite_real(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Complex complex_of(const Json& v, const std::string& path) {
  if (v.is_number()) return {finite_real(v, path), 0.0};
  const double re = finite_real(field(v, "re", path), join(path, "re"));
  double im = 0.0;
  if (auto it = v.find("im"); it != v.end()) im = finite_real(*it, join(path, "im"));
  return {re, im};
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

std::vector<Complex> complex_list(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(complex_of(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Json complex_list_json(const std::vector<Complex>& zs) {
  Json arr = Json::array();
  for (auto z : zs) arr.push_back(complex_json(z));
  return arr;
}

Polynomial polynomial_of(const Json& v, const std::string& path) {
  auto c = complex_list(v, path);
  if (c.empty()) throw ParseError(path, "must not be empty");
  return Polynomial(std::move(c));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json report_json(const bench::RoundTripReport& r) {
  Json j;
  j["true_coeffs"] = complex_list_json(r.true_coeffs.coeffs());
  j["recovered"] = complex_list_json(r.recovered.coeffs());
  j["max_coeff_error"] = real_json(r.max_coeff_error);
  j["condition"] = real_json(r.condition);
  j["nodes"] = complex_list_json(r.nodes_used);
  j["wall_time_ms"] = r.wall_time.count();
  return j;
}

std::string complex_cell(const std::vector<Complex>& zs) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < zs.size(); ++i) os << (i ? ";" : "") << zs[i].real() << ":" << zs[i].imag();
  return os.str();
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

sl::Potential parse_potential(std::string_view text) {
  const Json doc = parse_document(text);
  const Json& kind = field(doc, "kind", "");
  if (!kind.is_string()) throw ParseError("kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "constant") return sl::Potential::constant(finite_real(field(doc, "c", ""), "c"));
  if (k == "cosine") {
    double offset = 0.0;
    if (auto it = doc.find("offset"); it != doc.end()) offset = finite_real(*it, "offset");
    return sl::Potential::cosine(finite_real(field(doc, "amplitude", ""), "amplitude"),
                                 finite_real(field(doc, "frequency", ""), "frequency"), offset);
  }
  if (k == "poly_in_x") return sl::Potential::poly_in_x(real_list(field(doc, "coeffs", ""), "coeffs"));
  if (k == "grid") {
    auto nodes = real_list(field(doc, "nodes", ""), "nodes");
    auto values = real_list(field(doc, "values", ""), "values");
    if (nodes.size() < 2) throw ParseError("nodes", "grid needs at least two nodes");
    if (values.size() != nodes.size())
      throw ParseError("values", "has " + std::to_string(values.size()) + " entries, nodes has " +
                                     std::to_string(nodes.size()));
    if (nodes.front() != 0.0) throw ParseError("nodes[0]", "grid must start at 0");
    for (std::size_t j = 1; j < nodes.size(); ++j)
      if (!(nodes[j] > nodes[j - 1]))
        throw ParseError("nodes[" + std::to_string(j) + "]", "grid nodes not strictly increasing at index " +
                                                                 std::to_string(j));
    if (nodes.back() != 1.0) throw ParseError("nodes[" + std::to_string(nodes.size() - 1) + "]", "grid must end at 1");
    return sl::Potential::grid(std::move(nodes), std::move(values));
  }
  throw ParseError("kind", "unknown potential kind '" + k + "'");
}

std::string emit_potential(const sl::Potential& q) {
  Json j;
  j["kind"] = sl::to_string(q.kind());
  switch (q.kind()) {
    case sl::PotentialKind::constant: j["c"] = q.constant_value(); break;
    case sl::PotentialKind::grid:
      j["nodes"] = q.nodes();
      j["values"] = q.values();
      break;
    case sl::PotentialKind::cosine:
      j["amplitude"] = q.amplitude();
      j["frequency"] = q.frequency();
      if (q.offset() != 0.0) j["offset"] = q.offset();
      break;
    case sl::PotentialKind::poly_in_x: j["coeffs"] = q.coeffs(); break;
  }
  return dump(j);
}

Spectrum parse_spectrum(std::string_view text) {
  const Json doc = parse_document(text);
  const Json& entries = field(doc, "entries", "");
  if (!entries.is_array()) throw ParseError("entries", "expected an array");
  if (entries.empty()) throw ParseError("entries", "a spectrum needs at least one entry");
  std::vector<SpectrumEntry> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = "entries[" + std::to_string(i) + "]";
    const Json& e = entries[i];
    if (!e.is_object()) throw ParseError(path, "expected an object");
    const Complex v = complex_of(e, path);
    int m = 1;
    if (auto it = e.find("multiplicity"); it != e.end()) m = int_of(*it, join(path, "multiplicity"));
    if (m < 1) throw ParseError(join(path, "multiplicity"), "must be a positive integer");
    out.push_back({v, m});
  }
  Spectrum s = Spectrum::from_entries(out, 0.0);
  if (s.size() != out.size()) throw ParseError("entries", "duplicate eigenvalues; merge them into one entry");
  return s;
}

std::string emit_spectrum(const Spectrum& s) {
  Json arr = Json::array();
  for (const auto& e : s.entries())
    arr.push_back(Json{{"re", e.value.real()}, {"im", e.value.imag()}, {"multiplicity", e.multiplicity}});
  return dump(Json{{"entries", arr}});
}

std::string emit_spectrum(const sl::NeumannSpectrum& s) {
  Json arr = Json::array();
  for (double v : s.values()) arr.push_back(Json{{"re", v}, {"im", 0.0}, {"multiplicity", 1}});
  return dump(Json{{"entries", arr}});
}

std::string emit_spectrum(const det::DetSpectrum& s) {
  Json arr = Json::array();
  for (const auto& r : s)
    arr.push_back(Json{{"re", r.value.real()},
                       {"im", r.value.imag()},
                       {"multiplicity", r.multiplicity},
                       {"residual", r.residual}});
  return dump(Json{{"entries", arr}});
}

bench::RoundTripReport parse_report(std::string_view text) {
  const Json doc = parse_document(text);
  bench::RoundTripReport r;
  r.true_coeffs = polynomial_of(field(doc, "true_coeffs", ""), "true_coeffs");
  r.recovered = polynomial_of(field(doc, "recovered", ""), "recovered");
  if (r.true_coeffs.degree() != r.recovered.degree())
    throw ParseError("recovered", "degree differs from true_coeffs");
  r.max_coeff_error = real_of(field(doc, "max_coeff_error", ""), "max_coeff_error");
  r.condition = real_of(field(doc, "condition", ""), "condition");
  r.nodes_used = complex_list(field(doc, "nodes", ""), "nodes");
  r.wall_time = std::chrono::duration<double, std::milli>(finite_real(field(doc, "wall_time_ms", ""), "wall_time_ms"));
  return r;
}

std::string emit_report(const bench::RoundTripReport& r) { return dump(report_json(r)); }

std::string emit_reports(const std::vector<bench::RoundTripReport>& reports) {
  if (reports.size() == 1) return emit_report(reports.front());
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return dump(arr);
}

std::string emit_reconstruction(const recon::ReconstructionResult& r, const std::vector<Complex>& nodes) {
  Json j;
  j["coefficients"] = complex_list_json(r.coefficients.coeffs());
  j["nodes"] = complex_list_json(nodes);
  j["node_residuals"] = r.node_residuals;
  j["condition"] = real_json(r.vandermonde_condition);
  return dump(j);
}

std::string emit_uniqueness(const bench::UniquenessReport& r) {
  Json j;
  j["coeffs_a"] = complex_list_json(r.a.coeffs());
  j["coeffs_b"] = complex_list_json(r.b.coeffs());
  j["roots_a"] = r.spectrum_a.size();
  j["roots_b"] = r.spectrum_b.size();
  j["spectra_match"] = r.spectra_match;
  j["recovered_a"] = complex_list_json(r.from_a.coefficients.coeffs());
  j["recovered_b"] = complex_list_json(r.from_b.coefficients.coeffs());
  j["error_a"] = real_json(r.error_a);
  j["error_b"] = real_json(r.error_b);
  j["condition_a"] = real_json(r.from_a.vandermonde_condition);
  j["condition_b"] = real_json(r.from_b.vandermonde_condition);
  j["passed"] = r.passed;
  return dump(j);
}

std::string emit_comparison(const bench::NeumannComparison& c) {
  Json j;
  j["match"] = c.match;
  j["eigenvalues_a"] = c.spectrum_a.values();
  j["eigenvalues_b"] = c.spectrum_b.values();
  j["gaps"] = c.gaps;
  j["free_a"] = c.free_a;
  j["free_b"] = c.free_b;
  j["zero_potential"] = c.zero_potential;
  return dump(j);
}

std::string reports_csv(const std::vector<bench::RoundTripReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "trial,degree,true_coeffs,recovered,max_coeff_error,condition,nodes,wall_time_ms\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    os << i << ',' << r.true_coeffs.degree() << ',' << complex_cell(r.true_coeffs.coeffs()) << ','
       << complex_cell(r.recovered.coeffs()) << ',' << r.max_coeff_error << ',' << r.condition << ','
       << complex_cell(r.nodes_used) << ',' << r.wall_time.count() << '\n';
  }
  return os.str();
}

std::vector<double> parse_number_list(std::string_view text, const std::string& name) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size() || !std::isfinite(v))
      throw ParseError(name + "[" + std::to_string(out.size()) + "]", "not a number: '" + std::string(item) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace specinv::io
