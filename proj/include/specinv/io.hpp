#pragma once

// JSON documents for potentials, spectra and reports, plus CSV export.
// Parsing is strict: a malformed document raises ParseError naming the
// offending field (and line, for syntax errors).

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "specinv/char_det.hpp"
#include "specinv/core.hpp"
#include "specinv/reconstruct.hpp"
#include "specinv/sl_forward.hpp"
#include "specinv/workbench.hpp"

namespace specinv::io {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

sl::Potential parse_potential(std::string_view text);
std::string emit_potential(const sl::Potential& q);

// { "entries": [ { "re": r, "im": i, "multiplicity": m }, ... ] }, at least
// one entry; "im" defaults to 0. Entries come back sorted by (re, im).
Spectrum parse_spectrum(std::string_view text);
std::string emit_spectrum(const Spectrum& s);
std::string emit_spectrum(const sl::NeumannSpectrum& s);
// Spectrum schema with an extra "residual" per entry.
std::string emit_spectrum(const det::DetSpectrum& s);

bench::RoundTripReport parse_report(std::string_view text);
std::string emit_report(const bench::RoundTripReport& r);
std::string emit_reports(const std::vector<bench::RoundTripReport>& reports);

std::string emit_reconstruction(const recon::ReconstructionResult& r, const std::vector<Complex>& nodes);
std::string emit_uniqueness(const bench::UniquenessReport& r);
std::string emit_comparison(const bench::NeumannComparison& c);

// One row per trial after a header row; complex lists as "re:im;re:im".
std::string reports_csv(const std::vector<bench::RoundTripReport>& reports);

// "1,2.5,-3" -> real coefficient list. ParseError naming `field`.
std::vector<double> parse_number_list(std::string_view text, const std::string& field);

}  // namespace specinv::io
