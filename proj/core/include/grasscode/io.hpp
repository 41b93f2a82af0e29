#pragma once

// Constellation files, metrics reports and simulation output.
//
// A constellation file is JSON with a fixed layout: every double is written
// as %.16e (17 significant digits, exact round trip), matrices row-major,
// one matrix row per line. Identical constellations therefore serialize to
// identical bytes and hash identically.

#include <filesystem>
#include <string>
#include <string_view>

#include "grasscode/designer.hpp"
#include "grasscode/montecarlo.hpp"

namespace grasscode {

inline constexpr int kFormatVersion = 1;

/// %.16e, the canonical spelling of a double in every output file.
std::string format_double(double v);

std::string write_constellation(const Constellation& c);
Constellation read_constellation(std::string_view text);

void save_constellation(const Constellation& c, const std::filesystem::path& path);
Constellation load_constellation(const std::filesystem::path& path);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string constellation_hash(const Constellation& c);

/// The 2M² matrices Δ̃_k in the constellation layout (design_case "basis").
std::string write_basis_dump(int M);

struct MetricsReport {
  ConstellationMetrics metrics;
  int L = 0;
  int T = 0;
  int M = 0;
};

MetricsReport compute_metrics_report(const Constellation& c, int n_for_ub);
std::string format_metrics_report(const MetricsReport& r);

/// x, d_g, d_c, dp, ub
std::string sweep_csv(const MappingSweep& sweep);

/// snr_db, trials, sym_errors, bit_errors, ser, ber, ser_ci, ber_ci
std::string sim_result_csv(const SimResult& r);
std::string sim_result_json(const SimResult& r);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace grasscode
