#pragma once

// SER/BER estimation over i.i.d. Rayleigh block fading.

#include <cstdint>
#include <string>
#include <vector>

#include "grasscode/designer.hpp"

namespace grasscode {

enum class DetectorKind { Fast, Naive };

std::string_view to_string(DetectorKind d) noexcept;
DetectorKind parse_detector(std::string_view s);

struct ChannelConfig {
  int N = 1;
  std::vector<double> snr_db;
  std::uint64_t max_trials = 100000;
  /// Stop a point once this many symbol errors are seen (0 disables).
  std::uint64_t min_errors = 200;
  std::uint64_t seed = 1;
  DetectorKind detector = DetectorKind::Fast;
  /// 0 picks the hardware concurrency, capped by GRASSCODE_THREADS.
  unsigned threads = 0;
  /// Stopping is checked between batches; results depend on this, not on
  /// the worker count.
  std::uint64_t batch = 4096;
};

struct SnrPointResult {
  double snr_db = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t sym_errors = 0;
  std::uint64_t bit_errors = 0;
  double ser = 0.0;
  double ber = 0.0;
  double ser_ci = 0.0;  // 95% Wilson half-width
  double ber_ci = 0.0;
};

struct SimResult {
  std::vector<SnrPointResult> points;
  double wall_seconds = 0.0;
  ChannelConfig config;
  int T = 0;
  int M = 0;
  int L = 0;
  std::string constellation_hash;
};

/// Half-width of the 95% Wilson score interval for k successes in n trials.
double wilson_half_width(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054);

unsigned resolve_worker_count(unsigned requested);

SimResult run_monte_carlo(const ChannelConfig& cfg, const Constellation& c);

/// L orthonormalized complex Gaussian T×M matrices with index labels; not
/// row-sparse.
Constellation random_grassmannian_baseline(int T, int M, int L, std::uint64_t seed);

}  // namespace grasscode
