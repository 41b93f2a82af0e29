#include "grasscode/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <random>
#include <thread>

#include "grasscode/channel.hpp"
#include "grasscode/detector.hpp"
#include "grasscode/io.hpp"

namespace grasscode {

std::string_view to_string(DetectorKind d) noexcept {
  return d == DetectorKind::Fast ? "fast" : "naive";
}

DetectorKind parse_detector(std::string_view s) {
  if (s == "fast") return DetectorKind::Fast;
  if (s == "naive") return DetectorKind::Naive;
  throw Error(Errc::InvalidArgument, "unknown detector '" + std::string(s) + "'");
}

double wilson_half_width(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) return 0.0;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  return z / (1.0 + z2 / nn) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
}

unsigned resolve_worker_count(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GRASSCODE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

namespace {

struct Counts {
  std::uint64_t sym = 0;
  std::uint64_t bit = 0;
};

class TrialRunner {
 public:
  TrialRunner(const ChannelConfig& cfg, const Constellation& c)
      : cfg_(cfg), c_(c), naive_(c.points) {
    if (cfg.detector == DetectorKind::Fast) {
      if (!c.has_sparse()) throw Error(Errc::NotRowSparse, "fast detector needs a row-sparse constellation");
      fast_.emplace(c.sparse, c.M);
    }
  }

  Counts run(std::size_t snr_index, double rho, std::uint64_t first, std::uint64_t last) const {
    Counts counts;
    std::uniform_int_distribution<int> pick(0, c_.L() - 1);
    for (std::uint64_t trial = first; trial < last; ++trial) {
      CounterRng rng(cfg_.seed, snr_index, trial);
      const auto sent = static_cast<std::size_t>(pick(rng));
      const CMatrix y = simulate_block(c_.points[sent], cfg_.N, rho, rng);
      const std::size_t got = fast_ ? fast_->detect(y) : naive_.detect(y);
      if (got != sent) {
        ++counts.sym;
        counts.bit += static_cast<std::uint64_t>(std::popcount(c_.labels[sent] ^ c_.labels[got]));
      }
    }
    return counts;
  }

 private:
  const ChannelConfig& cfg_;
  const Constellation& c_;
  NaiveDetector naive_;
  std::optional<FastDetector> fast_;
};

}  // namespace

SimResult run_monte_carlo(const ChannelConfig& cfg, const Constellation& c) {
  if (cfg.N < 1) throw Error(Errc::InvalidArgument, "N must be >= 1");
  if (cfg.max_trials < 1) throw Error(Errc::InvalidArgument, "trials must be >= 1");
  if (cfg.batch < 1) throw Error(Errc::InvalidArgument, "batch must be >= 1");
  if (c.L() < 2) throw Error(Errc::InvalidArgument, "constellation needs at least two points");
  if (c.labels.size() != c.points.size()) throw Error(Errc::StructureMissing, "constellation has no labels");

  const auto start = std::chrono::steady_clock::now();
  const TrialRunner runner(cfg, c);
  const unsigned workers = resolve_worker_count(cfg.threads);
  const int bits = c.bits();

  SimResult result;
  result.config = cfg;
  result.T = c.T;
  result.M = c.M;
  result.L = c.L();
  result.constellation_hash = constellation_hash(c);

  for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
    const double rho = db_to_linear(cfg.snr_db[s]);
    SnrPointResult point;
    point.snr_db = cfg.snr_db[s];
    while (point.trials < cfg.max_trials && (cfg.min_errors == 0 || point.sym_errors < cfg.min_errors)) {
      const std::uint64_t n = std::min(cfg.batch, cfg.max_trials - point.trials);
      const std::uint64_t first = point.trials;
      const unsigned used = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));
      std::vector<Counts> partial(used);
      if (used == 1) {
        partial[0] = runner.run(s, rho, first, first + n);
      } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < used; ++w) {
          const std::uint64_t lo = first + n * w / used;
          const std::uint64_t hi = first + n * (w + 1) / used;
          pool.emplace_back([&, w, lo, hi] { partial[w] = runner.run(s, rho, lo, hi); });
        }
      }
      for (const Counts& p : partial) {
        point.sym_errors += p.sym;
        point.bit_errors += p.bit;
      }
      point.trials += n;
    }
    const std::uint64_t total_bits = point.trials * static_cast<std::uint64_t>(bits);
    point.ser = static_cast<double>(point.sym_errors) / static_cast<double>(point.trials);
    point.ber = static_cast<double>(point.bit_errors) / static_cast<double>(total_bits);
    point.ser_ci = wilson_half_width(point.sym_errors, point.trials);
    point.ber_ci = wilson_half_width(point.bit_errors, total_bits);
    result.points.push_back(point);
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Constellation random_grassmannian_baseline(int T, int M, int L, std::uint64_t seed) {
  if (M < 1 || T < M) throw Error(Errc::DimensionMismatch, "need 1 <= M <= T");
  if (L < 2) throw Error(Errc::InvalidArgument, "L must be >= 2");
  Constellation c;
  c.T = T;
  c.M = M;
  c.design_case = DesignCase::Random;
  c.criterion = Criterion::None;
  for (int i = 0; i < L; ++i) {
    CounterRng rng(seed, 0, static_cast<std::uint64_t>(i));
    const CMatrix g = complex_gaussian(T, M, rng);
    const Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(T, M);
    c.points.push_back(StiefelPoint::validate(std::move(q)));
    c.labels.push_back(static_cast<std::uint32_t>(i));
  }
  return c;
}

}  // namespace grasscode
