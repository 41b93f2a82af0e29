#pragma once

// Rayleigh block-fading channel Y = X H + sqrt(M / (T ρ)) W and the
// counter-based random streams that drive it.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "grasscode/grassmann.hpp"

namespace grasscode {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream addressed by (seed, stream, index): the draws of trial `index` at
/// SNR point `stream` never depend on which worker runs it or in what order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept
      : state_(mix64(mix64(mix64(seed) ^ (stream + kGamma)) ^ (index * kGamma + 1))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += kGamma;
    return mix64(state_);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// sqrt(M / (T ρ)); zero for ρ = +∞.
inline double noise_scale(Eigen::Index T, Eigen::Index M, double rho) {
  if (std::isinf(rho)) return 0.0;
  return std::sqrt(static_cast<double>(M) / (static_cast<double>(T) * rho));
}

/// i.i.d. CN(0, 1) entries: real and imaginary parts N(0, 1/2).
template <class Rng>
CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im);
    }
  }
  return out;
}

struct Block {
  CMatrix H;      // M×N
  CMatrix noise;  // T×N, already scaled
  CMatrix Y;      // T×N
};

/// H is drawn before W so the channel of a trial does not depend on ρ.
template <class Rng>
Block draw_block(const StiefelPoint& x, int N, double rho, Rng& rng) {
  if (N < 1) throw Error(Errc::InvalidArgument, "N must be >= 1");
  if (!(rho > 0.0)) throw Error(Errc::InvalidArgument, "SNR must be positive");
  Block b;
  b.H = complex_gaussian(x.M(), N, rng);
  b.noise = noise_scale(x.T(), x.M(), rho) * complex_gaussian(x.T(), N, rng);
  b.Y = x.matrix() * b.H + b.noise;
  return b;
}

template <class Rng>
CMatrix simulate_block(const StiefelPoint& x, int N, double rho, Rng& rng) {
  return draw_block(x, N, rho, rng).Y;
}

}  // namespace grasscode
