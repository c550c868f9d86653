#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace stocksim {

/// Standard normal CDF, Phi(x).
double normal_cdf(double x);

/// Inverse standard normal CDF (quantile function). Accurate to ~1e-15 via
/// a rational approximation refined with one Halley step.
/// @pre 0 < p < 1
double normal_quantile(double p);

double mean_of(std::span<const double> xs);

/// Population standard deviation (divide by N, not N-1).
double pop_std(std::span<const double> xs);
double pop_std(std::span<const double> xs, double mean);

// ---------------------------------------------------------------------------
// Deterministic hashing / seeding.  Grid cells and ensemble trees derive
// their seeds from these so results are independent of execution order.
// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed);
std::uint64_t splitmix64(std::uint64_t x);

/// Combine a master seed with a salt into an independent stream seed.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t salt) {
  return splitmix64(master ^ splitmix64(salt + 0x9e3779b97f4a7c15ULL));
}

// ---------------------------------------------------------------------------
// Deterministic RNG helpers.  mt19937_64 output is pinned by the standard;
// the distributions below are hand-rolled because std:: distributions are
// implementation-defined and would break bit-identical reruns across
// toolchains.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform integer in [0, n). 128-bit multiply-shift; deterministic.
  std::uint64_t next_below(std::uint64_t n);

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (cosine branch only).
  double next_normal();

 private:
  std::mt19937_64 eng_;
};

}  // namespace stocksim
