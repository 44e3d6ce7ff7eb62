#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace speceq {

// splitmix64 finalizer; used to derive independent per-replication seeds
// from (base_seed, stream_index) without sequence coupling.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic variate generator. mt19937_64 output is fully specified by
// the standard and the transforms below are hand-rolled, so streams are
// bit-reproducible across platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform on (0, 1), never returns 0 or 1
  double uniform() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
  }

  // standard normal via Box-Muller
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // standard exponential
  double exponential() { return -std::log(uniform()); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace speceq
