#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace elastic {

/// Seeded random source used for every stochastic choice in the library
/// (weight init, latent draws, augmentation, shuffling). Its full state
/// round-trips through a string so checkpoints can resume bit-exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Independent stream for (seed, stream) pairs, e.g. one per worker.
  static Rng derive(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via Box-Muller (one value per call, no cached pair).
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  std::string state() const;
  void set_state(const std::string& text);

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace elastic
