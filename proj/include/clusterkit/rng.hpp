#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace clusterkit {

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic random source. All sampling goes through explicit helpers
/// so that results depend only on the seed, never on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Seed this source was created with.
  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double next_double();

  /// Uniform index in [0, n). Requires n >= 1.
  std::size_t uniform_index(std::size_t n);

  /// Index sampled proportionally to non-negative weights.
  /// Returns weights.size() when the total weight is zero.
  std::size_t pick_weighted(std::span<const double> weights);

  /// Standard normal deviate (Box-Muller).
  double normal();

  /// Independent stream derived from (seed, index). Does not consume
  /// state, so substream(i) is reproducible at any point.
  Rng substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace clusterkit
