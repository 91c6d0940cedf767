#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/partition.hpp"
#include "clusterkit/rng.hpp"

namespace clusterkit {

enum class SeedingMode { Dsquared, ResidualDsquared };

struct SeedingRun {
  std::vector<int> seeds;  // distinct point indices, in pick order
  SeedingMode mode = SeedingMode::Dsquared;
  std::uint64_t rng_seed = 0;
  std::optional<bool> hit_all;  // filled when a reference partition is known
  bool used_uniform_fallback = false;
};

/// D^2 seeding: first seed uniform, each next seed sampled with probability
/// proportional to the squared distance to the nearest chosen seed.
/// Requires 1 <= k <= n.
SeedingRun kmeanspp_seed(const DistanceMatrix& d, int k, Rng& rng);

/// Residual variant: weights are max(0, D(x)^2 - sigma^2). When every
/// remaining weight is zero the step falls back to a uniform pick among
/// unseeded points, and the run records that it did.
SeedingRun res_kmeanspp_seed(const DistanceMatrix& d, int k, Rng& rng);

/// True when every cluster of g contains at least one seed.
bool hits_all_clusters(std::span<const int> seeds, const Partition& g);

/// Closed-form lower bound on the probability that D^2 seeding hits every
/// cluster of a well-separated instance with k clusters of size >= m:
///   prod_{i=1..k-1} (1 - 1 / (m (k - i) + 1))
double hitting_probability_bound(int m, int k);

struct HittingEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int trials = 0;
  int hits = 0;
};

/// Monte Carlo estimate of the hit-all probability for seeding k = g.k()
/// seeds, with a 99% binomial confidence interval. Trials derive
/// independent substreams from rng's seed, so the estimate is
/// reproducible regardless of thread count.
HittingEstimate estimate_hitting_probability(const DistanceMatrix& d, const Partition& g,
                                             SeedingMode mode, int trials, Rng& rng);

}  // namespace clusterkit
