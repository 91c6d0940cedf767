#include "clusterkit/seeding.hpp"

#include <cmath>
#include <stdexcept>

#include "clusterkit/parallel.hpp"

namespace clusterkit {

namespace {

// z for a two-sided 99% normal interval.
constexpr double kZ99 = 2.5758293035489004;

SeedingRun run_seeding(const DistanceMatrix& d, int k, Rng& rng, SeedingMode mode) {
  int n = d.size();
  if (k < 1 || k > n) throw std::invalid_argument("seeding: k must be in [1, n]");
  SeedingRun run;
  run.mode = mode;
  run.rng_seed = rng.seed();
  run.seeds.reserve(static_cast<std::size_t>(k));

  double sigma_sq = 0.0;
  if (mode == SeedingMode::ResidualDsquared && n >= 2) {
    double sigma = min_distance(d);
    sigma_sq = sigma * sigma;
  }

  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  std::vector<double> nearest_sq(static_cast<std::size_t>(n), 0.0);

  int first = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n)));
  run.seeds.push_back(first);
  chosen[first] = 1;
  for (int i = 0; i < n; ++i) {
    double v = d(i, first);
    nearest_sq[i] = v * v;
  }

  std::vector<double> weights(static_cast<std::size_t>(n));
  while (static_cast<int>(run.seeds.size()) < k) {
    for (int i = 0; i < n; ++i) {
      if (chosen[i]) {
        weights[i] = 0.0;
      } else if (mode == SeedingMode::Dsquared) {
        weights[i] = nearest_sq[i];
      } else {
        double w = nearest_sq[i] - sigma_sq;
        weights[i] = w > 0.0 ? w : 0.0;
      }
    }
    std::size_t pick = rng.pick_weighted(weights);
    if (pick >= static_cast<std::size_t>(n)) {
      // All weights zero. Impossible for plain D^2 on a valid matrix
      // (unseeded points keep positive distance to every seed); the
      // residual variant falls back to a uniform pick among unseeded.
      run.used_uniform_fallback = true;
      std::vector<int> open;
      for (int i = 0; i < n; ++i)
        if (!chosen[i]) open.push_back(i);
      pick = static_cast<std::size_t>(open[rng.uniform_index(open.size())]);
    }
    int s = static_cast<int>(pick);
    run.seeds.push_back(s);
    chosen[s] = 1;
    for (int i = 0; i < n; ++i) {
      double v = d(i, s);
      double sq = v * v;
      if (sq < nearest_sq[i]) nearest_sq[i] = sq;
    }
  }
  return run;
}

}  // namespace

SeedingRun kmeanspp_seed(const DistanceMatrix& d, int k, Rng& rng) {
  return run_seeding(d, k, rng, SeedingMode::Dsquared);
}

SeedingRun res_kmeanspp_seed(const DistanceMatrix& d, int k, Rng& rng) {
  return run_seeding(d, k, rng, SeedingMode::ResidualDsquared);
}

bool hits_all_clusters(std::span<const int> seeds, const Partition& g) {
  std::vector<char> hit(static_cast<std::size_t>(g.k()), 0);
  for (int s : seeds) hit[g.cluster_of(s)] = 1;
  for (char h : hit)
    if (!h) return false;
  return true;
}

double hitting_probability_bound(int m, int k) {
  if (m < 1 || k < 1) throw std::invalid_argument("hitting_probability_bound: m and k must be positive");
  double p = 1.0;
  for (int i = 1; i <= k - 1; ++i) {
    double denom = static_cast<double>(m) * static_cast<double>(k - i) + 1.0;
    p *= 1.0 - 1.0 / denom;
  }
  return p;
}

HittingEstimate estimate_hitting_probability(const DistanceMatrix& d, const Partition& g,
                                             SeedingMode mode, int trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("estimate_hitting_probability: trials must be >= 1");
  if (g.n() != d.size())
    throw std::invalid_argument("estimate_hitting_probability: partition does not match matrix");
  int k = g.k();
  std::vector<char> hit(static_cast<std::size_t>(trials), 0);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    Rng local = rng.substream(t);
    SeedingRun run = run_seeding(d, k, local, mode);
    hit[t] = hits_all_clusters(run.seeds, g) ? 1 : 0;
  });
  int hits = 0;
  for (char h : hit) hits += h;
  HittingEstimate est;
  est.trials = trials;
  est.hits = hits;
  est.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  double se = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
  est.ci_low = est.estimate - kZ99 * se;
  est.ci_high = est.estimate + kZ99 * se;
  if (est.ci_low < 0.0) est.ci_low = 0.0;
  if (est.ci_high > 1.0) est.ci_high = 1.0;
  return est;
}

}  // namespace clusterkit
