#include "clusterkit/detect.hpp"

#include <stdexcept>

#include "clusterkit/enumeration.hpp"
#include "clusterkit/kernel_kmeans.hpp"
#include "clusterkit/objective.hpp"
#include "clusterkit/oracle.hpp"
#include "clusterkit/seeding.hpp"
#include "clusterkit/separability.hpp"

namespace clusterkit {

namespace {

constexpr int kLloydIterationCap = 100;

// Substream indices are mixed from structured coordinates so that every
// (k, restart) pair and every sub-cluster probe draws independent bits.
std::uint64_t mix_index(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return splitmix64(splitmix64(a * 0x100000001b3ULL + b) ^ c);
}

struct SearchOutcome {
  std::vector<double> restart_q;
  int failed_restarts = 0;
  int undersized_results = 0;
  std::optional<Partition> best;
};

// Runs the restart budget of seeding + Lloyd at one cluster count and keeps
// the lowest-Q result that forms a valid partition.
SearchOutcome search_level(const DistanceMatrix& d, int k, Criterion criterion, int restarts,
                           const Rng& base) {
  SearchOutcome out;
  double best_q = 0.0;
  for (int r = 0; r < restarts; ++r) {
    Rng stream = base.substream(static_cast<std::uint64_t>(r));
    SeedingRun seeding = criterion == Criterion::Variational
                             ? kmeanspp_seed(d, k, stream)
                             : res_kmeanspp_seed(d, k, stream);
    LloydResult lloyd = kernel_lloyd(d, seeding.seeds, kLloydIterationCap);
    if (lloyd.status == LloydStatus::EmptyCluster) {
      ++out.failed_restarts;
      continue;
    }
    out.restart_q.push_back(lloyd.q);
    if (!lloyd.min_sizes_ok) {
      ++out.undersized_results;
      continue;
    }
    if (!out.best || lloyd.q < best_q) {
      out.best = lloyd.to_partition();
      best_q = lloyd.q;
    }
  }
  return out;
}

// True when some k'-way split of the given cluster is itself separable.
bool subcluster_separable(const DistanceMatrix& sub, int k_prime, Criterion criterion,
                          int restarts, const Rng& base, bool& used_oracle) {
  if (sub.size() <= kEnumerationCap) {
    used_oracle = true;
    return exists_separable_partition(sub, k_prime, criterion);
  }
  used_oracle = false;
  SearchOutcome out = search_level(sub, k_prime, criterion, restarts, base);
  if (!out.best) return false;
  return certify(sub, *out.best, criterion).valid;
}

}  // namespace

DetectionResult detect_range(const DistanceMatrix& d, int k_max, Criterion criterion,
                             int restarts, Rng& rng) {
  if (k_max < 2) throw std::invalid_argument("detect_range: k_max must be at least 2");
  if (restarts < 1) throw std::invalid_argument("detect_range: restarts must be at least 1");
  int n = d.size();

  DetectionResult result;
  result.criterion = criterion;
  result.k_max = k_max;
  result.restarts = restarts;
  result.rng_seed = rng.seed();

  for (int k = 2; k <= k_max; ++k) {
    LevelEvidence ev;
    ev.k = k;
    if (2 * k > n) {
      ev.feasible = false;
      result.levels.push_back(std::move(ev));
      continue;
    }
    Rng base = rng.substream(mix_index(1, static_cast<std::uint64_t>(k), 0));
    SearchOutcome out = search_level(d, k, criterion, restarts, base);
    ev.restart_q = std::move(out.restart_q);
    ev.failed_restarts = out.failed_restarts;
    ev.undersized_results = out.undersized_results;
    if (out.best) {
      ev.certificate = certify(d, *out.best, criterion);
      ev.best = std::move(out.best);
    }
    result.levels.push_back(std::move(ev));
  }

  // Maximal certified k whose clusters carry no separable sub-structure in
  // the remaining budget [2, k_max - k + 1].
  for (int idx = static_cast<int>(result.levels.size()) - 1; idx >= 0; --idx) {
    const LevelEvidence& ev = result.levels[idx];
    if (!ev.certificate || !ev.certificate->valid) continue;
    int k = ev.k;
    const Partition& candidate = *ev.best;
    bool clean = true;
    for (int ci = 0; ci < candidate.k() && clean; ++ci) {
      const std::vector<int>& members = candidate.cluster(ci);
      for (int kp = 2; kp <= k_max - k + 1; ++kp) {
        if (2 * kp > static_cast<int>(members.size())) continue;  // no feasible split
        DistanceMatrix sub = d.submatrix(members);
        Rng base = rng.substream(
            mix_index(2, static_cast<std::uint64_t>(k) * 64 + static_cast<std::uint64_t>(ci),
                      static_cast<std::uint64_t>(kp)));
        bool used_oracle = false;
        bool separable = subcluster_separable(sub, kp, criterion, restarts, base, used_oracle);
        result.subcluster_checks.push_back({k, ci, kp, used_oracle, separable});
        if (separable) {
          clean = false;
          break;
        }
      }
    }
    if (clean) {
      result.partition = candidate;
      result.level = k;
      break;
    }
  }
  return result;
}

}  // namespace clusterkit
