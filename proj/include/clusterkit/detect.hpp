#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "clusterkit/certificate.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/partition.hpp"
#include "clusterkit/rng.hpp"

namespace clusterkit {

/// Evidence gathered while searching one cluster count.
struct LevelEvidence {
  int k = 0;
  bool feasible = true;             // false when 2k exceeds n
  std::vector<double> restart_q;    // objective of each completed restart
  int failed_restarts = 0;          // runs aborted on an emptied cluster
  int undersized_results = 0;       // runs whose final clusters include a size-1 cluster
  std::optional<Partition> best;    // lowest-Q candidate with all cluster sizes >= 2
  std::optional<SeparabilityCertificate> certificate;  // best's audit; only valid ones count
};

/// One sub-cluster separability probe performed during level selection.
struct SubclusterCheck {
  int level_k = 0;       // certified k whose cluster was probed
  int cluster_index = 0; // canonical cluster index within that partition
  int k_prime = 0;       // sub-cluster count probed
  bool oracle = false;   // exhaustive when true, restart heuristic otherwise
  bool separable = false;
};

struct DetectionResult {
  Criterion criterion = Criterion::Variational;
  int k_max = 0;
  int restarts = 0;
  std::uint64_t rng_seed = 0;
  std::optional<Partition> partition;  // absent when no k certifies
  int level = 0;                       // 0 when absent
  std::vector<LevelEvidence> levels;
  std::vector<SubclusterCheck> subcluster_checks;
};

/// Master detection: for each k in [2, k_max] runs seeded restarts of
/// kernel Lloyd (D^2 seeding for Variational, the residual variant for
/// Residual), certifies the best completed result, then returns the
/// maximal certified k none of whose clusters is itself k'-separable for
/// k' in [2, k_max - k + 1]. Sub-cluster probes are exhaustive up to the
/// enumeration cap and restart-based above it; every probe is recorded.
/// Deterministic given rng's seed.
DetectionResult detect_range(const DistanceMatrix& d, int k_max, Criterion criterion,
                             int restarts, Rng& rng);

}  // namespace clusterkit
