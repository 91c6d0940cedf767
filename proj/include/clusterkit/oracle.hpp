#pragma once

#include <cstdint>

#include "clusterkit/certificate.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/partition.hpp"

namespace clusterkit {

struct OracleResult {
  Partition best_partition;
  double best_value = 0.0;
  /// True when exactly one partition attains best_value within 1e-12
  /// relative tolerance.
  bool unique = false;
  std::uint64_t partitions_examined = 0;
};

/// Exhaustive minimizer of the k-means objective over all partitions into
/// k blocks of size >= min_size. Ties are broken toward the canonically
/// smallest partition. Throws when n exceeds the enumeration cap or no
/// feasible partition exists.
OracleResult brute_force_optimal(const DistanceMatrix& d, int k, int min_size = 2);

/// True when some partition of the points of d into k clusters (sizes
/// >= 2) satisfies the given criterion's certificate. Exhaustive; n is
/// limited by the enumeration cap.
bool exists_separable_partition(const DistanceMatrix& d, int k, Criterion criterion);

}  // namespace clusterkit
