#pragma once

#include <vector>

#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/embedded_dataset.hpp"
#include "clusterkit/partition.hpp"

namespace clusterkit {

/// k-means objective in pairwise form:
///   Q = sum_j 1/(2 n_j) * sum_{i in C_j} sum_{l in C_j} d(i,l)^2
/// The double sum runs over ordered pairs in row-major order, so the
/// floating-point result is reproducible.
double quality(const DistanceMatrix& d, const Partition& g);

/// Same objective evaluated on raw clusters (used by enumeration paths
/// where blocks may bypass Partition validation). Blocks must be non-empty.
double quality_blocks(const DistanceMatrix& d, const std::vector<std::vector<int>>& blocks);

/// Centroid form: sum of squared Euclidean distances to cluster means.
/// Equals the pairwise form evaluated on pairwise_distances(points).
double quality_euclidean(const EmbeddedDataset& points, const Partition& g);

/// Residual functional: beta = 2 Q - (n - k - 1) sigma^2.
double beta(const DistanceMatrix& d, const Partition& g);

/// Smallest distance between points in different clusters. Requires k >= 2.
double min_inter_cluster_distance(const DistanceMatrix& d, const Partition& g);

}  // namespace clusterkit
