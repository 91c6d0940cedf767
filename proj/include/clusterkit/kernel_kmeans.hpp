#pragma once

#include <span>
#include <vector>

#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/partition.hpp"

namespace clusterkit {

/// Squared distance of point i to the implicit centroid of cluster:
///   1/|C| sum_{l in C} d(i,l)^2  -  1/(2 |C|^2) sum_{l,l' in C} d(l,l')^2
/// May be negative for non-Euclidean matrices; returned as-is.
double kernel_point_to_cluster(const DistanceMatrix& d, int i, std::span<const int> cluster);

enum class LloydStatus {
  FixedPoint,      // no point prefers another cluster
  MaxIterReached,  // iteration budget exhausted
  EmptyCluster,    // a batch update emptied a cluster; result is the state before it
  Stalled,         // a batch update would have raised Q (non-Euclidean input)
};

struct LloydResult {
  std::vector<int> assignment;  // point -> cluster id in [0, k)
  int k = 0;
  LloydStatus status = LloydStatus::FixedPoint;
  int iterations = 0;           // completed batch updates
  double q = 0.0;               // objective of the returned assignment
  std::vector<double> q_trace;  // objective after each accepted state, starting with the initial one
  bool min_sizes_ok = false;    // every cluster has >= 2 points

  std::vector<std::vector<int>> clusters() const;
  /// Throws unless the result is a valid partition (all sizes >= 2, no
  /// empty-cluster abort).
  Partition to_partition() const;
};

/// Batch kernel Lloyd iteration from explicit seed points. The initial
/// assignment sends every point to its nearest seed by d (ties to the
/// earliest seed). Q never increases across accepted iterations.
LloydResult kernel_lloyd(const DistanceMatrix& d, std::span<const int> seeds, int max_iter = 100);

/// Same iteration started from an existing partition.
LloydResult kernel_lloyd(const DistanceMatrix& d, const Partition& initial, int max_iter = 100);

}  // namespace clusterkit
