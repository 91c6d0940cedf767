#pragma once

#include <vector>

#include "clusterkit/distance_matrix.hpp"

namespace clusterkit {

/// Points in Euclidean space, row-major n x dim.
struct EmbeddedDataset {
  int n = 0;
  int dim = 0;
  std::vector<double> coords;

  double at(int i, int c) const { return coords[static_cast<std::size_t>(i) * dim + c]; }
  double& at(int i, int c) { return coords[static_cast<std::size_t>(i) * dim + c]; }
};

/// Euclidean pairwise distances of the dataset. Throws if two points
/// coincide (the result would violate off-diagonal positivity).
DistanceMatrix pairwise_distances(const EmbeddedDataset& points);

}  // namespace clusterkit
