#pragma once

#include "clusterkit/certificate.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/partition.hpp"

namespace clusterkit {

/// Certificate comparing the smallest inter-cluster distance against
/// sqrt(2 Q). When valid, the partition minimizes the k-means objective
/// among partitions with the same number of clusters. Requires k >= 2.
SeparabilityCertificate is_variationally_separable(const DistanceMatrix& d, const Partition& g);

/// Certificate comparing the smallest inter-cluster distance against
/// sqrt(2 beta). Under a squared shift by delta, beta grows by exactly
/// delta while Q grows by (n - k) delta / 2, so residual certificates
/// degrade far more slowly than variational ones; a certificate whose
/// squared margin exceeds delta is preserved. Requires k >= 2.
SeparabilityCertificate is_residually_separable(const DistanceMatrix& d, const Partition& g);

SeparabilityCertificate certify(const DistanceMatrix& d, const Partition& g, Criterion criterion);

}  // namespace clusterkit
