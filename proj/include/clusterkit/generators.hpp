#pragma once

#include <vector>

#include "clusterkit/certificate.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/embedded_dataset.hpp"
#include "clusterkit/partition.hpp"
#include "clusterkit/rng.hpp"

namespace clusterkit {

struct EuclideanInstance {
  EmbeddedDataset points;
  Partition partition;
  SeparabilityCertificate certificate;  // valid variational certificate
};

/// Clusters sampled in balls of radius spread around centers laid out on
/// orthogonal axes. Centers are pushed apart (doubling, then bisection to
/// within 1% of the smallest certified layout) until the smallest
/// inter-cluster distance exceeds gap_margin * sqrt(2 Q). Requires every
/// size >= 2, dim >= 1, spread > 0, gap_margin > 1. Deterministic given
/// the rng seed and consumed state.
EuclideanInstance generate_euclidean(const std::vector<int>& sizes, int dim, double spread,
                                     double gap_margin, Rng& rng);

struct TwoValuedInstance {
  DistanceMatrix matrix;
  Partition partition;
};

/// Matrix with every intra-cluster distance equal to intra and every
/// inter-cluster distance equal to inter > intra. Closed forms:
/// Q = (n - k)/2 * intra^2, sigma = intra, beta = intra^2; the variational
/// certificate is valid iff inter > intra * sqrt(n - k), the residual one
/// iff inter > intra * sqrt(2).
TwoValuedInstance generate_two_valued(const std::vector<int>& sizes, double intra, double inter);

/// Two-valued witness with inter = sqrt(n - k) + 1 (intra = 1), so the
/// planted partition is variationally separable for its own k and nothing
/// else certifies.
DistanceMatrix two_valued_richness_witness(const Partition& g);

struct ResidualInstance {
  DistanceMatrix matrix;
  Partition partition;
};

/// Matrix whose planted partition passes the residual criterion but not
/// the variational one. Each cluster gets one constant intra distance
/// (the first pinned at 1, the rest jittered just above it, keeping Q
/// high relative to beta), and the single inter value is the geometric
/// mean of the two thresholds. Constant blocks never certify as
/// sub-separable, so the planted partition is also the detected level.
/// Requires n <= 64 and n - k >= 3 (otherwise the window between the
/// thresholds is empty).
ResidualInstance generate_residual_only(const std::vector<int>& sizes, Rng& rng);

}  // namespace clusterkit
