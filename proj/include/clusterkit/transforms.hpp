#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/partition.hpp"

namespace clusterkit {

enum class TransformKind {
  Scale,                        // all entries times alpha > 0
  Consistency,                  // intra times per-cluster shrink, inter times growth
  ConvergentConsistency,        // intra pulled toward the per-cluster minimum
  ConvergentConsistencyKeepMin, // intra pulled toward the global minimum
  SquaredShift,                 // entries become sqrt(d^2 + delta)
};

const char* transform_kind_name(TransformKind kind);
std::optional<TransformKind> parse_transform_kind(const std::string& name);

/// Declarative description of a matrix transform. Which fields apply
/// depends on kind: alpha for Scale, delta for SquaredShift, shrink (one
/// factor per cluster, in (0, 1]) and growth for the consistency kinds.
/// Growth is either a scalar >= 1 or a full symmetric matrix of per-pair
/// factors >= 1 (only inter-cluster cells are consulted).
struct TransformSpec {
  TransformKind kind = TransformKind::Scale;
  double alpha = 1.0;
  double delta = 0.0;
  std::vector<double> shrink;
  double growth = 1.0;
  std::optional<std::vector<std::vector<double>>> growth_matrix;
};

/// Throws std::invalid_argument unless the fields required by spec.kind
/// are present and in range (k = expected cluster count for consistency
/// kinds, ignored otherwise).
void validate_spec(const TransformSpec& spec, int k);

/// Uniform rescale by alpha > 0.
DistanceMatrix scale(const DistanceMatrix& d, double alpha);

/// Distances become sqrt(d^2 + delta), delta >= 0: squared distances shift
/// by delta off the diagonal, Q by (n-k) delta / 2 and beta by delta.
DistanceMatrix shift_squared(const DistanceMatrix& d, double delta);

/// Intra-cluster distances contract toward the per-cluster minimum:
/// f_j(t) = sigma_j + (t - sigma_j) * s_j, so longer distances lose a
/// larger percentage. Inter-cluster distances are multiplied by growth.
DistanceMatrix convergent_consistency(const DistanceMatrix& d, const Partition& g,
                                      const TransformSpec& spec);

/// Same contraction anchored at the global minimum distance in every
/// cluster, so the smallest distance of the matrix is preserved whenever
/// it is an intra-cluster one.
DistanceMatrix convergent_consistency_keep_min(const DistanceMatrix& d, const Partition& g,
                                               const TransformSpec& spec);

/// Applies any spec kind (Consistency multiplies intra by shrink directly).
DistanceMatrix apply_transform(const DistanceMatrix& d, const Partition& g,
                               const TransformSpec& spec);

struct CheckResult {
  std::string name;
  bool applicable = false;
  bool passed = true;
  std::string witness;  // first violation found, empty when passed
};

struct TransformValidation {
  std::vector<CheckResult> checks;
  bool all_passed = true;
};

/// Audits an (input, output) matrix pair against the declared kind:
/// (a) inter-cluster distances never decrease, (b) intra-cluster distances
/// never increase, (c) for convergent kinds the intra reduction percentage
/// is nondecreasing in the original distance within each cluster (ties
/// allowed), (d) for keep-min the minimum distance is unchanged within
/// 1e-12 relative. Scale and SquaredShift get structural checks instead.
TransformValidation validate_transform(const DistanceMatrix& before, const DistanceMatrix& after,
                                       const Partition& g, TransformKind kind);

}  // namespace clusterkit
