#pragma once

#include <vector>

namespace clusterkit {

/// Partition of {0..n-1} into k clusters, each of size >= 2 (so k <= n/2).
/// Stored canonically: every cluster sorted ascending, clusters ordered by
/// their smallest element. Equality is equality of the canonical form.
class Partition {
 public:
  Partition(int n, std::vector<std::vector<int>> clusters);

  /// Builds a partition from per-point labels; label values are arbitrary
  /// but every label class becomes one cluster.
  static Partition from_assignment(const std::vector<int>& labels);

  int n() const { return n_; }
  int k() const { return static_cast<int>(clusters_.size()); }

  const std::vector<std::vector<int>>& clusters() const { return clusters_; }
  const std::vector<int>& cluster(int j) const { return clusters_[j]; }
  int cluster_size(int j) const { return static_cast<int>(clusters_[j].size()); }

  /// Canonical cluster index of point i.
  int cluster_of(int i) const { return cluster_of_[i]; }

  bool operator==(const Partition&) const = default;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> clusters_;
  std::vector<int> cluster_of_;
};

}  // namespace clusterkit
