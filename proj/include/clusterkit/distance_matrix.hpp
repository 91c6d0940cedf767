#pragma once

#include <vector>

namespace clusterkit {

/// Pseudo-distance matrix: symmetric, zero diagonal, strictly positive
/// off-diagonal. The triangle inequality is deliberately NOT required.
class DistanceMatrix {
 public:
  /// Validates and stores a full n x n matrix. Throws std::invalid_argument
  /// on shape or axiom violations.
  explicit DistanceMatrix(const std::vector<std::vector<double>>& entries);

  /// Row-major flat storage variant. flat.size() must equal n * n.
  DistanceMatrix(int n, std::vector<double> flat);

  int size() const { return n_; }

  double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }

  const std::vector<double>& flat() const { return entries_; }

  /// Matrix restricted to the given point indices, in the given order.
  /// Indices must be distinct and in range.
  DistanceMatrix submatrix(const std::vector<int>& indices) const;

  bool operator==(const DistanceMatrix&) const = default;

 private:
  void validate() const;

  int n_ = 0;
  std::vector<double> entries_;
};

/// Smallest off-diagonal distance, written sigma in reports.
/// Requires at least two points.
double min_distance(const DistanceMatrix& d);

}  // namespace clusterkit
