#include "clusterkit/distance_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace clusterkit {

DistanceMatrix::DistanceMatrix(const std::vector<std::vector<double>>& entries) {
  n_ = static_cast<int>(entries.size());
  if (n_ < 1) throw std::invalid_argument("distance matrix: need at least one point");
  entries_.reserve(static_cast<std::size_t>(n_) * n_);
  for (const auto& row : entries) {
    if (static_cast<int>(row.size()) != n_)
      throw std::invalid_argument("distance matrix: not square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  validate();
}

DistanceMatrix::DistanceMatrix(int n, std::vector<double> flat) : n_(n), entries_(std::move(flat)) {
  if (n_ < 1) throw std::invalid_argument("distance matrix: need at least one point");
  if (entries_.size() != static_cast<std::size_t>(n_) * n_)
    throw std::invalid_argument("distance matrix: flat storage size mismatch");
  validate();
}

void DistanceMatrix::validate() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      double v = (*this)(i, j);
      if (!std::isfinite(v)) throw std::invalid_argument("distance matrix: non-finite entry");
      if (i == j) {
        if (v != 0.0) throw std::invalid_argument("distance matrix: nonzero diagonal");
      } else {
        if (!(v > 0.0)) throw std::invalid_argument("distance matrix: off-diagonal entries must be positive");
        if (v != (*this)(j, i)) throw std::invalid_argument("distance matrix: not symmetric");
      }
    }
  }
}

DistanceMatrix DistanceMatrix::submatrix(const std::vector<int>& indices) const {
  int m = static_cast<int>(indices.size());
  std::vector<double> flat(static_cast<std::size_t>(m) * m, 0.0);
  for (int a = 0; a < m; ++a) {
    int i = indices[a];
    if (i < 0 || i >= n_) throw std::invalid_argument("submatrix: index out of range");
    for (int b = 0; b < m; ++b) {
      flat[static_cast<std::size_t>(a) * m + b] = (*this)(i, indices[b]);
    }
  }
  return DistanceMatrix(m, std::move(flat));
}

double min_distance(const DistanceMatrix& d) {
  int n = d.size();
  if (n < 2) throw std::invalid_argument("min_distance: need at least two points");
  double best = d(0, 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d(i, j) < best) best = d(i, j);
  return best;
}

}  // namespace clusterkit
