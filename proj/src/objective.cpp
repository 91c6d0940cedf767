#include "clusterkit/objective.hpp"

#include <stdexcept>

namespace clusterkit {

double quality_blocks(const DistanceMatrix& d, const std::vector<std::vector<int>>& blocks) {
  double q = 0.0;
  for (const auto& c : blocks) {
    if (c.empty()) throw std::invalid_argument("quality: empty cluster");
    double ss = 0.0;
    for (int i : c) {
      for (int l : c) {
        double v = d(i, l);
        ss += v * v;
      }
    }
    q += ss / (2.0 * static_cast<double>(c.size()));
  }
  return q;
}

double quality(const DistanceMatrix& d, const Partition& g) {
  if (g.n() != d.size()) throw std::invalid_argument("quality: partition does not match matrix size");
  return quality_blocks(d, g.clusters());
}

double quality_euclidean(const EmbeddedDataset& points, const Partition& g) {
  if (g.n() != points.n) throw std::invalid_argument("quality_euclidean: partition does not match point count");
  int dim = points.dim;
  double q = 0.0;
  std::vector<double> mean(static_cast<std::size_t>(dim));
  for (const auto& c : g.clusters()) {
    std::fill(mean.begin(), mean.end(), 0.0);
    for (int i : c)
      for (int t = 0; t < dim; ++t) mean[t] += points.at(i, t);
    for (int t = 0; t < dim; ++t) mean[t] /= static_cast<double>(c.size());
    for (int i : c) {
      for (int t = 0; t < dim; ++t) {
        double delta = points.at(i, t) - mean[t];
        q += delta * delta;
      }
    }
  }
  return q;
}

double beta(const DistanceMatrix& d, const Partition& g) {
  double sigma = min_distance(d);
  double q = quality(d, g);
  double nk1 = static_cast<double>(d.size() - g.k() - 1);
  return 2.0 * (q - nk1 * sigma * sigma / 2.0);
}

double min_inter_cluster_distance(const DistanceMatrix& d, const Partition& g) {
  if (g.n() != d.size()) throw std::invalid_argument("min_inter: partition does not match matrix size");
  if (g.k() < 2) throw std::invalid_argument("min_inter: needs at least two clusters");
  int n = d.size();
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g.cluster_of(i) == g.cluster_of(j)) continue;
      if (best < 0.0 || d(i, j) < best) best = d(i, j);
    }
  }
  return best;
}

}  // namespace clusterkit
