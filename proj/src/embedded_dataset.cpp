#include "clusterkit/embedded_dataset.hpp"

#include <cmath>

namespace clusterkit {

DistanceMatrix pairwise_distances(const EmbeddedDataset& points) {
  int n = points.n;
  std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double ss = 0.0;
      for (int t = 0; t < points.dim; ++t) {
        double delta = points.at(i, t) - points.at(j, t);
        ss += delta * delta;
      }
      double v = std::sqrt(ss);
      flat[static_cast<std::size_t>(i) * n + j] = v;
      flat[static_cast<std::size_t>(j) * n + i] = v;
    }
  }
  return DistanceMatrix(n, std::move(flat));
}

}  // namespace clusterkit
