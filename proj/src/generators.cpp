#include "clusterkit/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "clusterkit/objective.hpp"
#include "clusterkit/separability.hpp"

namespace clusterkit {

namespace {

Partition planted_partition(const std::vector<int>& sizes) {
  std::vector<std::vector<int>> clusters;
  clusters.reserve(sizes.size());
  int next = 0;
  for (int s : sizes) {
    std::vector<int> c(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) c[i] = next++;
    clusters.push_back(std::move(c));
  }
  return Partition(next, std::move(clusters));
}

void check_sizes(const std::vector<int>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("generator: need at least one cluster size");
  for (int s : sizes)
    if (s < 2) throw std::invalid_argument("generator: cluster sizes must be at least 2");
}

// Cluster centers on orthogonal axes: center j sits at radius * (1 + j/dim)
// along axis j mod dim, so all mutual center distances scale with radius.
void place_points(EmbeddedDataset& points, const std::vector<int>& sizes, int dim, double radius,
                  const std::vector<double>& offsets) {
  int idx = 0;
  for (int j = 0; j < static_cast<int>(sizes.size()); ++j) {
    int axis = j % dim;
    double magnitude = radius * (1.0 + static_cast<double>(j / dim));
    for (int p = 0; p < sizes[j]; ++p, ++idx) {
      for (int t = 0; t < dim; ++t) {
        double center = t == axis ? magnitude : 0.0;
        points.at(idx, t) = center + offsets[static_cast<std::size_t>(idx) * dim + t];
      }
    }
  }
}

}  // namespace

EuclideanInstance generate_euclidean(const std::vector<int>& sizes, int dim, double spread,
                                     double gap_margin, Rng& rng) {
  check_sizes(sizes);
  if (dim < 1) throw std::invalid_argument("generate_euclidean: dim must be at least 1");
  if (!(spread > 0.0)) throw std::invalid_argument("generate_euclidean: spread must be positive");
  if (!(gap_margin > 1.0)) throw std::invalid_argument("generate_euclidean: gap_margin must exceed 1");

  Partition partition = planted_partition(sizes);
  int n = partition.n();

  // Offsets are drawn once (uniform in the radius-spread ball) and reused
  // while centers move, so Q stays fixed during the gap search.
  std::vector<double> offsets(static_cast<std::size_t>(n) * dim);
  for (int i = 0; i < n; ++i) {
    double norm_sq = 0.0;
    std::vector<double> dir(static_cast<std::size_t>(dim));
    for (int t = 0; t < dim; ++t) {
      dir[t] = rng.normal();
      norm_sq += dir[t] * dir[t];
    }
    double norm = std::sqrt(norm_sq);
    if (norm == 0.0) norm = 1.0;
    double r = spread * std::pow(rng.next_double(), 1.0 / static_cast<double>(dim));
    for (int t = 0; t < dim; ++t) offsets[static_cast<std::size_t>(i) * dim + t] = r * dir[t] / norm;
  }

  EmbeddedDataset points;
  points.n = n;
  points.dim = dim;
  points.coords.assign(static_cast<std::size_t>(n) * dim, 0.0);

  auto certified_at = [&](double radius) {
    place_points(points, sizes, dim, radius, offsets);
    SeparabilityCertificate cert = is_variationally_separable(pairwise_distances(points), partition);
    bool ok = cert.valid && cert.min_inter > gap_margin * cert.threshold;
    return std::pair<bool, SeparabilityCertificate>(ok, cert);
  };

  double hi = 4.0 * spread;
  auto [ok, cert] = certified_at(hi);
  int guard = 0;
  while (!ok) {
    if (++guard > 200) throw std::runtime_error("generate_euclidean: gap search failed to certify");
    hi *= 2.0;
    std::tie(ok, cert) = certified_at(hi);
  }
  // Bisect down to within 1% of the smallest certified layout.
  double lo = hi / 2.0;
  while (hi - lo > 0.01 * lo) {
    double mid = 0.5 * (lo + hi);
    auto [mid_ok, mid_cert] = certified_at(mid);
    if (mid_ok) {
      hi = mid;
      cert = mid_cert;
    } else {
      lo = mid;
    }
  }
  place_points(points, sizes, dim, hi, offsets);
  cert = is_variationally_separable(pairwise_distances(points), partition);
  return EuclideanInstance{std::move(points), std::move(partition), cert};
}

TwoValuedInstance generate_two_valued(const std::vector<int>& sizes, double intra, double inter) {
  check_sizes(sizes);
  if (!(intra > 0.0) || !(inter > intra))
    throw std::invalid_argument("generate_two_valued: need 0 < intra < inter");
  Partition partition = planted_partition(sizes);
  int n = partition.n();
  std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      flat[static_cast<std::size_t>(i) * n + j] =
          partition.cluster_of(i) == partition.cluster_of(j) ? intra : inter;
    }
  return TwoValuedInstance{DistanceMatrix(n, std::move(flat)), std::move(partition)};
}

DistanceMatrix two_valued_richness_witness(const Partition& g) {
  int n = g.n();
  double inter = std::sqrt(static_cast<double>(n - g.k())) + 1.0;
  std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      flat[static_cast<std::size_t>(i) * n + j] = g.cluster_of(i) == g.cluster_of(j) ? 1.0 : inter;
    }
  return DistanceMatrix(n, std::move(flat));
}

ResidualInstance generate_residual_only(const std::vector<int>& sizes, Rng& rng) {
  check_sizes(sizes);
  Partition partition = planted_partition(sizes);
  int n = partition.n();
  int k = partition.k();
  if (k < 2) throw std::invalid_argument("generate_residual_only: need at least two clusters");
  if (n > 64) throw std::invalid_argument("generate_residual_only: n must be at most 64");
  if (n - k < 3)
    throw std::invalid_argument(
        "generate_residual_only: need n - k >= 3, otherwise the residual-only window is empty");

  // Each cluster gets one constant intra distance c_j. A constant block is
  // never itself k'-separable for any k' (its candidate thresholds all
  // equal the block value, and the certificate margin rejects exact ties),
  // so the planted partition survives the sub-cluster checks of range
  // detection. The first cluster is pinned at exactly 1, fixing sigma.
  std::vector<double> intra(static_cast<std::size_t>(k), 1.0);
  for (int j = 1; j < k; ++j) intra[j] = 1.0 + 0.02 * rng.next_double();

  // 2Q = sum_j (n_j - 1) c_j^2 gives both thresholds in closed form:
  // sqrt(2Q) for the variational one and sqrt(2 (2Q - (n-k-1) sigma^2))
  // for the residual one. Their squared ratio is roughly (n-k)/2, so the
  // window between them is open exactly when n - k >= 3; the geometric
  // mean sits a relative (ratio)^(1/4) margin away from both ends.
  double two_q = 0.0;
  for (int j = 0; j < k; ++j)
    two_q += static_cast<double>(partition.cluster_size(j) - 1) * intra[j] * intra[j];
  double threshold_var = std::sqrt(two_q);
  double threshold_res = std::sqrt(2.0 * (two_q - static_cast<double>(n - k - 1)));
  double inter = std::sqrt(threshold_res * threshold_var);

  std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = partition.cluster_of(i) == partition.cluster_of(j)
                     ? intra[partition.cluster_of(i)]
                     : inter;
      flat[static_cast<std::size_t>(i) * n + j] = v;
      flat[static_cast<std::size_t>(j) * n + i] = v;
    }
  DistanceMatrix d(n, std::move(flat));
  if (!is_residually_separable(d, partition).valid ||
      is_variationally_separable(d, partition).valid)
    throw std::runtime_error("generate_residual_only: construction failed for these sizes");
  return ResidualInstance{std::move(d), std::move(partition)};
}

}  // namespace clusterkit
