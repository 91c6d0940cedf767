#include "clusterkit/separability.hpp"

#include <cmath>
#include <stdexcept>

#include "clusterkit/objective.hpp"

namespace clusterkit {

SeparabilityCertificate certify(const DistanceMatrix& d, const Partition& g, Criterion criterion) {
  if (g.k() < 2) throw std::invalid_argument("certify: criterion needs at least two clusters");
  SeparabilityCertificate cert;
  cert.criterion = criterion;
  cert.sigma = min_distance(d);
  cert.q_value = quality(d, g);
  cert.min_inter = min_inter_cluster_distance(d, g);
  if (criterion == Criterion::Variational) {
    cert.threshold = std::sqrt(2.0 * cert.q_value);
  } else {
    double b = beta(d, g);
    cert.beta_value = b;
    cert.threshold = std::sqrt(2.0 * b);
  }
  cert.valid = clears_threshold(cert.min_inter, cert.threshold);
  return cert;
}

SeparabilityCertificate is_variationally_separable(const DistanceMatrix& d, const Partition& g) {
  return certify(d, g, Criterion::Variational);
}

SeparabilityCertificate is_residually_separable(const DistanceMatrix& d, const Partition& g) {
  return certify(d, g, Criterion::Residual);
}

}  // namespace clusterkit
