#include "clusterkit/certificate.hpp"

namespace clusterkit {

const char* criterion_name(Criterion c) {
  return c == Criterion::Variational ? "variational" : "residual";
}

std::optional<Criterion> parse_criterion(const std::string& name) {
  if (name == "variational") return Criterion::Variational;
  if (name == "residual") return Criterion::Residual;
  return std::nullopt;
}

bool clears_threshold(double min_inter, double threshold) {
  return min_inter > threshold * (1.0 + kCertificateMargin);
}

}  // namespace clusterkit
