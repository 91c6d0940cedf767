#pragma once

#include <optional>
#include <string>

namespace clusterkit {

/// Which sufficient optimality condition a certificate refers to:
/// Variational compares the smallest inter-cluster distance against
/// sqrt(2 Q), Residual against sqrt(2 beta).
enum class Criterion { Variational, Residual };

const char* criterion_name(Criterion c);
std::optional<Criterion> parse_criterion(const std::string& name);

/// Certificates are granted only when min_inter clears the threshold by a
/// fixed relative margin, so borderline float noise never certifies.
inline constexpr double kCertificateMargin = 1e-9;

/// True when min_inter exceeds threshold by more than the margin.
bool clears_threshold(double min_inter, double threshold);

struct SeparabilityCertificate {
  Criterion criterion = Criterion::Variational;
  double threshold = 0.0;   // sqrt(2 Q) or sqrt(2 beta)
  double min_inter = 0.0;   // smallest inter-cluster distance
  double q_value = 0.0;     // k-means objective of the candidate partition
  std::optional<double> beta_value;  // residual functional, present for Residual
  double sigma = 0.0;       // smallest off-diagonal distance of the matrix
  bool valid = false;
};

}  // namespace clusterkit
