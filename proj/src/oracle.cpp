#include "clusterkit/oracle.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "clusterkit/enumeration.hpp"
#include "clusterkit/objective.hpp"

namespace clusterkit {

namespace {
constexpr double kTieTolerance = 1e-12;
}

OracleResult brute_force_optimal(const DistanceMatrix& d, int k, int min_size) {
  int n = d.size();
  // First pass: exact minimum and stream length.
  std::uint64_t examined = 0;
  double best = 0.0;
  bool found = false;
  enumerate_partitions(n, k, min_size, [&](const std::vector<std::vector<int>>& blocks) {
    ++examined;
    double q = quality_blocks(d, blocks);
    if (!found || q < best) {
      best = q;
      found = true;
    }
    return true;
  });
  if (!found) throw std::invalid_argument("brute_force_optimal: no feasible partition");

  // Second pass: count ties against the final minimum and keep the first
  // (canonically smallest) partition within tolerance.
  std::uint64_t ties = 0;
  std::optional<Partition> winner;
  double band = best * (1.0 + kTieTolerance);
  enumerate_partitions(n, k, min_size, [&](const std::vector<std::vector<int>>& blocks) {
    double q = quality_blocks(d, blocks);
    if (q <= band) {
      ++ties;
      if (!winner) winner = Partition(n, blocks);
    }
    return true;
  });

  OracleResult result{std::move(*winner), best, ties == 1, examined};
  return result;
}

bool exists_separable_partition(const DistanceMatrix& d, int k, Criterion criterion) {
  int n = d.size();
  if (n < 2 || k < 2) return false;
  if (k * 2 > n) return false;
  double sigma = min_distance(d);
  double residual_offset = static_cast<double>(n - k - 1) * sigma * sigma;
  bool found = false;
  enumerate_partitions(n, k, 2, [&](const std::vector<std::vector<int>>& blocks) {
    double q = quality_blocks(d, blocks);
    double threshold_sq =
        criterion == Criterion::Variational ? 2.0 * q : 2.0 * (2.0 * q - residual_offset);
    double threshold = std::sqrt(threshold_sq);
    // Smallest inter-block distance of this candidate.
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
      for (int i : blocks[b]) owner[i] = b;
    double min_inter = -1.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (owner[i] != owner[j] && (min_inter < 0.0 || d(i, j) < min_inter)) min_inter = d(i, j);
    if (clears_threshold(min_inter, threshold)) {
      found = true;
      return false;  // stop the stream
    }
    return true;
  });
  return found;
}

}  // namespace clusterkit
