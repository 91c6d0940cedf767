#include "clusterkit/partition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace clusterkit {

Partition::Partition(int n, std::vector<std::vector<int>> clusters)
    : n_(n), clusters_(std::move(clusters)) {
  if (n_ < 2) throw std::invalid_argument("partition: need at least two points");
  if (clusters_.empty()) throw std::invalid_argument("partition: need at least one cluster");
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  int covered = 0;
  for (auto& c : clusters_) {
    if (c.size() < 2) throw std::invalid_argument("partition: clusters must have at least two points");
    std::sort(c.begin(), c.end());
    for (int i : c) {
      if (i < 0 || i >= n_) throw std::invalid_argument("partition: point index out of range");
      if (seen[i]) throw std::invalid_argument("partition: clusters overlap");
      seen[i] = 1;
      ++covered;
    }
  }
  if (covered != n_) throw std::invalid_argument("partition: clusters must cover every point");
  std::sort(clusters_.begin(), clusters_.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
  cluster_of_.assign(static_cast<std::size_t>(n_), 0);
  for (int j = 0; j < k(); ++j)
    for (int i : clusters_[j]) cluster_of_[i] = j;
}

Partition Partition::from_assignment(const std::vector<int>& labels) {
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) groups[labels[i]].push_back(i);
  std::vector<std::vector<int>> clusters;
  clusters.reserve(groups.size());
  for (auto& [label, members] : groups) clusters.push_back(std::move(members));
  return Partition(static_cast<int>(labels.size()), std::move(clusters));
}

}  // namespace clusterkit
