#include "clusterkit/kernel_kmeans.hpp"

#include <limits>
#include <stdexcept>

namespace clusterkit {

double kernel_point_to_cluster(const DistanceMatrix& d, int i, std::span<const int> cluster) {
  if (cluster.empty()) throw std::invalid_argument("kernel_point_to_cluster: empty cluster");
  double c = static_cast<double>(cluster.size());
  double point_term = 0.0;
  for (int l : cluster) {
    double v = d(i, l);
    point_term += v * v;
  }
  double cluster_term = 0.0;
  for (int l : cluster) {
    for (int m : cluster) {
      double v = d(l, m);
      cluster_term += v * v;
    }
  }
  return point_term / c - cluster_term / (2.0 * c * c);
}

namespace {

// Objective of a raw assignment; tolerates clusters of any positive size.
double assignment_q(const DistanceMatrix& d, const std::vector<std::vector<int>>& members) {
  double q = 0.0;
  for (const auto& c : members) {
    if (c.empty()) continue;
    double ss = 0.0;
    for (int i : c)
      for (int l : c) {
        double v = d(i, l);
        ss += v * v;
      }
    q += ss / (2.0 * static_cast<double>(c.size()));
  }
  return q;
}

std::vector<std::vector<int>> collect(const std::vector<int>& assignment, int k) {
  std::vector<std::vector<int>> members(static_cast<std::size_t>(k));
  for (int i = 0; i < static_cast<int>(assignment.size()); ++i)
    members[assignment[i]].push_back(i);
  return members;
}

LloydResult iterate(const DistanceMatrix& d, std::vector<int> assignment, int k, int max_iter) {
  int n = d.size();
  auto members = collect(assignment, k);
  double q = assignment_q(d, members);

  LloydResult result;
  result.k = k;
  result.q_trace.push_back(q);
  result.status = LloydStatus::MaxIterReached;

  std::vector<double> point_term(static_cast<std::size_t>(k));
  std::vector<double> cluster_term(static_cast<std::size_t>(k));
  std::vector<int> next(static_cast<std::size_t>(n));

  for (int iter = 0; iter < max_iter; ++iter) {
    for (int j = 0; j < k; ++j) {
      double ss = 0.0;
      for (int a : members[j])
        for (int b : members[j]) {
          double v = d(a, b);
          ss += v * v;
        }
      double size = static_cast<double>(members[j].size());
      cluster_term[j] = ss / (2.0 * size * size);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < k; ++j) {
        double acc = 0.0;
        for (int l : members[j]) {
          double v = d(i, l);
          acc += v * v;
        }
        point_term[j] = acc / static_cast<double>(members[j].size());
      }
      // Keep the current cluster unless some cluster is strictly closer;
      // among strictly better ones the lowest index wins.
      int best = assignment[i];
      double best_dist = point_term[best] - cluster_term[best];
      for (int j = 0; j < k; ++j) {
        double dist = point_term[j] - cluster_term[j];
        if (dist < best_dist) {
          best_dist = dist;
          best = j;
        }
      }
      next[i] = best;
    }
    if (next == assignment) {
      result.status = LloydStatus::FixedPoint;
      break;
    }
    auto next_members = collect(next, k);
    bool emptied = false;
    for (const auto& c : next_members)
      if (c.empty()) emptied = true;
    if (emptied) {
      result.status = LloydStatus::EmptyCluster;
      break;
    }
    double next_q = assignment_q(d, next_members);
    if (next_q > q * (1.0 + 1e-12)) {
      result.status = LloydStatus::Stalled;
      break;
    }
    assignment = next;
    members = std::move(next_members);
    q = next_q;
    result.q_trace.push_back(q);
    ++result.iterations;
  }

  result.assignment = std::move(assignment);
  result.q = q;
  result.min_sizes_ok = result.status != LloydStatus::EmptyCluster;
  for (const auto& c : members)
    if (c.size() < 2) result.min_sizes_ok = false;
  return result;
}

}  // namespace

std::vector<std::vector<int>> LloydResult::clusters() const {
  return collect(assignment, k);
}

Partition LloydResult::to_partition() const {
  if (status == LloydStatus::EmptyCluster)
    throw std::invalid_argument("LloydResult: run aborted on an emptied cluster");
  if (!min_sizes_ok)
    throw std::invalid_argument("LloydResult: a cluster has fewer than two points");
  return Partition(static_cast<int>(assignment.size()), clusters());
}

LloydResult kernel_lloyd(const DistanceMatrix& d, std::span<const int> seeds, int max_iter) {
  int n = d.size();
  int k = static_cast<int>(seeds.size());
  if (k < 1 || k > n) throw std::invalid_argument("kernel_lloyd: bad seed count");
  for (int s : seeds)
    if (s < 0 || s >= n) throw std::invalid_argument("kernel_lloyd: seed out of range");
  std::vector<int> assignment(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double best_dist = d(i, seeds[0]);
    for (int j = 1; j < k; ++j) {
      if (d(i, seeds[j]) < best_dist) {
        best_dist = d(i, seeds[j]);
        best = j;
      }
    }
    assignment[i] = best;
  }
  return iterate(d, std::move(assignment), k, max_iter);
}

LloydResult kernel_lloyd(const DistanceMatrix& d, const Partition& initial, int max_iter) {
  if (initial.n() != d.size())
    throw std::invalid_argument("kernel_lloyd: partition does not match matrix size");
  std::vector<int> assignment(static_cast<std::size_t>(d.size()));
  for (int i = 0; i < d.size(); ++i) assignment[i] = initial.cluster_of(i);
  return iterate(d, std::move(assignment), initial.k(), max_iter);
}

}  // namespace clusterkit
