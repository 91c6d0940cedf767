#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterkit/certificate.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/enumeration.hpp"
#include "clusterkit/generators.hpp"
#include "clusterkit/objective.hpp"
#include "clusterkit/oracle.hpp"
#include "clusterkit/partition.hpp"
#include "clusterkit/rng.hpp"
#include "clusterkit/separability.hpp"
#include "clusterkit/transforms.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace clusterkit;
using testkit::near;

namespace {

DistanceMatrix all_equal(int n, double c) {
  std::vector<double> flat(static_cast<std::size_t>(n) * n, c);
  for (int i = 0; i < n; ++i) flat[static_cast<std::size_t>(i) * n + i] = 0.0;
  return DistanceMatrix(n, std::move(flat));
}

// Independent count of partitions into k blocks of size >= min_size:
// condition on the size s of the block holding the smallest element, choose
// its s-1 companions from the remaining n-1 points, recurse.
std::uint64_t partition_count_ref(int n, int k, int min_size) {
  if (k == 0) return n == 0 ? 1 : 0;
  if (n < k * min_size) return 0;
  std::vector<std::vector<std::uint64_t>> binom(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    binom[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i + 1), 1);
    for (int j = 1; j < i; ++j)
      binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
          binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
  }
  std::vector<std::vector<std::uint64_t>> memo(static_cast<std::size_t>(n + 1),
                                               std::vector<std::uint64_t>(static_cast<std::size_t>(k + 1), 0));
  for (int m = 0; m <= n; ++m) memo[static_cast<std::size_t>(m)][0] = (m == 0) ? 1 : 0;
  for (int kk = 1; kk <= k; ++kk)
    for (int m = 0; m <= n; ++m) {
      std::uint64_t total = 0;
      for (int s = min_size; s <= m - (kk - 1) * min_size; ++s)
        total += binom[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(s - 1)] *
                 memo[static_cast<std::size_t>(m - s)][static_cast<std::size_t>(kk - 1)];
      memo[static_cast<std::size_t>(m)][static_cast<std::size_t>(kk)] = total;
    }
  return memo[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

}  // namespace

TEST_CASE("two-valued pair instance certifies under both criteria") {
  TwoValuedInstance inst = generate_two_valued({2, 2}, 1.0, 10.0);
  SeparabilityCertificate v = is_variationally_separable(inst.matrix, inst.partition);
  SeparabilityCertificate r = is_residually_separable(inst.matrix, inst.partition);
  CHECK(v.valid);
  CHECK(r.valid);
  CHECK(v.q_value == 1.0);
  CHECK(v.sigma == 1.0);
  CHECK(v.min_inter == 10.0);
  CHECK(v.threshold == std::sqrt(2.0));
  REQUIRE(r.beta_value.has_value());
  CHECK(*r.beta_value == 1.0);
  CHECK(r.threshold == std::sqrt(2.0));
  CHECK_FALSE(v.beta_value.has_value());

  CHECK(certify(inst.matrix, inst.partition, Criterion::Variational).valid == v.valid);
  CHECK(certify(inst.matrix, inst.partition, Criterion::Residual).threshold == r.threshold);
}

TEST_CASE("all-equal matrices never certify") {
  DistanceMatrix d = all_equal(4, 2.0);
  Partition g(4, {{0, 1}, {2, 3}});
  SeparabilityCertificate v = is_variationally_separable(d, g);
  SeparabilityCertificate r = is_residually_separable(d, g);
  CHECK_FALSE(v.valid);
  CHECK_FALSE(r.valid);
  CHECK(v.q_value == 4.0);
  CHECK(v.threshold == std::sqrt(8.0));
  CHECK(*r.beta_value == 4.0);
  CHECK(r.min_inter == 2.0);
}

TEST_CASE("a partition can certify variationally but not residually") {
  // Large intra spread keeps Q moderate but pushes beta = 2Q - sigma^2 high.
  std::vector<std::vector<double>> e{
      {0.0, 3.0, 3.5, 3.5},
      {3.0, 0.0, 3.5, 3.5},
      {3.5, 3.5, 0.0, 1.0},
      {3.5, 3.5, 1.0, 0.0},
  };
  DistanceMatrix d(e);
  Partition g(4, {{0, 1}, {2, 3}});
  SeparabilityCertificate v = is_variationally_separable(d, g);
  SeparabilityCertificate r = is_residually_separable(d, g);
  CHECK(v.q_value == 5.0);
  CHECK(v.threshold == std::sqrt(10.0));
  CHECK(v.valid);
  CHECK(*r.beta_value == 9.0);
  CHECK(r.threshold == std::sqrt(18.0));
  CHECK_FALSE(r.valid);
}

TEST_CASE("a partition can certify residually but not variationally") {
  TwoValuedInstance inst = generate_two_valued({2, 2, 2}, 1.0, 1.6);
  SeparabilityCertificate v = is_variationally_separable(inst.matrix, inst.partition);
  SeparabilityCertificate r = is_residually_separable(inst.matrix, inst.partition);
  CHECK(v.threshold == std::sqrt(3.0));
  CHECK_FALSE(v.valid);
  CHECK(r.threshold == std::sqrt(2.0));
  CHECK(r.valid);
}

TEST_CASE("exact threshold ties never certify") {
  TwoValuedInstance inst = generate_two_valued({2, 2, 2}, 1.0, std::sqrt(2.0));
  SeparabilityCertificate r = is_residually_separable(inst.matrix, inst.partition);
  CHECK(r.min_inter == r.threshold);
  CHECK_FALSE(r.valid);
}

TEST_CASE("verdicts are scale invariant") {
  Rng rng(9001);
  for (int rep = 0; rep < 25; ++rep) {
    int n = 4 + static_cast<int>(rng.uniform_index(7));
    int k = 2 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n / 2 - 1)));
    DistanceMatrix d = rep % 5 == 0
                           ? generate_two_valued(testkit::rand_sizes(rng, n, k), 1.0, 3.0).matrix
                           : testkit::rand_matrix(rng, n);
    Partition g = testkit::rand_partition(rng, n, k);
    for (Criterion c : {Criterion::Variational, Criterion::Residual}) {
      SeparabilityCertificate base = certify(d, g, c);
      for (double alpha : {1e-6, 1.0, 1e6}) {
        SeparabilityCertificate scaled = certify(scale(d, alpha), g, c);
        CHECK(scaled.valid == base.valid);
        CHECK(near(scaled.threshold, alpha * base.threshold, 1e-9));
        CHECK(near(scaled.min_inter, alpha * base.min_inter, 1e-12));
      }
    }
  }
}

TEST_CASE("partition stream matches an independent counting recurrence") {
  for (int n = 2; n <= 10; ++n)
    for (int k = 1; k <= 4; ++k)
      for (int min_size : {1, 2, 3}) {
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(min_size);
        CHECK(count_partitions(n, k, min_size) == partition_count_ref(n, k, min_size));
      }
}

TEST_CASE("partition stream frozen counts") {
  CHECK(count_partitions(5, 2, 1) == 15);
  CHECK(count_partitions(6, 3, 1) == 90);
  CHECK(count_partitions(4, 2, 2) == 3);
  CHECK(count_partitions(12, 4, 2) == 302995);
  CHECK(count_partitions(14, 4, 2) == 6914908);
  CHECK(count_partitions(14, 5, 2) == 12122110);
  // Sizes 4 through 8, every feasible k >= 2: the richness sweep domain.
  std::uint64_t total = 0;
  for (int n = 4; n <= 8; ++n)
    for (int k = 2; k <= n / 2; ++k) total += count_partitions(n, k, 2);
  CHECK(total == 928);
}

TEST_CASE("partition stream yields each valid partition exactly once") {
  // Cross-check against an independent construction: restricted-growth
  // label strings filtered by class sizes.
  for (int n : {6, 7})
    for (int k : {2, 3}) {
      std::set<std::vector<std::vector<int>>> streamed;
      int visits = 0;
      enumerate_partitions(n, k, 2, [&](const std::vector<std::vector<int>>& blocks) {
        ++visits;
        for (const auto& b : blocks) {
          CHECK(b.size() >= 2);
          CHECK(std::is_sorted(b.begin(), b.end()));
        }
        CHECK(blocks.size() == static_cast<std::size_t>(k));
        streamed.insert(blocks);
        return true;
      });
      CHECK(static_cast<std::size_t>(visits) == streamed.size());  // no duplicates

      std::set<std::vector<std::vector<int>>> reference;
      std::vector<int> label(static_cast<std::size_t>(n), 0);
      while (true) {
        int used = *std::max_element(label.begin(), label.end()) + 1;
        bool rgs = label[0] == 0;
        for (int i = 1; i < n && rgs; ++i) {
          int prefix_max = *std::max_element(label.begin(), label.begin() + i);
          if (label[static_cast<std::size_t>(i)] > prefix_max + 1) rgs = false;
        }
        if (rgs && used == k) {
          std::vector<int> sizes(static_cast<std::size_t>(k), 0);
          for (int v : label) sizes[static_cast<std::size_t>(v)] += 1;
          if (*std::min_element(sizes.begin(), sizes.end()) >= 2)
            reference.insert(Partition::from_assignment(label).clusters());
        }
        int pos = n - 1;
        while (pos >= 0 && label[static_cast<std::size_t>(pos)] == k - 1) {
          label[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
        label[static_cast<std::size_t>(pos)] += 1;
      }
      CHECK(streamed == reference);
    }
}

TEST_CASE("partition stream edge behavior") {
  int visits = 0;
  enumerate_partitions(5, 3, 2, [&](const std::vector<std::vector<int>>&) {
    ++visits;
    return true;
  });
  CHECK(visits == 0);  // 3 blocks of size >= 2 need 6 points

  visits = 0;
  enumerate_partitions(8, 2, 2, [&](const std::vector<std::vector<int>>&) {
    ++visits;
    return false;  // stop immediately
  });
  CHECK(visits == 1);

  CHECK_THROWS_AS(enumerate_partitions(15, 2, 2, [](const std::vector<std::vector<int>>&) {
                    return true;
                  }),
                  std::invalid_argument);
}

TEST_CASE("exhaustive minimizer finds the planted optimum") {
  std::vector<std::vector<double>> e{
      {0.0, 2.0, 5.0, 5.0},
      {2.0, 0.0, 5.0, 5.0},
      {5.0, 5.0, 0.0, 3.0},
      {5.0, 5.0, 3.0, 0.0},
  };
  DistanceMatrix d(e);
  OracleResult res = brute_force_optimal(d, 2);
  CHECK(res.best_partition == Partition(4, {{0, 1}, {2, 3}}));
  CHECK(res.best_value == 6.5);
  CHECK(res.unique);
  CHECK(res.partitions_examined == 3);
}

TEST_CASE("exhaustive minimizer reports symmetric ties as non-unique") {
  OracleResult res = brute_force_optimal(all_equal(4, 1.0), 2);
  CHECK_FALSE(res.unique);
  CHECK(res.best_partition == Partition(4, {{0, 1}, {2, 3}}));  // canonical smallest
  CHECK(res.partitions_examined == 3);

  CHECK_THROWS_AS(brute_force_optimal(all_equal(15, 1.0), 2), std::invalid_argument);
  CHECK_THROWS(brute_force_optimal(all_equal(4, 1.0), 3));  // no feasible partition
}

TEST_CASE("separable partition existence scan") {
  TwoValuedInstance wide = generate_two_valued({2, 2}, 1.0, 10.0);
  CHECK(exists_separable_partition(wide.matrix, 2, Criterion::Variational));
  CHECK(exists_separable_partition(wide.matrix, 2, Criterion::Residual));

  DistanceMatrix flat = all_equal(6, 1.0);
  for (int k : {2, 3}) {
    CHECK_FALSE(exists_separable_partition(flat, k, Criterion::Variational));
    CHECK_FALSE(exists_separable_partition(flat, k, Criterion::Residual));
  }

  // Variational-only instance: no 2-partition passes the residual test.
  std::vector<std::vector<double>> e{
      {0.0, 3.0, 3.5, 3.5},
      {3.0, 0.0, 3.5, 3.5},
      {3.5, 3.5, 0.0, 1.0},
      {3.5, 3.5, 1.0, 0.0},
  };
  DistanceMatrix d(e);
  CHECK(exists_separable_partition(d, 2, Criterion::Variational));
  CHECK_FALSE(exists_separable_partition(d, 2, Criterion::Residual));
}

TEST_CASE("certified partitions minimize the objective among same-k competitors") {
  Rng rng(2024);
  int certified = 0;
  for (int rep = 0; rep < 40; ++rep) {
    int k = 2 + static_cast<int>(rng.uniform_index(2));
    int n = 2 * k + 2 + static_cast<int>(rng.uniform_index(4));
    Rng sub = rng.substream(static_cast<std::uint64_t>(rep));
    EuclideanInstance inst = generate_euclidean(testkit::rand_sizes(sub, n, k), 2, 1.0, 1.4, sub);
    DistanceMatrix d = pairwise_distances(inst.points);
    REQUIRE(inst.certificate.valid);
    OracleResult res = brute_force_optimal(d, k);
    CHECK(res.best_partition == inst.partition);
    ++certified;
  }
  CHECK(certified == 40);
}
