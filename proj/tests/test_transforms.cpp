#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/generators.hpp"
#include "clusterkit/objective.hpp"
#include "clusterkit/partition.hpp"
#include "clusterkit/rng.hpp"
#include "clusterkit/separability.hpp"
#include "clusterkit/transforms.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace clusterkit;
using testkit::near;

namespace {

TransformSpec consistency_spec(TransformKind kind, std::vector<double> shrink, double growth) {
  TransformSpec spec;
  spec.kind = kind;
  spec.shrink = std::move(shrink);
  spec.growth = growth;
  return spec;
}

}  // namespace

TEST_CASE("scaling multiplies every entry and keeps identity bit-exact") {
  Rng rng(41);
  DistanceMatrix d = testkit::rand_matrix(rng, 6);
  DistanceMatrix s = scale(d, 2.5);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(s(i, j) == 2.5 * d(i, j));
  CHECK(scale(d, 1.0).flat() == d.flat());
  CHECK_THROWS_AS(scale(d, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale(d, -1.0), std::invalid_argument);
}

TEST_CASE("squared shift moves squared distances uniformly") {
  Rng rng(42);
  DistanceMatrix d = testkit::rand_matrix(rng, 8);
  Partition g = testkit::rand_partition(rng, 8, 3);
  double delta = 0.7;
  DistanceMatrix shifted = shift_squared(d, delta);
  for (int i = 0; i < 8; ++i) {
    CHECK(shifted(i, i) == 0.0);
    for (int j = 0; j < 8; ++j)
      if (i != j)
        CHECK(near(shifted(i, j) * shifted(i, j), d(i, j) * d(i, j) + delta, 1e-12));
  }
  CHECK(shift_squared(d, 0.0).flat() == d.flat());
  CHECK_THROWS_AS(shift_squared(d, -0.5), std::invalid_argument);

  int n = 8, k = 3;
  CHECK(near(quality(shifted, g), quality(d, g) + (n - k) * delta / 2.0, 1e-9));
  CHECK(near(beta(shifted, g), beta(d, g) + delta, 1e-9));
}

TEST_CASE("convergent contraction anchors at the per-cluster minimum") {
  // Cluster {0,1,2} has distances {1,2,2}; with s = 0.5 the shortest one
  // keeps its length (0 percent) while the longer ones lose 25 percent.
  std::vector<std::vector<double>> e{
      {0.0, 1.0, 2.0, 6.0, 6.0},
      {1.0, 0.0, 2.0, 6.0, 6.0},
      {2.0, 2.0, 0.0, 6.0, 6.0},
      {6.0, 6.0, 6.0, 0.0, 3.0},
      {6.0, 6.0, 6.0, 3.0, 0.0},
  };
  DistanceMatrix d(e);
  Partition g(5, {{0, 1, 2}, {3, 4}});
  TransformSpec spec =
      consistency_spec(TransformKind::ConvergentConsistency, {0.5, 1.0}, 2.0);
  validate_spec(spec, g.k());
  DistanceMatrix out = apply_transform(d, g, spec);
  CHECK(out(0, 1) == 1.0);
  CHECK(out(0, 2) == 1.5);
  CHECK(out(1, 2) == 1.5);
  CHECK(out(3, 4) == 3.0);  // s = 1 leaves the second cluster alone
  CHECK(out(0, 3) == 12.0);  // growth doubles inter distances

  TransformValidation report = validate_transform(d, out, g, spec.kind);
  CHECK(report.all_passed);
}

TEST_CASE("keep-min contraction anchors every cluster at the global minimum") {
  // Global minimum 1 lives in cluster {3,4}; cluster {0,1,2} has distances
  // {2,3,3}. Per-cluster anchoring maps 2 -> 2; global anchoring pulls it
  // to 1.5 because the anchor is 1, not 2.
  std::vector<std::vector<double>> e{
      {0.0, 2.0, 3.0, 8.0, 8.0},
      {2.0, 0.0, 3.0, 8.0, 8.0},
      {3.0, 3.0, 0.0, 8.0, 8.0},
      {8.0, 8.0, 8.0, 0.0, 1.0},
      {8.0, 8.0, 8.0, 1.0, 0.0},
  };
  DistanceMatrix d(e);
  Partition g(5, {{0, 1, 2}, {3, 4}});

  DistanceMatrix per_cluster = apply_transform(
      d, g, consistency_spec(TransformKind::ConvergentConsistency, {0.5, 0.5}, 1.0));
  CHECK(per_cluster(0, 1) == 2.0);
  CHECK(per_cluster(0, 2) == 2.5);

  DistanceMatrix keep_min = apply_transform(
      d, g, consistency_spec(TransformKind::ConvergentConsistencyKeepMin, {0.5, 0.5}, 1.0));
  CHECK(keep_min(0, 1) == 1.5);
  CHECK(keep_min(0, 2) == 2.0);
  CHECK(keep_min(3, 4) == 1.0);  // the global minimum is fixed
  CHECK(min_distance(keep_min) == min_distance(d));

  TransformValidation report =
      validate_transform(d, keep_min, g, TransformKind::ConvergentConsistencyKeepMin);
  CHECK(report.all_passed);
}

TEST_CASE("identity specs are bit-exact fast paths") {
  Rng rng(43);
  DistanceMatrix d = testkit::rand_matrix(rng, 7);
  Partition g = testkit::rand_partition(rng, 7, 3);
  for (TransformKind kind : {TransformKind::Consistency, TransformKind::ConvergentConsistency,
                             TransformKind::ConvergentConsistencyKeepMin}) {
    TransformSpec spec = consistency_spec(kind, {1.0, 1.0, 1.0}, 1.0);
    CHECK(apply_transform(d, g, spec).flat() == d.flat());
  }
}

TEST_CASE("plain consistency multiplies intra distances directly") {
  Rng rng(44);
  DistanceMatrix d = testkit::rand_matrix(rng, 6);
  Partition g = testkit::rand_partition(rng, 6, 2);
  TransformSpec spec = consistency_spec(TransformKind::Consistency, {0.25, 0.8}, 3.0);
  DistanceMatrix out = apply_transform(d, g, spec);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      if (g.cluster_of(i) == g.cluster_of(j))
        CHECK(out(i, j) ==
              d(i, j) * spec.shrink[static_cast<std::size_t>(g.cluster_of(i))]);
      else
        CHECK(out(i, j) == d(i, j) * 3.0);
    }
  TransformValidation report = validate_transform(d, out, g, spec.kind);
  CHECK(report.all_passed);
}

TEST_CASE("per-pair growth matrices apply to inter cells only") {
  std::vector<std::vector<double>> e{
      {0.0, 1.0, 4.0, 4.0},
      {1.0, 0.0, 4.0, 4.0},
      {4.0, 4.0, 0.0, 1.0},
      {4.0, 4.0, 1.0, 0.0},
  };
  DistanceMatrix d(e);
  Partition g(4, {{0, 1}, {2, 3}});
  TransformSpec spec = consistency_spec(TransformKind::ConvergentConsistency, {1.0, 1.0}, 1.0);
  spec.growth_matrix = std::vector<std::vector<double>>{
      {1.0, 7.0, 2.0, 3.0},
      {7.0, 1.0, 1.0, 5.0},
      {2.0, 1.0, 1.0, 7.0},
      {3.0, 5.0, 7.0, 1.0},
  };
  DistanceMatrix out = apply_transform(d, g, spec);
  CHECK(out(0, 1) == 1.0);  // intra cell of the growth matrix is ignored
  CHECK(out(2, 3) == 1.0);
  CHECK(out(0, 2) == 8.0);
  CHECK(out(0, 3) == 12.0);
  CHECK(out(1, 2) == 4.0);
  CHECK(out(1, 3) == 20.0);
  TransformValidation report = validate_transform(d, out, g, spec.kind);
  CHECK(report.all_passed);
}

TEST_CASE("spec validation rejects out-of-range fields") {
  TransformSpec bad_scale;
  bad_scale.kind = TransformKind::Scale;
  bad_scale.alpha = 0.0;
  CHECK_THROWS_AS(validate_spec(bad_scale, 2), std::invalid_argument);

  TransformSpec bad_shift;
  bad_shift.kind = TransformKind::SquaredShift;
  bad_shift.delta = -1.0;
  CHECK_THROWS_AS(validate_spec(bad_shift, 2), std::invalid_argument);

  CHECK_THROWS_AS(
      validate_spec(consistency_spec(TransformKind::ConvergentConsistency, {0.5}, 1.0), 2),
      std::invalid_argument);  // one shrink factor per cluster
  CHECK_THROWS_AS(
      validate_spec(consistency_spec(TransformKind::ConvergentConsistency, {0.5, 0.0}, 1.0), 2),
      std::invalid_argument);  // shrink must be positive
  CHECK_THROWS_AS(
      validate_spec(consistency_spec(TransformKind::ConvergentConsistency, {0.5, 1.5}, 1.0), 2),
      std::invalid_argument);  // shrink must be <= 1
  CHECK_THROWS_AS(
      validate_spec(consistency_spec(TransformKind::Consistency, {0.5, 0.5}, 0.5), 2),
      std::invalid_argument);  // growth must be >= 1

  TransformSpec bad_matrix = consistency_spec(TransformKind::ConvergentConsistency, {0.5, 0.5}, 1.0);
  bad_matrix.growth_matrix = std::vector<std::vector<double>>{{1.0, 2.0}, {3.0, 1.0}};
  CHECK_THROWS_AS(validate_spec(bad_matrix, 2), std::invalid_argument);  // asymmetric

  validate_spec(consistency_spec(TransformKind::ConvergentConsistency, {0.5, 1.0}, 1.0), 2);
}

TEST_CASE("validator passes on every emitted transform") {
  Rng rng(2025);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 5 + static_cast<int>(rng.uniform_index(8));
    int k = 2 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n / 2 - 1)));
    DistanceMatrix d = testkit::rand_matrix(rng, n);
    Partition g = testkit::rand_partition(rng, n, k);

    TransformSpec spec;
    switch (rep % 5) {
      case 0:
        spec.kind = TransformKind::Scale;
        spec.alpha = 0.1 + 5.0 * rng.next_double();
        break;
      case 1:
        spec.kind = TransformKind::SquaredShift;
        spec.delta = 2.0 * rng.next_double();
        break;
      default: {
        spec.kind = rep % 5 == 2   ? TransformKind::Consistency
                    : rep % 5 == 3 ? TransformKind::ConvergentConsistency
                                   : TransformKind::ConvergentConsistencyKeepMin;
        for (int j = 0; j < k; ++j) spec.shrink.push_back(0.2 + 0.8 * rng.next_double());
        spec.growth = 1.0 + 3.0 * rng.next_double();
        break;
      }
    }
    if (spec.kind == TransformKind::ConvergentConsistencyKeepMin) {
      // Keep-min promises a fixed minimum only where that minimum is an
      // intra-cluster distance, which holds on every certified instance;
      // use a planted clustering so the sweep stays on that domain.
      TwoValuedInstance inst = generate_two_valued(testkit::rand_sizes(rng, n, k), 1.0, 2.5);
      d = inst.matrix;
      g = inst.partition;
    }
    validate_spec(spec, k);
    DistanceMatrix out = apply_transform(d, g, spec);
    TransformValidation report = validate_transform(d, out, g, spec.kind);
    CAPTURE(rep);
    CHECK(report.all_passed);
  }
}

TEST_CASE("validator pinpoints tampered outputs by check name") {
  // Deterministic layout: cluster {0,1,2} holds the global minimum (0,1)=1
  // plus longer pairs 1.5 and 1.8; cluster {3,4,5} spans 1.2 to 1.6; inter
  // distances sit in [3.0, 3.5].
  std::vector<std::vector<double>> e{
      {0.0, 1.0, 1.5, 3.0, 3.1, 3.2},
      {1.0, 0.0, 1.8, 3.3, 3.4, 3.5},
      {1.5, 1.8, 0.0, 3.0, 3.2, 3.4},
      {3.0, 3.3, 3.0, 0.0, 1.2, 1.4},
      {3.1, 3.4, 3.2, 1.2, 0.0, 1.6},
      {3.2, 3.5, 3.4, 1.4, 1.6, 0.0},
  };
  DistanceMatrix d(e);
  Partition g(6, {{0, 1, 2}, {3, 4, 5}});
  TransformSpec spec = consistency_spec(TransformKind::ConvergentConsistencyKeepMin, {0.5, 0.5}, 2.0);
  DistanceMatrix out = apply_transform(d, g, spec);
  REQUIRE(validate_transform(d, out, g, spec.kind).all_passed);

  auto tamper = [&](int i, int j, double v) {
    std::vector<double> flat = out.flat();
    flat[static_cast<std::size_t>(i) * 6 + j] = v;
    flat[static_cast<std::size_t>(j) * 6 + i] = v;
    return DistanceMatrix(6, flat);
  };
  auto check_named = [](const TransformValidation& rep, const std::string& name) {
    for (const CheckResult& c : rep.checks)
      if (c.name == name) return c.applicable && !c.passed && !c.witness.empty();
    return false;
  };

  // Shrink an inter distance below its original value.
  TransformValidation r1 = validate_transform(d, tamper(0, 3, 1.5), g, spec.kind);
  CHECK_FALSE(r1.all_passed);
  CHECK(check_named(r1, "inter_no_decrease"));

  // Grow an intra distance above its original value.
  TransformValidation r2 = validate_transform(d, tamper(0, 2, 2.25), g, spec.kind);
  CHECK_FALSE(r2.all_passed);
  CHECK(check_named(r2, "intra_no_increase"));

  // Restore the longest pair of cluster {0,1,2} to its original length:
  // its reduction percentage (zero) now trails the shorter pair (0,2).
  TransformValidation r3 = validate_transform(d, tamper(1, 2, 1.8), g, spec.kind);
  CHECK_FALSE(r3.all_passed);
  CHECK(check_named(r3, "percentage_monotone"));

  // Perturb the global minimum distance: keep-min specifically fails.
  TransformValidation r4 = validate_transform(d, tamper(0, 1, 0.5), g, spec.kind);
  CHECK(check_named(r4, "min_distance_preserved"));

  // Scale and squared-shift structural checks notice non-uniform edits.
  DistanceMatrix scaled = scale(d, 2.0);
  std::vector<double> flat = scaled.flat();
  flat[1] *= 1.5;
  flat[6] *= 1.5;
  TransformValidation r5 = validate_transform(d, DistanceMatrix(6, flat), g, TransformKind::Scale);
  CHECK(check_named(r5, "uniform_scale"));

  DistanceMatrix shifted = shift_squared(d, 1.0);
  flat = shifted.flat();
  flat[2] = d(0, 2);
  flat[12] = d(0, 2);
  TransformValidation r6 =
      validate_transform(d, DistanceMatrix(6, flat), g, TransformKind::SquaredShift);
  CHECK(check_named(r6, "uniform_squared_shift"));
}

TEST_CASE("residual certificates survive small squared shifts on generated instances") {
  // The residual threshold squared grows by 2 * delta under a shift while
  // the smallest inter distance squared grows by delta, so a certificate
  // survives exactly when its squared margin exceeds delta. Generated
  // instances carry margins that scale with sqrt(2 (n - k)).
  Rng rng(515);
  std::vector<std::vector<int>> small_sizes{{2, 2, 2}, {3, 3}, {4, 3}, {3, 2, 2}};
  for (const auto& sizes : small_sizes) {
    Rng sub = rng.substream(static_cast<std::uint64_t>(sizes.size() * 100 + sizes[0]));
    ResidualInstance inst = generate_residual_only(sizes, sub);
    SeparabilityCertificate before = is_residually_separable(inst.matrix, inst.partition);
    REQUIRE(before.valid);
    double margin =
        before.min_inter * before.min_inter - before.threshold * before.threshold;
    CHECK(margin > 0.1);
    SeparabilityCertificate after =
        is_residually_separable(shift_squared(inst.matrix, 0.1), inst.partition);
    CHECK(after.valid);
  }

  std::vector<std::vector<int>> mid_sizes{{4, 4}, {5, 4}, {4, 3, 3}, {6, 4}};
  for (const auto& sizes : mid_sizes) {
    Rng sub = rng.substream(static_cast<std::uint64_t>(sizes.size() * 1000 + sizes[0]));
    ResidualInstance inst = generate_residual_only(sizes, sub);
    SeparabilityCertificate before = is_residually_separable(inst.matrix, inst.partition);
    double margin =
        before.min_inter * before.min_inter - before.threshold * before.threshold;
    CHECK(margin > 1.0);
    for (double delta : {0.1, 1.0}) {
      SeparabilityCertificate after =
          is_residually_separable(shift_squared(inst.matrix, delta), inst.partition);
      CHECK(after.valid);
    }
  }
}

TEST_CASE("residual certificates survive shifts up to their squared margin and no further") {
  // Three clusters of 40 points, intra 1, inter sqrt(110): residual-valid
  // (2 beta = 2), variational-invalid (2 Q = 117 > 110). The squared margin
  // is 108, so delta = 100 is survived; with inter sqrt(52) the margin is
  // 50 and the same shift kills the certificate.
  std::vector<int> sizes{40, 40, 40};
  TwoValuedInstance wide = generate_two_valued(sizes, 1.0, std::sqrt(110.0));
  SeparabilityCertificate w0 = is_residually_separable(wide.matrix, wide.partition);
  REQUIRE(w0.valid);
  CHECK_FALSE(is_variationally_separable(wide.matrix, wide.partition).valid);
  CHECK(*w0.beta_value == doctest::Approx(1.0).epsilon(1e-12));
  for (double delta : {0.1, 1.0, 100.0}) {
    SeparabilityCertificate after =
        is_residually_separable(shift_squared(wide.matrix, delta), wide.partition);
    CHECK(after.valid);
    CHECK(*after.beta_value == doctest::Approx(*w0.beta_value + delta).epsilon(1e-9));
  }

  TwoValuedInstance narrow = generate_two_valued(sizes, 1.0, std::sqrt(52.0));
  SeparabilityCertificate n0 = is_residually_separable(narrow.matrix, narrow.partition);
  REQUIRE(n0.valid);
  CHECK(is_residually_separable(shift_squared(narrow.matrix, 0.1), narrow.partition).valid);
  CHECK(is_residually_separable(shift_squared(narrow.matrix, 1.0), narrow.partition).valid);
  CHECK_FALSE(is_residually_separable(shift_squared(narrow.matrix, 100.0), narrow.partition).valid);
}

TEST_CASE("variational certificates can be lost under squared shifts") {
  // Pinned loss instance: pairs at intra 1, inter 1.5. Before the shift the
  // threshold is sqrt(2) < 1.5; after delta = 1 it is 2 > sqrt(3.25).
  TwoValuedInstance inst = generate_two_valued({2, 2}, 1.0, 1.5);
  SeparabilityCertificate before = is_variationally_separable(inst.matrix, inst.partition);
  REQUIRE(before.valid);
  SeparabilityCertificate after =
      is_variationally_separable(shift_squared(inst.matrix, 1.0), inst.partition);
  CHECK_FALSE(after.valid);
  CHECK(after.threshold == 2.0);
  CHECK(after.min_inter == doctest::Approx(std::sqrt(3.25)).epsilon(1e-15));
}

TEST_CASE("sigma-lowering consistency can destroy residual certificates") {
  // Shrinking the cluster that holds the global minimum lowers sigma,
  // which raises beta and the residual threshold while inter distances
  // stay put: the certificate is lost. Anchoring at the global minimum
  // (keep-min) leaves the instance untouched instead, because that
  // cluster's distances all sit at the anchor.
  Rng rng(626);
  ResidualInstance inst = generate_residual_only({4, 4, 4}, rng);
  SeparabilityCertificate before = is_residually_separable(inst.matrix, inst.partition);
  REQUIRE(before.valid);

  int min_cluster = -1;
  double sigma = min_distance(inst.matrix);
  for (int j = 0; j < inst.partition.k() && min_cluster < 0; ++j) {
    const auto& mem = inst.partition.cluster(j);
    for (std::size_t a = 0; a < mem.size() && min_cluster < 0; ++a)
      for (std::size_t b = a + 1; b < mem.size(); ++b)
        if (inst.matrix(mem[a], mem[b]) == sigma) {
          min_cluster = j;
          break;
        }
  }
  REQUIRE(min_cluster >= 0);

  std::vector<double> shrink(static_cast<std::size_t>(inst.partition.k()), 1.0);
  shrink[static_cast<std::size_t>(min_cluster)] = 0.5;

  DistanceMatrix lowered = apply_transform(
      inst.matrix, inst.partition, consistency_spec(TransformKind::Consistency, shrink, 1.0));
  CHECK_FALSE(is_residually_separable(lowered, inst.partition).valid);

  DistanceMatrix kept = apply_transform(
      inst.matrix, inst.partition,
      consistency_spec(TransformKind::ConvergentConsistencyKeepMin, shrink, 1.0));
  CHECK(min_distance(kept) == sigma);
  CHECK(is_residually_separable(kept, inst.partition).valid);
}

TEST_CASE("apply_transform rejects mismatched specs") {
  Rng rng(99);
  DistanceMatrix d = testkit::rand_matrix(rng, 6);
  Partition g = testkit::rand_partition(rng, 6, 3);
  TransformSpec spec = consistency_spec(TransformKind::ConvergentConsistency, {0.5, 0.5}, 1.0);
  CHECK_THROWS_AS(apply_transform(d, g, spec), std::invalid_argument);  // k mismatch

  TransformSpec bad_growth = consistency_spec(TransformKind::Consistency, {0.5, 0.5, 0.5}, 1.0);
  bad_growth.growth_matrix = std::vector<std::vector<double>>{{1.0, 2.0}, {2.0, 1.0}};
  CHECK_THROWS_AS(apply_transform(d, g, bad_growth), std::invalid_argument);  // n mismatch
}
