#include "clusterkit/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "clusterkit/objective.hpp"

namespace clusterkit {

const char* transform_kind_name(TransformKind kind) {
  switch (kind) {
    case TransformKind::Scale: return "scale";
    case TransformKind::Consistency: return "consistency";
    case TransformKind::ConvergentConsistency: return "convergent_consistency";
    case TransformKind::ConvergentConsistencyKeepMin: return "convergent_consistency_keep_min";
    case TransformKind::SquaredShift: return "squared_shift";
  }
  return "unknown";
}

std::optional<TransformKind> parse_transform_kind(const std::string& name) {
  if (name == "scale") return TransformKind::Scale;
  if (name == "consistency") return TransformKind::Consistency;
  if (name == "convergent_consistency") return TransformKind::ConvergentConsistency;
  if (name == "convergent_consistency_keep_min") return TransformKind::ConvergentConsistencyKeepMin;
  if (name == "squared_shift") return TransformKind::SquaredShift;
  return std::nullopt;
}

namespace {

bool is_consistency_kind(TransformKind kind) {
  return kind == TransformKind::Consistency || kind == TransformKind::ConvergentConsistency ||
         kind == TransformKind::ConvergentConsistencyKeepMin;
}

double growth_at(const TransformSpec& spec, int i, int j) {
  if (spec.growth_matrix) return (*spec.growth_matrix)[i][j];
  return spec.growth;
}

// Shared core of the convergent kinds: intra distances move along
// f(t) = anchor + (t - anchor) * s; inter distances are multiplied by
// their growth factor. s = 1 and growth = 1 leave entries bit-identical.
DistanceMatrix contract_intra(const DistanceMatrix& d, const Partition& g,
                              const TransformSpec& spec,
                              const std::vector<double>& anchors) {
  int n = d.size();
  std::vector<double> flat(d.flat());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double t = d(i, j);
      double out;
      if (g.cluster_of(i) == g.cluster_of(j)) {
        double s = spec.shrink[g.cluster_of(i)];
        double anchor = anchors[g.cluster_of(i)];
        out = s == 1.0 ? t : anchor + (t - anchor) * s;
      } else {
        double growth = growth_at(spec, i, j);
        out = growth == 1.0 ? t : t * growth;
      }
      flat[static_cast<std::size_t>(i) * n + j] = out;
      flat[static_cast<std::size_t>(j) * n + i] = out;
    }
  }
  return DistanceMatrix(n, std::move(flat));
}

// Smallest intra-cluster distance of each cluster.
std::vector<double> cluster_minima(const DistanceMatrix& d, const Partition& g) {
  std::vector<double> minima(static_cast<std::size_t>(g.k()), 0.0);
  for (int j = 0; j < g.k(); ++j) {
    const auto& c = g.cluster(j);
    double best = -1.0;
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) {
        double v = d(c[a], c[b]);
        if (best < 0.0 || v < best) best = v;
      }
    minima[j] = best;
  }
  return minima;
}

void require_kind(const TransformSpec& spec, TransformKind kind, const char* op) {
  if (spec.kind != kind)
    throw std::invalid_argument(std::string(op) + ": spec kind mismatch");
}

}  // namespace

void validate_spec(const TransformSpec& spec, int k) {
  switch (spec.kind) {
    case TransformKind::Scale:
      if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha))
        throw std::invalid_argument("transform spec: alpha must be positive");
      return;
    case TransformKind::SquaredShift:
      if (spec.delta < 0.0 || !std::isfinite(spec.delta))
        throw std::invalid_argument("transform spec: delta must be non-negative");
      return;
    default:
      break;
  }
  if (static_cast<int>(spec.shrink.size()) != k)
    throw std::invalid_argument("transform spec: need one shrink factor per cluster");
  for (double s : spec.shrink)
    if (!(s > 0.0) || s > 1.0 || !std::isfinite(s))
      throw std::invalid_argument("transform spec: shrink factors must lie in (0, 1]");
  if (spec.growth_matrix) {
    const auto& m = *spec.growth_matrix;
    for (const auto& row : m)
      if (row.size() != m.size())
        throw std::invalid_argument("transform spec: growth matrix must be square");
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (i == j) continue;
        if (!(m[i][j] >= 1.0) || m[i][j] != m[j][i])
          throw std::invalid_argument("transform spec: growth factors must be symmetric and >= 1");
      }
  } else if (!(spec.growth >= 1.0) || !std::isfinite(spec.growth)) {
    throw std::invalid_argument("transform spec: growth must be >= 1");
  }
}

DistanceMatrix scale(const DistanceMatrix& d, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("scale: alpha must be positive");
  if (alpha == 1.0) return d;
  std::vector<double> flat(d.flat());
  for (double& v : flat) v *= alpha;
  return DistanceMatrix(d.size(), std::move(flat));
}

DistanceMatrix shift_squared(const DistanceMatrix& d, double delta) {
  if (delta < 0.0 || !std::isfinite(delta))
    throw std::invalid_argument("shift_squared: delta must be non-negative");
  if (delta == 0.0) return d;
  int n = d.size();
  std::vector<double> flat(d.flat());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double v = flat[static_cast<std::size_t>(i) * n + j];
      flat[static_cast<std::size_t>(i) * n + j] = std::sqrt(v * v + delta);
    }
  return DistanceMatrix(n, std::move(flat));
}

DistanceMatrix convergent_consistency(const DistanceMatrix& d, const Partition& g,
                                      const TransformSpec& spec) {
  require_kind(spec, TransformKind::ConvergentConsistency, "convergent_consistency");
  if (g.n() != d.size())
    throw std::invalid_argument("convergent_consistency: partition does not match matrix");
  validate_spec(spec, g.k());
  if (spec.growth_matrix && static_cast<int>(spec.growth_matrix->size()) != d.size())
    throw std::invalid_argument("convergent_consistency: growth matrix size mismatch");
  return contract_intra(d, g, spec, cluster_minima(d, g));
}

DistanceMatrix convergent_consistency_keep_min(const DistanceMatrix& d, const Partition& g,
                                               const TransformSpec& spec) {
  require_kind(spec, TransformKind::ConvergentConsistencyKeepMin, "convergent_consistency_keep_min");
  if (g.n() != d.size())
    throw std::invalid_argument("convergent_consistency_keep_min: partition does not match matrix");
  validate_spec(spec, g.k());
  if (spec.growth_matrix && static_cast<int>(spec.growth_matrix->size()) != d.size())
    throw std::invalid_argument("convergent_consistency_keep_min: growth matrix size mismatch");
  double sigma = min_distance(d);
  std::vector<double> anchors(static_cast<std::size_t>(g.k()), sigma);
  return contract_intra(d, g, spec, anchors);
}

DistanceMatrix apply_transform(const DistanceMatrix& d, const Partition& g,
                               const TransformSpec& spec) {
  switch (spec.kind) {
    case TransformKind::Scale:
      validate_spec(spec, g.k());
      return scale(d, spec.alpha);
    case TransformKind::SquaredShift:
      validate_spec(spec, g.k());
      return shift_squared(d, spec.delta);
    case TransformKind::Consistency: {
      if (g.n() != d.size())
        throw std::invalid_argument("apply_transform: partition does not match matrix");
      validate_spec(spec, g.k());
      if (spec.growth_matrix && static_cast<int>(spec.growth_matrix->size()) != d.size())
        throw std::invalid_argument("apply_transform: growth matrix size mismatch");
      // Plain consistency: intra multiplied by the shrink factor (constant
      // percentage reduction), inter multiplied by growth.
      std::vector<double> zeros(static_cast<std::size_t>(g.k()), 0.0);
      return contract_intra(d, g, spec, zeros);
    }
    case TransformKind::ConvergentConsistency:
      return convergent_consistency(d, g, spec);
    case TransformKind::ConvergentConsistencyKeepMin:
      return convergent_consistency_keep_min(d, g, spec);
  }
  throw std::invalid_argument("apply_transform: unknown kind");
}

namespace {

constexpr double kRelTol = 1e-12;

std::string pair_witness(int i, int j, double before, double after) {
  return "pair (" + std::to_string(i) + "," + std::to_string(j) + "): " +
         std::to_string(before) + " -> " + std::to_string(after);
}

}  // namespace

TransformValidation validate_transform(const DistanceMatrix& before, const DistanceMatrix& after,
                                       const Partition& g, TransformKind kind) {
  if (before.size() != after.size())
    throw std::invalid_argument("validate_transform: size mismatch");
  if (g.n() != before.size())
    throw std::invalid_argument("validate_transform: partition does not match matrices");
  int n = before.size();

  TransformValidation report;
  CheckResult inter_up{"inter_no_decrease", is_consistency_kind(kind), true, ""};
  CheckResult intra_down{"intra_no_increase", is_consistency_kind(kind), true, ""};
  CheckResult monotone{"percentage_monotone",
                       kind == TransformKind::ConvergentConsistency ||
                           kind == TransformKind::ConvergentConsistencyKeepMin,
                       true, ""};
  CheckResult keep_min{"min_distance_preserved", kind == TransformKind::ConvergentConsistencyKeepMin,
                       true, ""};
  CheckResult uniform_scale{"uniform_scale", kind == TransformKind::Scale, true, ""};
  CheckResult uniform_shift{"uniform_squared_shift", kind == TransformKind::SquaredShift, true, ""};

  if (inter_up.applicable) {
    for (int i = 0; i < n && inter_up.passed; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (g.cluster_of(i) == g.cluster_of(j)) continue;
        if (after(i, j) < before(i, j) * (1.0 - kRelTol)) {
          inter_up.passed = false;
          inter_up.witness = pair_witness(i, j, before(i, j), after(i, j));
          break;
        }
      }
  }
  if (intra_down.applicable) {
    for (int i = 0; i < n && intra_down.passed; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (g.cluster_of(i) != g.cluster_of(j)) continue;
        if (after(i, j) > before(i, j) * (1.0 + kRelTol)) {
          intra_down.passed = false;
          intra_down.witness = pair_witness(i, j, before(i, j), after(i, j));
          break;
        }
      }
  }
  if (monotone.applicable) {
    // Within each cluster the reduction percentage must be nondecreasing in
    // the original distance; ties in the original distance are free.
    struct IntraPair {
      double t;
      double pct;
      int i, j;
    };
    for (int c = 0; c < g.k() && monotone.passed; ++c) {
      const auto& members = g.cluster(c);
      std::vector<IntraPair> pairs;
      for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          int i = members[a], j = members[b];
          double t = before(i, j);
          pairs.push_back({t, (t - after(i, j)) / t, i, j});
        }
      std::sort(pairs.begin(), pairs.end(), [](const IntraPair& x, const IntraPair& y) {
        if (x.t != y.t) return x.t < y.t;
        return x.pct < y.pct;
      });
      double max_pct_before = -1.0;
      std::size_t idx = 0;
      while (idx < pairs.size()) {
        std::size_t group_end = idx;
        while (group_end < pairs.size() && pairs[group_end].t == pairs[idx].t) ++group_end;
        for (std::size_t p = idx; p < group_end; ++p) {
          if (pairs[p].pct < max_pct_before - 1e-12) {
            monotone.passed = false;
            monotone.witness = pair_witness(pairs[p].i, pairs[p].j, pairs[p].t,
                                            after(pairs[p].i, pairs[p].j)) +
                               " reduced by less than a shorter distance";
            break;
          }
        }
        if (!monotone.passed) break;
        for (std::size_t p = idx; p < group_end; ++p)
          max_pct_before = std::max(max_pct_before, pairs[p].pct);
        idx = group_end;
      }
    }
  }
  if (keep_min.applicable) {
    double s0 = min_distance(before);
    double s1 = min_distance(after);
    if (std::abs(s1 - s0) > kRelTol * s0) {
      keep_min.passed = false;
      keep_min.witness = "min distance " + std::to_string(s0) + " -> " + std::to_string(s1);
    }
  }
  if (uniform_scale.applicable) {
    double ratio = 0.0;
    bool have = false;
    for (int i = 0; i < n && uniform_scale.passed; ++i)
      for (int j = i + 1; j < n; ++j) {
        double r = after(i, j) / before(i, j);
        if (!have) {
          ratio = r;
          have = true;
        } else if (std::abs(r - ratio) > 1e-9 * ratio) {
          uniform_scale.passed = false;
          uniform_scale.witness = pair_witness(i, j, before(i, j), after(i, j));
          break;
        }
      }
  }
  if (uniform_shift.applicable) {
    double delta = 0.0;
    bool have = false;
    for (int i = 0; i < n && uniform_shift.passed; ++i)
      for (int j = i + 1; j < n; ++j) {
        double dd = after(i, j) * after(i, j) - before(i, j) * before(i, j);
        if (!have) {
          delta = dd;
          have = true;
        } else if (std::abs(dd - delta) > 1e-9 * std::max(1.0, std::abs(delta))) {
          uniform_shift.passed = false;
          uniform_shift.witness = pair_witness(i, j, before(i, j), after(i, j));
          break;
        }
      }
  }

  report.checks = {inter_up, intra_down, monotone, keep_min, uniform_scale, uniform_shift};
  for (const auto& c : report.checks)
    if (c.applicable && !c.passed) report.all_passed = false;
  return report;
}

}  // namespace clusterkit
