// clusterkit: command-line surface for the clusterability toolkit.
//
// Exit codes are a stable contract: 0 success, 1 negative finding
// (nothing detected, a check failed), 2 usage or input error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clusterkit/detect.hpp"
#include "clusterkit/embedding.hpp"
#include "clusterkit/enumeration.hpp"
#include "clusterkit/generators.hpp"
#include "clusterkit/io.hpp"
#include "clusterkit/objective.hpp"
#include "clusterkit/oracle.hpp"
#include "clusterkit/seeding.hpp"
#include "clusterkit/separability.hpp"
#include "clusterkit/transforms.hpp"

namespace ck = clusterkit;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--sizes: malformed entry '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("--sizes: malformed entry '" + tok + "'");
    sizes.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return sizes;
}

struct Bundle {
  ck::DistanceMatrix matrix;
  ck::Partition partition;
  ck::SeparabilityCertificate certificate;
};

Bundle load_bundle(const std::string& dir) {
  std::filesystem::path root(dir);
  Bundle b{
      ck::load_matrix((root / "matrix.json").string()),
      ck::parse_partition_json(ck::read_text_file((root / "partition.json").string())),
      ck::parse_certificate_json(ck::read_text_file((root / "certificate.json").string())),
  };
  if (b.partition.n() != b.matrix.size())
    throw std::runtime_error("bundle: partition and matrix disagree on point count");
  return b;
}

void emit(const ck::JsonValue& report, const std::string& out_path) {
  if (!out_path.empty()) ck::write_text_file(out_path, report.dump());
}

std::string format_partition(const ck::Partition& g) {
  std::string out;
  for (const auto& c : g.clusters()) {
    out += '{';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(c[i]);
    }
    out += "} ";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

bool rel_close(double a, double b, double tol = 1e-12) {
  double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
  return std::fabs(a - b) <= tol * scale;
}

// ---- generate ----

struct GenerateArgs {
  std::string sizes_text;
  int dim = 3;
  double spread = 1.0;
  double margin = 1.5;
  double intra = 1.0;
  double inter = 0.0;
  std::uint64_t seed = 1;
  bool two_valued = false;
  bool residual_only = false;
  std::string out;
  bool human = false;
};

int cmd_generate(const GenerateArgs& a) {
  std::vector<int> sizes = parse_sizes(a.sizes_text);
  ck::JsonValue sizes_json = ck::JsonValue::array();
  for (int s : sizes) sizes_json.push(ck::JsonValue::integer(s));

  std::optional<ck::DistanceMatrix> matrix;
  std::optional<ck::Partition> partition;
  std::optional<ck::SeparabilityCertificate> cert;
  ck::JsonValue meta = ck::JsonValue::object();
  std::string kind;

  if (a.two_valued) {
    if (a.inter <= 0.0) throw std::invalid_argument("--two-valued requires --inter > 0");
    kind = "two-valued";
    ck::TwoValuedInstance inst = ck::generate_two_valued(sizes, a.intra, a.inter);
    cert = ck::is_variationally_separable(inst.matrix, inst.partition);
    matrix = std::move(inst.matrix);
    partition = std::move(inst.partition);
    meta.set("kind", ck::JsonValue::string(kind));
    meta.set("sizes", sizes_json);
    meta.set("intra", ck::JsonValue::number(a.intra));
    meta.set("inter", ck::JsonValue::number(a.inter));
  } else if (a.residual_only) {
    kind = "residual-only";
    ck::Rng rng(a.seed);
    ck::ResidualInstance inst = ck::generate_residual_only(sizes, rng);
    cert = ck::is_residually_separable(inst.matrix, inst.partition);
    matrix = std::move(inst.matrix);
    partition = std::move(inst.partition);
    meta.set("kind", ck::JsonValue::string(kind));
    meta.set("sizes", sizes_json);
    meta.set("seed", ck::JsonValue::integer(static_cast<std::int64_t>(a.seed)));
  } else {
    kind = "euclidean";
    ck::Rng rng(a.seed);
    ck::EuclideanInstance inst = ck::generate_euclidean(sizes, a.dim, a.spread, a.margin, rng);
    matrix = ck::pairwise_distances(inst.points);
    partition = std::move(inst.partition);
    cert = inst.certificate;
    meta.set("kind", ck::JsonValue::string(kind));
    meta.set("sizes", sizes_json);
    meta.set("dim", ck::JsonValue::integer(a.dim));
    meta.set("spread", ck::JsonValue::number(a.spread));
    meta.set("margin", ck::JsonValue::number(a.margin));
    meta.set("seed", ck::JsonValue::integer(static_cast<std::int64_t>(a.seed)));
  }
  meta.set("n", ck::JsonValue::integer(matrix->size()));
  meta.set("k", ck::JsonValue::integer(partition->k()));
  meta.set("criterion", ck::JsonValue::string(ck::criterion_name(cert->criterion)));

  ck::JsonValue matrix_json = ck::matrix_to_json(*matrix);
  ck::JsonValue partition_json = ck::partition_to_json(*partition);
  ck::JsonValue cert_json = ck::certificate_to_json(*cert);

  if (!a.out.empty()) {
    std::filesystem::create_directories(a.out);
    std::filesystem::path root(a.out);
    ck::write_text_file((root / "matrix.json").string(), matrix_json.dump());
    ck::write_text_file((root / "partition.json").string(), partition_json.dump());
    ck::write_text_file((root / "certificate.json").string(), cert_json.dump());
    ck::write_text_file((root / "meta.json").string(), meta.dump());
  }

  if (a.human) {
    std::cout << "kind: " << kind << '\n'
              << "n: " << matrix->size() << "  k: " << partition->k() << '\n'
              << "criterion: " << ck::criterion_name(cert->criterion) << '\n'
              << "valid: " << (cert->valid ? "yes" : "no") << '\n'
              << "threshold: " << ck::format_double(cert->threshold) << '\n'
              << "min_inter: " << ck::format_double(cert->min_inter) << '\n';
    if (!a.out.empty()) std::cout << "bundle: " << a.out << '\n';
  } else {
    ck::JsonValue bundle = ck::JsonValue::object();
    bundle.set("meta", std::move(meta));
    bundle.set("matrix", std::move(matrix_json));
    bundle.set("partition", std::move(partition_json));
    bundle.set("certificate", std::move(cert_json));
    std::cout << bundle.dump();
  }
  return kOk;
}

// ---- detect ----

struct DetectArgs {
  std::string matrix_path;
  int kx = 5;
  std::string criterion = "variational";
  int restarts = 20;
  std::uint64_t seed = 1;
  std::string out;
  bool human = false;
};

int cmd_detect(const DetectArgs& a) {
  ck::DistanceMatrix d = ck::load_matrix(a.matrix_path);
  ck::Criterion crit = *ck::parse_criterion(a.criterion);
  ck::Rng rng(a.seed);
  ck::DetectionResult res = ck::detect_range(d, a.kx, crit, a.restarts, rng);
  ck::JsonValue report = ck::detection_to_json(res);
  emit(report, a.out);
  if (a.human) {
    std::cout << "criterion: " << ck::criterion_name(res.criterion) << '\n';
    if (res.partition) {
      std::cout << "found: yes\nlevel: " << res.level << '\n'
                << "partition: " << format_partition(*res.partition) << '\n';
    } else {
      std::cout << "found: no\n";
    }
    for (const auto& ev : res.levels) {
      std::cout << "k=" << ev.k;
      if (!ev.feasible) {
        std::cout << ": infeasible\n";
        continue;
      }
      std::cout << ": certified=" << (ev.certificate && ev.certificate->valid ? "yes" : "no");
      if (ev.certificate)
        std::cout << " threshold=" << ck::format_double(ev.certificate->threshold)
                  << " min_inter=" << ck::format_double(ev.certificate->min_inter);
      std::cout << " completed=" << ev.restart_q.size() << " failed=" << ev.failed_restarts
                << '\n';
    }
    std::cout << "subcluster probes: " << res.subcluster_checks.size() << '\n';
  } else {
    std::cout << report.dump();
  }
  return res.partition ? kOk : kNegative;
}

// ---- verify ----

struct VerifyArgs {
  std::string bundle;
  bool no_oracle = false;
  std::string out;
  bool human = false;
};

struct VerifyCheck {
  std::string name;
  bool applicable = true;
  bool passed = true;
  std::string detail;
};

int cmd_verify(const VerifyArgs& a) {
  Bundle b = load_bundle(a.bundle);
  const ck::DistanceMatrix& d = b.matrix;
  const ck::Partition& g = b.partition;
  const ck::SeparabilityCertificate& stored = b.certificate;

  if (!a.no_oracle && d.size() > ck::kEnumerationCap) {
    std::cerr << "error: oracle verification enumerates partitions and needs n <= "
              << ck::kEnumerationCap << " (bundle has n = " << d.size()
              << "); rerun with --no-oracle\n";
    return kUsage;
  }

  std::vector<VerifyCheck> checks;
  ck::SeparabilityCertificate fresh = ck::certify(d, g, stored.criterion);

  {
    bool ok = stored.valid == fresh.valid && rel_close(stored.threshold, fresh.threshold) &&
              rel_close(stored.min_inter, fresh.min_inter) &&
              rel_close(stored.q_value, fresh.q_value) && rel_close(stored.sigma, fresh.sigma);
    if (stored.criterion == ck::Criterion::Residual)
      ok = ok && stored.beta_value.has_value() && fresh.beta_value.has_value() &&
           rel_close(*stored.beta_value, *fresh.beta_value);
    checks.push_back({"certificate_recomputed", true, ok,
                      ok ? "" : "stored certificate disagrees with recomputation"});
  }
  {
    bool applicable = stored.valid;
    bool ok = !stored.valid || fresh.valid;
    checks.push_back({"certificate_valid", applicable, ok,
                      applicable ? (ok ? "" : "bundle claims validity but the margin fails")
                                 : "bundle certificate not marked valid"});
  }
  {
    int n = d.size();
    int k = g.k();
    double sigma = ck::min_distance(d);
    double bound = 0.5 * (n - k) * sigma * sigma;
    double q = ck::quality(d, g);
    bool ok = q >= bound * (1.0 - 1e-12);
    checks.push_back({"q_lower_bound", true, ok,
                      ok ? "" : "Q = " + ck::format_double(q) + " below (n-k) sigma^2 / 2 = " +
                                    ck::format_double(bound)});
  }
  {
    bool applicable = !a.no_oracle && stored.valid;
    bool ok = true;
    std::string detail;
    if (applicable) {
      ck::OracleResult oracle = ck::brute_force_optimal(d, g.k());
      ok = oracle.best_partition == g;
      detail = "examined " + std::to_string(oracle.partitions_examined) + " partitions" +
               (oracle.unique ? ", optimum unique" : ", optimum tied");
      if (!ok) detail += "; exhaustive optimum differs from bundle partition";
    } else {
      detail = a.no_oracle ? "skipped by --no-oracle" : "no optimality claim to check";
    }
    checks.push_back({"oracle_optimal", applicable, ok, detail});
  }

  bool all = true;
  ck::JsonValue list = ck::JsonValue::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    ck::JsonValue item = ck::JsonValue::object();
    item.set("name", ck::JsonValue::string(c.name));
    item.set("applicable", ck::JsonValue::boolean(c.applicable));
    item.set("passed", ck::JsonValue::boolean(c.passed));
    if (!c.detail.empty()) item.set("detail", ck::JsonValue::string(c.detail));
    list.push(std::move(item));
  }
  ck::JsonValue report = ck::JsonValue::object();
  report.set("checks", std::move(list));
  report.set("all_passed", ck::JsonValue::boolean(all));
  emit(report, a.out);
  if (a.human) {
    for (const auto& c : checks) {
      const char* tag = !c.applicable ? "skip" : (c.passed ? "pass" : "FAIL");
      std::cout << '[' << tag << "] " << c.name;
      if (!c.detail.empty()) std::cout << ": " << c.detail;
      std::cout << '\n';
    }
  } else {
    std::cout << report.dump();
  }
  return all ? kOk : kNegative;
}

// ---- transform ----

struct TransformArgs {
  std::string matrix_path;
  std::string partition_path;
  std::string spec_path;
  std::string out_matrix;
  std::string report_path;
  bool human = false;
};

int cmd_transform(const TransformArgs& a) {
  ck::DistanceMatrix d = ck::load_matrix(a.matrix_path);
  ck::Partition g = ck::parse_partition_json(ck::read_text_file(a.partition_path));
  if (g.n() != d.size()) throw std::runtime_error("partition does not match matrix point count");
  ck::TransformSpec spec = ck::parse_transform_spec_json(ck::read_text_file(a.spec_path));
  ck::validate_spec(spec, g.k());

  ck::DistanceMatrix after = ck::apply_transform(d, g, spec);
  ck::TransformValidation val = ck::validate_transform(d, after, g, spec.kind);

  ck::JsonValue report = ck::JsonValue::object();
  report.set("spec", ck::transform_spec_to_json(spec));
  report.set("validation", ck::validation_to_json(val));
  if (!a.out_matrix.empty()) ck::write_text_file(a.out_matrix, ck::matrix_to_json(after).dump());
  if (!a.report_path.empty()) ck::write_text_file(a.report_path, report.dump());

  if (a.human) {
    std::cout << "kind: " << ck::transform_kind_name(spec.kind) << '\n';
    for (const auto& c : val.checks) {
      const char* tag = !c.applicable ? "skip" : (c.passed ? "pass" : "FAIL");
      std::cout << '[' << tag << "] " << c.name;
      if (!c.witness.empty()) std::cout << ": " << c.witness;
      std::cout << '\n';
    }
  } else {
    ck::JsonValue combined = ck::JsonValue::object();
    combined.set("spec", ck::transform_spec_to_json(spec));
    combined.set("validation", ck::validation_to_json(val));
    combined.set("matrix", ck::matrix_to_json(after));
    std::cout << combined.dump();
  }
  return val.all_passed ? kOk : kNegative;
}

// ---- embed ----

struct EmbedArgs {
  std::string matrix_path;
  double tol = 1e-10;
  bool shift = false;
  std::string out;
  bool human = false;
};

int cmd_embed(const EmbedArgs& a) {
  ck::DistanceMatrix d = ck::load_matrix(a.matrix_path);
  ck::GramAnalysis analysis = ck::analyze(d, a.tol);

  ck::JsonValue report = ck::JsonValue::object();
  report.set("analysis", ck::gram_analysis_to_json(analysis));
  int rc = kOk;
  std::optional<ck::EuclideanizeResult> result;
  if (analysis.is_psd || a.shift) {
    result = ck::euclideanize(d, a.tol);
    report.set("delta_used", ck::JsonValue::number(result->delta_used));
    report.set("embedding", ck::embedded_to_json(result->points));
  } else {
    report.set("delta_used", ck::JsonValue::null());
    report.set("embedding", ck::JsonValue::null());
    rc = kNegative;
  }
  emit(report, a.out);
  if (a.human) {
    std::cout << "embeddable: " << (analysis.is_psd ? "yes" : "no") << '\n'
              << "min_eigenvalue: " << ck::format_double(analysis.min_eigenvalue) << '\n'
              << "required_delta: " << ck::format_double(analysis.required_delta) << '\n';
    if (result) {
      std::cout << "delta_used: " << ck::format_double(result->delta_used) << '\n'
                << "dim: " << result->points.dim << '\n';
    } else {
      std::cout << "coordinates withheld; rerun with --shift to apply the minimal shift\n";
    }
  } else {
    std::cout << report.dump();
  }
  return rc;
}

// ---- hitting ----

struct HittingArgs {
  std::string bundle;
  int trials = 10000;
  std::string mode = "dsq";
  std::uint64_t seed = 1;
  std::string out;
  bool human = false;
};

int cmd_hitting(const HittingArgs& a) {
  if (a.trials < 1) {
    std::cerr << "error: --trials must be at least 1\n";
    return kUsage;
  }
  Bundle b = load_bundle(a.bundle);
  ck::SeedingMode mode =
      a.mode == "residual" ? ck::SeedingMode::ResidualDsquared : ck::SeedingMode::Dsquared;
  int m = b.partition.cluster_size(0);
  for (int j = 1; j < b.partition.k(); ++j) m = std::min(m, b.partition.cluster_size(j));
  int k = b.partition.k();
  double bound = ck::hitting_probability_bound(m, k);
  ck::Rng rng(a.seed);
  ck::HittingEstimate est =
      ck::estimate_hitting_probability(b.matrix, b.partition, mode, a.trials, rng);
  double se = std::sqrt(bound * (1.0 - bound) / a.trials);
  double floor = bound - 3.0 * se;
  bool passed = est.estimate >= floor;

  ck::JsonValue report = ck::hitting_to_json(bound, est, m, k, mode);
  report.set("floor", ck::JsonValue::number(floor));
  report.set("passed", ck::JsonValue::boolean(passed));
  emit(report, a.out);
  if (a.human) {
    std::cout << "mode: " << a.mode << "  m: " << m << "  k: " << k << '\n'
              << "bound: " << ck::format_double(bound) << '\n'
              << "estimate: " << ck::format_double(est.estimate) << "  (99% CI "
              << ck::format_double(est.ci_low) << " .. " << ck::format_double(est.ci_high)
              << ")\n"
              << "floor (bound - 3 SE): " << ck::format_double(floor) << '\n'
              << (passed ? "pass" : "FAIL") << '\n';
  } else {
    std::cout << report.dump();
  }
  return passed ? kOk : kNegative;
}

// ---- axiom-check ----

struct AxiomArgs {
  std::string bundle;
  std::uint64_t seed = 1;
  int kx = 0;  // 0: derive from the bundle partition
  int restarts = 20;
  int richness_max_n = 6;
  bool non_keep_min = false;
  std::string out;
  bool human = false;
};

int cmd_axiom_check(const AxiomArgs& a) {
  Bundle b = load_bundle(a.bundle);
  const ck::DistanceMatrix& d = b.matrix;
  const ck::Partition& g = b.partition;
  ck::Criterion crit = b.certificate.criterion;
  int kx = a.kx > 0 ? a.kx : std::max(3, g.k() + 1);

  ck::Rng rng(a.seed);
  ck::Rng rng_base = rng.substream(1);
  ck::DetectionResult base = ck::detect_range(d, kx, crit, a.restarts, rng_base);
  ck::SeparabilityCertificate cert0 = ck::certify(d, g, crit);
  auto same_outcome = [&](const ck::DetectionResult& x) {
    return x.partition == base.partition && x.level == base.level;
  };

  // Scale invariance: certificates and detection are unchanged under
  // uniform rescaling; thresholds scale linearly.
  bool scale_ok = true;
  ck::JsonValue scale_cases = ck::JsonValue::array();
  for (double alpha : {1e-3, 1e3}) {
    ck::DistanceMatrix ds = ck::scale(d, alpha);
    ck::SeparabilityCertificate cs = ck::certify(ds, g, crit);
    ck::Rng r = rng.substream(1);
    ck::DetectionResult det = ck::detect_range(ds, kx, crit, a.restarts, r);
    bool valid_preserved = cs.valid == cert0.valid;
    bool threshold_scales = rel_close(cs.threshold, alpha * cert0.threshold, 1e-9);
    bool detection_unchanged = same_outcome(det);
    scale_ok = scale_ok && valid_preserved && threshold_scales && detection_unchanged;
    ck::JsonValue item = ck::JsonValue::object();
    item.set("alpha", ck::JsonValue::number(alpha));
    item.set("certificate_preserved", ck::JsonValue::boolean(valid_preserved));
    item.set("threshold_scales", ck::JsonValue::boolean(threshold_scales));
    item.set("detection_unchanged", ck::JsonValue::boolean(detection_unchanged));
    scale_cases.push(std::move(item));
  }

  // Convergent consistency preservation: the criterion picks the anchor
  // family (global-minimum anchors for residual bundles).
  ck::TransformKind kind = crit == ck::Criterion::Residual
                               ? ck::TransformKind::ConvergentConsistencyKeepMin
                               : ck::TransformKind::ConvergentConsistency;
  bool cons_ok = true;
  ck::JsonValue cons_cases = ck::JsonValue::array();
  ck::Rng rng_trans = rng.substream(2);
  std::uint64_t combo = 0;
  for (double s : {0.3, 0.7, 1.0}) {
    for (double grow : {1.0, 2.0, 10.0}) {
      ck::TransformSpec spec;
      spec.kind = kind;
      spec.shrink.assign(static_cast<std::size_t>(g.k()), s);
      spec.growth = grow;
      ck::DistanceMatrix after = ck::apply_transform(d, g, spec);
      ck::TransformValidation val = ck::validate_transform(d, after, g, kind);
      ck::SeparabilityCertificate cs = ck::certify(after, g, crit);
      ck::Rng r = rng_trans.substream(combo++);
      ck::DetectionResult det = ck::detect_range(after, kx, crit, a.restarts, r);
      bool cert_preserved = !cert0.valid || cs.valid;
      bool detection_unchanged = same_outcome(det);
      cons_ok = cons_ok && val.all_passed && cert_preserved && detection_unchanged;
      ck::JsonValue item = ck::JsonValue::object();
      item.set("shrink", ck::JsonValue::number(s));
      item.set("growth", ck::JsonValue::number(grow));
      item.set("validation_passed", ck::JsonValue::boolean(val.all_passed));
      item.set("certificate_preserved", ck::JsonValue::boolean(cert_preserved));
      item.set("detection_unchanged", ck::JsonValue::boolean(detection_unchanged));
      cons_cases.push(std::move(item));
    }
  }

  // Richness: every small partition is the exact detection result on its
  // two-valued witness. k = 1 witnesses degenerate to all-equal matrices,
  // which certify nowhere, so the sweep starts at k = 2.
  int max_n = std::clamp(a.richness_max_n, 4, 8);
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  ck::Rng rng_rich = rng.substream(3);
  for (int n = 4; n <= max_n; ++n) {
    for (int k = 2; 2 * k <= n; ++k) {
      ck::enumerate_partitions(n, k, 2, [&](const std::vector<std::vector<int>>& blocks) {
        ck::Partition target(n, blocks);
        ck::DistanceMatrix w = ck::two_valued_richness_witness(target);
        ck::Rng r = rng_rich.substream(checked);
        ck::DetectionResult det =
            ck::detect_range(w, n / 2, ck::Criterion::Variational, a.restarts, r);
        ++checked;
        if (!(det.partition && *det.partition == target && det.level == target.k())) ++failures;
        return true;
      });
    }
  }
  bool rich_ok = failures == 0;

  ck::JsonValue report = ck::JsonValue::object();
  report.set("criterion", ck::JsonValue::string(ck::criterion_name(crit)));
  report.set("kx", ck::JsonValue::integer(kx));
  report.set("restarts", ck::JsonValue::integer(a.restarts));
  report.set("seed", ck::JsonValue::integer(static_cast<std::int64_t>(a.seed)));
  {
    ck::JsonValue baseline = ck::JsonValue::object();
    baseline.set("found", ck::JsonValue::boolean(base.partition.has_value()));
    baseline.set("level", ck::JsonValue::integer(base.level));
    baseline.set("matches_bundle",
                 ck::JsonValue::boolean(base.partition && *base.partition == g));
    report.set("baseline", std::move(baseline));
  }
  ck::JsonValue axioms = ck::JsonValue::array();
  {
    ck::JsonValue ax = ck::JsonValue::object();
    ax.set("name", ck::JsonValue::string("scale_invariance"));
    ax.set("passed", ck::JsonValue::boolean(scale_ok));
    ax.set("cases", std::move(scale_cases));
    axioms.push(std::move(ax));
  }
  {
    ck::JsonValue ax = ck::JsonValue::object();
    ax.set("name", ck::JsonValue::string("consistency_preservation"));
    ax.set("passed", ck::JsonValue::boolean(cons_ok));
    ax.set("kind", ck::JsonValue::string(ck::transform_kind_name(kind)));
    ax.set("cases", std::move(cons_cases));
    axioms.push(std::move(ax));
  }
  {
    ck::JsonValue ax = ck::JsonValue::object();
    ax.set("name", ck::JsonValue::string("richness"));
    ax.set("passed", ck::JsonValue::boolean(rich_ok));
    ax.set("max_n", ck::JsonValue::integer(max_n));
    ax.set("partitions_checked", ck::JsonValue::integer(static_cast<std::int64_t>(checked)));
    ax.set("failures", ck::JsonValue::integer(static_cast<std::int64_t>(failures)));
    axioms.push(std::move(ax));
  }
  report.set("axioms", std::move(axioms));

  // Optional negative probe: a consistency transform that shrinks the
  // cluster holding the overall minimum distance lowers sigma, which can
  // raise the residual threshold past min_inter. Outcomes are reported,
  // never asserted.
  if (a.non_keep_min) {
    int ai = 0, aj = 1;
    for (int i = 0; i < d.size(); ++i)
      for (int j = i + 1; j < d.size(); ++j)
        if (d(i, j) < d(ai, aj)) {
          ai = i;
          aj = j;
        }
    int target_cluster = g.cluster_of(ai) == g.cluster_of(aj) ? g.cluster_of(ai) : 0;
    ck::JsonValue probes = ck::JsonValue::array();
    ck::Rng rng_probe = rng.substream(4);
    std::uint64_t pi = 0;
    for (double s : {0.3, 0.7}) {
      ck::TransformSpec spec;
      spec.kind = ck::TransformKind::Consistency;
      spec.shrink.assign(static_cast<std::size_t>(g.k()), 1.0);
      spec.shrink[static_cast<std::size_t>(target_cluster)] = s;
      ck::DistanceMatrix after = ck::apply_transform(d, g, spec);
      ck::TransformValidation val =
          ck::validate_transform(d, after, g, ck::TransformKind::Consistency);
      ck::SeparabilityCertificate cs = ck::certify(after, g, crit);
      ck::Rng r = rng_probe.substream(pi++);
      ck::DetectionResult det = ck::detect_range(after, kx, crit, a.restarts, r);
      ck::JsonValue item = ck::JsonValue::object();
      item.set("shrink_min_cluster", ck::JsonValue::number(s));
      item.set("validation_passed", ck::JsonValue::boolean(val.all_passed));
      item.set("certificate_still_valid", ck::JsonValue::boolean(cs.valid));
      item.set("detection_unchanged", ck::JsonValue::boolean(same_outcome(det)));
      probes.push(std::move(item));
    }
    report.set("non_keep_min", std::move(probes));
  }

  bool all = scale_ok && cons_ok && rich_ok;
  report.set("all_passed", ck::JsonValue::boolean(all));
  emit(report, a.out);
  if (a.human) {
    std::cout << "[" << (scale_ok ? "pass" : "FAIL") << "] scale_invariance\n"
              << "[" << (cons_ok ? "pass" : "FAIL") << "] consistency_preservation ("
              << ck::transform_kind_name(kind) << ")\n"
              << "[" << (rich_ok ? "pass" : "FAIL") << "] richness (" << checked
              << " partitions, n <= " << max_n << ")\n";
  } else {
    std::cout << report.dump();
  }
  return all ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clusterability toolkit: certified clustering of pseudo-distance matrices"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "construct a certified instance bundle");
  gen->add_option("--sizes", gen_args.sizes_text, "comma-separated cluster sizes, each >= 2")
      ->required();
  gen->add_option("--dim", gen_args.dim, "ambient dimension (euclidean kind)");
  gen->add_option("--spread", gen_args.spread, "within-cluster radius (euclidean kind)");
  gen->add_option("--margin", gen_args.margin, "required min_inter / threshold ratio, > 1");
  gen->add_option("--intra", gen_args.intra, "intra-cluster distance (two-valued kind)");
  gen->add_option("--inter", gen_args.inter, "inter-cluster distance (two-valued kind)");
  gen->add_option("--seed", gen_args.seed, "random seed");
  gen->add_flag("--two-valued", gen_args.two_valued, "emit a two-valued pseudo-distance matrix");
  gen->add_flag("--residual-only", gen_args.residual_only,
                "emit an instance that is residually but not variationally separable");
  gen->add_option("--out", gen_args.out, "bundle directory to write");
  gen->add_flag("--human", gen_args.human, "print a summary instead of JSON");

  DetectArgs det_args;
  auto* det = app.add_subcommand("detect", "search a matrix for certified cluster structure");
  det->add_option("--matrix", det_args.matrix_path, "matrix file (JSON or CSV)")->required();
  det->add_option("--kx", det_args.kx, "largest cluster count to try");
  det->add_option("--criterion", det_args.criterion, "variational or residual")
      ->check(CLI::IsMember({"variational", "residual"}));
  det->add_option("--restarts", det_args.restarts, "seeded restarts per cluster count");
  det->add_option("--seed", det_args.seed, "random seed");
  det->add_option("--out", det_args.out, "write the JSON report here");
  det->add_flag("--human", det_args.human, "print a summary instead of JSON");

  VerifyArgs ver_args;
  auto* ver = app.add_subcommand("verify", "re-check a bundle's certificate and optimality");
  ver->add_option("--bundle", ver_args.bundle, "bundle directory")->required();
  ver->add_flag("--no-oracle", ver_args.no_oracle, "skip exhaustive optimality (needed for large n)");
  ver->add_option("--out", ver_args.out, "write the JSON report here");
  ver->add_flag("--human", ver_args.human, "print a summary instead of JSON");

  TransformArgs tr_args;
  auto* tr = app.add_subcommand("transform", "apply a declared transform and audit it");
  tr->add_option("--matrix", tr_args.matrix_path, "matrix file (JSON or CSV)")->required();
  tr->add_option("--partition", tr_args.partition_path, "partition JSON file")->required();
  tr->add_option("--spec", tr_args.spec_path, "transform spec JSON file")->required();
  tr->add_option("--out-matrix", tr_args.out_matrix, "write the transformed matrix here");
  tr->add_option("--report", tr_args.report_path, "write the validation report here");
  tr->add_flag("--human", tr_args.human, "print a summary instead of JSON");

  EmbedArgs emb_args;
  auto* emb = app.add_subcommand("embed", "embed a matrix into Euclidean coordinates");
  emb->add_option("--matrix", emb_args.matrix_path, "matrix file (JSON or CSV)")->required();
  emb->add_option("--tol", emb_args.tol, "eigenvalue tolerance");
  emb->add_flag("--shift", emb_args.shift,
                "apply the minimal squared shift when the matrix is not embeddable");
  emb->add_option("--out", emb_args.out, "write the JSON report here");
  emb->add_flag("--human", emb_args.human, "print a summary instead of JSON");

  HittingArgs hit_args;
  auto* hit = app.add_subcommand("hitting", "estimate the seeding hit-all probability");
  hit->add_option("--bundle", hit_args.bundle, "bundle directory")->required();
  hit->add_option("--trials", hit_args.trials, "Monte Carlo trials");
  hit->add_option("--mode", hit_args.mode, "seeding weights: dsq or residual")
      ->check(CLI::IsMember({"dsq", "residual"}));
  hit->add_option("--seed", hit_args.seed, "random seed");
  hit->add_option("--out", hit_args.out, "write the JSON report here");
  hit->add_flag("--human", hit_args.human, "print a summary instead of JSON");

  AxiomArgs ax_args;
  auto* ax = app.add_subcommand("axiom-check", "run the axiom sweeps against a bundle");
  ax->add_option("--bundle", ax_args.bundle, "bundle directory")->required();
  ax->add_option("--seed", ax_args.seed, "random seed");
  ax->add_option("--kx", ax_args.kx, "largest cluster count to try (default: bundle k + 1)");
  ax->add_option("--restarts", ax_args.restarts, "seeded restarts per cluster count");
  ax->add_option("--richness-max-n", ax_args.richness_max_n,
                 "largest set size for the richness sweep (4..8)");
  ax->add_flag("--non-keep-min", ax_args.non_keep_min,
               "also probe a sigma-lowering transform; outcome reported, not asserted");
  ax->add_option("--out", ax_args.out, "write the JSON report here");
  ax->add_flag("--human", ax_args.human, "print a summary instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_args);
    if (det->parsed()) return cmd_detect(det_args);
    if (ver->parsed()) return cmd_verify(ver_args);
    if (tr->parsed()) return cmd_transform(tr_args);
    if (emb->parsed()) return cmd_embed(emb_args);
    if (hit->parsed()) return cmd_hitting(hit_args);
    if (ax->parsed()) return cmd_axiom_check(ax_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
