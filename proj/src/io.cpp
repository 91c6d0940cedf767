#include "clusterkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace clusterkit {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JsonValue JsonValue::boolean(bool b) {
  JsonValue v;
  v.kind_ = Kind::Bool;
  v.bool_ = b;
  return v;
}

JsonValue JsonValue::integer(std::int64_t i) {
  JsonValue v;
  v.kind_ = Kind::Int;
  v.int_ = i;
  return v;
}

JsonValue JsonValue::number(double d) {
  JsonValue v;
  v.kind_ = Kind::Double;
  v.double_ = d;
  return v;
}

JsonValue JsonValue::string(std::string s) {
  JsonValue v;
  v.kind_ = Kind::String;
  v.string_ = std::move(s);
  return v;
}

JsonValue JsonValue::array() {
  JsonValue v;
  v.kind_ = Kind::Array;
  return v;
}

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind_ = Kind::Object;
  return v;
}

void JsonValue::push(JsonValue v) {
  if (kind_ != Kind::Array) throw std::logic_error("JsonValue: push on non-array");
  items_.push_back(std::move(v));
}

void JsonValue::set(const std::string& key, JsonValue v) {
  if (kind_ != Kind::Object) throw std::logic_error("JsonValue: set on non-object");
  fields_.emplace_back(key, std::move(v));
}

namespace {

void escape_into(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void newline_indent(std::string& out, int indent, int depth) {
  if (indent <= 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent) * depth, ' ');
}

}  // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
  switch (kind_) {
    case Kind::Null: out += "null"; return;
    case Kind::Bool: out += bool_ ? "true" : "false"; return;
    case Kind::Int: out += std::to_string(int_); return;
    case Kind::Double:
      if (std::isfinite(double_)) {
        out += format_double(double_);
      } else {
        out += "null";
      }
      return;
    case Kind::String: escape_into(out, string_); return;
    case Kind::Array: {
      if (items_.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ',';
        newline_indent(out, indent, depth + 1);
        items_[i].write(out, indent, depth + 1);
      }
      newline_indent(out, indent, depth);
      out += ']';
      return;
    }
    case Kind::Object: {
      if (fields_.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (i) out += ',';
        newline_indent(out, indent, depth + 1);
        escape_into(out, fields_[i].first);
        out += indent > 0 ? ": " : ":";
        fields_[i].second.write(out, indent, depth + 1);
      }
      newline_indent(out, indent, depth);
      out += '}';
      return;
    }
  }
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  if (indent > 0) out += '\n';
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string write_matrix_csv(const DistanceMatrix& d) {
  std::string out;
  int n = d.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out += ',';
      out += format_double(d(i, j));
    }
    out += '\n';
  }
  return out;
}

DistanceMatrix parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw std::runtime_error("matrix csv: malformed numeric field '" + cell + "'");
      }
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size()) throw std::runtime_error("matrix csv: trailing junk in field '" + cell + "'");
      row.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return DistanceMatrix(rows);
}

JsonValue matrix_to_json(const DistanceMatrix& d, const std::vector<std::string>* labels) {
  JsonValue root = JsonValue::object();
  root.set("n", JsonValue::integer(d.size()));
  JsonValue entries = JsonValue::array();
  for (int i = 0; i < d.size(); ++i) {
    JsonValue row = JsonValue::array();
    for (int j = 0; j < d.size(); ++j) row.push(JsonValue::number(d(i, j)));
    entries.push(std::move(row));
  }
  root.set("entries", std::move(entries));
  if (labels) {
    JsonValue names = JsonValue::array();
    for (const auto& l : *labels) names.push(JsonValue::string(l));
    root.set("labels", std::move(names));
  }
  return root;
}

namespace {

nlohmann::json parse_json_text(const std::string& text, const char* what) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error(std::string(what) + ": malformed JSON");
  return j;
}

}  // namespace

MatrixFile parse_matrix_json(const std::string& text) {
  nlohmann::json j = parse_json_text(text, "matrix json");
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw std::runtime_error("matrix json: missing entries");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j["entries"]) {
    if (!row.is_array()) throw std::runtime_error("matrix json: entries must be rows");
    std::vector<double> r;
    for (const auto& cell : row) {
      if (!cell.is_number()) throw std::runtime_error("matrix json: non-numeric entry");
      r.push_back(cell.get<double>());
    }
    rows.push_back(std::move(r));
  }
  if (j.contains("n") && j["n"].is_number_integer() &&
      j["n"].get<int>() != static_cast<int>(rows.size()))
    throw std::runtime_error("matrix json: declared n does not match entries");
  MatrixFile out{DistanceMatrix(rows), std::nullopt};
  if (j.contains("labels")) {
    std::vector<std::string> labels;
    for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
    if (static_cast<int>(labels.size()) != out.matrix.size())
      throw std::runtime_error("matrix json: label count mismatch");
    out.labels = std::move(labels);
  }
  return out;
}

DistanceMatrix load_matrix(const std::string& path) {
  std::string text = read_text_file(path);
  std::size_t pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && text[pos] == '{') return parse_matrix_json(text).matrix;
  return parse_matrix_csv(text);
}

JsonValue partition_to_json(const Partition& g) {
  JsonValue root = JsonValue::object();
  root.set("n", JsonValue::integer(g.n()));
  root.set("k", JsonValue::integer(g.k()));
  JsonValue clusters = JsonValue::array();
  for (const auto& c : g.clusters()) {
    JsonValue members = JsonValue::array();
    for (int i : c) members.push(JsonValue::integer(i));
    clusters.push(std::move(members));
  }
  root.set("clusters", std::move(clusters));
  return root;
}

Partition parse_partition_json(const std::string& text) {
  nlohmann::json j = parse_json_text(text, "partition json");
  if (!j.is_object() || !j.contains("clusters") || !j["clusters"].is_array())
    throw std::runtime_error("partition json: missing clusters");
  std::vector<std::vector<int>> clusters;
  int n = 0;
  for (const auto& c : j["clusters"]) {
    std::vector<int> members;
    for (const auto& i : c) {
      if (!i.is_number_integer()) throw std::runtime_error("partition json: non-integer member");
      members.push_back(i.get<int>());
      ++n;
    }
    clusters.push_back(std::move(members));
  }
  if (j.contains("n") && j["n"].is_number_integer()) n = j["n"].get<int>();
  return Partition(n, std::move(clusters));
}

JsonValue certificate_to_json(const SeparabilityCertificate& cert) {
  JsonValue root = JsonValue::object();
  root.set("criterion", JsonValue::string(criterion_name(cert.criterion)));
  root.set("valid", JsonValue::boolean(cert.valid));
  root.set("threshold", JsonValue::number(cert.threshold));
  root.set("min_inter", JsonValue::number(cert.min_inter));
  root.set("q", JsonValue::number(cert.q_value));
  root.set("beta", cert.beta_value ? JsonValue::number(*cert.beta_value) : JsonValue::null());
  root.set("sigma", JsonValue::number(cert.sigma));
  return root;
}

SeparabilityCertificate parse_certificate_json(const std::string& text) {
  nlohmann::json j = parse_json_text(text, "certificate json");
  SeparabilityCertificate cert;
  auto criterion = parse_criterion(j.value("criterion", ""));
  if (!criterion) throw std::runtime_error("certificate json: unknown criterion");
  cert.criterion = *criterion;
  if (!j.contains("valid") || !j.contains("threshold") || !j.contains("min_inter") ||
      !j.contains("q") || !j.contains("sigma"))
    throw std::runtime_error("certificate json: missing fields");
  cert.valid = j["valid"].get<bool>();
  cert.threshold = j["threshold"].get<double>();
  cert.min_inter = j["min_inter"].get<double>();
  cert.q_value = j["q"].get<double>();
  cert.sigma = j["sigma"].get<double>();
  if (j.contains("beta") && j["beta"].is_number()) cert.beta_value = j["beta"].get<double>();
  return cert;
}

JsonValue transform_spec_to_json(const TransformSpec& spec) {
  JsonValue root = JsonValue::object();
  root.set("kind", JsonValue::string(transform_kind_name(spec.kind)));
  switch (spec.kind) {
    case TransformKind::Scale:
      root.set("alpha", JsonValue::number(spec.alpha));
      break;
    case TransformKind::SquaredShift:
      root.set("delta", JsonValue::number(spec.delta));
      break;
    default: {
      JsonValue shrink = JsonValue::array();
      for (double s : spec.shrink) shrink.push(JsonValue::number(s));
      root.set("shrink", std::move(shrink));
      if (spec.growth_matrix) {
        JsonValue rows = JsonValue::array();
        for (const auto& row : *spec.growth_matrix) {
          JsonValue r = JsonValue::array();
          for (double g : row) r.push(JsonValue::number(g));
          rows.push(std::move(r));
        }
        root.set("growth", std::move(rows));
      } else {
        root.set("growth", JsonValue::number(spec.growth));
      }
    }
  }
  return root;
}

TransformSpec parse_transform_spec_json(const std::string& text) {
  nlohmann::json j = parse_json_text(text, "transform spec json");
  TransformSpec spec;
  auto kind = parse_transform_kind(j.value("kind", ""));
  if (!kind) throw std::runtime_error("transform spec json: unknown kind");
  spec.kind = *kind;
  if (j.contains("alpha")) spec.alpha = j["alpha"].get<double>();
  if (j.contains("delta")) spec.delta = j["delta"].get<double>();
  if (j.contains("shrink")) {
    for (const auto& s : j["shrink"]) spec.shrink.push_back(s.get<double>());
  }
  if (j.contains("growth")) {
    if (j["growth"].is_array()) {
      std::vector<std::vector<double>> rows;
      for (const auto& row : j["growth"]) {
        std::vector<double> r;
        for (const auto& g : row) r.push_back(g.get<double>());
        rows.push_back(std::move(r));
      }
      spec.growth_matrix = std::move(rows);
    } else {
      spec.growth = j["growth"].get<double>();
    }
  }
  return spec;
}

JsonValue validation_to_json(const TransformValidation& report) {
  JsonValue root = JsonValue::object();
  root.set("all_passed", JsonValue::boolean(report.all_passed));
  JsonValue checks = JsonValue::array();
  for (const auto& c : report.checks) {
    JsonValue item = JsonValue::object();
    item.set("name", JsonValue::string(c.name));
    item.set("applicable", JsonValue::boolean(c.applicable));
    item.set("passed", JsonValue::boolean(c.passed));
    if (!c.witness.empty()) item.set("witness", JsonValue::string(c.witness));
    checks.push(std::move(item));
  }
  root.set("checks", std::move(checks));
  return root;
}

JsonValue embedded_to_json(const EmbeddedDataset& points) {
  JsonValue root = JsonValue::object();
  root.set("n", JsonValue::integer(points.n));
  root.set("dim", JsonValue::integer(points.dim));
  JsonValue coords = JsonValue::array();
  for (int i = 0; i < points.n; ++i) {
    JsonValue row = JsonValue::array();
    for (int c = 0; c < points.dim; ++c) row.push(JsonValue::number(points.at(i, c)));
    coords.push(std::move(row));
  }
  root.set("coords", std::move(coords));
  return root;
}

JsonValue gram_analysis_to_json(const GramAnalysis& analysis) {
  JsonValue root = JsonValue::object();
  root.set("is_psd", JsonValue::boolean(analysis.is_psd));
  root.set("min_eigenvalue", JsonValue::number(analysis.min_eigenvalue));
  root.set("required_delta", JsonValue::number(analysis.required_delta));
  JsonValue values = JsonValue::array();
  for (double v : analysis.eigenvalues) values.push(JsonValue::number(v));
  root.set("eigenvalues", std::move(values));
  return root;
}

JsonValue detection_to_json(const DetectionResult& result) {
  JsonValue root = JsonValue::object();
  root.set("criterion", JsonValue::string(criterion_name(result.criterion)));
  root.set("k_max", JsonValue::integer(result.k_max));
  root.set("restarts", JsonValue::integer(result.restarts));
  root.set("seed", JsonValue::integer(static_cast<std::int64_t>(result.rng_seed)));
  root.set("found", JsonValue::boolean(result.partition.has_value()));
  root.set("level", JsonValue::integer(result.level));
  root.set("partition", result.partition ? partition_to_json(*result.partition) : JsonValue::null());
  JsonValue levels = JsonValue::array();
  for (const auto& ev : result.levels) {
    JsonValue item = JsonValue::object();
    item.set("k", JsonValue::integer(ev.k));
    item.set("feasible", JsonValue::boolean(ev.feasible));
    JsonValue qs = JsonValue::array();
    for (double q : ev.restart_q) qs.push(JsonValue::number(q));
    item.set("restart_q", std::move(qs));
    item.set("failed_restarts", JsonValue::integer(ev.failed_restarts));
    item.set("undersized_results", JsonValue::integer(ev.undersized_results));
    item.set("best_partition", ev.best ? partition_to_json(*ev.best) : JsonValue::null());
    item.set("certificate", ev.certificate ? certificate_to_json(*ev.certificate) : JsonValue::null());
    levels.push(std::move(item));
  }
  root.set("levels", std::move(levels));
  JsonValue checks = JsonValue::array();
  for (const auto& c : result.subcluster_checks) {
    JsonValue item = JsonValue::object();
    item.set("level_k", JsonValue::integer(c.level_k));
    item.set("cluster_index", JsonValue::integer(c.cluster_index));
    item.set("k_prime", JsonValue::integer(c.k_prime));
    item.set("method", JsonValue::string(c.oracle ? "oracle" : "heuristic"));
    item.set("separable", JsonValue::boolean(c.separable));
    checks.push(std::move(item));
  }
  root.set("subcluster_checks", std::move(checks));
  return root;
}

JsonValue hitting_to_json(double bound, const HittingEstimate& estimate, int m, int k,
                          SeedingMode mode) {
  JsonValue root = JsonValue::object();
  root.set("mode", JsonValue::string(mode == SeedingMode::Dsquared ? "dsq" : "residual"));
  root.set("min_cluster_size", JsonValue::integer(m));
  root.set("k", JsonValue::integer(k));
  root.set("bound", JsonValue::number(bound));
  root.set("estimate", JsonValue::number(estimate.estimate));
  root.set("ci_low", JsonValue::number(estimate.ci_low));
  root.set("ci_high", JsonValue::number(estimate.ci_high));
  root.set("trials", JsonValue::integer(estimate.trials));
  root.set("hits", JsonValue::integer(estimate.hits));
  return root;
}

}  // namespace clusterkit
