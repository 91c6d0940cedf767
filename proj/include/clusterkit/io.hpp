#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clusterkit/certificate.hpp"
#include "clusterkit/detect.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/embedded_dataset.hpp"
#include "clusterkit/embedding.hpp"
#include "clusterkit/partition.hpp"
#include "clusterkit/seeding.hpp"
#include "clusterkit/transforms.hpp"

namespace clusterkit {

/// Shortest text with 17 significant digits; reparsing recovers the exact
/// double. All decimal output funnels through here.
std::string format_double(double v);

/// Order-preserving JSON builder. Emission is fully deterministic: keys
/// appear in insertion order and numbers go through format_double.
class JsonValue {
 public:
  JsonValue() : kind_(Kind::Null) {}

  static JsonValue null() { return JsonValue(); }
  static JsonValue boolean(bool b);
  static JsonValue integer(std::int64_t v);
  static JsonValue number(double v);
  static JsonValue string(std::string v);
  static JsonValue array();
  static JsonValue object();

  void push(JsonValue v);                       // array only
  void set(const std::string& key, JsonValue v); // object only

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Null, Bool, Int, Double, String, Array, Object };

  void write(std::string& out, int indent, int depth) const;

  Kind kind_;
  bool bool_ = false;
  std::int64_t int_ = 0;
  double double_ = 0.0;
  std::string string_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> fields_;
};

// ---- files ----

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// ---- matrices ----

std::string write_matrix_csv(const DistanceMatrix& d);
DistanceMatrix parse_matrix_csv(const std::string& text);

JsonValue matrix_to_json(const DistanceMatrix& d,
                         const std::vector<std::string>* labels = nullptr);
struct MatrixFile {
  DistanceMatrix matrix;
  std::optional<std::vector<std::string>> labels;
};
MatrixFile parse_matrix_json(const std::string& text);

/// Reads either format, deciding by the leading character.
DistanceMatrix load_matrix(const std::string& path);

// ---- partitions ----

JsonValue partition_to_json(const Partition& g);
Partition parse_partition_json(const std::string& text);

// ---- certificates ----

JsonValue certificate_to_json(const SeparabilityCertificate& cert);
SeparabilityCertificate parse_certificate_json(const std::string& text);

// ---- transforms ----

JsonValue transform_spec_to_json(const TransformSpec& spec);
TransformSpec parse_transform_spec_json(const std::string& text);
JsonValue validation_to_json(const TransformValidation& report);

// ---- embeddings ----

JsonValue embedded_to_json(const EmbeddedDataset& points);
JsonValue gram_analysis_to_json(const GramAnalysis& analysis);

// ---- detection ----

JsonValue detection_to_json(const DetectionResult& result);

// ---- experiments ----

JsonValue hitting_to_json(double bound, const HittingEstimate& estimate, int m, int k,
                          SeedingMode mode);

}  // namespace clusterkit
