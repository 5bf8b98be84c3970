#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "contracta/classifiers.hpp"
#include "contracta/config.hpp"
#include "contracta/corpus.hpp"
#include "contracta/orbit.hpp"
#include "contracta/proof_probe.hpp"

namespace contracta {

// Ordered JSON document. Keys serialize in insertion order and reals with
// 17 significant digits, so identical inputs produce byte-identical
// files.
class JsonValue {
 public:
  JsonValue() : data_(nullptr) {}
  JsonValue(std::nullptr_t) : data_(nullptr) {}
  JsonValue(bool b) : data_(b) {}
  JsonValue(double d) : data_(d) {}
  JsonValue(std::int64_t i) : data_(i) {}
  JsonValue(std::uint64_t u) : data_(static_cast<std::int64_t>(u)) {}
  JsonValue(int i) : data_(static_cast<std::int64_t>(i)) {}
  JsonValue(const char* s) : data_(std::string(s)) {}
  JsonValue(std::string s) : data_(std::move(s)) {}

  static JsonValue object() {
    JsonValue v;
    v.data_ = Object{};
    return v;
  }
  static JsonValue array() {
    JsonValue v;
    v.data_ = Array{};
    return v;
  }

  JsonValue& set(const std::string& key, JsonValue value);
  JsonValue& push(JsonValue value);

  std::string dump(int indent = 2) const;

 private:
  using Object = std::vector<std::pair<std::string, JsonValue>>;
  using Array = std::vector<JsonValue>;
  using Data =
      std::variant<std::nullptr_t, bool, double, std::int64_t, std::string,
                   Object, Array>;

  void write(std::string& out, int indent, int depth) const;

  Data data_;
};

std::string format_real(double v);  // %.17g

// Flat table for the CSV format.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string dump() const;
};

// One command result, renderable as JSON or CSV.
struct Report {
  JsonValue json;
  CsvTable csv;

  std::string render(ReportFormat format) const;
};

struct AxiomsResult {
  AxiomReport axioms;
  double s_estimate = 1.0;
  std::uint64_t triple_grid = 0;
};

struct IterateResult {
  FixedPointResult fixed_point;
  Orbit orbit_prefix;
  double orbit_prefix_diameter = 0.0;
  DivergenceVerdict divergence;
  double x0 = 0.0;
};

Report build_axioms_report(const ResolvedTarget& target,
                           const RunConfig& config,
                           const AxiomsResult& result);
Report build_iterate_report(const ResolvedTarget& target,
                            const RunConfig& config,
                            const IterateResult& result);
Report build_classify_report(const ResolvedTarget& target,
                             const RunConfig& config,
                             const HierarchyPlacement& placement);
Report build_probe_report(const ResolvedTarget& target,
                          const RunConfig& config, const SigmaReport& sigma);
Report build_corpus_report(const std::vector<InstanceDescriptor>& instances);

// Writes the rendered report to the path (or stdout when empty).
void emit_report(const Report& report, ReportFormat format,
                 const std::string& path);

}  // namespace contracta
