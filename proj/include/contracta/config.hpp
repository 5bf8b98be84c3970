#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "contracta/classifiers.hpp"
#include "contracta/proof_probe.hpp"
#include "contracta/space.hpp"

namespace contracta {

enum class Command { axioms, iterate, classify, probe, corpus };

const char* command_name(Command command);

enum class ReportFormat { json, csv };

// Inline space description used when no corpus instance is named.
struct InlineSpec {
  std::string domain_kind = "interval";  // interval | harmonic
  double lo = 0.0;
  double hi = 1.0;
  std::uint64_t n_max = 1000000;
  std::string distance = "abs(x - y)";  // expression text
  double s_claimed = 1.0;
  bool triangle_enforced = true;
  std::string map_expr;     // expression in x
  std::string map_builtin;  // halve | thirds_jump | shift
};

struct ProbeParams {
  std::vector<std::uint64_t> offsets = {0, 1, 2, 3};
  std::vector<std::uint64_t> gaps = {0, 1, 2, 3, 4};
  std::uint64_t truncation = 30;  // K
  std::uint64_t p_max = 30;
  std::optional<double> x0;
};

struct IterateParams {
  std::optional<double> x0;
  std::uint64_t orbit_len = 100;
};

struct OutputParams {
  ReportFormat format = ReportFormat::json;
  std::string path;  // empty = stdout
};

// Parsed and validated run configuration with defaults applied. The
// document format is strict: one dotted.key = value per line, '#'
// comments, numbers, booleans, quoted or bare strings, and numeric lists
// in brackets. Unknown keys are rejected.
struct RunConfig {
  std::optional<std::string> instance;
  Command command = Command::classify;
  InlineSpec inline_spec;
  bool has_inline = false;

  SampleStrategy strategy = SampleStrategy::random;
  std::uint64_t sample_count = 2000;
  std::uint64_t seed = 42;

  Tolerances tols;

  CheckerParams checker;
  std::string phi = "t / 2";
  std::string alpha = "1 / 2";
  GeraghtyVariant alpha_variant = GeraghtyVariant::type_I;
  std::vector<double> phi_grid = {1e-3, 1e-2, 0.1, 0.25, 0.5,
                                  1.0,  2.0,  4.0, 8.0};
  std::uint64_t iter_depth = 64;
  double decay_threshold = 1e-6;

  ProbeParams probe;
  IterateParams iterate;
  DivergenceParams divergence;
  std::uint64_t axioms_triple_grid = 21;

  OutputParams output;

  ClassifyConfig classify_config() const;
};

RunConfig parse_config(const std::string& text);

// Canonical document for a config; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

// Materializes the configured space/map pair: a corpus instance when
// `instance` is set, the inline spec otherwise.
struct ResolvedTarget {
  BMetricSpace space;
  SelfMap map;
  std::string name;
  double default_x0 = 0.0;
  std::string distance_expression;
  std::string map_expression;
};

ResolvedTarget resolve_target(const RunConfig& config);

}  // namespace contracta
