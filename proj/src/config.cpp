#include "contracta/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "contracta/corpus.hpp"

namespace contracta {

const char* command_name(Command command) {
  switch (command) {
    case Command::axioms: return "axioms";
    case Command::iterate: return "iterate";
    case Command::classify: return "classify";
    case Command::probe: return "probe";
    case Command::corpus: return "corpus";
  }
  return "unknown";
}

namespace {

struct RawValue {
  std::string text;
  std::size_t line = 0;
};

// First pass: the document as ordered key -> value text.
std::map<std::string, RawValue> tokenize(const std::string& text) {
  std::map<std::string, RawValue> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped;
    bool in_quotes = false;
    for (char c : line) {
      if (c == '"') in_quotes = !in_quotes;
      if (c == '#' && !in_quotes) break;
      stripped.push_back(c);
    }
    auto first = stripped.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = stripped.find_last_not_of(" \t\r");
    stripped = stripped.substr(first, last - first + 1);

    auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(ErrorCode::config_syntax,
                        "line " + std::to_string(line_no) +
                            ": expected key = value",
                        "", line_no);
    std::string key = stripped.substr(0, eq);
    std::string value = stripped.substr(eq + 1);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string()
                                    : s.substr(b, e - b + 1);
    };
    key = trim(key);
    value = trim(value);
    if (key.empty() || value.empty())
      throw ConfigError(ErrorCode::config_syntax,
                        "line " + std::to_string(line_no) +
                            ": empty key or value",
                        key, line_no);
    if (entries.count(key))
      throw ConfigError(ErrorCode::config_syntax,
                        "duplicate key '" + key + "' at line " +
                            std::to_string(line_no),
                        key, line_no);
    entries[key] = {value, line_no};
  }
  return entries;
}

class ConfigReader {
 public:
  explicit ConfigReader(const std::string& text) : entries_(tokenize(text)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::optional<std::string> take_string(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    consumed_.insert(key);
    std::string v = it->second.text;
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
      v = v.substr(1, v.size() - 2);
    return v;
  }

  std::optional<double> take_number(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    consumed_.insert(key);
    return to_number(key, it->second);
  }

  std::optional<std::uint64_t> take_count(const std::string& key) {
    auto v = take_number(key);
    if (!v) return std::nullopt;
    if (*v < 0.0 || std::floor(*v) != *v)
      fail_constraint(key, "must be a nonnegative integer");
    return static_cast<std::uint64_t>(*v);
  }

  std::optional<bool> take_bool(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    consumed_.insert(key);
    if (it->second.text == "true") return true;
    if (it->second.text == "false") return false;
    throw ConfigError(ErrorCode::config_type,
                      "key '" + key + "' (line " +
                          std::to_string(it->second.line) +
                          ") expects true or false",
                      key, it->second.line);
  }

  std::optional<std::vector<double>> take_list(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    consumed_.insert(key);
    const std::string& v = it->second.text;
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
      throw ConfigError(ErrorCode::config_type,
                        "key '" + key + "' (line " +
                            std::to_string(it->second.line) +
                            ") expects a bracketed list",
                        key, it->second.line);
    std::vector<double> out;
    std::string body = v.substr(1, v.size() - 2);
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
      RawValue raw{item, it->second.line};
      out.push_back(to_number(key, raw));
    }
    if (out.empty())
      fail_constraint(key, "must contain at least one element");
    return out;
  }

  void fail_constraint(const std::string& key, const std::string& why) const {
    std::size_t line = 0;
    auto it = entries_.find(key);
    if (it != entries_.end()) line = it->second.line;
    throw ConfigError(ErrorCode::config_constraint,
                      "key '" + key + "'" +
                          (line ? " (line " + std::to_string(line) + ")"
                                : "") +
                          " " + why,
                      key, line);
  }

  void reject_unconsumed() const {
    for (const auto& [key, raw] : entries_) {
      if (!consumed_.count(key))
        throw ConfigError(ErrorCode::config_unknown_key,
                          "unknown key '" + key + "' at line " +
                              std::to_string(raw.line),
                          key, raw.line);
    }
  }

 private:
  double to_number(const std::string& key, const RawValue& raw) const {
    auto b = raw.text.find_first_not_of(" \t");
    auto e = raw.text.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw ConfigError(ErrorCode::config_type,
                        "key '" + key + "' expects a number", key, raw.line);
    std::string token = raw.text.substr(b, e - b + 1);
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0')
      throw ConfigError(ErrorCode::config_type,
                        "key '" + key + "' (line " +
                            std::to_string(raw.line) +
                            ") expects a number, got '" + token + "'",
                        key, raw.line);
    return v;
  }

  std::map<std::string, RawValue> entries_;
  std::set<std::string> consumed_;
};

std::vector<std::uint64_t> to_counts(ConfigReader& reader,
                                     const std::string& key,
                                     std::vector<std::uint64_t> fallback) {
  auto list = reader.take_list(key);
  if (!list) return fallback;
  std::vector<std::uint64_t> out;
  for (double v : *list) {
    if (v < 0.0 || std::floor(v) != v)
      reader.fail_constraint(key, "must hold nonnegative integers");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

void require_positive(ConfigReader& reader, const std::string& key,
                      double value) {
  if (!(value > 0.0)) reader.fail_constraint(key, "must be positive");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  ConfigReader reader(text);
  RunConfig config;

  if (auto v = reader.take_string("instance")) config.instance = *v;

  if (auto v = reader.take_string("command")) {
    if (*v == "axioms") config.command = Command::axioms;
    else if (*v == "iterate") config.command = Command::iterate;
    else if (*v == "classify") config.command = Command::classify;
    else if (*v == "probe") config.command = Command::probe;
    else if (*v == "corpus") config.command = Command::corpus;
    else reader.fail_constraint("command",
                                "must be axioms|iterate|classify|probe|corpus");
  }

  // Inline space keys.
  bool saw_inline = false;
  if (auto v = reader.take_string("domain.kind")) {
    saw_inline = true;
    if (*v != "interval" && *v != "harmonic")
      reader.fail_constraint("domain.kind", "must be interval or harmonic");
    config.inline_spec.domain_kind = *v;
  }
  if (auto v = reader.take_number("domain.lo")) {
    saw_inline = true;
    config.inline_spec.lo = *v;
  }
  if (auto v = reader.take_number("domain.hi")) {
    saw_inline = true;
    config.inline_spec.hi = *v;
  }
  if (auto v = reader.take_count("domain.n_max")) {
    saw_inline = true;
    if (*v == 0) reader.fail_constraint("domain.n_max", "must be >= 1");
    config.inline_spec.n_max = *v;
  }
  if (auto v = reader.take_string("space.distance")) {
    saw_inline = true;
    config.inline_spec.distance = *v;
  }
  if (auto v = reader.take_number("space.s")) {
    saw_inline = true;
    if (*v < 1.0) reader.fail_constraint("space.s", "must be >= 1");
    config.inline_spec.s_claimed = *v;
  }
  if (auto v = reader.take_bool("space.triangle_enforced")) {
    saw_inline = true;
    config.inline_spec.triangle_enforced = *v;
  }
  if (auto v = reader.take_string("map.expr")) {
    saw_inline = true;
    config.inline_spec.map_expr = *v;
  }
  if (auto v = reader.take_string("map.builtin")) {
    saw_inline = true;
    if (*v != "halve" && *v != "thirds_jump" && *v != "shift")
      reader.fail_constraint("map.builtin",
                             "must be halve|thirds_jump|shift");
    config.inline_spec.map_builtin = *v;
  }
  config.has_inline = saw_inline;
  if (config.instance && saw_inline)
    reader.fail_constraint("instance",
                           "cannot combine with inline domain/space/map keys");
  if (!config.inline_spec.map_expr.empty() &&
      !config.inline_spec.map_builtin.empty())
    reader.fail_constraint("map.expr", "cannot combine with map.builtin");

  if (auto v = reader.take_string("sampler.strategy")) {
    if (*v == "grid") config.strategy = SampleStrategy::grid;
    else if (*v == "random") config.strategy = SampleStrategy::random;
    else reader.fail_constraint("sampler.strategy", "must be grid or random");
  }
  if (auto v = reader.take_count("sampler.count")) {
    if (*v == 0) reader.fail_constraint("sampler.count", "must be >= 1");
    config.sample_count = *v;
  } else if (config.strategy == SampleStrategy::grid) {
    config.sample_count = 151;  // default grid point count
  }
  if (auto v = reader.take_count("sampler.seed")) config.seed = *v;

  if (auto v = reader.take_number("tolerances.tau_eq")) {
    require_positive(reader, "tolerances.tau_eq", *v);
    config.tols.tau_eq = *v;
  }
  if (auto v = reader.take_number("tolerances.tau_semi")) {
    require_positive(reader, "tolerances.tau_semi", *v);
    config.tols.tau_semi = *v;
  }
  if (auto v = reader.take_number("tolerances.tau_lim")) {
    require_positive(reader, "tolerances.tau_lim", *v);
    config.tols.tau_lim = *v;
  }
  if (auto v = reader.take_number("tolerances.tol")) {
    require_positive(reader, "tolerances.tol", *v);
    config.tols.tol = *v;
  }
  if (auto v = reader.take_count("tolerances.max_iter")) {
    if (*v == 0) reader.fail_constraint("tolerances.max_iter", "must be >= 1");
    config.tols.max_iter = *v;
  }

  if (auto v = reader.take_list("checker.epsilons")) {
    for (double eps : *v)
      if (!(eps > 0.0))
        reader.fail_constraint("checker.epsilons", "must be positive");
    config.checker.epsilons = *v;
  }
  if (auto v = reader.take_number("checker.delta.start_factor")) {
    require_positive(reader, "checker.delta.start_factor", *v);
    config.checker.delta.start_factor = *v;
  }
  if (auto v = reader.take_number("checker.delta.ratio")) {
    if (!(*v > 0.0 && *v < 1.0))
      reader.fail_constraint("checker.delta.ratio", "must lie in (0, 1)");
    config.checker.delta.ratio = *v;
  }
  if (auto v = reader.take_count("checker.delta.steps")) {
    if (*v == 0) reader.fail_constraint("checker.delta.steps", "must be >= 1");
    config.checker.delta.steps = static_cast<std::uint32_t>(*v);
  }
  if (auto v = reader.take_count("checker.r_max")) {
    if (*v == 0) reader.fail_constraint("checker.r_max", "must be >= 1");
    config.checker.r_max = *v;
  }
  if (auto v = reader.take_string("checker.phi")) config.phi = *v;
  if (auto v = reader.take_string("checker.alpha")) config.alpha = *v;
  if (auto v = reader.take_string("checker.alpha_variant")) {
    if (*v == "type_I") config.alpha_variant = GeraghtyVariant::type_I;
    else if (*v == "type_II") config.alpha_variant = GeraghtyVariant::type_II;
    else reader.fail_constraint("checker.alpha_variant",
                                "must be type_I or type_II");
  }
  if (auto v = reader.take_list("checker.phi_grid")) config.phi_grid = *v;
  if (auto v = reader.take_count("checker.iter_depth")) {
    if (*v == 0) reader.fail_constraint("checker.iter_depth", "must be >= 1");
    config.iter_depth = *v;
  }
  if (auto v = reader.take_number("checker.decay_threshold")) {
    require_positive(reader, "checker.decay_threshold", *v);
    config.decay_threshold = *v;
  }

  config.probe.offsets = to_counts(reader, "probe.offsets",
                                   config.probe.offsets);
  config.probe.gaps = to_counts(reader, "probe.gaps", config.probe.gaps);
  if (auto v = reader.take_count("probe.k")) {
    if (*v == 0) reader.fail_constraint("probe.k", "must be >= 1");
    config.probe.truncation = *v;
  }
  if (auto v = reader.take_count("probe.p_max")) config.probe.p_max = *v;
  if (auto v = reader.take_number("probe.x0")) config.probe.x0 = *v;

  if (auto v = reader.take_number("iterate.x0")) config.iterate.x0 = *v;
  if (auto v = reader.take_count("iterate.orbit_len")) {
    if (*v == 0) reader.fail_constraint("iterate.orbit_len", "must be >= 1");
    config.iterate.orbit_len = *v;
  }

  if (auto v = reader.take_number("divergence.threshold")) {
    require_positive(reader, "divergence.threshold", *v);
    config.divergence.threshold = *v;
  }
  if (auto v = reader.take_count("divergence.base_length")) {
    if (*v < 2)
      reader.fail_constraint("divergence.base_length", "must be >= 2");
    config.divergence.base_length = *v;
  }
  if (auto v = reader.take_count("divergence.doublings"))
    config.divergence.window_doublings = *v;

  if (auto v = reader.take_count("axioms.triple_grid")) {
    if (*v < 2) reader.fail_constraint("axioms.triple_grid", "must be >= 2");
    config.axioms_triple_grid = *v;
  }

  if (auto v = reader.take_string("output.format")) {
    if (*v == "json") config.output.format = ReportFormat::json;
    else if (*v == "csv") config.output.format = ReportFormat::csv;
    else reader.fail_constraint("output.format", "must be json or csv");
  }
  if (auto v = reader.take_string("output.path")) config.output.path = *v;

  reader.reject_unconsumed();
  return config;
}

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename T>
std::string format_list(const std::vector<T>& values) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < values.size(); ++i)
    os << (i ? ", " : "") << format_number(double(values[i]));
  os << "]";
  return os.str();
}

}  // namespace

std::string render_config(const RunConfig& config) {
  std::ostringstream os;
  if (config.instance) os << "instance = " << *config.instance << "\n";
  os << "command = " << command_name(config.command) << "\n";
  if (config.has_inline) {
    const InlineSpec& s = config.inline_spec;
    os << "domain.kind = " << s.domain_kind << "\n";
    if (s.domain_kind == "interval") {
      os << "domain.lo = " << format_number(s.lo) << "\n";
      os << "domain.hi = " << format_number(s.hi) << "\n";
    } else {
      os << "domain.n_max = " << s.n_max << "\n";
    }
    os << "space.distance = \"" << s.distance << "\"\n";
    os << "space.s = " << format_number(s.s_claimed) << "\n";
    os << "space.triangle_enforced = "
       << (s.triangle_enforced ? "true" : "false") << "\n";
    if (!s.map_expr.empty()) os << "map.expr = \"" << s.map_expr << "\"\n";
    if (!s.map_builtin.empty()) os << "map.builtin = " << s.map_builtin << "\n";
  }
  os << "sampler.strategy = "
     << (config.strategy == SampleStrategy::grid ? "grid" : "random") << "\n";
  os << "sampler.count = " << config.sample_count << "\n";
  os << "sampler.seed = " << config.seed << "\n";
  os << "tolerances.tau_eq = " << format_number(config.tols.tau_eq) << "\n";
  os << "tolerances.tau_semi = " << format_number(config.tols.tau_semi)
     << "\n";
  os << "tolerances.tau_lim = " << format_number(config.tols.tau_lim) << "\n";
  os << "tolerances.tol = " << format_number(config.tols.tol) << "\n";
  os << "tolerances.max_iter = " << config.tols.max_iter << "\n";
  os << "checker.epsilons = " << format_list(config.checker.epsilons) << "\n";
  os << "checker.delta.start_factor = "
     << format_number(config.checker.delta.start_factor) << "\n";
  os << "checker.delta.ratio = " << format_number(config.checker.delta.ratio)
     << "\n";
  os << "checker.delta.steps = " << config.checker.delta.steps << "\n";
  os << "checker.r_max = " << config.checker.r_max << "\n";
  os << "checker.phi = \"" << config.phi << "\"\n";
  os << "checker.alpha = \"" << config.alpha << "\"\n";
  os << "checker.alpha_variant = "
     << (config.alpha_variant == GeraghtyVariant::type_I ? "type_I"
                                                         : "type_II")
     << "\n";
  os << "checker.phi_grid = " << format_list(config.phi_grid) << "\n";
  os << "checker.iter_depth = " << config.iter_depth << "\n";
  os << "checker.decay_threshold = " << format_number(config.decay_threshold)
     << "\n";
  os << "probe.offsets = " << format_list(config.probe.offsets) << "\n";
  os << "probe.gaps = " << format_list(config.probe.gaps) << "\n";
  os << "probe.k = " << config.probe.truncation << "\n";
  os << "probe.p_max = " << config.probe.p_max << "\n";
  if (config.probe.x0)
    os << "probe.x0 = " << format_number(*config.probe.x0) << "\n";
  if (config.iterate.x0)
    os << "iterate.x0 = " << format_number(*config.iterate.x0) << "\n";
  os << "iterate.orbit_len = " << config.iterate.orbit_len << "\n";
  os << "divergence.threshold = " << format_number(config.divergence.threshold)
     << "\n";
  os << "divergence.base_length = " << config.divergence.base_length << "\n";
  os << "divergence.doublings = " << config.divergence.window_doublings
     << "\n";
  os << "axioms.triple_grid = " << config.axioms_triple_grid << "\n";
  os << "output.format = "
     << (config.output.format == ReportFormat::json ? "json" : "csv") << "\n";
  if (!config.output.path.empty())
    os << "output.path = \"" << config.output.path << "\"\n";
  return os.str();
}

ClassifyConfig RunConfig::classify_config() const {
  ClassifyConfig cc;
  cc.checker = checker;
  cc.phi_text = phi;
  cc.alpha_text = alpha;
  cc.alpha_variant = alpha_variant;
  cc.phi_grid = phi_grid;
  cc.iter_depth = iter_depth;
  cc.decay_threshold = decay_threshold;
  cc.divergence = divergence;
  cc.tols = tols;
  return cc;
}

ResolvedTarget resolve_target(const RunConfig& config) {
  if (config.instance) {
    InstanceDescriptor inst = get_instance(*config.instance);
    return {inst.space, inst.map, inst.name, inst.default_x0,
            inst.distance_expression, inst.map_expression};
  }
  const InlineSpec& s = config.inline_spec;
  DomainDescriptor domain =
      s.domain_kind == "harmonic"
          ? DomainDescriptor::harmonic(s.n_max)
          : DomainDescriptor::interval(s.lo, s.hi);
  BMetricSpace space(domain, DistanceSpec::expression(s.distance), s.s_claimed,
                     s.triangle_enforced);
  SelfMap map = [&]() {
    if (!s.map_builtin.empty()) {
      BuiltinMap which = s.map_builtin == "halve" ? BuiltinMap::halve
                         : s.map_builtin == "thirds_jump"
                             ? BuiltinMap::thirds_jump
                             : BuiltinMap::shift;
      return SelfMap::builtin(which, domain);
    }
    if (s.map_expr.empty())
      throw ArgumentError("inline spec needs map.expr or map.builtin");
    return SelfMap::expression(s.map_expr, domain);
  }();
  double x0 = s.domain_kind == "harmonic" ? domain.point(0) : s.lo;
  return {space, map, "inline", x0, s.distance, s.map_expr};
}

}  // namespace contracta
