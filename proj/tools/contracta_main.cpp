// Command-line front end: batch certification runs driven by a config
// document.
//
//   contracta <command> --config <file> [--out <file>] [--format json|csv]
//
// Exit codes: 0 success, 1 classification mismatch against the instance's
// expected statuses, 2 usage or config error, 3 evaluation error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "contracta/config.hpp"
#include "contracta/report.hpp"

namespace {

using namespace contracta;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_command(RunConfig& config) {
  if (config.command == Command::corpus) {
    std::vector<InstanceDescriptor> instances;
    for (const std::string& name : list_instances())
      instances.push_back(get_instance(name));
    emit_report(build_corpus_report(instances), config.output.format,
                config.output.path);
    return 0;
  }

  ResolvedTarget target = resolve_target(config);
  SampleSet samples = sample_pairs(target.space.domain, config.strategy,
                                   config.sample_count, config.seed);

  switch (config.command) {
    case Command::axioms: {
      AxiomsResult result;
      result.axioms = verify_axioms(target.space, samples, config.tols);
      result.triple_grid = config.axioms_triple_grid;
      result.s_estimate = estimate_s(
          target.space,
          make_grid_triples(target.space.domain, config.axioms_triple_grid));
      emit_report(build_axioms_report(target, config, result),
                  config.output.format, config.output.path);
      return 0;
    }
    case Command::iterate: {
      IterateResult result;
      result.x0 = config.iterate.x0.value_or(target.default_x0);
      result.fixed_point =
          solve_fixed_point(target.space, target.map, result.x0,
                            config.tols.tol, config.tols.max_iter);
      std::uint64_t prefix = config.iterate.orbit_len;
      try {
        result.orbit_prefix =
            picard(target.space, target.map, result.x0, prefix);
      } catch (const ClosureError&) {
        // enumerated cap inside the prefix; fall back to what fits
        result.orbit_prefix = picard(target.space, target.map, result.x0, 0);
      }
      result.orbit_prefix_diameter =
          orbit_diameter(target.space, result.orbit_prefix);
      result.divergence = detect_unbounded(target.space, target.map,
                                           result.x0, config.divergence);
      emit_report(build_iterate_report(target, config, result),
                  config.output.format, config.output.path);
      return 0;
    }
    case Command::probe: {
      IndexFamily family;
      family.offsets = config.probe.offsets;
      family.gaps = config.probe.gaps;
      family.truncation = config.probe.truncation;
      double x0 = config.probe.x0.value_or(target.default_x0);
      SigmaReport sigma = probe(target.space, target.map, x0, family,
                                config.probe.p_max, config.probe.truncation,
                                config.tols);
      emit_report(build_probe_report(target, config, sigma),
                  config.output.format, config.output.path);
      return 0;
    }
    case Command::classify: {
      double x0 = config.iterate.x0.value_or(target.default_x0);
      HierarchyPlacement placement =
          classify(target.space, target.map, samples, x0,
                   config.classify_config());
      emit_report(build_classify_report(target, config, placement),
                  config.output.format, config.output.path);
      if (config.instance) {
        const InstanceDescriptor inst = get_instance(*config.instance);
        for (const auto& [cls, status] : inst.expected) {
          const ClassVerdict* v = placement.find(cls);
          if (!v || v->status != status) {
            std::cerr << "classification mismatch: " << cls << " expected "
                      << verdict_status_name(status) << ", got "
                      << (v ? verdict_status_name(v->status) : "missing")
                      << "\n";
            return 1;
          }
        }
      }
      return 0;
    }
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed points and contraction classes on b-metric spaces",
               "contracta"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path,
                                "run configuration document");
    if (config_required) opt->required();
    sub->add_option("--out", out_path, "report output path (default stdout)");
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  add_common(app.add_subcommand("axioms", "audit the b-metric axioms"), true);
  add_common(app.add_subcommand("iterate", "solve for a fixed point"), true);
  add_common(app.add_subcommand("classify", "place a map in the hierarchy"),
             true);
  add_common(app.add_subcommand("probe", "tabulate sigma/theta truncations"),
             true);
  add_common(app.add_subcommand("corpus", "list shipped instances"), false);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig config;
    if (!config_path.empty()) {
      config = parse_config(read_file(config_path));
    }
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "axioms") config.command = Command::axioms;
    else if (name == "iterate") config.command = Command::iterate;
    else if (name == "classify") config.command = Command::classify;
    else if (name == "probe") config.command = Command::probe;
    else if (name == "corpus") config.command = Command::corpus;

    if (!out_path.empty()) config.output.path = out_path;
    if (format == "json") config.output.format = ReportFormat::json;
    if (format == "csv") config.output.format = ReportFormat::csv;
    if (const char* env_seed = std::getenv("CONTRACTA_SEED")) {
      char* end = nullptr;
      unsigned long long parsed = std::strtoull(env_seed, &end, 10);
      if (end == env_seed || *end != '\0') {
        std::cerr << "error[config_type] CONTRACTA_SEED must be an integer\n";
        return 2;
      }
      config.seed = parsed;
    }
    return run_command(config);
  } catch (const ConfigError& e) {
    std::cerr << "error[" << error_code_name(e.code()) << "] " << e.what()
              << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error[argument] " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error[io] " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error[" << error_code_name(e.code()) << "] " << e.what()
              << "\n";
    return 3;
  }
}
