#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contracta/orbit.hpp"
#include "contracta/selfmap.hpp"
#include "contracta/space.hpp"

namespace contracta {

// Comparison function phi for Matkowski / Boyd-Wong checks, with the grid
// its side conditions are audited on.
struct PhiSpec {
  Expr expr;
  std::vector<double> audit_grid;
  std::string text;

  static PhiSpec make(const std::string& expression_text,
                      std::vector<double> grid);
  double operator()(double t) const { return expr.eval(Bindings::for_t(t)); }
};

enum class GeraghtyVariant { type_I, type_II };

// Gain function alpha: R+ -> [0, 1) for Geraghty checks.
struct AlphaSpec {
  Expr expr;
  GeraghtyVariant variant = GeraghtyVariant::type_I;
  std::string text;

  static AlphaSpec make(const std::string& expression_text,
                        GeraghtyVariant variant);
  double operator()(double t) const { return expr.eval(Bindings::for_t(t)); }
};

enum class VerdictStatus { certified_on_samples, falsified, inconclusive };

const char* verdict_status_name(VerdictStatus status);

// Concrete numbers that defeat (or instantiate) a class condition. Pair
// witnesses store the measured distances before and after applying T (or
// T^r); audit witnesses store the offending t and the audited value.
struct Witness {
  enum class Kind {
    pair,
    boundary_pair,
    phi_audit,
    alpha_audit,
    semicontinuity_audit,
    decay_audit,
    monotonicity_audit,
  };

  Kind kind = Kind::pair;
  std::optional<double> x, y;
  std::optional<double> epsilon, delta;
  std::optional<std::uint64_t> r;
  std::optional<double> d_before, d_after;
  std::optional<double> t;
  std::optional<double> value;
  std::string detail;
};

const char* witness_kind_name(Witness::Kind kind);

// Re-evaluates the distances / audited values recorded in a witness and
// checks they reproduce within tau_eq.
bool reverify_witness(const BMetricSpace& space, const SelfMap& map,
                      const Witness& witness, const PhiSpec* phi,
                      const AlphaSpec* alpha, double tau_eq);

// Geometric delta schedule: start_factor * eps, decaying by `ratio`,
// `steps` entries. Certification is attempted at the largest entry whose
// window holds sampled evidence; descending past a defeated window would
// discard the very pairs that constrain the claim, so defeats stop the
// search.
struct DeltaSchedule {
  double start_factor = 1.0;
  double ratio = 0.5;
  std::uint32_t steps = 40;

  std::vector<double> deltas_for(double eps) const;
};

struct CheckerParams {
  std::vector<double> epsilons = {0.05, 0.1, 0.25, 0.5};
  DeltaSchedule delta;
  std::uint64_t r_max = 5;
};

// Outcome of one epsilon slice of an epsilon-delta checker.
struct EpsilonOutcome {
  double epsilon = 0.0;
  VerdictStatus status = VerdictStatus::inconclusive;
  std::optional<double> delta;
  std::optional<std::uint64_t> r;
  std::string note;
};

struct ClassVerdict {
  std::string class_name;
  VerdictStatus status = VerdictStatus::inconclusive;
  std::optional<Witness> witness;
  std::string params_used;
  std::vector<EpsilonOutcome> per_epsilon;
  // Smallest slack observed in the class inequality (negative = violated).
  std::optional<double> worst_margin;
};

ClassVerdict check_nonexpansive(const BMetricSpace& space, const SelfMap& map,
                                const SampleSet& samples,
                                const Tolerances& tols = {});

ClassVerdict check_meir_keeler(const BMetricSpace& space, const SelfMap& map,
                               const std::vector<double>& epsilons,
                               const DeltaSchedule& schedule,
                               const SampleSet& samples,
                               const Tolerances& tols = {});

ClassVerdict check_leader(const BMetricSpace& space, const SelfMap& map,
                          const std::vector<double>& epsilons,
                          const DeltaSchedule& schedule, std::uint64_t r_max,
                          const SampleSet& samples,
                          const Tolerances& tols = {});

ClassVerdict check_matkowski(const BMetricSpace& space, const SelfMap& map,
                             const PhiSpec& phi, const SampleSet& samples,
                             std::uint64_t iter_depth = 64,
                             double decay_threshold = 1e-6,
                             const Tolerances& tols = {});

ClassVerdict check_boyd_wong(const BMetricSpace& space, const SelfMap& map,
                             const PhiSpec& phi, const SampleSet& samples,
                             const Tolerances& tols = {});

ClassVerdict check_geraghty(const BMetricSpace& space, const SelfMap& map,
                            const AlphaSpec& alpha, const SampleSet& samples,
                            const std::vector<std::vector<double>>&
                                probe_sequences,
                            const Tolerances& tols = {});

struct ClassifyConfig {
  CheckerParams checker;
  std::string phi_text = "t / 2";
  std::string alpha_text = "1 / 2";
  GeraghtyVariant alpha_variant = GeraghtyVariant::type_I;
  std::vector<double> phi_grid = {1e-3, 1e-2, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0,
                                  8.0};
  std::uint64_t iter_depth = 64;
  double decay_threshold = 1e-6;
  std::vector<std::vector<double>> probe_sequences;  // defaults when empty
  DivergenceParams divergence;
  Tolerances tols;

  static std::vector<std::vector<double>> default_probe_sequences();
};

// Placement of one map in the contraction-class hierarchy
// BW -> MK -> N.Le -> Le with Ma -> N.Le. N.Le is the conjunction of
// non-expansiveness and the Leader condition.
struct HierarchyPlacement {
  // Keyed verdicts: boyd_wong, matkowski, meir_keeler, nonexpansive,
  // leader, nonexpansive_leader, geraghty_*.
  std::vector<ClassVerdict> verdicts;
  std::vector<std::string> consistency_faults;
  DivergenceVerdict orbit;
  bool orbit_unbounded = false;
  std::string sample_description;

  const ClassVerdict* find(const std::string& class_name) const;
};

HierarchyPlacement classify(const BMetricSpace& space, const SelfMap& map,
                            const SampleSet& samples, double x0,
                            const ClassifyConfig& config = {});

}  // namespace contracta
