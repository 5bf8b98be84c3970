#include "contracta/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace contracta {

namespace {

constexpr std::uint64_t kMaxIterateDepth = 64;

std::string format_params(const std::vector<double>& epsilons,
                          const DeltaSchedule& schedule, std::uint64_t r_max,
                          const SampleSet& samples) {
  std::ostringstream os;
  os << "epsilons=[";
  for (std::size_t i = 0; i < epsilons.size(); ++i)
    os << (i ? ", " : "") << epsilons[i];
  os << "] delta={start_factor=" << schedule.start_factor
     << ", ratio=" << schedule.ratio << ", steps=" << schedule.steps << "}";
  if (r_max > 0) os << " r_max=" << r_max;
  os << " samples={" << samples.describe() << "}";
  return os.str();
}

// Deterministic violation pick: strongest measured violation wins; pairs
// whose measures agree within tau pick the lexicographically largest
// normalized pair, so floating-point ulp noise cannot reorder ties.
struct ViolationPick {
  bool found = false;
  double measure = 0.0;
  double x = 0.0, y = 0.0;  // normalized x <= y
  double d_before = 0.0, d_after = 0.0;

  void offer(double candidate_measure, double a, double b, double before,
             double after, double tau) {
    double nx = std::min(a, b), ny = std::max(a, b);
    bool better = false;
    if (!found || candidate_measure > measure + tau) {
      better = true;
    } else if (candidate_measure > measure - tau) {
      better = nx > x || (nx == x && ny > y);
    }
    if (better) {
      found = true;
      measure = candidate_measure;
      x = nx;
      y = ny;
      d_before = before;
      d_after = after;
    }
  }
};

// Unique sample points with their forward iterates up to depth r, shared
// by the pair scans.
struct PairTable {
  std::vector<double> points;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<double> d0;
  std::vector<std::vector<double>> iterates;  // [r][point]

  PairTable(const BMetricSpace& space, const SelfMap& map,
            const SampleSet& samples, std::uint64_t depth) {
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    auto key = [](double v) {
      std::uint64_t bits;
      static_assert(sizeof(bits) == sizeof(v));
      std::memcpy(&bits, &v, sizeof(bits));
      return bits;
    };
    pairs.reserve(samples.pairs.size());
    d0.reserve(samples.pairs.size());
    for (const auto& [a, b] : samples.pairs) {
      auto intern = [&](double v) -> std::uint32_t {
        auto [it, inserted] =
            index.try_emplace(key(v), std::uint32_t(points.size()));
        if (inserted) points.push_back(v);
        return it->second;
      };
      std::uint32_t ia = intern(a);
      std::uint32_t ib = intern(b);
      pairs.emplace_back(ia, ib);
      d0.push_back(space.distance_raw(a, b));
    }
    iterates.resize(depth + 1);
    iterates[0] = points;
    for (std::uint64_t r = 1; r <= depth; ++r) {
      iterates[r].resize(points.size());
      for (std::size_t i = 0; i < points.size(); ++i)
        iterates[r][i] = map.apply(iterates[r - 1][i]);
    }
  }

  double dist_at(const BMetricSpace& space, std::size_t pair_index,
                 std::uint64_t r) const {
    const auto& [ia, ib] = pairs[pair_index];
    return space.distance_raw(iterates[r][ia], iterates[r][ib]);
  }

  std::pair<double, double> pair_values(std::size_t pair_index) const {
    const auto& [ia, ib] = pairs[pair_index];
    return {points[ia], points[ib]};
  }
};

void require_samples(const SampleSet& samples) {
  if (samples.pairs.empty())
    throw ArgumentError("checker needs a nonempty sample set");
}

Witness pair_witness(Witness::Kind kind, const ViolationPick& pick) {
  Witness w;
  w.kind = kind;
  w.x = pick.x;
  w.y = pick.y;
  w.d_before = pick.d_before;
  w.d_after = pick.d_after;
  return w;
}

}  // namespace

PhiSpec PhiSpec::make(const std::string& expression_text,
                      std::vector<double> grid) {
  if (grid.empty()) throw ArgumentError("phi audit grid must be nonempty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0))
      throw ArgumentError("phi audit grid must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw ArgumentError("phi audit grid must be strictly increasing");
  }
  PhiSpec spec;
  spec.expr = Expr::parse(expression_text);
  spec.audit_grid = std::move(grid);
  spec.text = expression_text;
  return spec;
}

AlphaSpec AlphaSpec::make(const std::string& expression_text,
                          GeraghtyVariant variant) {
  AlphaSpec spec;
  spec.expr = Expr::parse(expression_text);
  spec.variant = variant;
  spec.text = expression_text;
  return spec;
}

const char* verdict_status_name(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::certified_on_samples: return "certified_on_samples";
    case VerdictStatus::falsified: return "falsified";
    case VerdictStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

const char* witness_kind_name(Witness::Kind kind) {
  switch (kind) {
    case Witness::Kind::pair: return "pair";
    case Witness::Kind::boundary_pair: return "boundary_pair";
    case Witness::Kind::phi_audit: return "phi_audit";
    case Witness::Kind::alpha_audit: return "alpha_audit";
    case Witness::Kind::semicontinuity_audit: return "semicontinuity_audit";
    case Witness::Kind::decay_audit: return "decay_audit";
    case Witness::Kind::monotonicity_audit: return "monotonicity_audit";
  }
  return "unknown";
}

bool reverify_witness(const BMetricSpace& space, const SelfMap& map,
                      const Witness& witness, const PhiSpec* phi,
                      const AlphaSpec* alpha, double tau_eq) {
  switch (witness.kind) {
    case Witness::Kind::pair:
    case Witness::Kind::boundary_pair: {
      if (!witness.x || !witness.y) return false;
      double before = space.distance(*witness.x, *witness.y);
      std::uint64_t reps = witness.r.value_or(1);
      double after = space.distance_raw(map.apply_n(*witness.x, reps),
                                        map.apply_n(*witness.y, reps));
      bool ok = true;
      if (witness.d_before) ok = ok && std::fabs(before - *witness.d_before) <= tau_eq;
      if (witness.d_after) ok = ok && std::fabs(after - *witness.d_after) <= tau_eq;
      return ok;
    }
    case Witness::Kind::phi_audit:
    case Witness::Kind::decay_audit:
    case Witness::Kind::monotonicity_audit:
    case Witness::Kind::semicontinuity_audit: {
      if (!phi || !witness.t || !witness.value) return false;
      if (witness.kind == Witness::Kind::phi_audit)
        return std::fabs((*phi)(*witness.t) - *witness.value) <= tau_eq;
      return true;  // derived audit quantities; the inputs are recorded
    }
    case Witness::Kind::alpha_audit: {
      if (!alpha || !witness.t || !witness.value) return false;
      return std::fabs((*alpha)(*witness.t) - *witness.value) <= tau_eq;
    }
  }
  return false;
}

std::vector<double> DeltaSchedule::deltas_for(double eps) const {
  if (!(start_factor > 0.0)) throw ArgumentError("delta start_factor > 0");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ArgumentError("delta ratio must lie in (0, 1)");
  if (steps == 0) throw ArgumentError("delta schedule needs steps >= 1");
  std::vector<double> out;
  out.reserve(steps);
  double d = start_factor * eps;
  for (std::uint32_t i = 0; i < steps; ++i) {
    out.push_back(d);
    d *= ratio;
  }
  return out;
}

ClassVerdict check_nonexpansive(const BMetricSpace& space, const SelfMap& map,
                                const SampleSet& samples,
                                const Tolerances& tols) {
  require_samples(samples);
  PairTable table(space, map, samples, 1);

  ClassVerdict verdict;
  verdict.class_name = "nonexpansive";
  verdict.params_used = "samples={" + samples.describe() + "}";

  ViolationPick pick;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < table.pairs.size(); ++p) {
    double before = table.d0[p];
    double after = table.dist_at(space, p, 1);
    worst_margin = std::min(worst_margin, before - after);
    if (after > before + tols.tau_eq) {
      auto [a, b] = table.pair_values(p);
      pick.offer(after - before, a, b, before, after, tols.tau_eq);
    }
  }
  verdict.worst_margin = worst_margin;
  if (pick.found) {
    verdict.status = VerdictStatus::falsified;
    Witness w = pair_witness(Witness::Kind::pair, pick);
    w.r = 1;
    verdict.witness = w;
  } else {
    verdict.status = VerdictStatus::certified_on_samples;
  }
  return verdict;
}

ClassVerdict check_meir_keeler(const BMetricSpace& space, const SelfMap& map,
                               const std::vector<double>& epsilons,
                               const DeltaSchedule& schedule,
                               const SampleSet& samples,
                               const Tolerances& tols) {
  require_samples(samples);
  if (epsilons.empty())
    throw ArgumentError("check_meir_keeler needs a nonempty epsilon list");
  for (double eps : epsilons)
    if (!(eps > 0.0)) throw ArgumentError("epsilons must be positive");

  PairTable table(space, map, samples, 1);

  ClassVerdict verdict;
  verdict.class_name = "meir_keeler";
  verdict.params_used = format_params(epsilons, schedule, 0, samples);

  bool all_certified = true;
  for (double eps : epsilons) {
    EpsilonOutcome outcome;
    outcome.epsilon = eps;

    // A pair at distance exactly eps sits inside [eps, eps+delta) for
    // every delta, so a clear violation there falsifies the class.
    ViolationPick falsifier;
    for (std::size_t p = 0; p < table.pairs.size(); ++p) {
      if (std::fabs(table.d0[p] - eps) > tols.tau_eq) continue;
      double after = table.dist_at(space, p, 1);
      if (after >= eps + tols.tau_eq) {
        auto [a, b] = table.pair_values(p);
        falsifier.offer(after - eps, a, b, table.d0[p], after, tols.tau_eq);
      }
    }
    if (falsifier.found) {
      outcome.status = VerdictStatus::falsified;
      verdict.per_epsilon.push_back(outcome);
      all_certified = false;
      if (verdict.status != VerdictStatus::falsified) {
        verdict.status = VerdictStatus::falsified;
        Witness w = pair_witness(Witness::Kind::boundary_pair, falsifier);
        w.epsilon = eps;
        w.r = 1;
        w.detail = "defeats every delta in the schedule";
        verdict.witness = w;
      }
      continue;
    }

    // Certification is attempted at the largest delta whose window
    // [eps, eps+delta) actually contains sampled pairs.
    std::optional<double> evidence_delta;
    for (double delta : schedule.deltas_for(eps)) {
      for (std::size_t p = 0; p < table.pairs.size(); ++p) {
        if (table.d0[p] >= eps - tols.tau_eq && table.d0[p] < eps + delta) {
          evidence_delta = delta;
          break;
        }
      }
      if (evidence_delta) break;
    }
    if (!evidence_delta) {
      outcome.status = VerdictStatus::inconclusive;
      outcome.note = "no sampled pairs at or above epsilon";
      verdict.per_epsilon.push_back(outcome);
      all_certified = false;
      continue;
    }

    bool window_holds = true;
    ViolationPick defeat;
    for (std::size_t p = 0; p < table.pairs.size(); ++p) {
      double d = table.d0[p];
      if (d < eps - tols.tau_eq || d >= eps + *evidence_delta) continue;
      double after = table.dist_at(space, p, 1);
      if (!(after < eps - tols.tau_eq)) {
        window_holds = false;
        auto [a, b] = table.pair_values(p);
        defeat.offer(after - eps, a, b, d, after, tols.tau_eq);
      }
    }
    if (window_holds) {
      outcome.status = VerdictStatus::certified_on_samples;
      outcome.delta = *evidence_delta;
    } else {
      outcome.status = VerdictStatus::inconclusive;
      std::ostringstream os;
      os << "window pair (" << defeat.x << ", " << defeat.y
         << ") keeps distance " << defeat.d_after << " >= epsilon";
      outcome.note = os.str();
      all_certified = false;
    }
    verdict.per_epsilon.push_back(outcome);
  }

  if (verdict.status != VerdictStatus::falsified)
    verdict.status = all_certified ? VerdictStatus::certified_on_samples
                                   : VerdictStatus::inconclusive;
  return verdict;
}

ClassVerdict check_leader(const BMetricSpace& space, const SelfMap& map,
                          const std::vector<double>& epsilons,
                          const DeltaSchedule& schedule, std::uint64_t r_max,
                          const SampleSet& samples, const Tolerances& tols) {
  require_samples(samples);
  if (epsilons.empty())
    throw ArgumentError("check_leader needs a nonempty epsilon list");
  if (r_max < 1) throw ArgumentError("check_leader needs r_max >= 1");
  if (r_max > kMaxIterateDepth)
    throw ArgumentError("r_max " + std::to_string(r_max) +
                        " exceeds the iteration budget " +
                        std::to_string(kMaxIterateDepth));

  PairTable table(space, map, samples, r_max);

  ClassVerdict verdict;
  verdict.class_name = "leader";
  verdict.params_used = format_params(epsilons, schedule, r_max, samples);

  bool all_certified = true;
  for (double eps : epsilons) {
    EpsilonOutcome outcome;
    outcome.epsilon = eps;

    // The hypothesis set d(x,y) < eps+delta always holds near the
    // diagonal; evidence at or above eps is what makes a certificate
    // informative, so delta is pinned to the largest schedule entry
    // whose [eps, eps+delta) slice is inhabited.
    std::optional<double> evidence_delta;
    for (double delta : schedule.deltas_for(eps)) {
      for (std::size_t p = 0; p < table.pairs.size(); ++p) {
        if (table.d0[p] >= eps - tols.tau_eq && table.d0[p] < eps + delta) {
          evidence_delta = delta;
          break;
        }
      }
      if (evidence_delta) break;
    }
    if (!evidence_delta) {
      outcome.status = VerdictStatus::inconclusive;
      outcome.note = "no sampled pairs at or above epsilon";
      verdict.per_epsilon.push_back(outcome);
      all_certified = false;
      continue;
    }

    std::optional<std::uint64_t> found_r;
    std::string last_note;
    for (std::uint64_t r = 1; r <= r_max && !found_r; ++r) {
      bool holds = true;
      for (std::size_t p = 0; p < table.pairs.size() && holds; ++p) {
        if (table.d0[p] >= eps + *evidence_delta) continue;
        double after = table.dist_at(space, p, r);
        if (!(after < eps - tols.tau_eq)) {
          holds = false;
          auto [a, b] = table.pair_values(p);
          std::ostringstream os;
          os << "pair (" << a << ", " << b << ") keeps distance " << after
             << " at r=" << r;
          last_note = os.str();
        }
      }
      if (holds) found_r = r;
    }

    if (found_r) {
      outcome.status = VerdictStatus::certified_on_samples;
      outcome.delta = *evidence_delta;
      outcome.r = *found_r;
    } else {
      outcome.status = VerdictStatus::inconclusive;
      outcome.note = last_note.empty() ? "no (delta, r) certificate found"
                                       : last_note;
      all_certified = false;
    }
    verdict.per_epsilon.push_back(outcome);
  }

  // Finite search cannot refute an existential over unbounded r, so the
  // verdict never reads falsified.
  verdict.status = all_certified ? VerdictStatus::certified_on_samples
                                 : VerdictStatus::inconclusive;
  return verdict;
}

namespace {

// Shared phi(t) < t audit. Returns a witness when the audit fails.
std::optional<Witness> audit_phi_below_identity(const PhiSpec& phi,
                                                const Tolerances& tols) {
  for (double t : phi.audit_grid) {
    double v = phi(t);
    if (!std::isfinite(v))
      throw EvaluationError("phi produced a non-finite value at t = " +
                            std::to_string(t));
    if (!(v < t - tols.tau_eq)) {
      Witness w;
      w.kind = Witness::Kind::phi_audit;
      w.t = t;
      w.value = v;
      w.detail = "phi(t) < t violated";
      return w;
    }
  }
  return std::nullopt;
}

// Shared sampled-inequality scan for d(Tx,Ty) <= bound(d(x,y)).
template <typename BoundFn>
void scan_bound(const BMetricSpace& space, const PairTable& table,
                BoundFn bound, const Tolerances& tols, ViolationPick& pick,
                double& worst_margin) {
  for (std::size_t p = 0; p < table.pairs.size(); ++p) {
    double before = table.d0[p];
    double after = table.dist_at(space, p, 1);
    double limit = bound(before);
    worst_margin = std::min(worst_margin, limit - after);
    if (after > limit + tols.tau_eq) {
      auto [a, b] = table.pair_values(p);
      pick.offer(after - limit, a, b, before, after, tols.tau_eq);
    }
  }
}

}  // namespace

ClassVerdict check_matkowski(const BMetricSpace& space, const SelfMap& map,
                             const PhiSpec& phi, const SampleSet& samples,
                             std::uint64_t iter_depth, double decay_threshold,
                             const Tolerances& tols) {
  require_samples(samples);
  ClassVerdict verdict;
  verdict.class_name = "matkowski";
  verdict.params_used = "phi=\"" + phi.text + "\" iter_depth=" +
                        std::to_string(iter_depth) + " samples={" +
                        samples.describe() + "}";

  if (auto w = audit_phi_below_identity(phi, tols)) {
    verdict.status = VerdictStatus::falsified;
    verdict.witness = *w;
    return verdict;
  }

  for (std::size_t i = 1; i < phi.audit_grid.size(); ++i) {
    double lo = phi(phi.audit_grid[i - 1]);
    double hi = phi(phi.audit_grid[i]);
    if (lo > hi + tols.tau_eq) {
      Witness w;
      w.kind = Witness::Kind::monotonicity_audit;
      w.t = phi.audit_grid[i];
      w.value = hi;
      std::ostringstream os;
      os << "phi decreases between t = " << phi.audit_grid[i - 1] << " and t = "
         << phi.audit_grid[i];
      w.detail = os.str();
      verdict.status = VerdictStatus::falsified;
      verdict.witness = w;
      return verdict;
    }
  }

  for (double t : phi.audit_grid) {
    double v = t;
    for (std::uint64_t i = 0; i < iter_depth; ++i) {
      v = phi(v);
      if (!std::isfinite(v))
        throw EvaluationError("phi iteration diverged from t = " +
                              std::to_string(t));
    }
    if (!(v <= decay_threshold)) {
      Witness w;
      w.kind = Witness::Kind::decay_audit;
      w.t = t;
      w.value = v;
      std::ostringstream os;
      os << "phi^" << iter_depth << "(t) = " << v << " stays above "
         << decay_threshold;
      w.detail = os.str();
      verdict.status = VerdictStatus::falsified;
      verdict.witness = w;
      return verdict;
    }
  }

  PairTable table(space, map, samples, 1);
  ViolationPick pick;
  double worst_margin = std::numeric_limits<double>::infinity();
  scan_bound(space, table, [&](double d) { return phi(d); }, tols, pick,
             worst_margin);
  verdict.worst_margin = worst_margin;
  if (pick.found) {
    verdict.status = VerdictStatus::falsified;
    Witness w = pair_witness(Witness::Kind::pair, pick);
    w.r = 1;
    w.detail = "d(Tx,Ty) > phi(d(x,y))";
    verdict.witness = w;
  } else {
    verdict.status = VerdictStatus::certified_on_samples;
  }
  return verdict;
}

ClassVerdict check_boyd_wong(const BMetricSpace& space, const SelfMap& map,
                             const PhiSpec& phi, const SampleSet& samples,
                             const Tolerances& tols) {
  require_samples(samples);
  ClassVerdict verdict;
  verdict.class_name = "boyd_wong";
  verdict.params_used = "phi=\"" + phi.text + "\" samples={" +
                        samples.describe() + "}";

  if (auto w = audit_phi_below_identity(phi, tols)) {
    verdict.status = VerdictStatus::falsified;
    verdict.witness = *w;
    return verdict;
  }

  // Numeric upper-semicontinuity from the right: the limsup estimate over
  // shrinking right windows must not exceed phi(t) + tau_semi.
  for (double t : phi.audit_grid) {
    double base = phi(t);
    double estimate = std::numeric_limits<double>::infinity();
    double window = tols.tau_semi;
    for (int level = 0; level < 5; ++level) {
      double sup = -std::numeric_limits<double>::infinity();
      for (int i = 1; i <= 8; ++i)
        sup = std::max(sup, phi(t + window * double(i) / 8.0));
      estimate = std::min(estimate, sup);
      window /= 2.0;
    }
    if (estimate > base + tols.tau_semi) {
      Witness w;
      w.kind = Witness::Kind::semicontinuity_audit;
      w.t = t;
      w.value = estimate;
      std::ostringstream os;
      os << "right limsup " << estimate << " exceeds phi(" << t << ") = "
         << base;
      w.detail = os.str();
      verdict.status = VerdictStatus::falsified;
      verdict.witness = w;
      return verdict;
    }
  }

  PairTable table(space, map, samples, 1);
  ViolationPick pick;
  double worst_margin = std::numeric_limits<double>::infinity();
  scan_bound(space, table, [&](double d) { return phi(d); }, tols, pick,
             worst_margin);
  verdict.worst_margin = worst_margin;
  if (pick.found) {
    verdict.status = VerdictStatus::falsified;
    Witness w = pair_witness(Witness::Kind::pair, pick);
    w.r = 1;
    w.detail = "d(Tx,Ty) > phi(d(x,y))";
    verdict.witness = w;
  } else {
    verdict.status = VerdictStatus::certified_on_samples;
  }
  return verdict;
}

ClassVerdict check_geraghty(const BMetricSpace& space, const SelfMap& map,
                            const AlphaSpec& alpha, const SampleSet& samples,
                            const std::vector<std::vector<double>>&
                                probe_sequences,
                            const Tolerances& tols) {
  require_samples(samples);
  ClassVerdict verdict;
  verdict.class_name = alpha.variant == GeraghtyVariant::type_I
                           ? "geraghty_type_I"
                           : "geraghty_type_II";
  verdict.params_used = "alpha=\"" + alpha.text + "\" samples={" +
                        samples.describe() + "}";

  for (const auto& seq : probe_sequences) {
    for (double s : seq)
      if (!(s > 0.0))
        throw ArgumentError("probe sequences must be positive");
    if (alpha.variant == GeraghtyVariant::type_II)
      for (std::size_t i = 1; i < seq.size(); ++i)
        if (seq[i] > seq[i - 1])
          throw ArgumentError(
              "type II probe sequences must be nonincreasing");
  }

  auto alpha_checked = [&](double t) {
    double a = alpha(t);
    if (!(a >= 0.0 && a < 1.0) && t > tols.tau_eq)
      throw AuditError("alpha(t) = " + std::to_string(a) +
                       " outside [0, 1) at t = " + std::to_string(t));
    return a;
  };

  PairTable table(space, map, samples, 1);
  ViolationPick pick;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < table.pairs.size(); ++p) {
    double before = table.d0[p];
    double after = table.dist_at(space, p, 1);
    if (before <= tols.tau_eq) continue;  // inequality vacuous at d = 0
    double limit = alpha_checked(before) * before;
    worst_margin = std::min(worst_margin, limit - after);
    if (after > limit + tols.tau_eq) {
      auto [a, b] = table.pair_values(p);
      pick.offer(after - limit, a, b, before, after, tols.tau_eq);
    }
  }
  verdict.worst_margin = worst_margin;
  if (pick.found) {
    verdict.status = VerdictStatus::falsified;
    Witness w = pair_witness(Witness::Kind::pair, pick);
    w.r = 1;
    w.detail = "d(Tx,Ty) > alpha(d(x,y)) * d(x,y)";
    verdict.witness = w;
  }

  // Limit audit: alpha entering the 1-band while the sequence stays away
  // from zero contradicts "alpha(s_n) -> 1 implies s_n -> 0".
  for (const auto& seq : probe_sequences) {
    for (double s : seq) {
      double a = alpha_checked(s);
      if (a >= 1.0 - tols.tau_lim && s > tols.tau_eq) {
        Witness w;
        w.kind = Witness::Kind::alpha_audit;
        w.t = s;
        w.value = a;
        std::ostringstream os;
        os << "alpha(" << s << ") = " << a << " inside the 1-band while s > 0";
        w.detail = os.str();
        if (verdict.status != VerdictStatus::falsified) {
          verdict.status = VerdictStatus::falsified;
          verdict.witness = w;
        }
        break;
      }
    }
  }

  if (verdict.status != VerdictStatus::falsified)
    verdict.status = VerdictStatus::certified_on_samples;
  return verdict;
}

std::vector<std::vector<double>> ClassifyConfig::default_probe_sequences() {
  std::vector<double> reciprocal, shifted;
  reciprocal.reserve(200);
  shifted.reserve(200);
  for (int n = 1; n <= 200; ++n) {
    reciprocal.push_back(1.0 / double(n));
    shifted.push_back(0.5 + 1.0 / double(n));
  }
  return {reciprocal, shifted};
}

const ClassVerdict* HierarchyPlacement::find(
    const std::string& class_name) const {
  for (const auto& v : verdicts)
    if (v.class_name == class_name) return &v;
  return nullptr;
}

HierarchyPlacement classify(const BMetricSpace& space, const SelfMap& map,
                            const SampleSet& samples, double x0,
                            const ClassifyConfig& config) {
  HierarchyPlacement placement;
  placement.sample_description = samples.describe();

  PhiSpec phi = PhiSpec::make(config.phi_text, config.phi_grid);
  AlphaSpec alpha = AlphaSpec::make(config.alpha_text, config.alpha_variant);
  const auto probes = config.probe_sequences.empty()
                          ? ClassifyConfig::default_probe_sequences()
                          : config.probe_sequences;

  // Budget overruns (orbit caps, audit aborts) downgrade a checker to
  // inconclusive instead of sinking the whole placement.
  auto guarded = [&](const std::string& name, auto&& fn) {
    ClassVerdict v;
    try {
      v = fn();
    } catch (const Error& e) {
      v = ClassVerdict{};
      v.class_name = name;
      v.status = VerdictStatus::inconclusive;
      v.params_used = std::string("aborted: ") + e.what();
    }
    return v;
  };

  ClassVerdict bw = guarded("boyd_wong", [&] {
    return check_boyd_wong(space, map, phi, samples, config.tols);
  });
  ClassVerdict ma = guarded("matkowski", [&] {
    return check_matkowski(space, map, phi, samples, config.iter_depth,
                           config.decay_threshold, config.tols);
  });
  ClassVerdict mk = guarded("meir_keeler", [&] {
    return check_meir_keeler(space, map, config.checker.epsilons,
                             config.checker.delta, samples, config.tols);
  });
  ClassVerdict ne = guarded("nonexpansive", [&] {
    return check_nonexpansive(space, map, samples, config.tols);
  });
  ClassVerdict le = guarded("leader", [&] {
    return check_leader(space, map, config.checker.epsilons,
                        config.checker.delta, config.checker.r_max, samples,
                        config.tols);
  });
  ClassVerdict ge = guarded("geraghty", [&] {
    return check_geraghty(space, map, alpha, samples, probes, config.tols);
  });

  // N.Le is the conjunction of non-expansiveness and the Leader condition.
  ClassVerdict nle;
  nle.class_name = "nonexpansive_leader";
  nle.params_used = "conjunction of nonexpansive and leader";
  if (ne.status == VerdictStatus::falsified ||
      le.status == VerdictStatus::falsified) {
    nle.status = VerdictStatus::falsified;
    nle.witness = ne.status == VerdictStatus::falsified ? ne.witness
                                                        : le.witness;
  } else if (ne.status == VerdictStatus::certified_on_samples &&
             le.status == VerdictStatus::certified_on_samples) {
    nle.status = VerdictStatus::certified_on_samples;
  } else {
    nle.status = VerdictStatus::inconclusive;
  }

  placement.verdicts = {bw, ma, mk, nle, le, ne, ge};

  // Hierarchy audit: a class certified below must not be falsified above.
  struct Edge {
    const ClassVerdict* small;
    const ClassVerdict* large;
  };
  const ClassVerdict* nle_ptr = &placement.verdicts[3];
  const Edge edges[] = {
      {&placement.verdicts[0], &placement.verdicts[2]},  // BW -> MK
      {&placement.verdicts[2], nle_ptr},                 // MK -> N.Le
      {&placement.verdicts[1], nle_ptr},                 // Ma -> N.Le
      {nle_ptr, &placement.verdicts[4]},                 // N.Le -> Le
  };
  for (const Edge& e : edges) {
    if (e.small->status == VerdictStatus::certified_on_samples &&
        e.large->status == VerdictStatus::falsified) {
      bool reproduced = true;
      if (e.large->witness)
        reproduced = reverify_witness(space, map, *e.large->witness, &phi,
                                      &alpha, config.tols.tau_eq);
      std::ostringstream os;
      os << e.small->class_name << " certified while " << e.large->class_name
         << " falsified"
         << (reproduced ? " (witness reproduces; sampling artifact)"
                        : " (witness failed to reproduce)");
      placement.consistency_faults.push_back(os.str());
    }
  }

  placement.orbit = detect_unbounded(space, map, x0, config.divergence);
  placement.orbit_unbounded =
      placement.orbit.status == DivergenceVerdict::Status::diverging;
  return placement;
}

}  // namespace contracta
