// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and thresholds are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "contracta/classifiers.hpp"
#include "contracta/config.hpp"
#include "contracta/corpus.hpp"
#include "contracta/orbit.hpp"
#include "contracta/proof_probe.hpp"
#include "contracta/report.hpp"

using namespace contracta;

namespace {

struct Checker {
  std::ostringstream failures;
  bool ok = true;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      failures << (failures.str().empty() ? "" : "; ") << what;
    }
  }
};

int failures_total = 0;

void criterion(int number, const std::string& title,
               const std::function<void(Checker&)>& body) {
  Checker check;
  try {
    body(check);
  } catch (const std::exception& e) {
    check.require(false, std::string("exception: ") + e.what());
  }
  if (check.ok) {
    std::printf("PASS  criterion %2d: %s\n", number, title.c_str());
  } else {
    ++failures_total;
    std::printf("FAIL  criterion %2d: %s  [%s]\n", number, title.c_str(),
                check.failures.str().c_str());
  }
}

double harmonic_number(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / double(k);
  return h;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

SampleSet default_random(const DomainDescriptor& domain) {
  return sample_pairs(domain, SampleStrategy::random, 2000, 42);
}

}  // namespace

int main() {
  criterion(1, "jump-map fixed point: z = 0 within 1e-9 in <= 25 steps",
            [](Checker& check) {
    auto inst = get_instance("piecewise_leader");
    auto t0 = std::chrono::steady_clock::now();
    auto result = solve_fixed_point(inst.space, inst.map, 0.75, 1e-9, 10000);
    double ms = elapsed_ms(t0);
    check.require(result.status == FixedPointResult::Status::converged,
                  "did not converge");
    check.require(result.point && std::fabs(*result.point) <= 1e-9,
                  "fixed point not at 0 within 1e-9");
    check.require(result.residual <= 1e-9, "residual above 1e-9");
    check.require(result.iterations <= 25, "needed more than 25 iterations");
    check.require(ms < 1.0, "solver took " + std::to_string(ms) + " ms");
  });

  criterion(2, "Leader certificate at eps 0.1: r = 3, delta = 1.25 on the "
               "1e-3 grid",
            [](Checker& check) {
    auto inst = get_instance("piecewise_leader");
    const double eps = 0.1;
    // r from 1/(4*3^(r-1)) < eps/2, delta = (3^r/2 - 1) * eps
    std::uint64_t expect_r = 1;
    while (1.0 / (4.0 * std::pow(3.0, double(expect_r - 1))) >= eps / 2.0)
      ++expect_r;
    double expect_delta = (std::pow(3.0, double(expect_r)) / 2.0 - 1.0) * eps;
    check.require(expect_r == 3, "formula r mismatch");
    check.require(std::fabs(expect_delta - 1.25) <= 1e-15,
                  "formula delta mismatch");

    auto t0 = std::chrono::steady_clock::now();
    auto samples =
        sample_pairs(inst.space.domain, SampleStrategy::grid, 751, 0);
    DeltaSchedule schedule;
    schedule.start_factor = expect_delta / eps;
    auto verdict =
        check_leader(inst.space, inst.map, {eps}, schedule, 5, samples);
    double ms = elapsed_ms(t0);
    check.require(verdict.status == VerdictStatus::certified_on_samples,
                  "not certified");
    check.require(verdict.per_epsilon.size() == 1 &&
                      verdict.per_epsilon[0].r &&
                      *verdict.per_epsilon[0].r == expect_r,
                  "certificate r != 3");
    check.require(verdict.per_epsilon[0].delta &&
                      std::fabs(*verdict.per_epsilon[0].delta -
                                expect_delta) <= 1e-12,
                  "certificate delta != 1.25");
    // independent rescan of every grid pair under T^3
    double worst = 0.0;
    for (const auto& [a, b] : samples.pairs) {
      double after = inst.space.distance_raw(inst.map.apply_n(a, 3),
                                             inst.map.apply_n(b, 3));
      worst = std::max(worst, after);
    }
    check.require(worst < eps, "a grid pair stays at or above 0.1 under T^3");
    check.require(ms < 10000.0, "took " + std::to_string(ms) + " ms");
  });

  criterion(3, "non-expansiveness witness straddles 1/2 with ratio >= 20",
            [](Checker& check) {
    auto inst = get_instance("piecewise_leader");
    // 0.01 spacing: points within 0.01 of 1/2 are on the grid
    auto samples =
        sample_pairs(inst.space.domain, SampleStrategy::grid, 76, 0);
    auto verdict = check_nonexpansive(inst.space, inst.map, samples);
    check.require(verdict.status == VerdictStatus::falsified,
                  "not falsified");
    if (verdict.witness) {
      const Witness& w = *verdict.witness;
      check.require(*w.x <= 0.5 && *w.y > 0.5, "witness does not straddle");
      check.require(*w.d_after / *w.d_before >= 20.0, "ratio below 20");
      check.require(std::fabs(*w.x - 0.50) <= 1e-12 &&
                        std::fabs(*w.y - 0.51) <= 1e-12,
                    "witness is not the pair (0.5, 0.51)");
      check.require(std::fabs(*w.d_after / *w.d_before -
                              (0.25 + 0.01 / 3.0) / 0.01) <= 1e-6,
                    "ratio is not 25.33");
    } else {
      check.require(false, "no witness emitted");
    }
  });

  criterion(4, "Meir-Keeler falsified at eps 0.25 by the boundary pair "
               "(0.5, 0.75)",
            [](Checker& check) {
    auto inst = get_instance("piecewise_leader");
    auto samples =
        sample_pairs(inst.space.domain, SampleStrategy::grid, 151, 0);
    auto verdict = check_meir_keeler(inst.space, inst.map, {0.25},
                                     DeltaSchedule{}, samples);
    check.require(verdict.status == VerdictStatus::falsified,
                  "not falsified");
    if (verdict.witness) {
      const Witness& w = *verdict.witness;
      check.require(w.kind == Witness::Kind::boundary_pair,
                    "witness is not a boundary pair");
      check.require(std::fabs(*w.x - 0.5) <= 1e-12 &&
                        std::fabs(*w.y - 0.75) <= 1e-12,
                    "witness is not (0.5, 0.75)");
      check.require(std::fabs(*w.d_before - 0.25) <= 1e-12,
                    "d(x,y) != 0.25");
      check.require(std::fabs(*w.d_after - 1.0 / 3.0) <= 1e-12,
                    "d(Tx,Ty) != 1/3");
      check.require(*w.d_after >= 0.25, "image distance below epsilon");
    } else {
      check.require(false, "no witness emitted");
    }
  });

  criterion(5, "harmonic orbit diverges past 2.09 by length 100; no fixed "
               "point",
            [](Checker& check) {
    auto inst = get_instance("harmonic_shift_low");
    DivergenceParams params;
    params.threshold = 2.0;
    auto verdict = detect_unbounded(inst.space, inst.map, 1.0, params);
    check.require(verdict.status == DivergenceVerdict::Status::diverging,
                  "not diverging");
    check.require(verdict.orbit_length == 100,
                  "verdict not reached at orbit length 100");
    check.require(verdict.last_diameter >= 2.09, "diameter below 2.09");
    double expect = (harmonic_number(100) - 1.0) / 2.0;
    check.require(std::fabs(verdict.last_diameter - expect) <= 1e-3,
                  "diameter off the (H_100 - 1)/2 value");
    auto solve = solve_fixed_point(inst.space, inst.map, 1.0, 1e-9, 1000);
    check.require(solve.status == FixedPointResult::Status::max_iter,
                  "solver did not exhaust max_iter");
    check.require(!solve.point.has_value(), "solver reported a fixed point");
  });

  criterion(6, "hierarchy placement under default classification",
            [](Checker& check) {
    auto banach = get_instance("banach_half");
    auto p1 = classify(banach.space, banach.map,
                       default_random(banach.space.domain), 1.0);
    for (const char* cls : {"boyd_wong", "matkowski", "meir_keeler",
                            "nonexpansive_leader", "leader"}) {
      const ClassVerdict* v = p1.find(cls);
      check.require(v && v->status == VerdictStatus::certified_on_samples,
                    std::string("banach_half ") + cls + " not certified");
    }
    check.require(p1.consistency_faults.empty(),
                  "banach_half reported consistency faults");

    auto jump = get_instance("piecewise_leader");
    auto p2 = classify(jump.space, jump.map,
                       default_random(jump.space.domain), 0.75);
    check.require(p2.find("leader")->status ==
                      VerdictStatus::certified_on_samples,
                  "piecewise_leader leader not certified");
    check.require(p2.find("nonexpansive")->status == VerdictStatus::falsified,
                  "piecewise_leader nonexpansive not falsified");
    check.require(p2.find("nonexpansive_leader")->status ==
                      VerdictStatus::falsified,
                  "piecewise_leader N.Le not falsified");
    check.require(p2.consistency_faults.empty(),
                  "piecewise_leader reported consistency faults");

    // every shipped expectation reproduces under the default config
    for (const auto& name : list_instances()) {
      auto inst = get_instance(name);
      auto placement = classify(inst.space, inst.map,
                                default_random(inst.space.domain),
                                inst.default_x0);
      for (const auto& [cls, status] : inst.expected) {
        const ClassVerdict* v = placement.find(cls);
        check.require(v && v->status == status,
                      name + " " + cls + " expected " +
                          verdict_status_name(status) + ", got " +
                          (v ? verdict_status_name(v->status) : "missing"));
      }
      check.require(placement.consistency_faults.empty(),
                    name + " reported consistency faults");
    }
  });

  criterion(7, "sigma/theta truncations behave along the proof relations",
            [](Checker& check) {
    IndexFamily family;  // offsets 0..3, gaps 0..4
    auto banach = get_instance("banach_half");
    auto r1 = probe(banach.space, banach.map, 1.0, family, 30, 30);
    check.require(r1.per_member_monotone,
                  "banach_half per-member monotonicity failed");
    check.require(r1.theta_p_monotone, "banach_half theta not nonincreasing");

    auto jump = get_instance("piecewise_leader");
    auto r2 = probe(jump.space, jump.map, 0.75, family, 30, 30);
    check.require(r2.per_member_monotone,
                  "piecewise_leader per-member monotonicity failed");
    check.require(r2.theta_p_monotone,
                  "piecewise_leader theta not nonincreasing");
    for (std::size_t p = 9; p < r2.theta_p.size(); ++p)
      check.require(r2.theta_p[p] < 1e-3,
                    "piecewise_leader theta(p) >= 1e-3 at p = " +
                        std::to_string(p));
    // squeeze is logged, never asserted
    std::printf("      squeeze flag: banach_half=%s piecewise_leader=%s\n",
                r1.squeeze_holds ? "holds" : "violated",
                r2.squeeze_holds ? "holds" : "violated");
  });

  criterion(8, "b-metric coefficient of the squared difference",
            [](Checker& check) {
    auto inst = get_instance("square_b");
    double s = estimate_s(inst.space, make_grid_triples(inst.space.domain, 21));
    check.require(s >= 1.99 && s <= 2.0 + 1e-9,
                  "estimate outside [1.99, 2 + 1e-9]: " + format_real(s));
    auto samples =
        sample_pairs(inst.space.domain, SampleStrategy::grid, 50, 0);
    check.require(verify_axioms(inst.space, samples).all_pass(),
                  "axioms fail with s = 2");
    BMetricSpace weak(inst.space.domain, inst.space.dist, 1.0);
    SampleSet triple_set;
    triple_set.strategy = SampleStrategy::grid;
    triple_set.count = 3;
    triple_set.points = {-2.0, 0.0, 2.0};
    for (double a : triple_set.points)
      for (double b : triple_set.points) triple_set.pairs.emplace_back(a, b);
    auto report = verify_axioms(weak, triple_set);
    check.require(!report.triangle.pass, "axioms pass with s = 1");
    check.require(report.worst_triple.x == -2.0 &&
                      report.worst_triple.z == 0.0 &&
                      report.worst_triple.y == 2.0,
                  "worst triple is not (-2, 0, 2)");
  });

  criterion(9, "classification reports are byte-identical across runs",
            [](Checker& check) {
    RunConfig config = parse_config(
        "instance = piecewise_leader\ncommand = classify\nsampler.seed = 42\n");
    ResolvedTarget target = resolve_target(config);
    auto render = [&]() {
      SampleSet samples = sample_pairs(target.space.domain, config.strategy,
                                       config.sample_count, config.seed);
      auto placement = classify(target.space, target.map, samples,
                                target.default_x0, config.classify_config());
      return build_classify_report(target, config, placement)
          .render(ReportFormat::json);
    };
    std::string first = render();
    std::string second = render();
    check.require(!first.empty(), "empty report");
    check.require(first == second, "reports differ between runs");
  });

  criterion(10, "expression grammar reproduces every corpus builtin",
            [](Checker& check) {
    for (const auto& name : list_instances()) {
      auto inst = get_instance(name);
      DistanceSpec parsed =
          DistanceSpec::expression(inst.distance_expression);
      auto pts = inst.space.domain.grid(1000);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        double a = pts[i];
        double b = pts[pts.size() - 1 - i];
        double lhs = parsed(std::min(a, b), std::max(a, b));
        double rhs = inst.space.distance_raw(a, b);
        if (std::fabs(lhs - rhs) > 1e-12) {
          check.require(false, name + " distance expression drifts");
          break;
        }
      }
      if (!inst.map_expression.empty()) {
        SelfMap parsed_map =
            SelfMap::expression(inst.map_expression, inst.space.domain);
        for (double x : pts) {
          if (std::fabs(parsed_map.apply(x) - inst.map.apply(x)) > 1e-12) {
            check.require(false, name + " map expression drifts");
            break;
          }
        }
      }
    }
  });

  if (failures_total == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures_total);
  return 1;
}
