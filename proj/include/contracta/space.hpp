#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "contracta/domain.hpp"
#include "contracta/expr.hpp"

namespace contracta {

// Comparison policy shared by every checker. Strict inequalities are
// certified only with margin tau_eq on the favorable side.
struct Tolerances {
  double tau_eq = 1e-12;    // equality tolerance
  double tau_semi = 1e-6;   // right-semicontinuity probe window
  double tau_lim = 1e-3;    // "alpha close to 1" band
  double tol = 1e-9;        // fixed-point solver tolerance
  std::uint64_t max_iter = 10000;
};

// splitmix64; fixed constants so sample sets replay bit-identically on
// any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1) with 53 random bits
  double next_unit() { return double(next() >> 11) * 0x1.0p-53; }

  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

enum class BuiltinDistance { abs_diff, half_abs_diff, squared_diff };

// A distance rule: one of the native builtins or a parsed expression in
// x and y. The expression path exists so configs can specify arbitrary
// symmetric rules; builtins stay independent of the parser.
class DistanceSpec {
 public:
  static DistanceSpec builtin(BuiltinDistance which);
  static DistanceSpec expression(const std::string& text);

  double operator()(double x, double y) const;
  std::string describe() const;
  bool is_builtin() const { return !expr_.has_value(); }

 private:
  DistanceSpec() = default;
  BuiltinDistance builtin_ = BuiltinDistance::abs_diff;
  std::optional<Expr> expr_;
};

// Domain + distance + claimed relaxed-triangle coefficient. Distance
// evaluation canonicalizes the argument order, so symmetry holds exactly
// by construction for any rule.
struct BMetricSpace {
  DomainDescriptor domain;
  DistanceSpec dist;
  double s_claimed = 1.0;
  bool triangle_enforced = true;

  BMetricSpace(DomainDescriptor d, DistanceSpec ds, double s,
               bool triangle = true);

  // Checked distance: both points must lie in the domain.
  double distance(double x, double y) const;

  // Unchecked evaluation for inner loops over already-validated points.
  double distance_raw(double x, double y) const;
};

enum class SampleStrategy { grid, random };

// Deterministic pair sample. Grid: pairs are the Cartesian square of an
// equispaced point grid in row-major order. Random: `count` independent
// pairs drawn from a seeded splitmix64 stream.
struct SampleSet {
  SampleStrategy strategy = SampleStrategy::grid;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  std::vector<double> points;                     // generating points
  std::vector<std::pair<double, double>> pairs;   // sampled pairs

  std::string describe() const;
};

SampleSet sample_pairs(const DomainDescriptor& domain, SampleStrategy strategy,
                       std::uint64_t count, std::uint64_t seed);

// Ordered triple (x, z, y) for relaxed-triangle audits: z plays the
// middle role in d(x,y) <= s (d(x,z) + d(z,y)).
struct Triple {
  double x, z, y;
};

std::vector<Triple> make_grid_triples(const DomainDescriptor& domain,
                                      std::uint64_t points_per_axis);

struct AxiomCheck {
  bool pass = true;
  std::string detail;  // worst offender, empty when pass
};

struct AxiomReport {
  AxiomCheck self_zero;
  AxiomCheck positivity;
  AxiomCheck symmetry;
  bool triangle_checked = true;
  AxiomCheck triangle;
  Triple worst_triple{0, 0, 0};
  double worst_ratio = 0.0;  // max d(x,y) / (d(x,z) + d(z,y)) seen

  bool all_pass() const {
    return self_zero.pass && positivity.pass && symmetry.pass &&
           (!triangle_checked || triangle.pass);
  }
};

// Audits self-distance, positivity, symmetry on the sampled pairs and the
// relaxed triangle inequality (with s_claimed) on triples drawn from the
// sample's point set. Skipped when the space carries triangle_enforced =
// false.
AxiomReport verify_axioms(const BMetricSpace& space, const SampleSet& samples,
                          const Tolerances& tols = {});

// Largest observed d(x,y) / (d(x,z) + d(z,y)) over the triples, clamped
// below at 1. A lower bound on the true coefficient; refining the triple
// set can only raise it.
double estimate_s(const BMetricSpace& space, const std::vector<Triple>& triples);

// Diameter of a finite subset: max pairwise distance.
double subset_diameter(const BMetricSpace& space,
                       const std::vector<double>& points);

}  // namespace contracta
