#include "contracta/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace contracta {

DistanceSpec DistanceSpec::builtin(BuiltinDistance which) {
  DistanceSpec spec;
  spec.builtin_ = which;
  return spec;
}

DistanceSpec DistanceSpec::expression(const std::string& text) {
  DistanceSpec spec;
  spec.expr_ = Expr::parse(text);
  return spec;
}

double DistanceSpec::operator()(double x, double y) const {
  if (expr_.has_value()) {
    double v = expr_->eval(Bindings::for_xy(x, y));
    if (!std::isfinite(v))
      throw EvaluationError("distance expression produced a non-finite value");
    return v;
  }
  switch (builtin_) {
    case BuiltinDistance::abs_diff:
      return std::fabs(x - y);
    case BuiltinDistance::half_abs_diff:
      return std::fabs(x - y) / 2.0;
    case BuiltinDistance::squared_diff:
      return (x - y) * (x - y);
  }
  return 0.0;
}

std::string DistanceSpec::describe() const {
  if (expr_.has_value()) return expr_->text();
  switch (builtin_) {
    case BuiltinDistance::abs_diff: return "abs(x - y)";
    case BuiltinDistance::half_abs_diff: return "abs(x - y) / 2";
    case BuiltinDistance::squared_diff: return "(x - y)^2";
  }
  return "";
}

BMetricSpace::BMetricSpace(DomainDescriptor d, DistanceSpec ds, double s,
                           bool triangle)
    : domain(std::move(d)), dist(std::move(ds)), s_claimed(s),
      triangle_enforced(triangle) {
  if (!(s_claimed >= 1.0))
    throw ArgumentError("b-metric coefficient must satisfy s >= 1");
}

double BMetricSpace::distance(double x, double y) const {
  if (!domain.contains(x))
    throw DomainError("point " + std::to_string(x) + " outside domain " +
                      domain.describe());
  if (!domain.contains(y))
    throw DomainError("point " + std::to_string(y) + " outside domain " +
                      domain.describe());
  return distance_raw(x, y);
}

double BMetricSpace::distance_raw(double x, double y) const {
  // Canonical argument order makes symmetry exact for any rule.
  if (y < x) std::swap(x, y);
  double v = dist(x, y);
  if (v < 0.0 && v >= -0.0) v = 0.0;
  return v;
}

std::string SampleSet::describe() const {
  std::ostringstream os;
  os << (strategy == SampleStrategy::grid ? "grid" : "random") << " count="
     << count << " seed=" << seed << " pairs=" << pairs.size();
  return os.str();
}

SampleSet sample_pairs(const DomainDescriptor& domain, SampleStrategy strategy,
                       std::uint64_t count, std::uint64_t seed) {
  if (count == 0) throw ArgumentError("sample_pairs needs count >= 1");
  SampleSet set;
  set.strategy = strategy;
  set.count = count;
  set.seed = seed;

  if (strategy == SampleStrategy::grid) {
    set.points = domain.grid(count);
    set.pairs.reserve(set.points.size() * set.points.size());
    for (double a : set.points)
      for (double b : set.points) set.pairs.emplace_back(a, b);
    return set;
  }

  SplitMix64 rng(seed);
  set.points.reserve(2 * count);
  set.pairs.reserve(count);
  auto draw = [&]() -> double {
    if (domain.kind() == DomainDescriptor::Kind::interval)
      return domain.lo() + rng.next_unit() * (domain.hi() - domain.lo());
    return domain.point(rng.next_below(domain.size()));
  };
  for (std::uint64_t i = 0; i < count; ++i) {
    double a = draw();
    double b = draw();
    set.points.push_back(a);
    set.points.push_back(b);
    set.pairs.emplace_back(a, b);
  }
  return set;
}

std::vector<Triple> make_grid_triples(const DomainDescriptor& domain,
                                      std::uint64_t points_per_axis) {
  std::vector<double> pts = domain.grid(points_per_axis);
  std::vector<Triple> triples;
  triples.reserve(pts.size() * pts.size() * pts.size());
  for (double x : pts)
    for (double z : pts)
      for (double y : pts) {
        if (x == y) continue;  // degenerate
        triples.push_back({x, z, y});
      }
  return triples;
}

namespace {

std::string pair_detail(double x, double y, double value) {
  std::ostringstream os;
  os << "(" << x << ", " << y << ") -> " << value;
  return os.str();
}

}  // namespace

AxiomReport verify_axioms(const BMetricSpace& space, const SampleSet& samples,
                          const Tolerances& tols) {
  if (samples.pairs.empty())
    throw ArgumentError("verify_axioms needs a nonempty sample set");

  AxiomReport report;

  // Unique sample points in first-appearance order.
  std::vector<double> pts;
  for (const auto& [a, b] : samples.pairs) {
    if (std::find(pts.begin(), pts.end(), a) == pts.end()) pts.push_back(a);
    if (std::find(pts.begin(), pts.end(), b) == pts.end()) pts.push_back(b);
  }

  double worst_self = -1.0;
  for (double p : pts) {
    double dpp = space.distance_raw(p, p);
    if (dpp > worst_self) {
      worst_self = dpp;
      if (dpp > tols.tau_eq) {
        report.self_zero.pass = false;
        report.self_zero.detail = pair_detail(p, p, dpp);
      }
    }
  }

  double worst_neg = 0.0;
  for (const auto& [a, b] : samples.pairs) {
    double d = space.distance_raw(a, b);
    if (d < worst_neg) {
      worst_neg = d;
      report.positivity.pass = false;
      report.positivity.detail = pair_detail(a, b, d);
    }
    double d_rev = space.distance_raw(b, a);
    if (d != d_rev && report.symmetry.pass) {
      report.symmetry.pass = false;
      report.symmetry.detail = pair_detail(a, b, d - d_rev);
    }
  }

  report.triangle_checked = space.triangle_enforced;
  if (!space.triangle_enforced) return report;

  double worst_excess = -std::numeric_limits<double>::infinity();
  for (double x : pts)
    for (double z : pts)
      for (double y : pts) {
        double legs = space.distance_raw(x, z) + space.distance_raw(z, y);
        if (legs <= 0.0) continue;
        double dxy = space.distance_raw(x, y);
        double excess = dxy - space.s_claimed * legs;
        if (excess > worst_excess) {
          worst_excess = excess;
          report.worst_triple = {x, z, y};
          report.worst_ratio = dxy / legs;
        }
      }
  if (worst_excess > tols.tau_eq) {
    report.triangle.pass = false;
    std::ostringstream os;
    os << "(" << report.worst_triple.x << ", " << report.worst_triple.z << ", "
       << report.worst_triple.y << ") ratio " << report.worst_ratio;
    report.triangle.detail = os.str();
  }
  return report;
}

double estimate_s(const BMetricSpace& space,
                  const std::vector<Triple>& triples) {
  if (triples.empty()) throw ArgumentError("estimate_s needs triples");
  double best = 0.0;
  std::uint64_t used = 0;
  for (const Triple& t : triples) {
    double legs = space.distance_raw(t.x, t.z) + space.distance_raw(t.z, t.y);
    if (legs == 0.0) continue;  // x = z = y, skip
    ++used;
    best = std::max(best, space.distance_raw(t.x, t.y) / legs);
  }
  if (used == 0)
    throw ArgumentError("estimate_s: all triples had zero denominator");
  return std::max(best, 1.0);
}

double subset_diameter(const BMetricSpace& space,
                       const std::vector<double>& points) {
  double diam = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      diam = std::max(diam, space.distance_raw(points[i], points[j]));
  return diam;
}

}  // namespace contracta
