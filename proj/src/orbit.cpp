#include "contracta/orbit.hpp"

#include <algorithm>
#include <cmath>

namespace contracta {

Orbit picard(const BMetricSpace& space, const SelfMap& map, double x0,
             std::uint64_t n) {
  if (!space.domain.contains(x0))
    throw DomainError("orbit base point " + std::to_string(x0) +
                      " outside domain " + space.domain.describe());
  Orbit orbit;
  orbit.base = x0;
  orbit.points.reserve(n + 1);
  orbit.step_dists.reserve(n);
  orbit.points.push_back(x0);
  for (std::uint64_t k = 0; k < n; ++k) {
    double next;
    try {
      next = map.apply(orbit.points.back());
    } catch (const DomainError&) {
      throw ClosureError("orbit escaped the domain at step " +
                         std::to_string(k + 1),
                         k + 1);
    } catch (const ClosureError&) {
      throw ClosureError("orbit escaped the domain at step " +
                         std::to_string(k + 1),
                         k + 1);
    }
    if (!space.domain.contains(next))
      throw ClosureError("orbit escaped the domain at step " +
                         std::to_string(k + 1),
                         k + 1);
    orbit.step_dists.push_back(space.distance_raw(orbit.points.back(), next));
    orbit.points.push_back(next);
  }
  return orbit;
}

double orbit_diameter(const BMetricSpace& space, const Orbit& orbit) {
  if (orbit.points.empty()) throw ArgumentError("orbit_diameter: empty orbit");
  return subset_diameter(space, orbit.points);
}

std::optional<std::uint64_t> cauchy_tail_index(const BMetricSpace& space,
                                               const Orbit& orbit,
                                               double epsilon) {
  if (epsilon <= 0.0) throw ArgumentError("cauchy_tail_index: epsilon > 0");
  const auto& pts = orbit.points;
  if (pts.size() < 2) return 0;
  // tail_ok[m0] = all pairs with indices > m0 are within epsilon
  std::optional<std::uint64_t> best;
  for (std::uint64_t m0 = pts.size() - 2;; --m0) {
    bool ok = true;
    for (std::uint64_t i = m0 + 1; i < pts.size() && ok; ++i)
      for (std::uint64_t j = i + 1; j < pts.size() && ok; ++j)
        if (space.distance_raw(pts[i], pts[j]) >= epsilon) ok = false;
    if (!ok) break;
    best = m0;
    if (m0 == 0) break;
  }
  return best;
}

DivergenceVerdict detect_unbounded(const BMetricSpace& space,
                                   const SelfMap& map, double x0,
                                   const DivergenceParams& params) {
  if (params.threshold <= 0.0)
    throw ArgumentError("detect_unbounded: threshold must be positive");
  if (params.base_length < 2)
    throw ArgumentError("detect_unbounded: base length must be >= 2");

  DivergenceVerdict verdict;
  Orbit orbit;
  orbit.base = x0;
  orbit.points.push_back(x0);

  auto extend_to = [&](std::uint64_t length) -> bool {
    while (orbit.points.size() < length) {
      double next;
      try {
        next = map.apply(orbit.points.back());
      } catch (const ClosureError&) {
        return false;
      } catch (const DomainError&) {
        return false;
      }
      orbit.step_dists.push_back(
          space.distance_raw(orbit.points.back(), next));
      orbit.points.push_back(next);
    }
    return true;
  };

  double prev_diameter = -1.0;
  bool grew_every_window = true;
  std::uint64_t length = params.base_length;
  for (std::uint64_t w = 0; w <= params.window_doublings; ++w) {
    bool complete = extend_to(length);
    double diameter = orbit_diameter(space, orbit);
    if (prev_diameter > 0.0 && diameter < prev_diameter * params.min_growth)
      grew_every_window = false;
    verdict.last_diameter = diameter;
    verdict.orbit_length = orbit.points.size();
    // a verdict needs at least one completed doubling behind it
    if (w >= 1 && diameter > params.threshold && grew_every_window) {
      verdict.status = DivergenceVerdict::Status::diverging;
      return verdict;
    }
    prev_diameter = diameter;
    if (!complete) {
      verdict.capped = true;  // ran out of points before a decision
      return verdict;
    }
    length *= 2;
  }
  return verdict;
}

FixedPointResult solve_fixed_point(const BMetricSpace& space,
                                   const SelfMap& map, double x0, double tol,
                                   std::uint64_t max_iter) {
  if (tol <= 0.0) throw ArgumentError("solve_fixed_point: tol must be > 0");
  if (max_iter < 1)
    throw ArgumentError("solve_fixed_point: max_iter must be >= 1");
  if (!space.domain.contains(x0))
    throw DomainError("solve_fixed_point: start " + std::to_string(x0) +
                      " outside domain");

  FixedPointResult result;
  double current = x0;
  for (std::uint64_t k = 1; k <= max_iter; ++k) {
    double next = map.apply(current);
    double step = space.distance_raw(current, next);
    result.iterations = k;
    result.residual = step;
    if (!std::isfinite(next) || !std::isfinite(step)) {
      result.status = FixedPointResult::Status::diverged;
      return result;
    }
    if (step <= tol) {
      result.status = FixedPointResult::Status::converged;
      result.point = next;
      result.residual = space.distance_raw(next, map.apply(next));
      return result;
    }
    current = next;
  }
  result.status = FixedPointResult::Status::max_iter;
  return result;
}

}  // namespace contracta
