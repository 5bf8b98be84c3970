#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "contracta/selfmap.hpp"
#include "contracta/space.hpp"

namespace contracta {

// Picard trajectory with per-step distances.
struct Orbit {
  double base = 0.0;
  std::vector<double> points;      // T^0 x .. T^n x
  std::vector<double> step_dists;  // d(T^k x, T^{k+1} x)
};

// Orbit of length n + 1 from x0. Escaping the domain raises ClosureError
// carrying the offending index.
Orbit picard(const BMetricSpace& space, const SelfMap& map, double x0,
             std::uint64_t n);

// Max pairwise distance over the computed prefix; a lower bound on the
// true orbit diameter, nondecreasing in prefix length.
double orbit_diameter(const BMetricSpace& space, const Orbit& orbit);

// Smallest index m0 such that every pair of later points lies within
// epsilon; nullopt if even the final pair violates it. Prefix diagnostic
// only.
std::optional<std::uint64_t> cauchy_tail_index(const BMetricSpace& space,
                                               const Orbit& orbit,
                                               double epsilon);

struct DivergenceVerdict {
  enum class Status { bounded_so_far, diverging };
  Status status = Status::bounded_so_far;
  double last_diameter = 0.0;
  std::uint64_t orbit_length = 0;  // points examined when the verdict fired
  bool capped = false;  // enumerated domain ran out before a decision
};

struct DivergenceParams {
  double threshold = 2.0;
  std::uint64_t base_length = 25;
  std::uint64_t window_doublings = 5;
  // Required diameter ratio per doubling. Plain monotone growth is not
  // enough: converging orbits keep creeping by ulps.
  double min_growth = 1.05;
};

// Grows the orbit by doubling windows. Reports diverging at the first
// window whose diameter exceeds the threshold after growing by at least
// min_growth in every completed doubling; bounded_so_far otherwise (an
// honest "so far", not a proof).
DivergenceVerdict detect_unbounded(const BMetricSpace& space,
                                   const SelfMap& map, double x0,
                                   const DivergenceParams& params);

struct FixedPointResult {
  enum class Status { converged, max_iter, diverged };
  Status status = Status::max_iter;
  std::optional<double> point;
  double residual = 0.0;  // d(z, Tz) when converged, last step otherwise
  std::uint64_t iterations = 0;
};

// Iterates until consecutive step distance falls within tol, then audits
// the candidate with the residual d(z, Tz).
FixedPointResult solve_fixed_point(const BMetricSpace& space,
                                   const SelfMap& map, double x0, double tol,
                                   std::uint64_t max_iter);

}  // namespace contracta
