#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "contracta/corpus.hpp"
#include "contracta/orbit.hpp"

using namespace contracta;

namespace {

double harmonic_number(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

}  // namespace

TEST_CASE("picard on the halving map") {
  auto inst = get_instance("banach_half");
  Orbit orbit = picard(inst.space, inst.map, 1.0, 3);
  REQUIRE(orbit.points.size() == 4);
  CHECK(orbit.points[0] == 1.0);
  CHECK(orbit.points[1] == 0.5);
  CHECK(orbit.points[2] == 0.25);
  CHECK(orbit.points[3] == 0.125);
  REQUIRE(orbit.step_dists.size() == 3);
  CHECK(orbit.step_dists[0] == 0.5);
  CHECK(orbit.step_dists[2] == 0.125);
}

TEST_CASE("picard on the thirds map crosses the jump once") {
  auto inst = get_instance("piecewise_leader");
  Orbit orbit = picard(inst.space, inst.map, 0.75, 3);
  REQUIRE(orbit.points.size() == 4);
  CHECK(orbit.points[1] == 0.5);  // 0.75/3 + 1/4
  CHECK(orbit.points[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(orbit.points[3] == doctest::Approx(1.0 / 18.0).epsilon(1e-15));
}

TEST_CASE("picard on the harmonic shift walks the partial sums") {
  auto inst = get_instance("harmonic_shift_low");
  Orbit orbit = picard(inst.space, inst.map, 1.0, 2);
  REQUIRE(orbit.points.size() == 3);
  CHECK(orbit.points[1] == 1.5);
  CHECK(orbit.points[2] == doctest::Approx(harmonic_number(3)).epsilon(1e-15));
}

TEST_CASE("picard reports the offending index on escape") {
  DomainDescriptor tiny = DomainDescriptor::harmonic(3);
  BMetricSpace space(tiny, DistanceSpec::builtin(BuiltinDistance::abs_diff),
                     1.0);
  SelfMap shift = SelfMap::builtin(BuiltinMap::shift, tiny);
  CHECK_NOTHROW(picard(space, shift, 1.0, 2));
  try {
    picard(space, shift, 1.0, 3);
    CHECK(false);
  } catch (const ClosureError& e) {
    CHECK(e.index() == 3);
  }
  CHECK_THROWS_AS(picard(space, shift, 0.77, 1), DomainError);
}

TEST_CASE("orbit determinism is bitwise") {
  auto inst = get_instance("piecewise_leader");
  Orbit a = picard(inst.space, inst.map, 0.7, 64);
  Orbit b = picard(inst.space, inst.map, 0.7, 64);
  CHECK(a.points == b.points);
  CHECK(a.step_dists == b.step_dists);
}

TEST_CASE("orbit diameter on the halving map") {
  auto inst = get_instance("banach_half");
  Orbit orbit = picard(inst.space, inst.map, 1.0, 10);
  // brute force over all pairs as the oracle
  double expect = 0.0;
  for (std::size_t i = 0; i < orbit.points.size(); ++i)
    for (std::size_t j = i + 1; j < orbit.points.size(); ++j)
      expect = std::max(expect,
                        std::fabs(orbit.points[i] - orbit.points[j]));
  CHECK(orbit_diameter(inst.space, orbit) == expect);
  CHECK(expect == 1.0 - std::pow(2.0, -10.0));
}

TEST_CASE("orbit diameter of the harmonic prefix") {
  auto inst = get_instance("harmonic_shift_low");
  Orbit orbit = picard(inst.space, inst.map, 1.0, 99);
  double expect = (harmonic_number(100) - 1.0) / 2.0;
  CHECK(orbit_diameter(inst.space, orbit) ==
        doctest::Approx(expect).epsilon(1e-12));
  CHECK(orbit_diameter(inst.space, orbit) ==
        doctest::Approx(2.09363).epsilon(1e-4));
}

TEST_CASE("orbit diameter is monotone in prefix length") {
  auto inst = get_instance("harmonic_shift_abs");
  double last = 0.0;
  for (std::uint64_t n : {1, 5, 20, 60}) {
    Orbit orbit = picard(inst.space, inst.map, 1.0, n);
    double d = orbit_diameter(inst.space, orbit);
    CHECK(d >= last);
    last = d;
  }
}

TEST_CASE("single point orbit has diameter zero") {
  auto inst = get_instance("banach_half");
  Orbit orbit = picard(inst.space, inst.map, 0.3, 0);
  CHECK(orbit_diameter(inst.space, orbit) == 0.0);
}

TEST_CASE("nonincreasing steps along nonexpansive orbits") {
  for (const char* name : {"banach_half", "harmonic_shift_low"}) {
    auto inst = get_instance(name);
    Orbit orbit = picard(inst.space, inst.map, 1.0, 50);
    for (std::size_t k = 1; k < orbit.step_dists.size(); ++k)
      CHECK(orbit.step_dists[k] <= orbit.step_dists[k - 1] + 1e-12);
  }
}

TEST_CASE("detect_unbounded flags the harmonic shift by length 100") {
  auto inst = get_instance("harmonic_shift_low");
  DivergenceParams params;  // threshold 2.0, base 25, 5 doublings
  auto verdict = detect_unbounded(inst.space, inst.map, 1.0, params);
  CHECK(verdict.status == DivergenceVerdict::Status::diverging);
  CHECK(verdict.orbit_length == 100);
  CHECK(verdict.last_diameter >=
        doctest::Approx((harmonic_number(100) - 1.0) / 2.0).epsilon(1e-12));
  CHECK_FALSE(verdict.capped);
}

TEST_CASE("detect_unbounded stays bounded on contractions") {
  auto banach = get_instance("banach_half");
  DivergenceParams params;
  auto verdict = detect_unbounded(banach.space, banach.map, 1.0, params);
  CHECK(verdict.status == DivergenceVerdict::Status::bounded_so_far);
  // the true diameter is 1 - 2^-n; the long prefix rounds to 1.0 exactly
  CHECK(verdict.last_diameter <= 1.0);

  auto leader = get_instance("piecewise_leader");
  params.threshold = 1.0;
  verdict = detect_unbounded(leader.space, leader.map, 0.75, params);
  CHECK(verdict.status == DivergenceVerdict::Status::bounded_so_far);
  CHECK(verdict.last_diameter <= 0.75);
}

TEST_CASE("detect_unbounded flags the enumerated cap") {
  DomainDescriptor tiny = DomainDescriptor::harmonic(40);
  BMetricSpace space(tiny,
                     DistanceSpec::builtin(BuiltinDistance::half_abs_diff),
                     1.0);
  SelfMap shift = SelfMap::builtin(BuiltinMap::shift, tiny);
  DivergenceParams params;
  params.threshold = 10.0;
  auto verdict = detect_unbounded(space, shift, 1.0, params);
  CHECK(verdict.status == DivergenceVerdict::Status::bounded_so_far);
  CHECK(verdict.capped);
  CHECK(verdict.orbit_length == 40);
}

TEST_CASE("solve_fixed_point contracts the halving map to zero") {
  auto inst = get_instance("banach_half");
  auto result = solve_fixed_point(inst.space, inst.map, 1.0, 1e-9, 10000);
  REQUIRE(result.status == FixedPointResult::Status::converged);
  REQUIRE(result.point.has_value());
  CHECK(std::fabs(*result.point) <= 1e-9);
  CHECK(result.residual <= 1e-9);
  CHECK(result.iterations == 30);  // 2^-30 is the first step below 1e-9
}

TEST_CASE("solve_fixed_point on the thirds map") {
  auto inst = get_instance("piecewise_leader");
  auto result = solve_fixed_point(inst.space, inst.map, 0.75, 1e-9, 10000);
  REQUIRE(result.status == FixedPointResult::Status::converged);
  CHECK(std::fabs(*result.point) <= 1e-9);
  CHECK(result.residual <= 1e-9);
  CHECK(result.iterations <= 25);
}

TEST_CASE("solve_fixed_point exhausts the budget on the harmonic shift") {
  auto inst = get_instance("harmonic_shift_low");
  auto result = solve_fixed_point(inst.space, inst.map, 1.0, 1e-9, 1000);
  CHECK(result.status == FixedPointResult::Status::max_iter);
  CHECK_FALSE(result.point.has_value());
  CHECK(result.iterations == 1000);
}

TEST_CASE("converged results satisfy the residual contract") {
  for (const char* name : {"banach_half", "piecewise_leader", "square_b"}) {
    auto inst = get_instance(name);
    auto result = solve_fixed_point(inst.space, inst.map, inst.default_x0,
                                    1e-9, 10000);
    if (result.status == FixedPointResult::Status::converged)
      CHECK(result.residual <= 1e-9);
  }
}

TEST_CASE("cauchy tail diagnostic shrinks along contractive orbits") {
  auto inst = get_instance("banach_half");
  Orbit orbit = picard(inst.space, inst.map, 1.0, 40);
  auto m0 = cauchy_tail_index(inst.space, orbit, 1e-3);
  REQUIRE(m0.has_value());
  CHECK(*m0 <= 11);  // 2^-10 < 1e-3
  auto whole = cauchy_tail_index(inst.space, orbit, 10.0);
  CHECK(*whole == 0);
}

TEST_CASE("solver argument validation") {
  auto inst = get_instance("banach_half");
  CHECK_THROWS_AS(solve_fixed_point(inst.space, inst.map, 1.0, -1.0, 10),
                  ArgumentError);
  CHECK_THROWS_AS(solve_fixed_point(inst.space, inst.map, 1.0, 1e-9, 0),
                  ArgumentError);
  CHECK_THROWS_AS(solve_fixed_point(inst.space, inst.map, 2.0, 1e-9, 10),
                  DomainError);
}
