#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "contracta/space.hpp"

using namespace contracta;

namespace {

BMetricSpace unit_abs() {
  return BMetricSpace(DomainDescriptor::interval(0.0, 1.0),
                      DistanceSpec::builtin(BuiltinDistance::abs_diff), 1.0);
}

BMetricSpace square_space(double s = 2.0) {
  return BMetricSpace(DomainDescriptor::interval(-2.0, 2.0),
                      DistanceSpec::builtin(BuiltinDistance::squared_diff), s);
}

double harmonic_number(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

}  // namespace

TEST_CASE("domain construction and membership") {
  auto iv = DomainDescriptor::interval(0.0, 0.75);
  CHECK(iv.contains(0.0));
  CHECK(iv.contains(0.75));
  CHECK_FALSE(iv.contains(0.76));
  CHECK_THROWS_AS(DomainDescriptor::interval(1.0, 0.0), ArgumentError);
  CHECK_THROWS_AS(
      DomainDescriptor::interval(0.0, std::numeric_limits<double>::infinity()),
      ArgumentError);

  auto hm = DomainDescriptor::harmonic(5);
  CHECK(hm.size() == 5);
  CHECK(hm.point(0) == 1.0);
  CHECK(hm.point(1) == 1.5);
  CHECK(hm.point(3) == doctest::Approx(harmonic_number(4)).epsilon(1e-15));
  CHECK(hm.contains(1.5));
  CHECK_FALSE(hm.contains(1.6));
  CHECK(hm.index_of(hm.point(4)) == 4);

  // non-injective generator is rejected
  CHECK_THROWS_AS(
      DomainDescriptor::enumerated("const", [](std::uint64_t) { return 1.0; },
                                   3),
      ArgumentError);
}

TEST_CASE("distance evaluation and identity") {
  auto space = unit_abs();
  CHECK(space.distance(0.3, 0.3) == 0.0);
  CHECK(space.distance(0.25, 0.75) == 0.5);
  CHECK_THROWS_AS(space.distance(0.5, 1.5), DomainError);

  auto sq = square_space();
  CHECK(sq.distance(0.0, 2.0) == 4.0);

  // half-abs distance on the harmonic points: d(H1, H2) = 1/4
  BMetricSpace low(DomainDescriptor::harmonic(10),
                   DistanceSpec::builtin(BuiltinDistance::half_abs_diff), 1.0);
  CHECK(low.distance(1.0, 1.5) == 0.25);
}

TEST_CASE("distance symmetry is exact for expression rules") {
  BMetricSpace space(DomainDescriptor::interval(0.0, 1.0),
                     DistanceSpec::expression("abs(x - y) + (x - y)^2"), 2.0);
  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    double a = rng.next_unit();
    double b = rng.next_unit();
    CHECK(space.distance_raw(a, b) == space.distance_raw(b, a));
  }
}

TEST_CASE("grid sampling is the row-major Cartesian square") {
  auto set = sample_pairs(DomainDescriptor::interval(0.0, 1.0),
                          SampleStrategy::grid, 3, 0);
  REQUIRE(set.points.size() == 3);
  CHECK(set.points[0] == 0.0);
  CHECK(set.points[1] == 0.5);
  CHECK(set.points[2] == 1.0);
  REQUIRE(set.pairs.size() == 9);
  CHECK(set.pairs[0] == std::pair{0.0, 0.0});
  CHECK(set.pairs[1] == std::pair{0.0, 0.5});
  CHECK(set.pairs[5] == std::pair{0.5, 1.0});
}

TEST_CASE("enumerated grid takes the first count points") {
  auto set = sample_pairs(DomainDescriptor::harmonic(100),
                          SampleStrategy::grid, 5, 0);
  REQUIRE(set.points.size() == 5);
  CHECK(set.points[4] == doctest::Approx(harmonic_number(5)).epsilon(1e-15));
  CHECK_THROWS_AS(sample_pairs(DomainDescriptor::harmonic(4),
                               SampleStrategy::grid, 5, 0),
                  ArgumentError);
}

TEST_CASE("random sampling replays bit-identically per seed") {
  auto dom = DomainDescriptor::interval(0.0, 0.75);
  auto a = sample_pairs(dom, SampleStrategy::random, 64, 42);
  auto b = sample_pairs(dom, SampleStrategy::random, 64, 42);
  auto c = sample_pairs(dom, SampleStrategy::random, 64, 43);
  REQUIRE(a.pairs.size() == 64);
  CHECK(a.pairs == b.pairs);
  CHECK(a.pairs != c.pairs);
  for (const auto& [x, y] : a.pairs) {
    CHECK(dom.contains(x));
    CHECK(dom.contains(y));
  }
}

TEST_CASE("axioms pass on the standard metric") {
  auto set = sample_pairs(DomainDescriptor::interval(0.0, 1.0),
                          SampleStrategy::grid, 50, 0);
  auto report = verify_axioms(unit_abs(), set);
  CHECK(report.all_pass());
  CHECK(report.self_zero.pass);
  CHECK(report.positivity.pass);
  CHECK(report.symmetry.pass);
  CHECK(report.triangle.pass);
}

TEST_CASE("squared difference passes with s = 2") {
  auto set = sample_pairs(DomainDescriptor::interval(-2.0, 2.0),
                          SampleStrategy::grid, 50, 0);
  CHECK(verify_axioms(square_space(2.0), set).all_pass());
}

TEST_CASE("squared difference fails the plain triangle inequality") {
  // points {-2, 0, 2}: d(-2,2) = 16 > 1 * (4 + 4)
  SampleSet set;
  set.strategy = SampleStrategy::grid;
  set.count = 3;
  set.points = {-2.0, 0.0, 2.0};
  for (double a : set.points)
    for (double b : set.points) set.pairs.emplace_back(a, b);
  auto report = verify_axioms(square_space(1.0), set);
  CHECK_FALSE(report.all_pass());
  CHECK_FALSE(report.triangle.pass);
  CHECK(report.worst_triple.x == -2.0);
  CHECK(report.worst_triple.z == 0.0);
  CHECK(report.worst_triple.y == 2.0);
  CHECK(report.worst_ratio == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("triangle audit is skipped when not enforced") {
  BMetricSpace relaxed(DomainDescriptor::interval(-2.0, 2.0),
                       DistanceSpec::builtin(BuiltinDistance::squared_diff),
                       1.0, false);
  auto set = sample_pairs(relaxed.domain, SampleStrategy::grid, 20, 0);
  auto report = verify_axioms(relaxed, set);
  CHECK_FALSE(report.triangle_checked);
  CHECK(report.all_pass());
}

TEST_CASE("verify_axioms rejects empty samples") {
  SampleSet empty;
  CHECK_THROWS_AS(verify_axioms(unit_abs(), empty), ArgumentError);
}

TEST_CASE("estimate_s clamps to 1 on true metrics") {
  auto space = unit_abs();
  double s = estimate_s(space, make_grid_triples(space.domain, 11));
  CHECK(s >= 1.0);
  CHECK(s <= 1.0 + 1e-12);  // collinear legs round at the ulp level

  BMetricSpace low(DomainDescriptor::harmonic(50),
                   DistanceSpec::builtin(BuiltinDistance::half_abs_diff), 1.0);
  double s_low = estimate_s(low, make_grid_triples(low.domain, 20));
  CHECK(s_low >= 1.0);
  CHECK(s_low <= 1.0 + 1e-12);
}

TEST_CASE("estimate_s reaches 2 on the squared difference with midpoints") {
  auto sq = square_space();
  // 21-point grid on [-2, 2] holds (a, (a+b)/2, b) triples
  double s = estimate_s(sq, make_grid_triples(sq.domain, 21));
  CHECK(s == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(s <= 2.0 + 1e-12);
}

TEST_CASE("estimate_s is monotone under triple refinement") {
  auto sq = square_space();
  auto coarse = make_grid_triples(sq.domain, 6);
  auto fine = make_grid_triples(sq.domain, 11);
  double s_coarse = estimate_s(sq, coarse);
  // supersets never lower the estimate
  auto merged = coarse;
  merged.insert(merged.end(), fine.begin(), fine.end());
  CHECK(estimate_s(sq, merged) >= s_coarse);
}

TEST_CASE("estimate_s rejects fully degenerate triple sets") {
  auto space = unit_abs();
  std::vector<Triple> degenerate = {{0.5, 0.5, 0.5}};
  CHECK_THROWS_AS(estimate_s(space, degenerate), ArgumentError);
}
