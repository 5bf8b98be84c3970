#include "contracta/proof_probe.hpp"

#include <algorithm>
#include <limits>

namespace contracta {

std::vector<IndexMember> IndexFamily::members() const {
  if (offsets.empty() || gaps.empty())
    throw ArgumentError("index family needs offsets and gaps");
  if (truncation == 0) throw ArgumentError("index family needs K >= 1");
  std::vector<IndexMember> out;
  out.reserve(offsets.size() * gaps.size());
  for (std::uint64_t a : offsets)
    for (std::uint64_t g : gaps) out.push_back({a, g});
  return out;
}

std::uint64_t IndexFamily::max_index(std::uint64_t p_max) const {
  std::uint64_t a = *std::max_element(offsets.begin(), offsets.end());
  std::uint64_t g = *std::max_element(gaps.begin(), gaps.end());
  return (truncation - 1) + a + g + p_max;
}

namespace {

constexpr std::uint64_t kOrbitBudget = 100000;

double sigma_from_orbit(const BMetricSpace& space,
                        const std::vector<double>& pts,
                        const IndexMember& member, std::uint64_t p,
                        std::uint64_t K) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 0; k < K; ++k) {
    double d =
        space.distance_raw(pts[member.m(k) + p], pts[member.n(k) + p]);
    best = std::min(best, d);
  }
  return best;
}

}  // namespace

double sigma_mnp(const BMetricSpace& space, const SelfMap& map, double x,
                 const IndexMember& member, std::uint64_t p, std::uint64_t K) {
  if (K == 0) throw ArgumentError("sigma_mnp needs K >= 1");
  std::uint64_t need = member.n(K - 1) + p;
  if (need > kOrbitBudget)
    throw ArgumentError("sigma_mnp needs orbit index " + std::to_string(need) +
                        " beyond the budget " + std::to_string(kOrbitBudget));
  Orbit orbit = picard(space, map, x, need);
  return sigma_from_orbit(space, orbit.points, member, p, K);
}

SigmaReport probe(const BMetricSpace& space, const SelfMap& map, double x,
                  const IndexFamily& family, std::uint64_t p_max,
                  std::uint64_t K, const Tolerances& tols) {
  IndexFamily f = family;
  f.truncation = K;
  SigmaReport report;
  report.members = f.members();
  report.truncation = K;

  std::uint64_t need = f.max_index(p_max);
  if (need > kOrbitBudget)
    throw ArgumentError("probe needs orbit index " + std::to_string(need) +
                        " beyond the budget " + std::to_string(kOrbitBudget));
  Orbit orbit = picard(space, map, x, need);

  report.sigma_mnp.resize(report.members.size());
  for (std::size_t i = 0; i < report.members.size(); ++i) {
    report.sigma_mnp[i].resize(p_max + 1);
    for (std::uint64_t p = 0; p <= p_max; ++p)
      report.sigma_mnp[i][p] =
          sigma_from_orbit(space, orbit.points, report.members[i], p, K);
  }

  report.sigma_p.resize(p_max + 1);
  report.theta_p.resize(p_max + 1);
  for (std::uint64_t p = 0; p <= p_max; ++p) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < report.members.size(); ++i) {
      lo = std::min(lo, report.sigma_mnp[i][p]);
      hi = std::max(hi, report.sigma_mnp[i][p]);
    }
    report.sigma_p[p] = lo;
    report.theta_p[p] = hi;
  }

  for (std::uint64_t p = 0; p + 1 <= p_max; ++p) {
    if (report.sigma_p[p + 1] > report.sigma_p[p] + tols.tau_eq)
      report.sigma_p_monotone = false;
    if (report.theta_p[p + 1] > report.theta_p[p] + tols.tau_eq)
      report.theta_p_monotone = false;
    if (report.theta_p[p + 1] > report.sigma_p[p] + tols.tau_eq)
      report.squeeze_holds = false;
    for (std::size_t i = 0; i < report.members.size(); ++i)
      if (report.sigma_mnp[i][p + 1] > report.sigma_mnp[i][p] + tols.tau_eq)
        report.per_member_monotone = false;
  }
  report.sigma_last = report.sigma_p[p_max];
  report.theta_last = report.theta_p[p_max];
  return report;
}

}  // namespace contracta
