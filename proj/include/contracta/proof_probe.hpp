#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "contracta/orbit.hpp"

namespace contracta {

// A pair of index sequences m(k) = k + offset, n(k) = k + offset + gap.
// Both diverge; gap >= 0 keeps m(k) <= n(k).
struct IndexMember {
  std::uint64_t offset = 0;
  std::uint64_t gap = 0;

  std::uint64_t m(std::uint64_t k) const { return k + offset; }
  std::uint64_t n(std::uint64_t k) const { return k + offset + gap; }
};

// Finite stand-in for the full family of admissible index-sequence pairs:
// the cross product of offsets and gaps, truncated to K values of k.
struct IndexFamily {
  std::vector<std::uint64_t> offsets = {0, 1, 2, 3};
  std::vector<std::uint64_t> gaps = {0, 1, 2, 3, 4};
  std::uint64_t truncation = 30;  // K

  std::vector<IndexMember> members() const;
  std::uint64_t max_index(std::uint64_t p_max) const;
};

// min over k < K of d(T^{m(k)+p} x, T^{n(k)+p} x). Upper bound on the
// true infimum; deepening K can only lower it.
double sigma_mnp(const BMetricSpace& space, const SelfMap& map, double x,
                 const IndexMember& member, std::uint64_t p, std::uint64_t K);

// Truncated tables of the proof quantities. sigma_p rows approximate the
// infimum over the family from above; theta_p rows approximate the
// supremum from below.
struct SigmaReport {
  std::vector<IndexMember> members;
  std::uint64_t truncation = 0;
  // sigma_mnp[i][p] for member i, p in [0, p_max]
  std::vector<std::vector<double>> sigma_mnp;
  std::vector<double> sigma_p;  // min over members
  std::vector<double> theta_p;  // max over members
  bool sigma_p_monotone = true;   // sigma(p+1) <= sigma(p) + tau
  bool theta_p_monotone = true;   // theta(p+1) <= theta(p) + tau
  bool per_member_monotone = true;
  bool squeeze_holds = true;      // theta(p+1) <= sigma(p) + tau, reported
  double sigma_last = 0.0;
  double theta_last = 0.0;
};

// Computes the shared orbit prefix once, then fills the tables. Flag
// failures are evidence, not errors.
SigmaReport probe(const BMetricSpace& space, const SelfMap& map, double x,
                  const IndexFamily& family, std::uint64_t p_max,
                  std::uint64_t K, const Tolerances& tols = {});

}  // namespace contracta
