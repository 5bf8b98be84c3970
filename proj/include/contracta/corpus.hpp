#pragma once

#include <map>
#include <string>
#include <vector>

#include "contracta/classifiers.hpp"
#include "contracta/selfmap.hpp"
#include "contracta/space.hpp"

namespace contracta {

// A named, parameter-free space/map pairing with the class statuses its
// default classification is expected to reproduce.
struct InstanceDescriptor {
  std::string name;
  BMetricSpace space;
  SelfMap map;
  // Canonical expression forms; empty map_expression marks a map that
  // exists only as a builtin tag (the enumerated shift).
  std::string distance_expression;
  std::string map_expression;
  double default_x0 = 0.0;
  std::map<std::string, VerdictStatus> expected;
  std::string notes;
};

// Registry entries:
//   banach_half       [0,1], |x-y|, s=1, T(x) = x/2
//   harmonic_shift_abs  harmonic partial sums, |x-y|, shift
//   harmonic_shift_low  harmonic partial sums, |x-y|/2, shift
//   piecewise_leader  [0, 3/4], |x-y|, s=1, thirds map with a jump at 1/2
//   square_b          [-2, 2], (x-y)^2, s=2, T(x) = x/2
InstanceDescriptor get_instance(const std::string& name);

std::vector<std::string> list_instances();

}  // namespace contracta
