#include "contracta/corpus.hpp"

namespace contracta {

namespace {

constexpr std::uint64_t kHarmonicCap = 1000000;

using S = VerdictStatus;

InstanceDescriptor make_banach_half() {
  DomainDescriptor domain = DomainDescriptor::interval(0.0, 1.0);
  InstanceDescriptor inst{
      "banach_half",
      BMetricSpace(domain, DistanceSpec::builtin(BuiltinDistance::abs_diff),
                   1.0),
      SelfMap::builtin(BuiltinMap::halve, domain),
      "abs(x - y)",
      "x / 2",
      1.0,
      {
          {"boyd_wong", S::certified_on_samples},
          {"matkowski", S::certified_on_samples},
          {"meir_keeler", S::certified_on_samples},
          {"nonexpansive", S::certified_on_samples},
          {"leader", S::certified_on_samples},
          {"nonexpansive_leader", S::certified_on_samples},
          {"geraghty_type_I", S::certified_on_samples},
      },
      "halving contraction; sits in every class"};
  return inst;
}

InstanceDescriptor make_piecewise_leader() {
  DomainDescriptor domain = DomainDescriptor::interval(0.0, 0.75);
  InstanceDescriptor inst{
      "piecewise_leader",
      BMetricSpace(domain, DistanceSpec::builtin(BuiltinDistance::abs_diff),
                   1.0),
      SelfMap::builtin(BuiltinMap::thirds_jump, domain),
      "abs(x - y)",
      "piecewise(x <= 1/2 : x/3 ; x/3 + 1/4)",
      0.75,
      {
          {"boyd_wong", S::falsified},
          {"matkowski", S::falsified},
          {"meir_keeler", S::inconclusive},
          {"nonexpansive", S::falsified},
          {"leader", S::certified_on_samples},
          {"nonexpansive_leader", S::falsified},
          {"geraghty_type_I", S::falsified},
      },
      "thirds map with a jump at 1/2; Leader-certifiable but expands "
      "across the jump"};
  return inst;
}

InstanceDescriptor make_harmonic(bool half_metric) {
  DomainDescriptor domain = DomainDescriptor::harmonic(kHarmonicCap);
  InstanceDescriptor inst{
      half_metric ? "harmonic_shift_low" : "harmonic_shift_abs",
      BMetricSpace(domain,
                   DistanceSpec::builtin(half_metric
                                             ? BuiltinDistance::half_abs_diff
                                             : BuiltinDistance::abs_diff),
                   1.0),
      SelfMap::builtin(BuiltinMap::shift, domain),
      half_metric ? "abs(x - y) / 2" : "abs(x - y)",
      "",  // the shift exists only as a builtin tag
      1.0,
      {
          {"boyd_wong", S::falsified},
          {"matkowski", S::falsified},
          {"meir_keeler", S::inconclusive},
          {"nonexpansive", S::certified_on_samples},
          {"leader", S::inconclusive},
          {"nonexpansive_leader", S::inconclusive},
          {"geraghty_type_I", S::falsified},
      },
      half_metric
          ? "harmonic partial sums under the lower bounding metric |x-y|/2"
          : "harmonic partial sums under the upper bounding metric |x-y|"};
  return inst;
}

InstanceDescriptor make_square_b() {
  DomainDescriptor domain = DomainDescriptor::interval(-2.0, 2.0);
  InstanceDescriptor inst{
      "square_b",
      BMetricSpace(domain,
                   DistanceSpec::builtin(BuiltinDistance::squared_diff), 2.0),
      SelfMap::builtin(BuiltinMap::halve, domain),
      "(x - y)^2",
      "x / 2",
      -2.0,
      {
          {"boyd_wong", S::certified_on_samples},
          {"matkowski", S::certified_on_samples},
          {"meir_keeler", S::certified_on_samples},
          {"nonexpansive", S::certified_on_samples},
          {"leader", S::certified_on_samples},
          {"nonexpansive_leader", S::certified_on_samples},
          {"geraghty_type_I", S::certified_on_samples},
      },
      "squared-difference b-metric with coefficient 2; quartering "
      "contraction"};
  return inst;
}

}  // namespace

InstanceDescriptor get_instance(const std::string& name) {
  if (name == "banach_half") return make_banach_half();
  if (name == "harmonic_shift_abs") return make_harmonic(false);
  if (name == "harmonic_shift_low") return make_harmonic(true);
  if (name == "piecewise_leader") return make_piecewise_leader();
  if (name == "square_b") return make_square_b();
  throw ArgumentError("unknown instance '" + name + "'");
}

std::vector<std::string> list_instances() {
  return {"banach_half", "harmonic_shift_abs", "harmonic_shift_low",
          "piecewise_leader", "square_b"};
}

}  // namespace contracta
