#include "contracta/selfmap.hpp"

#include <algorithm>
#include <cmath>

namespace contracta {

namespace {
constexpr std::uint64_t kClosureAuditPoints = 1001;
}

SelfMap SelfMap::builtin(BuiltinMap which, const DomainDescriptor& domain) {
  if (which == BuiltinMap::shift &&
      domain.kind() != DomainDescriptor::Kind::enumerated)
    throw ArgumentError("shift map requires an enumerated domain");
  SelfMap map;
  map.domain_ = domain;
  map.builtin_ = which;
  map.audit_closure(kClosureAuditPoints);
  return map;
}

SelfMap SelfMap::expression(const std::string& text,
                            const DomainDescriptor& domain) {
  SelfMap map;
  map.domain_ = domain;
  map.expr_ = Expr::parse(text);
  map.audit_closure(kClosureAuditPoints);
  return map;
}

double SelfMap::apply_unchecked(double x) const {
  if (expr_.has_value()) return expr_->eval(Bindings::for_x(x));
  switch (builtin_) {
    case BuiltinMap::halve:
      return x / 2.0;
    case BuiltinMap::thirds_jump:
      return x <= 0.5 ? x / 3.0 : x / 3.0 + 0.25;
    case BuiltinMap::shift: {
      auto k = domain_.index_of(x);
      if (!k.has_value())
        throw DomainError("shift: point " + std::to_string(x) +
                          " is not an enumerated domain point");
      if (*k + 1 >= domain_.size())
        throw ClosureError("shift: successor of the last enumerated point "
                           "exceeds the domain cap",
                           *k + 1);
      return domain_.point(*k + 1);
    }
  }
  return x;
}

double SelfMap::apply(double x) const {
  if (!domain_.contains(x))
    throw DomainError("map argument " + std::to_string(x) +
                      " outside domain " + domain_.describe());
  double image = apply_unchecked(x);
  if (!std::isfinite(image))
    throw EvaluationError("map produced a non-finite value at x = " +
                          std::to_string(x));
  return image;
}

double SelfMap::apply_n(double x, std::uint64_t r) const {
  double v = x;
  for (std::uint64_t i = 0; i < r; ++i) v = apply(v);
  return v;
}

void SelfMap::audit_closure(std::uint64_t grid_points) const {
  if (domain_.kind() == DomainDescriptor::Kind::enumerated) {
    // The last point's successor is allowed to fall off the cap; the
    // audit covers a prefix and runtime escapes are reported per orbit.
    std::uint64_t audit = std::min<std::uint64_t>(
        grid_points, domain_.size() > 1 ? domain_.size() - 1 : 1);
    for (std::uint64_t k = 0; k < audit; ++k) {
      double image = apply_unchecked(domain_.point(k));
      if (!domain_.contains(image))
        throw ClosureError("map image of enumerated point " +
                           std::to_string(k) + " leaves the domain",
                           k);
    }
    return;
  }
  std::vector<double> pts = domain_.grid(grid_points);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double image = apply_unchecked(pts[i]);
    if (!std::isfinite(image) || !domain_.contains(image))
      throw ClosureError("map image " + std::to_string(image) + " of x = " +
                         std::to_string(pts[i]) + " leaves the domain",
                         i);
  }
}

std::string SelfMap::describe() const {
  if (expr_.has_value()) return expr_->text();
  switch (builtin_) {
    case BuiltinMap::halve: return "x / 2";
    case BuiltinMap::thirds_jump:
      return "piecewise(x <= 1/2 : x/3 ; x/3 + 1/4)";
    case BuiltinMap::shift: return "shift";
  }
  return "";
}

}  // namespace contracta
