#pragma once

#include <optional>
#include <string>

#include "contracta/domain.hpp"
#include "contracta/expr.hpp"

namespace contracta {

enum class BuiltinMap {
  halve,        // x / 2
  thirds_jump,  // x/3 on [0, 1/2], x/3 + 1/4 above
  shift,        // enumerated successor: k-th point -> (k+1)-th point
};

// Self-map of a domain: either a native builtin or a parsed expression in
// x. Closure (T maps the domain into itself) is audited on construction
// over a grid; runtime escapes surface as ClosureError from the callers.
class SelfMap {
 public:
  static SelfMap builtin(BuiltinMap which, const DomainDescriptor& domain);
  static SelfMap expression(const std::string& text,
                            const DomainDescriptor& domain);

  double apply(double x) const;

  // r-fold application; r = 0 returns x.
  double apply_n(double x, std::uint64_t r) const;

  const DomainDescriptor& domain() const { return domain_; }
  std::string describe() const;
  bool is_builtin() const { return !expr_.has_value(); }

 private:
  SelfMap() = default;
  void audit_closure(std::uint64_t grid_points) const;
  double apply_unchecked(double x) const;

  DomainDescriptor domain_ = DomainDescriptor::interval(0.0, 1.0);
  BuiltinMap builtin_ = BuiltinMap::halve;
  std::optional<Expr> expr_;
};

}  // namespace contracta
