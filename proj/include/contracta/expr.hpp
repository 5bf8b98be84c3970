#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "contracta/errors.hpp"

namespace contracta {

// Values for the three variables the grammar admits. Unbound variables
// referenced at evaluation time raise EvaluationError.
struct Bindings {
  std::optional<double> x;
  std::optional<double> y;
  std::optional<double> t;

  static Bindings for_x(double v) { return {v, std::nullopt, std::nullopt}; }
  static Bindings for_xy(double vx, double vy) {
    return {vx, vy, std::nullopt};
  }
  static Bindings for_t(double v) { return {std::nullopt, std::nullopt, v}; }
};

// Arithmetic over x, y, t with + - * / ^, unary minus, abs/min/max/exp,
// and piecewise(cond : value ; ... ; value) guarded by <, <=, >, >=.
// Binary operators associate to the left; ^ binds tightest, then unary
// minus, then * /, then + -. Integral exponents are expanded to repeated
// multiplication so "(x - y)^2" evaluates bit-identically to (x-y)*(x-y).
class Expr {
 public:
  Expr() = default;

  static Expr parse(const std::string& text);

  double eval(const Bindings& bindings) const;

  bool empty() const { return nodes_.empty(); }
  const std::string& text() const { return text_; }

 private:
  enum class Op : std::uint8_t {
    number,
    variable,  // slot: 0 = x, 1 = y, 2 = t
    add,
    sub,
    mul,
    div,
    pow,
    neg,
    call_abs,
    call_exp,
    call_min,
    call_max,
    piecewise,
    cmp_lt,
    cmp_le,
    cmp_gt,
    cmp_ge,
  };

  struct Node {
    Op op{};
    double value = 0.0;
    std::uint8_t slot = 0;
    std::vector<std::uint32_t> children;
    std::uint32_t src_begin = 0;
    std::uint32_t src_end = 0;
  };

  friend class ExprParser;

  std::string source_slice(const Node& node) const;
  double eval_node(std::uint32_t index, const Bindings& bindings) const;
  double eval_pow(double base, double exponent, const Node& node) const;

  std::string text_;
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
};

}  // namespace contracta
