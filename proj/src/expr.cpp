#include "contracta/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace contracta {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

// Recursive-descent parser for the config expression grammar.
//
//   expr    := sum
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' unary)*            (left-associative chain)
//   atom    := number | 'x' | 'y' | 't' | func '(' args ')' | '(' expr ')'
//            | 'piecewise' '(' branch (';' branch)* ')'
//   branch  := sum cmp sum ':' expr | expr  (bare expr only as last branch)
class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  Expr run() {
    Expr expr;
    expr.text_ = text_;
    nodes_ = &expr.nodes_;
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    expr.root_ = parse_sum();
    skip_ws();
    if (!at_end()) {
      throw ParseError("unexpected trailing input '" +
                           text_.substr(pos_) + "'",
                       pos_);
    }
    return expr;
  }

 private:
  using Op = Expr::Op;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!consume(c))
      throw ParseError(std::string("expected '") + c + "' " + what, pos_);
  }

  std::uint32_t add_node(Expr::Node node) {
    nodes_->push_back(std::move(node));
    return static_cast<std::uint32_t>(nodes_->size() - 1);
  }

  std::uint32_t make_binary(Op op, std::uint32_t lhs, std::uint32_t rhs,
                            std::uint32_t begin) {
    Expr::Node node;
    node.op = op;
    node.children = {lhs, rhs};
    node.src_begin = begin;
    node.src_end = static_cast<std::uint32_t>(pos_);
    return add_node(std::move(node));
  }

  std::uint32_t parse_sum() {
    skip_ws();
    std::uint32_t begin = static_cast<std::uint32_t>(pos_);
    std::uint32_t lhs = parse_product();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        lhs = make_binary(Op::add, lhs, parse_product(), begin);
      } else if (peek() == '-') {
        ++pos_;
        lhs = make_binary(Op::sub, lhs, parse_product(), begin);
      } else {
        return lhs;
      }
    }
  }

  std::uint32_t parse_product() {
    skip_ws();
    std::uint32_t begin = static_cast<std::uint32_t>(pos_);
    std::uint32_t lhs = parse_unary();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        lhs = make_binary(Op::mul, lhs, parse_unary(), begin);
      } else if (peek() == '/') {
        ++pos_;
        lhs = make_binary(Op::div, lhs, parse_unary(), begin);
      } else {
        return lhs;
      }
    }
  }

  std::uint32_t parse_unary() {
    skip_ws();
    if (peek() == '-') {
      std::uint32_t begin = static_cast<std::uint32_t>(pos_);
      ++pos_;
      std::uint32_t child = parse_unary();
      Expr::Node node;
      node.op = Op::neg;
      node.children = {child};
      node.src_begin = begin;
      node.src_end = static_cast<std::uint32_t>(pos_);
      return add_node(std::move(node));
    }
    return parse_power();
  }

  std::uint32_t parse_power() {
    skip_ws();
    std::uint32_t begin = static_cast<std::uint32_t>(pos_);
    std::uint32_t lhs = parse_atom();
    for (;;) {
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        lhs = make_binary(Op::pow, lhs, parse_pow_operand(), begin);
      } else {
        return lhs;
      }
    }
  }

  // Right-hand side of ^: a signed atom. Keeping it below parse_power
  // makes chained ^ associate to the left.
  std::uint32_t parse_pow_operand() {
    skip_ws();
    if (peek() == '-') {
      std::uint32_t begin = static_cast<std::uint32_t>(pos_);
      ++pos_;
      std::uint32_t child = parse_pow_operand();
      Expr::Node node;
      node.op = Op::neg;
      node.children = {child};
      node.src_begin = begin;
      node.src_end = static_cast<std::uint32_t>(pos_);
      return add_node(std::move(node));
    }
    return parse_atom();
  }

  std::uint32_t parse_atom() {
    skip_ws();
    if (at_end()) throw ParseError("unexpected end of expression", pos_);
    char c = peek();

    if (c == '(') {
      ++pos_;
      std::uint32_t inner = parse_sum();
      expect(')', "to close parenthesis");
      return inner;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();

    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();

    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::uint32_t parse_number() {
    std::size_t begin = pos_;
    while (!at_end() &&
           (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'))
      ++pos_;
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = mark;  // 'e' belonged to something else; not a valid exponent
      } else {
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
          ++pos_;
      }
    }
    const std::string token = text_.substr(begin, pos_ - begin);
    char* end = nullptr;
    double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0')
      throw ParseError("invalid number '" + token + "'", begin);
    Expr::Node node;
    node.op = Op::number;
    node.value = value;
    node.src_begin = static_cast<std::uint32_t>(begin);
    node.src_end = static_cast<std::uint32_t>(pos_);
    return add_node(std::move(node));
  }

  std::uint32_t parse_ident() {
    std::size_t begin = pos_;
    while (!at_end() && is_ident_char(peek())) ++pos_;
    const std::string name = text_.substr(begin, pos_ - begin);

    if (name == "x" || name == "y" || name == "t") {
      Expr::Node node;
      node.op = Op::variable;
      node.slot = name == "x" ? 0 : (name == "y" ? 1 : 2);
      node.src_begin = static_cast<std::uint32_t>(begin);
      node.src_end = static_cast<std::uint32_t>(pos_);
      return add_node(std::move(node));
    }

    if (name == "piecewise") return parse_piecewise(begin);

    Op op;
    std::size_t arity;
    if (name == "abs") {
      op = Op::call_abs;
      arity = 1;
    } else if (name == "exp") {
      op = Op::call_exp;
      arity = 1;
    } else if (name == "min") {
      op = Op::call_min;
      arity = 2;
    } else if (name == "max") {
      op = Op::call_max;
      arity = 2;
    } else {
      throw ParseError("unknown identifier '" + name + "'", begin);
    }

    expect('(', ("after '" + name + "'").c_str());
    Expr::Node node;
    node.op = op;
    node.children.push_back(parse_sum());
    for (std::size_t i = 1; i < arity; ++i) {
      expect(',', ("between arguments of '" + name + "'").c_str());
      node.children.push_back(parse_sum());
    }
    expect(')', ("to close call to '" + name + "'").c_str());
    node.src_begin = static_cast<std::uint32_t>(begin);
    node.src_end = static_cast<std::uint32_t>(pos_);
    return add_node(std::move(node));
  }

  std::uint32_t parse_comparison() {
    std::uint32_t begin = static_cast<std::uint32_t>(pos_);
    std::uint32_t lhs = parse_sum();
    skip_ws();
    Op op;
    if (peek() == '<') {
      ++pos_;
      op = consume('=') ? Op::cmp_le : Op::cmp_lt;
    } else if (peek() == '>') {
      ++pos_;
      op = consume('=') ? Op::cmp_ge : Op::cmp_gt;
    } else {
      throw ParseError("expected comparison in piecewise condition", pos_);
    }
    std::uint32_t rhs = parse_sum();
    return make_binary(op, lhs, rhs, begin);
  }

  // piecewise(cond : value ; cond : value ; ... ; value)
  // The final branch carries no condition and acts as the fallback.
  std::uint32_t parse_piecewise(std::size_t begin) {
    expect('(', "after 'piecewise'");
    Expr::Node node;
    node.op = Op::piecewise;
    bool saw_fallback = false;
    for (;;) {
      // A branch is "cond : value" unless no comparison operator appears
      // before the next ; or ), in which case it is the fallback value.
      std::size_t probe = pos_;
      int depth = 0;
      bool has_cmp = false;
      while (probe < text_.size()) {
        char c = text_[probe];
        if (c == '(') ++depth;
        if (c == ')') {
          if (depth == 0) break;
          --depth;
        }
        if (depth == 0 && (c == ';')) break;
        if (depth == 0 && (c == '<' || c == '>')) has_cmp = true;
        ++probe;
      }
      if (has_cmp) {
        node.children.push_back(parse_comparison());
        expect(':', "between piecewise condition and value");
        node.children.push_back(parse_sum());
      } else {
        node.children.push_back(parse_sum());
        saw_fallback = true;
      }
      skip_ws();
      if (consume(';')) {
        if (saw_fallback)
          throw ParseError("piecewise fallback value must come last", pos_);
        continue;
      }
      break;
    }
    expect(')', "to close 'piecewise'");
    if (!saw_fallback)
      throw ParseError("piecewise needs a final fallback value", pos_);
    node.src_begin = static_cast<std::uint32_t>(begin);
    node.src_end = static_cast<std::uint32_t>(pos_);
    return add_node(std::move(node));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::vector<Expr::Node>* nodes_ = nullptr;
};

Expr Expr::parse(const std::string& text) { return ExprParser(text).run(); }

std::string Expr::source_slice(const Node& node) const {
  return text_.substr(node.src_begin, node.src_end - node.src_begin);
}

double Expr::eval(const Bindings& bindings) const {
  if (nodes_.empty()) throw EvaluationError("evaluating empty expression");
  return eval_node(root_, bindings);
}

double Expr::eval_node(std::uint32_t index, const Bindings& bindings) const {
  const Node& node = nodes_[index];
  switch (node.op) {
    case Op::number:
      return node.value;
    case Op::variable: {
      const std::optional<double>* slots[3] = {&bindings.x, &bindings.y,
                                               &bindings.t};
      const std::optional<double>& v = *slots[node.slot];
      if (!v.has_value()) {
        static const char* names[3] = {"x", "y", "t"};
        throw EvaluationError(std::string("variable '") + names[node.slot] +
                              "' is unbound in '" + text_ + "'");
      }
      return *v;
    }
    case Op::add:
      return eval_node(node.children[0], bindings) +
             eval_node(node.children[1], bindings);
    case Op::sub:
      return eval_node(node.children[0], bindings) -
             eval_node(node.children[1], bindings);
    case Op::mul:
      return eval_node(node.children[0], bindings) *
             eval_node(node.children[1], bindings);
    case Op::div: {
      double denom = eval_node(node.children[1], bindings);
      if (denom == 0.0)
        throw EvaluationError("division by zero in '" + source_slice(node) +
                              "'");
      return eval_node(node.children[0], bindings) / denom;
    }
    case Op::pow: {
      double base = eval_node(node.children[0], bindings);
      double exponent = eval_node(node.children[1], bindings);
      return eval_pow(base, exponent, node);
    }
    case Op::neg:
      return -eval_node(node.children[0], bindings);
    case Op::call_abs:
      return std::fabs(eval_node(node.children[0], bindings));
    case Op::call_exp:
      return std::exp(eval_node(node.children[0], bindings));
    case Op::call_min:
      return std::min(eval_node(node.children[0], bindings),
                      eval_node(node.children[1], bindings));
    case Op::call_max:
      return std::max(eval_node(node.children[0], bindings),
                      eval_node(node.children[1], bindings));
    case Op::piecewise: {
      std::size_t i = 0;
      while (i + 1 < node.children.size()) {
        const Node& cond = nodes_[node.children[i]];
        double lhs = eval_node(cond.children[0], bindings);
        double rhs = eval_node(cond.children[1], bindings);
        bool taken = false;
        switch (cond.op) {
          case Op::cmp_lt: taken = lhs < rhs; break;
          case Op::cmp_le: taken = lhs <= rhs; break;
          case Op::cmp_gt: taken = lhs > rhs; break;
          case Op::cmp_ge: taken = lhs >= rhs; break;
          default:
            throw EvaluationError("malformed piecewise condition");
        }
        if (taken) return eval_node(node.children[i + 1], bindings);
        i += 2;
      }
      return eval_node(node.children.back(), bindings);
    }
    default:
      throw EvaluationError("comparison outside piecewise in '" + text_ + "'");
  }
}

// ^ with an integral exponent is expanded to repeated multiplication, so
// squared differences match their hand-written builtin counterparts bit
// for bit. Everything else goes through std::pow with domain checks.
double Expr::eval_pow(double base, double exponent, const Node& node) const {
  bool integral = std::floor(exponent) == exponent &&
                  std::fabs(exponent) <= 64.0;
  if (integral) {
    long n = static_cast<long>(exponent);
    if (n < 0 && base == 0.0)
      throw EvaluationError("zero raised to negative power in '" +
                            source_slice(node) + "'");
    double mag = 1.0;
    for (long i = 0; i < std::labs(n); ++i) mag *= base;
    return n < 0 ? 1.0 / mag : mag;
  }
  double result = std::pow(base, exponent);
  if (!std::isfinite(result))
    throw EvaluationError("power out of domain in '" + source_slice(node) +
                          "'");
  return result;
}

}  // namespace contracta
