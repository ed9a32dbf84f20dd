#include "randers/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "randers/error.hpp"

namespace randers {

namespace {

enum class Op { constant, var_r, var_mu, add, sub, mul, div, pow, neg, call };
enum class Fn { sqrt, sin, cos, tan, exp, log, tanh, cosh, sinh };

// Chain rule for a scalar function g applied to u, given g(u), g'(u), g''(u).
Jet chain(const Jet& u, double g, double g1, double g2) {
  return {g, g1 * u.d1, g2 * u.d1 * u.d1 + g1 * u.d2};
}

Jet apply(Fn fn, const Jet& u) {
  const double x = u.v;
  switch (fn) {
    case Fn::sqrt: {
      const double s = std::sqrt(x);
      return chain(u, s, 0.5 / s, -0.25 / (s * x));
    }
    case Fn::sin:
      return chain(u, std::sin(x), std::cos(x), -std::sin(x));
    case Fn::cos:
      return chain(u, std::cos(x), -std::sin(x), -std::cos(x));
    case Fn::tan: {
      const double t = std::tan(x);
      const double sec2 = 1.0 + t * t;
      return chain(u, t, sec2, 2.0 * t * sec2);
    }
    case Fn::exp: {
      const double e = std::exp(x);
      return chain(u, e, e, e);
    }
    case Fn::log:
      return chain(u, std::log(x), 1.0 / x, -1.0 / (x * x));
    case Fn::tanh: {
      const double t = std::tanh(x);
      const double sech2 = 1.0 - t * t;
      return chain(u, t, sech2, -2.0 * t * sech2);
    }
    case Fn::cosh:
      return chain(u, std::cosh(x), std::sinh(x), std::cosh(x));
    case Fn::sinh:
      return chain(u, std::sinh(x), std::cosh(x), std::sinh(x));
  }
  return {};
}

Jet mul(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

Jet reciprocal(const Jet& b) {
  const double inv = 1.0 / b.v;
  return chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

Jet power(const Jet& a, const Jet& b) {
  if (b.d1 == 0.0 && b.d2 == 0.0) {
    const double c = b.v;
    if (c == 0.0) return {1.0, 0.0, 0.0};
    const double g = std::pow(a.v, c);
    const double g1 = c * std::pow(a.v, c - 1.0);
    const double g2 = c * (c - 1.0) * std::pow(a.v, c - 2.0);
    return chain(a, g, g1, g2);
  }
  // a^b = exp(b log a)
  return apply(Fn::exp, mul(b, apply(Fn::log, a)));
}

}  // namespace

struct Expression::Node {
  Op op = Op::constant;
  Fn fn = Fn::sqrt;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  Jet eval(double r, double mu) const {
    switch (op) {
      case Op::constant:
        return {value, 0.0, 0.0};
      case Op::var_r:
        return {r, 1.0, 0.0};
      case Op::var_mu:
        return {mu, 0.0, 0.0};
      case Op::neg: {
        const Jet a = lhs->eval(r, mu);
        return {-a.v, -a.d1, -a.d2};
      }
      case Op::add: {
        const Jet a = lhs->eval(r, mu), b = rhs->eval(r, mu);
        return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
      }
      case Op::sub: {
        const Jet a = lhs->eval(r, mu), b = rhs->eval(r, mu);
        return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
      }
      case Op::mul:
        return mul(lhs->eval(r, mu), rhs->eval(r, mu));
      case Op::div:
        return mul(lhs->eval(r, mu), reciprocal(rhs->eval(r, mu)));
      case Op::pow:
        return power(lhs->eval(r, mu), rhs->eval(r, mu));
      case Op::call:
        return apply(fn, lhs->eval(r, mu));
    }
    return {};
  }

  double value_only(double r, double mu) const {
    switch (op) {
      case Op::constant:
        return value;
      case Op::var_r:
        return r;
      case Op::var_mu:
        return mu;
      case Op::neg:
        return -lhs->value_only(r, mu);
      case Op::add:
        return lhs->value_only(r, mu) + rhs->value_only(r, mu);
      case Op::sub:
        return lhs->value_only(r, mu) - rhs->value_only(r, mu);
      case Op::mul:
        return lhs->value_only(r, mu) * rhs->value_only(r, mu);
      case Op::div:
        return lhs->value_only(r, mu) / rhs->value_only(r, mu);
      case Op::pow:
        return std::pow(lhs->value_only(r, mu), rhs->value_only(r, mu));
      case Op::call:
        return apply(fn, {lhs->value_only(r, mu), 0.0, 0.0}).v;
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse, "expression '" + std::string(text_) + "': " +
                                      what + " at offset " +
                                      std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(Op::add, lhs, term());
      else if (accept('-'))
        lhs = make(Op::sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Op::mul, lhs, unary());
      else if (accept('/'))
        lhs = make(Op::div, lhs, unary());
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Op::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (accept('(')) {
      NodePtr n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = std::make_shared<Expression::Node>();
    n->op = Op::constant;
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "r") return make(Op::var_r);
    if (name == "mu") return make(Op::var_mu);
    if (name == "pi") {
      auto n = std::make_shared<Expression::Node>();
      n->value = std::numbers::pi;
      return n;
    }
    static const std::vector<std::pair<std::string, Fn>> functions = {
        {"sqrt", Fn::sqrt}, {"sin", Fn::sin},   {"cos", Fn::cos},
        {"tan", Fn::tan},   {"exp", Fn::exp},   {"log", Fn::log},
        {"tanh", Fn::tanh}, {"cosh", Fn::cosh}, {"sinh", Fn::sinh}};
    for (const auto& [fname, fn] : functions) {
      if (name != fname) continue;
      if (!accept('(')) fail("expected '(' after " + name);
      NodePtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      auto n = std::make_shared<Expression::Node>();
      n->op = Op::call;
      n->fn = fn;
      n->lhs = std::move(arg);
      return n;
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.root_ = Parser(text).parse();
  e.text_ = std::string(text);
  return e;
}

double Expression::operator()(double r, double mu) const {
  return root_->value_only(r, mu);
}

Jet Expression::jet(double r, double mu) const { return root_->eval(r, mu); }

}  // namespace randers
