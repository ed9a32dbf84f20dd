#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace randers {

/// Value with first and second derivative with respect to r, propagated
/// through the expression tree (forward-mode differentiation).
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Compiled arithmetic expression over the variables `r` and `mu`.
///
/// Grammar: numbers, `r`, `mu`, `pi`, unary minus, `+ - * / ^`, parentheses
/// and the functions sqrt, sin, cos, tan, exp, log, tanh, cosh, sinh. `^`
/// is right associative and binds tighter than unary minus.
class Expression {
 public:
  struct Node;

  static Expression parse(std::string_view text);

  double operator()(double r, double mu) const;
  Jet jet(double r, double mu) const;
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace randers
