#pragma once

// Arithmetic expressions for user-supplied profiles such as "2 + 0.1*sin(s)".
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | name | name '(' expr ')' | '(' expr ')'
//
// Functions: sin cos tan sinh cosh tanh sech exp sqrt abs. Constant: pi.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace minkflow::cli {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected, const std::string& found);
  /// Byte offset into the source text.
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// Division by zero or sqrt of a negative number.
class EvalError : public std::runtime_error {
 public:
  EvalError(std::size_t position, const std::string& what);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class Expr {
 public:
  /// `variables` lists the names the expression may use; values are passed to
  /// eval in the same order.
  static Expr parse(std::string_view text, std::vector<std::string> variables = {"s"});

  double eval(std::span<const double> values) const;
  double eval(double s) const { return eval(std::span<const double>(&s, 1)); }

  const std::string& text() const noexcept { return text_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }

  enum class Op { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };
  enum class Fn { Sin, Cos, Tan, Sinh, Cosh, Tanh, Sech, Exp, Sqrt, Abs };

  struct Node {
    Op op = Op::Number;
    double value = 0.0;
    std::size_t variable = 0;
    Fn fn = Fn::Sin;
    int lhs = -1;
    int rhs = -1;
    std::size_t position = 0;
  };

 private:
  friend class Parser;
  double eval_node(int index, std::span<const double> values) const;

  std::string text_;
  std::vector<std::string> variables_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

/// Parses and evaluates an expression with no variables, e.g. "2*pi".
double eval_constant(std::string_view text);

}  // namespace minkflow::cli
