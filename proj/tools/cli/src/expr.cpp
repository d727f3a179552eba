#include "minkflow/cli/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace minkflow::cli {

namespace {

std::string describe_expected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

std::string syntax_message(std::size_t pos, const std::vector<std::string>& expected,
                           const std::string& found) {
  std::ostringstream msg;
  msg << "syntax error at offset " << pos << ": expected " << describe_expected(expected)
      << ", found " << found;
  return msg.str();
}

struct FnName {
  std::string_view name;
  Expr::Fn fn;
};

constexpr FnName kFunctions[] = {
    {"sin", Expr::Fn::Sin},   {"cos", Expr::Fn::Cos},   {"tan", Expr::Fn::Tan},
    {"sinh", Expr::Fn::Sinh}, {"cosh", Expr::Fn::Cosh}, {"tanh", Expr::Fn::Tanh},
    {"sech", Expr::Fn::Sech}, {"exp", Expr::Fn::Exp},   {"sqrt", Expr::Fn::Sqrt},
    {"abs", Expr::Fn::Abs},
};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected,
                         const std::string& found)
    : std::runtime_error(syntax_message(position, expected, found)),
      position_(position),
      expected_(std::move(expected)) {}

EvalError::EvalError(std::size_t position, const std::string& what)
    : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}

class Parser {
 public:
  Parser(Expr& e) : e_(e), src_(e.text_) {}

  void run() {
    e_.root_ = expr();
    skip_space();
    if (pos_ < src_.size()) fail({"operator", "end of input"});
  }

 private:
  static inline const std::vector<std::string> kOperand{"number", "name", "'('", "'-'"};

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip_space();
    const std::string found =
        pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
    throw SyntaxError(pos_, std::move(expected), found);
  }

  int add(Expr::Node n) {
    e_.nodes_.push_back(n);
    return static_cast<int>(e_.nodes_.size() - 1);
  }

  int binary(Expr::Op op, int lhs, int rhs, std::size_t at) {
    Expr::Node n;
    n.op = op;
    n.lhs = lhs;
    n.rhs = rhs;
    n.position = at;
    return add(n);
  }

  int expr() {
    int lhs = term();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+')) lhs = binary(Expr::Op::Add, lhs, term(), at);
      else if (accept('-')) lhs = binary(Expr::Op::Sub, lhs, term(), at);
      else return lhs;
    }
  }

  int term() {
    int lhs = unary();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) lhs = binary(Expr::Op::Mul, lhs, unary(), at);
      else if (accept('/')) lhs = binary(Expr::Op::Div, lhs, unary(), at);
      else return lhs;
    }
  }

  int unary() {
    skip_space();
    const std::size_t at = pos_;
    if (accept('-')) {
      Expr::Node n;
      n.op = Expr::Op::Neg;
      n.lhs = unary();
      n.position = at;
      return add(n);
    }
    return power();
  }

  int power() {
    const int base = primary();
    skip_space();
    const std::size_t at = pos_;
    if (accept('^')) return binary(Expr::Op::Pow, base, unary(), at);
    return base;
  }

  int primary() {
    skip_space();
    const std::size_t at = pos_;
    if (pos_ >= src_.size()) fail(kOperand);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = expr();
      if (!accept(')')) fail({"operator", "')'"});
      return inner;
    }
    if (is_digit(c) || c == '.') return number(at);
    if (is_name_start(c)) return name(at);
    fail(kOperand);
  }

  int number(std::size_t at) {
    std::size_t end = pos_;
    while (end < src_.size() && (is_digit(src_[end]) || src_[end] == '.')) ++end;
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) ++exp;
      if (exp < src_.size() && is_digit(src_[exp])) {
        end = exp;
        while (end < src_.size() && is_digit(src_[end])) ++end;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + pos_, src_.data() + end, value);
    if (ec != std::errc() || ptr != src_.data() + end) fail({"number"});
    pos_ = end;
    Expr::Node n;
    n.op = Expr::Op::Number;
    n.value = value;
    n.position = at;
    return add(n);
  }

  int name(std::size_t at) {
    std::size_t end = pos_;
    while (end < src_.size() && is_name_char(src_[end])) ++end;
    const std::string_view id = src_.substr(pos_, end - pos_);
    for (const auto& f : kFunctions) {
      if (f.name != id) continue;
      pos_ = end;
      if (!accept('(')) fail({"'('"});
      Expr::Node n;
      n.op = Expr::Op::Call;
      n.fn = f.fn;
      n.lhs = expr();
      n.position = at;
      if (!accept(')')) fail({"operator", "')'"});
      return add(n);
    }
    if (id == "pi") {
      pos_ = end;
      Expr::Node n;
      n.op = Expr::Op::Number;
      n.value = std::numbers::pi;
      n.position = at;
      return add(n);
    }
    const auto& vars = e_.variables_;
    const auto it = std::find(vars.begin(), vars.end(), id);
    if (it == vars.end()) {
      std::vector<std::string> expected{"pi"};
      for (const auto& v : vars) expected.push_back(v);
      for (const auto& f : kFunctions) expected.emplace_back(f.name);
      throw SyntaxError(at, std::move(expected), "'" + std::string(id) + "'");
    }
    pos_ = end;
    Expr::Node n;
    n.op = Expr::Op::Variable;
    n.variable = static_cast<std::size_t>(it - vars.begin());
    n.position = at;
    return add(n);
  }

  Expr& e_;
  std::string_view src_;
  std::size_t pos_ = 0;
};

Expr Expr::parse(std::string_view text, std::vector<std::string> variables) {
  Expr e;
  e.text_ = std::string(text);
  e.variables_ = std::move(variables);
  Parser(e).run();
  return e;
}

double Expr::eval(std::span<const double> values) const {
  if (values.size() != variables_.size())
    throw std::invalid_argument("Expr::eval: expected " + std::to_string(variables_.size()) +
                                " values");
  return eval_node(root_, values);
}

double Expr::eval_node(int index, std::span<const double> values) const {
  const Node& n = nodes_[static_cast<std::size_t>(index)];
  switch (n.op) {
    case Op::Number: return n.value;
    case Op::Variable: return values[n.variable];
    case Op::Neg: return -eval_node(n.lhs, values);
    case Op::Add: return eval_node(n.lhs, values) + eval_node(n.rhs, values);
    case Op::Sub: return eval_node(n.lhs, values) - eval_node(n.rhs, values);
    case Op::Mul: return eval_node(n.lhs, values) * eval_node(n.rhs, values);
    case Op::Div: {
      const double num = eval_node(n.lhs, values);
      const double den = eval_node(n.rhs, values);
      if (den == 0.0) throw EvalError(n.position, "division by zero");
      return num / den;
    }
    case Op::Pow: return std::pow(eval_node(n.lhs, values), eval_node(n.rhs, values));
    case Op::Call: {
      const double x = eval_node(n.lhs, values);
      switch (n.fn) {
        case Fn::Sin: return std::sin(x);
        case Fn::Cos: return std::cos(x);
        case Fn::Tan: return std::tan(x);
        case Fn::Sinh: return std::sinh(x);
        case Fn::Cosh: return std::cosh(x);
        case Fn::Tanh: return std::tanh(x);
        case Fn::Sech: return 1.0 / std::cosh(x);
        case Fn::Exp: return std::exp(x);
        case Fn::Sqrt:
          if (x < 0.0) throw EvalError(n.position, "sqrt of a negative number");
          return std::sqrt(x);
        case Fn::Abs: return std::abs(x);
      }
    }
  }
  return 0.0;
}

double eval_constant(std::string_view text) { return Expr::parse(text, {}).eval(std::span<const double>{}); }

}  // namespace minkflow::cli
