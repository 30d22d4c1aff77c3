#pragma once

// Scalar functions of one variable given as expression text.
//
// Grammar (whitespace insignificant):
//   full   := expr ( '@' '{' snum ':' snum ( ',' snum ':' snum )* '}' )?
//   expr   := term ( ('+' | '-') term )*
//   term   := unary ( ('*' | '/') unary )*
//   unary  := '-' unary | factor
//   factor := atom ( '^' exponent )?
//   atom   := number | 'inf' | 'x' | fn '(' expr ')' | 'min' '(' expr ',' expr ')'
//           | 'max' '(' expr ',' expr ')' | 'piecewise' '(' expr ( ',' snum ',' expr )* ')'
//           | '(' expr ')'
//   exponent := number | '(' snum ')' | '-' number
//   fn     := 'abs' | 'sign' | 'sin' | 'cos' | 'exp' | 'log'
//   snum   := ('+' | '-')? ( number | 'inf' )
//
// piecewise(e0, b1, e1, ..., bk, ek) is e0 for x < b1, e_i for b_i <= x < b_{i+1}
// and ek for x >= bk; breakpoints must be strictly increasing.
// The override clause pins the value at finitely many points; evaluation at an
// override point returns the pinned value without touching the expression.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wapprox {

enum class Op : std::uint8_t {
  constant,
  variable,
  add,
  sub,
  mul,
  div,
  neg,
  pow,
  abs,
  sign,
  sin,
  cos,
  exp,
  log,
  min,
  max,
  piecewise,
};

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

/// Immutable expression tree node. `value` is the literal for constants and
/// the exponent for pow; `breaks` is only used by piecewise.
struct ExprNode {
  Op op = Op::constant;
  double value = 0.0;
  std::vector<NodePtr> args;
  std::vector<double> breaks;
};

class FuncExpr {
 public:
  using Overrides = std::map<double, double>;

  FuncExpr();
  explicit FuncExpr(NodePtr root, Overrides overrides = {});

  static FuncExpr constant(double c);
  static FuncExpr variable();

  /// Extended-real value at t; override map first. Throws EvalDomainError.
  double operator()(double t) const;
  double eval_tree(double t) const;

  const NodePtr& root() const { return root_; }
  const Overrides& overrides() const { return overrides_; }
  std::optional<double> override_at(double t) const;
  bool has_override(double t) const { return overrides_.count(t) != 0; }

  /// Copy with `extra` merged into the override map (extra wins on clashes).
  FuncExpr with_overrides(const Overrides& extra) const;

  std::string to_string() const;

 private:
  NodePtr root_;
  Overrides overrides_;
};

FuncExpr parse_expr(std::string_view text);
double eval_expr(const FuncExpr& e, double t);
std::string print_expr(const FuncExpr& e);

// Combinators. Overrides of the operands are carried over: at every point
// overridden in either operand the result is overridden by the combined
// point values.
FuncExpr apply(Op op, const FuncExpr& a);
FuncExpr apply(Op op, const FuncExpr& a, const FuncExpr& b);
FuncExpr power(const FuncExpr& a, double exponent);
FuncExpr scale(double c, const FuncExpr& f);
FuncExpr piecewise(const std::vector<FuncExpr>& pieces, const std::vector<double>& breaks);

inline FuncExpr operator+(const FuncExpr& a, const FuncExpr& b) { return apply(Op::add, a, b); }
inline FuncExpr operator-(const FuncExpr& a, const FuncExpr& b) { return apply(Op::sub, a, b); }
inline FuncExpr operator*(const FuncExpr& a, const FuncExpr& b) { return apply(Op::mul, a, b); }
inline FuncExpr operator/(const FuncExpr& a, const FuncExpr& b) { return apply(Op::div, a, b); }

/// Shortest decimal string that parses back to the same double; "inf"/"-inf".
std::string format_number(double v);

}  // namespace wapprox
