#include "wapprox/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "wapprox/error.hpp"
#include "wapprox/extended_real.hpp"

namespace wapprox {

namespace {

NodePtr make_node(Op op, std::vector<NodePtr> args = {}, double value = 0.0,
                  std::vector<double> breaks = {}) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->value = value;
  n->args = std::move(args);
  n->breaks = std::move(breaks);
  return n;
}

double apply_unary(Op op, double v, double param) {
  switch (op) {
    case Op::neg: return -v;
    case Op::pow: return ereal::pow(v, param);
    case Op::abs: return std::fabs(v);
    case Op::sign: return ereal::sign(v);
    case Op::sin: return ereal::sin(v);
    case Op::cos: return ereal::cos(v);
    case Op::exp: return ereal::exp(v);
    case Op::log: return ereal::log(v);
    default: break;
  }
  throw std::logic_error("not a unary op");
}

double apply_binary(Op op, double a, double b) {
  switch (op) {
    case Op::add: return ereal::add(a, b);
    case Op::sub: return ereal::sub(a, b);
    case Op::mul: return ereal::mul(a, b);
    case Op::div: return ereal::div(a, b);
    case Op::min: return std::min(a, b);
    case Op::max: return std::max(a, b);
    default: break;
  }
  throw std::logic_error("not a binary op");
}

bool is_binary(Op op) {
  return op == Op::add || op == Op::sub || op == Op::mul || op == Op::div || op == Op::min ||
         op == Op::max;
}

std::size_t piece_index(const std::vector<double>& breaks, double t) {
  return static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), t) - breaks.begin());
}

double eval_node(const ExprNode& n, double t) {
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::variable: return t;
    case Op::piecewise: return eval_node(*n.args[piece_index(n.breaks, t)], t);
    default: break;
  }
  if (is_binary(n.op)) return apply_binary(n.op, eval_node(*n.args[0], t), eval_node(*n.args[1], t));
  return apply_unary(n.op, eval_node(*n.args[0], t), n.value);
}

const char* fn_name(Op op) {
  switch (op) {
    case Op::abs: return "abs";
    case Op::sign: return "sign";
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::exp: return "exp";
    case Op::log: return "log";
    case Op::min: return "min";
    case Op::max: return "max";
    default: return "";
  }
}

void print_node(const ExprNode& n, std::string& out) {
  switch (n.op) {
    case Op::constant: {
      auto s = format_number(n.value);
      if (std::signbit(n.value)) {
        out += "(" + s + ")";
      } else {
        out += s;
      }
      return;
    }
    case Op::variable: out += "x"; return;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
      static constexpr char sym[] = {'+', '-', '*', '/'};
      out += "(";
      print_node(*n.args[0], out);
      out += ' ';
      out += sym[static_cast<int>(n.op) - static_cast<int>(Op::add)];
      out += ' ';
      print_node(*n.args[1], out);
      out += ")";
      return;
    }
    case Op::neg:
      out += "(-";
      print_node(*n.args[0], out);
      out += ")";
      return;
    case Op::pow:
      out += "(";
      print_node(*n.args[0], out);
      out += "^";
      if (std::signbit(n.value)) {
        out += "(" + format_number(n.value) + ")";
      } else {
        out += format_number(n.value);
      }
      out += ")";
      return;
    case Op::min:
    case Op::max:
      out += fn_name(n.op);
      out += "(";
      print_node(*n.args[0], out);
      out += ", ";
      print_node(*n.args[1], out);
      out += ")";
      return;
    case Op::piecewise:
      out += "piecewise(";
      print_node(*n.args[0], out);
      for (std::size_t i = 0; i < n.breaks.size(); ++i) {
        out += ", " + format_number(n.breaks[i]) + ", ";
        print_node(*n.args[i + 1], out);
      }
      out += ")";
      return;
    default:
      out += fn_name(n.op);
      out += "(";
      print_node(*n.args[0], out);
      out += ")";
      return;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  FuncExpr parse_full() {
    if (s_.find_first_not_of(" \t\r\n") == std::string_view::npos)
      throw ParseError("empty expression", 0, "expression");
    NodePtr root = parse_expr();
    FuncExpr::Overrides ov;
    skip_ws();
    if (peek() == '@') {
      ++pos_;
      expect('{');
      do {
        double p = parse_signed_number();
        if (!std::isfinite(p)) fail("override point must be finite", "finite number");
        expect(':');
        double v = parse_signed_number();
        ov[p] = v;
        skip_ws();
      } while (accept(','));
      expect('}');
    }
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input", "end of input");
    return FuncExpr(std::move(root), std::move(ov));
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what, const std::string& expected) const {
    throw ParseError("syntax error at offset " + std::to_string(pos_) + ": " + what + " (expected " +
                         expected + ")",
                     pos_, expected);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(pos_ < s_.size() ? "unexpected character" : "unexpected end of input",
                         std::string("\"") + c + "\"");
  }

  bool at_number_start() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) ||
           (c == '.' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])));
  }

  double parse_number() {
    skip_ws();
    std::size_t start = pos_;
    if (!at_number_start()) {
      if (ident_ahead() == "inf") {
        pos_ += 3;
        return ereal::inf;
      }
      fail("number expected", "number");
    }
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc() || ptr != s_.data() + pos_) {
      pos_ = start;
      fail("malformed number", "number");
    }
    return v;
  }

  double parse_signed_number() {
    if (accept('-')) return -parse_number();
    accept('+');
    return parse_number();
  }

  std::string_view ident_ahead() {
    skip_ws();
    std::size_t end = pos_;
    while (end < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
    return s_.substr(pos_, end - pos_);
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(Op::add, {lhs, parse_term()});
      } else if (accept('-')) {
        lhs = make_node(Op::sub, {lhs, parse_term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(Op::mul, {lhs, parse_unary()});
      } else if (accept('/')) {
        lhs = make_node(Op::div, {lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) {
      NodePtr inner = parse_unary();
      if (inner->op == Op::constant) return make_node(Op::constant, {}, -inner->value);
      return make_node(Op::neg, {inner});
    }
    return parse_factor();
  }

  NodePtr parse_factor() {
    NodePtr base = parse_atom();
    if (accept('^')) {
      double e = 0.0;
      if (accept('(')) {
        e = parse_signed_number();
        expect(')');
      } else if (accept('-')) {
        e = -parse_number();
      } else {
        e = parse_number();
      }
      if (!std::isfinite(e)) fail("exponent must be finite", "finite number");
      return make_node(Op::pow, {base}, e);
    }
    return base;
  }

  NodePtr parse_atom() {
    if (at_number_start()) return make_node(Op::constant, {}, parse_number());
    if (accept('(')) {
      NodePtr e = parse_expr();
      expect(')');
      return e;
    }
    std::size_t start = pos_;
    std::string name(ident_ahead());
    if (name.empty()) fail(pos_ < s_.size() ? "unexpected character" : "unexpected end of input", "operand");
    pos_ += name.size();
    if (name == "x") return make_node(Op::variable);
    if (name == "inf") return make_node(Op::constant, {}, ereal::inf);

    static const std::map<std::string, Op, std::less<>> unary = {
        {"abs", Op::abs}, {"sign", Op::sign}, {"sin", Op::sin},
        {"cos", Op::cos}, {"exp", Op::exp},   {"log", Op::log}};
    if (auto it = unary.find(name); it != unary.end()) {
      expect('(');
      NodePtr a = parse_expr();
      expect(')');
      return make_node(it->second, {a});
    }
    if (name == "min" || name == "max") {
      expect('(');
      NodePtr a = parse_expr();
      expect(',');
      NodePtr b = parse_expr();
      expect(')');
      return make_node(name == "min" ? Op::min : Op::max, {a, b});
    }
    if (name == "piecewise") {
      expect('(');
      std::vector<NodePtr> pieces{parse_expr()};
      std::vector<double> breaks;
      while (accept(',')) {
        double b = parse_signed_number();
        if (!std::isfinite(b) || (!breaks.empty() && b <= breaks.back()))
          fail("breakpoints must be finite and strictly increasing", "larger breakpoint");
        breaks.push_back(b);
        expect(',');
        pieces.push_back(parse_expr());
      }
      expect(')');
      return make_node(Op::piecewise, std::move(pieces), 0.0, std::move(breaks));
    }
    throw UnknownIdentifier(name, start);
  }
};

}  // namespace

FuncExpr::FuncExpr() : root_(make_node(Op::constant)) {}

FuncExpr::FuncExpr(NodePtr root, Overrides overrides)
    : root_(std::move(root)), overrides_(std::move(overrides)) {}

FuncExpr FuncExpr::constant(double c) { return FuncExpr(make_node(Op::constant, {}, c)); }

FuncExpr FuncExpr::variable() { return FuncExpr(make_node(Op::variable)); }

double FuncExpr::eval_tree(double t) const {
  try {
    return eval_node(*root_, t);
  } catch (const EvalDomainError& e) {
    if (e.point()) throw;
    throw EvalDomainError(e.reason(), t);
  }
}

double FuncExpr::operator()(double t) const {
  if (auto it = overrides_.find(t); it != overrides_.end()) return it->second;
  return eval_tree(t);
}

std::optional<double> FuncExpr::override_at(double t) const {
  if (auto it = overrides_.find(t); it != overrides_.end()) return it->second;
  return std::nullopt;
}

FuncExpr FuncExpr::with_overrides(const Overrides& extra) const {
  Overrides merged = overrides_;
  for (const auto& [p, v] : extra) merged[p] = v;
  return FuncExpr(root_, std::move(merged));
}

std::string FuncExpr::to_string() const {
  std::string out;
  print_node(*root_, out);
  if (!overrides_.empty()) {
    out += " @ {";
    bool first = true;
    for (const auto& [p, v] : overrides_) {
      if (!first) out += ", ";
      first = false;
      out += format_number(p) + ": " + format_number(v);
    }
    out += "}";
  }
  return out;
}

FuncExpr parse_expr(std::string_view text) { return Parser(text).parse_full(); }

double eval_expr(const FuncExpr& e, double t) { return e(t); }

std::string print_expr(const FuncExpr& e) { return e.to_string(); }

FuncExpr apply(Op op, const FuncExpr& a) {
  FuncExpr::Overrides ov;
  for (const auto& [p, v] : a.overrides()) ov[p] = apply_unary(op, v, 0.0);
  return FuncExpr(make_node(op, {a.root()}), std::move(ov));
}

FuncExpr apply(Op op, const FuncExpr& a, const FuncExpr& b) {
  std::set<double> points;
  for (const auto& kv : a.overrides()) points.insert(kv.first);
  for (const auto& kv : b.overrides()) points.insert(kv.first);
  FuncExpr::Overrides ov;
  for (double p : points) ov[p] = apply_binary(op, a(p), b(p));
  return FuncExpr(make_node(op, {a.root(), b.root()}), std::move(ov));
}

FuncExpr power(const FuncExpr& a, double exponent) {
  FuncExpr::Overrides ov;
  for (const auto& [p, v] : a.overrides()) ov[p] = ereal::pow(v, exponent);
  return FuncExpr(make_node(Op::pow, {a.root()}, exponent), std::move(ov));
}

FuncExpr scale(double c, const FuncExpr& f) { return apply(Op::mul, FuncExpr::constant(c), f); }

FuncExpr piecewise(const std::vector<FuncExpr>& pieces, const std::vector<double>& breaks) {
  if (pieces.size() != breaks.size() + 1) throw std::invalid_argument("piecewise: need one more piece than breaks");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i - 1] < breaks[i])) throw std::invalid_argument("piecewise: breaks must increase");
  if (pieces.size() == 1) return pieces.front();
  std::vector<NodePtr> roots;
  FuncExpr::Overrides ov;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    roots.push_back(pieces[i].root());
    for (const auto& [p, v] : pieces[i].overrides())
      if (piece_index(breaks, p) == i) ov[p] = v;
  }
  return FuncExpr(make_node(Op::piecewise, std::move(roots), 0.0, breaks), std::move(ov));
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace wapprox
