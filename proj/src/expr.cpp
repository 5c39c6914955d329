#include "rootcert/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>

namespace rootcert {

namespace {

NodePtr mk(Node n) { return std::make_shared<const Node>(std::move(n)); }

NodePtr mk_const(double v) { return mk(Node{Node::Constant{v}}); }
NodePtr mk_var() { return mk(Node{Node::Variable{}}); }
NodePtr mk_unary(UnaryOp op, NodePtr c) {
  return mk(Node{Node::Unary{op, std::move(c)}});
}
NodePtr mk_binary(BinaryOp op, NodePtr l, NodePtr r) {
  return mk(Node{Node::Binary{op, std::move(l), std::move(r)}});
}

bool contains_variable(const NodePtr& n) {
  return std::visit(
      [](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Node::Constant>) {
          return false;
        } else if constexpr (std::is_same_v<T, Node::Variable>) {
          return true;
        } else if constexpr (std::is_same_v<T, Node::Unary>) {
          return contains_variable(node.child);
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          return contains_variable(node.left) || contains_variable(node.right);
        } else {
          for (const auto& [g, b] : node.cases)
            if (contains_variable(b)) return true;
          return contains_variable(node.otherwise);
        }
      },
      n->v);
}

std::optional<double> as_constant(const NodePtr& n);

double eval_const(const NodePtr& n);

// ---------------------------------------------------------------- parsing

struct Parser {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c))
      throw SyntaxError(std::string("expected '") + c + "'", pos);
  }

  NodePtr parse_full() {
    NodePtr e = parse_expr();
    if (!at_end()) throw SyntaxError("unexpected trailing input", pos);
    return e;
  }

  NodePtr parse_expr() {
    NodePtr left = parse_term();
    for (;;) {
      if (eat('+')) {
        left = mk_binary(BinaryOp::Add, left, parse_term());
      } else if (eat('-')) {
        left = mk_binary(BinaryOp::Sub, left, parse_term());
      } else {
        return left;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr left = parse_pow();
    for (;;) {
      if (eat('*')) {
        left = mk_binary(BinaryOp::Mul, left, parse_pow());
      } else if (eat('/')) {
        left = mk_binary(BinaryOp::Div, left, parse_pow());
      } else {
        return left;
      }
    }
  }

  // right-associative; exponents must be constant
  NodePtr parse_pow() {
    NodePtr base = parse_factor();
    skip_ws();
    if (eat('^')) {
      std::size_t exp_off = pos;
      NodePtr exp = parse_pow();
      if (contains_variable(exp)) throw NonConstantExponentError(exp_off);
      return mk_binary(BinaryOp::Pow, base, exp);
    }
    return base;
  }

  // unary minus binds tighter than '^'; a negated literal is just a
  // negative constant, which keeps format/parse round trips stable
  NodePtr parse_factor() {
    if (eat('-')) {
      NodePtr inner = parse_factor();
      if (const auto* c = std::get_if<Node::Constant>(&inner->v))
        return mk_const(-c->value);
      return mk_unary(UnaryOp::Neg, inner);
    }
    return parse_atom();
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos >= s.size()) throw SyntaxError("unexpected end of input", pos);
    char c = s[pos];
    if (c == '(') {
      ++pos;
      NodePtr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_ident();
    throw SyntaxError("unexpected character", pos);
  }

  NodePtr parse_number() {
    const char* begin = s.data() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw SyntaxError("malformed number", pos);
    pos += static_cast<std::size_t>(end - begin);
    if (!std::isfinite(v)) throw SyntaxError("number out of range", pos);
    return mk_const(v);
  }

  NodePtr parse_ident() {
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    std::string name(s.substr(start, pos - start));
    if (name == "x") return mk_var();
    if (name == "if") return parse_piecewise(start);
    static const std::pair<const char*, UnaryOp> funcs[] = {
        {"sin", UnaryOp::Sin}, {"cos", UnaryOp::Cos},   {"tan", UnaryOp::Tan},
        {"exp", UnaryOp::Exp}, {"log", UnaryOp::Log},   {"sqrt", UnaryOp::Sqrt},
        {"abs", UnaryOp::Abs}};
    for (const auto& [fname, op] : funcs) {
      if (name == fname) {
        expect('(');
        NodePtr arg = parse_expr();
        expect(')');
        return mk_unary(op, arg);
      }
    }
    throw MultipleVariablesError(name, start);
  }

  NodePtr parse_piecewise(std::size_t start) {
    (void)start;
    expect('(');
    Guard g = parse_guard();
    expect(',');
    NodePtr branch = parse_expr();
    expect(',');
    NodePtr rest = parse_expr();
    expect(')');
    Node::Piecewise pw;
    pw.cases.emplace_back(g, std::move(branch));
    if (const auto* inner = std::get_if<Node::Piecewise>(&rest->v)) {
      for (const auto& cs : inner->cases) pw.cases.push_back(cs);
      pw.otherwise = inner->otherwise;
    } else {
      pw.otherwise = std::move(rest);
    }
    return mk(Node{std::move(pw)});
  }

  Guard parse_guard() {
    skip_ws();
    std::size_t var_off = pos;
    if (pos >= s.size() || s[pos] != 'x')
      throw SyntaxError("piecewise guard must compare the variable 'x'", pos);
    ++pos;
    if (pos < s.size() &&
        (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      throw SyntaxError("piecewise guard must compare the variable 'x'",
                        var_off);
    skip_ws();
    CmpOp op;
    if (eat('<')) {
      op = eat('=') ? CmpOp::Le : CmpOp::Lt;
    } else if (eat('>')) {
      op = eat('=') ? CmpOp::Ge : CmpOp::Gt;
    } else {
      throw SyntaxError("expected comparison operator in guard", pos);
    }
    std::size_t thr_off = pos;
    NodePtr thr = parse_expr();
    if (contains_variable(thr))
      throw SyntaxError("guard threshold must be constant", thr_off);
    return Guard{op, eval_const(thr)};
  }
};

// ---------------------------------------------------------------- printing

int node_prec(const NodePtr& n) {
  if (const auto* b = std::get_if<Node::Binary>(&n->v)) {
    switch (b->op) {
      case BinaryOp::Add:
      case BinaryOp::Sub:
        return 1;
      case BinaryOp::Mul:
      case BinaryOp::Div:
        return 2;
      case BinaryOp::Pow:
        return 3;
    }
  }
  if (const auto* u = std::get_if<Node::Unary>(&n->v)) {
    if (u->op == UnaryOp::Neg) return 4;
  }
  return 5;
}

std::string fmt_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void fmt_node(const NodePtr& n, std::string& out);

void fmt_child(const NodePtr& n, int min_prec, std::string& out) {
  bool parens = node_prec(n) < min_prec;
  if (parens) out += '(';
  fmt_node(n, out);
  if (parens) out += ')';
}

const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

void fmt_node(const NodePtr& n, std::string& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Node::Constant>) {
          out += fmt_number(node.value);
        } else if constexpr (std::is_same_v<T, Node::Variable>) {
          out += 'x';
        } else if constexpr (std::is_same_v<T, Node::Unary>) {
          switch (node.op) {
            case UnaryOp::Neg:
              out += '-';
              fmt_child(node.child, 4, out);
              return;
            case UnaryOp::Sin: out += "sin"; break;
            case UnaryOp::Cos: out += "cos"; break;
            case UnaryOp::Tan: out += "tan"; break;
            case UnaryOp::Exp: out += "exp"; break;
            case UnaryOp::Log: out += "log"; break;
            case UnaryOp::Sqrt: out += "sqrt"; break;
            case UnaryOp::Abs: out += "abs"; break;
          }
          out += '(';
          fmt_node(node.child, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          switch (node.op) {
            case BinaryOp::Add:
              fmt_child(node.left, 1, out);
              out += '+';
              fmt_child(node.right, 2, out);
              break;
            case BinaryOp::Sub:
              fmt_child(node.left, 1, out);
              out += '-';
              fmt_child(node.right, 2, out);
              break;
            case BinaryOp::Mul:
              fmt_child(node.left, 2, out);
              out += '*';
              fmt_child(node.right, 3, out);
              break;
            case BinaryOp::Div:
              fmt_child(node.left, 2, out);
              out += '/';
              fmt_child(node.right, 3, out);
              break;
            case BinaryOp::Pow:
              fmt_child(node.left, 4, out);
              out += '^';
              fmt_child(node.right, 3, out);
              break;
          }
        } else {
          // nested if-form: if(g0, e0, if(g1, e1, ..., else))
          for (std::size_t i = 0; i < node.cases.size(); ++i) {
            const auto& [g, branch] = node.cases[i];
            out += "if(x";
            out += cmp_text(g.op);
            out += fmt_number(g.threshold);
            out += ", ";
            fmt_node(branch, out);
            out += ", ";
          }
          fmt_node(node.otherwise, out);
          for (std::size_t i = 0; i < node.cases.size(); ++i) out += ')';
        }
      },
      n->v);
}

// ---------------------------------------------------------------- evaluation

bool is_small_integer(double p, long long& n) {
  if (p != std::floor(p) || std::abs(p) > 1024.0) return false;
  n = static_cast<long long>(p);
  return true;
}

template <class T>
double scalar_of(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return v;
  } else {
    return v.value;
  }
}

template <class T>
T eval_node(const NodePtr& n, double x) {
  return std::visit(
      [&](const auto& node) -> T {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, Node::Constant>) {
          if constexpr (std::is_same_v<T, double>) {
            return node.value;
          } else {
            return Jet2::constant(node.value);
          }
        } else if constexpr (std::is_same_v<N, Node::Variable>) {
          if constexpr (std::is_same_v<T, double>) {
            return x;
          } else {
            return Jet2::variable(x);
          }
        } else if constexpr (std::is_same_v<N, Node::Unary>) {
          T u = eval_node<T>(node.child, x);
          if constexpr (std::is_same_v<T, double>) {
            switch (node.op) {
              case UnaryOp::Neg: return -u;
              case UnaryOp::Sin: return std::sin(u);
              case UnaryOp::Cos: return std::cos(u);
              case UnaryOp::Tan:
                if (std::cos(u) == 0.0) throw DomainError("tan at a pole");
                return std::tan(u);
              case UnaryOp::Exp: return std::exp(u);
              case UnaryOp::Log:
                if (u <= 0.0) throw DomainError("log of a non-positive value");
                return std::log(u);
              case UnaryOp::Sqrt:
                if (u < 0.0) throw DomainError("sqrt of a negative value");
                return std::sqrt(u);
              case UnaryOp::Abs: return std::abs(u);
            }
          } else {
            switch (node.op) {
              case UnaryOp::Neg: return -u;
              case UnaryOp::Sin: return jet_sin(u);
              case UnaryOp::Cos: return jet_cos(u);
              case UnaryOp::Tan: return jet_tan(u);
              case UnaryOp::Exp: return jet_exp(u);
              case UnaryOp::Log: return jet_log(u);
              case UnaryOp::Sqrt: return jet_sqrt(u);
              case UnaryOp::Abs: return jet_abs(u);
            }
          }
          throw Error("unreachable");
        } else if constexpr (std::is_same_v<N, Node::Binary>) {
          if (node.op == BinaryOp::Pow) {
            double p = eval_const(node.right);
            T base = eval_node<T>(node.left, x);
            long long ip = 0;
            if (is_small_integer(p, ip)) {
              if (ip < 0 && scalar_of(base) == 0.0)
                throw DomainError("zero to a negative power");
              if constexpr (std::is_same_v<T, double>) {
                double r = 1.0;
                if (ip >= 0) {
                  for (long long i = 0; i < ip; ++i) r *= base;
                } else {
                  for (long long i = 0; i < -ip; ++i) r *= base;
                  r = 1.0 / r;
                }
                return r;
              } else {
                return jet_pow_int(base, ip);
              }
            }
            // non-integer constant exponent: exp(p*log(u)), u > 0
            if (scalar_of(base) <= 0.0)
              throw DomainError(
                  "non-integer power of a non-positive value");
            if constexpr (std::is_same_v<T, double>) {
              return std::exp(p * std::log(base));
            } else {
              return jet_pow_real(base, p);
            }
          }
          T l = eval_node<T>(node.left, x);
          T r = eval_node<T>(node.right, x);
          switch (node.op) {
            case BinaryOp::Add: return l + r;
            case BinaryOp::Sub: return l - r;
            case BinaryOp::Mul: return l * r;
            case BinaryOp::Div:
              if (scalar_of(r) == 0.0) throw DomainError("division by zero");
              return l / r;
            case BinaryOp::Pow: break;  // handled above
          }
          throw Error("unreachable");
        } else {
          for (const auto& [g, branch] : node.cases)
            if (g.holds(x)) return eval_node<T>(branch, x);
          return eval_node<T>(node.otherwise, x);
        }
      },
      n->v);
}

Interval guard_halfline(const Guard& g) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (g.op) {
    case CmpOp::Lt:
    case CmpOp::Le:
      return {-inf, g.threshold};
    case CmpOp::Gt:
    case CmpOp::Ge:
      return {g.threshold, inf};
  }
  throw Error("unreachable");
}

// closed over-approximation of the guard's complement
Interval guard_complement(const Guard& g) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (g.op) {
    case CmpOp::Lt:
    case CmpOp::Le:
      return {g.threshold, inf};
    case CmpOp::Gt:
    case CmpOp::Ge:
      return {-inf, g.threshold};
  }
  throw Error("unreachable");
}

Interval eval_iv(const NodePtr& n, Interval I) {
  return std::visit(
      [&](const auto& node) -> Interval {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, Node::Constant>) {
          return Interval::point(node.value);
        } else if constexpr (std::is_same_v<N, Node::Variable>) {
          return I;
        } else if constexpr (std::is_same_v<N, Node::Unary>) {
          Interval u = eval_iv(node.child, I);
          switch (node.op) {
            case UnaryOp::Neg: return -u;
            case UnaryOp::Sin: return iv_sin(u);
            case UnaryOp::Cos: return iv_cos(u);
            case UnaryOp::Tan: return iv_tan(u);
            case UnaryOp::Exp: return iv_exp(u);
            case UnaryOp::Log: return iv_log(u);
            case UnaryOp::Sqrt: return iv_sqrt(u);
            case UnaryOp::Abs: return iv_abs(u);
          }
          throw Error("unreachable");
        } else if constexpr (std::is_same_v<N, Node::Binary>) {
          if (node.op == BinaryOp::Pow) {
            double p = eval_const(node.right);
            Interval base = eval_iv(node.left, I);
            long long ip = 0;
            if (is_small_integer(p, ip)) return iv_pow_int(base, ip);
            return iv_pow_real(base, p);
          }
          Interval l = eval_iv(node.left, I);
          Interval r = eval_iv(node.right, I);
          switch (node.op) {
            case BinaryOp::Add: return l + r;
            case BinaryOp::Sub: return l - r;
            case BinaryOp::Mul: return l * r;
            case BinaryOp::Div: return l / r;
            case BinaryOp::Pow: break;
          }
          throw Error("unreachable");
        } else {
          // hull over branches restricted to their active subintervals
          std::optional<Interval> result;
          std::optional<Interval> remaining = I;
          for (const auto& [g, branch] : node.cases) {
            if (!remaining) break;
            if (auto active = intersect(*remaining, guard_halfline(g))) {
              Interval b = eval_iv(branch, *active);
              result = result ? hull(*result, b) : b;
            }
            remaining = intersect(*remaining, guard_complement(g));
          }
          if (remaining) {
            Interval b = eval_iv(node.otherwise, *remaining);
            result = result ? hull(*result, b) : b;
          }
          if (!result) throw Error("piecewise with no active branch");
          return *result;
        }
      },
      n->v);
}

double eval_const(const NodePtr& n) { return eval_node<double>(n, 0.0); }

std::optional<double> as_constant(const NodePtr& n) {
  if (const auto* c = std::get_if<Node::Constant>(&n->v)) return c->value;
  return std::nullopt;
}

// ------------------------------------------------------- differentiation

NodePtr s_neg(NodePtr a) {
  if (auto c = as_constant(a)) return mk_const(-*c);
  if (const auto* u = std::get_if<Node::Unary>(&a->v))
    if (u->op == UnaryOp::Neg) return u->child;
  return mk_unary(UnaryOp::Neg, std::move(a));
}

NodePtr s_add(NodePtr a, NodePtr b) {
  auto ca = as_constant(a), cb = as_constant(b);
  if (ca && cb) return mk_const(*ca + *cb);
  if (ca && *ca == 0.0) return b;
  if (cb && *cb == 0.0) return a;
  return mk_binary(BinaryOp::Add, std::move(a), std::move(b));
}

NodePtr s_sub(NodePtr a, NodePtr b) {
  auto ca = as_constant(a), cb = as_constant(b);
  if (ca && cb) return mk_const(*ca - *cb);
  if (cb && *cb == 0.0) return a;
  if (ca && *ca == 0.0) return s_neg(std::move(b));
  return mk_binary(BinaryOp::Sub, std::move(a), std::move(b));
}

NodePtr s_mul(NodePtr a, NodePtr b) {
  auto ca = as_constant(a), cb = as_constant(b);
  if (ca && cb) return mk_const(*ca * *cb);
  if ((ca && *ca == 0.0) || (cb && *cb == 0.0)) return mk_const(0.0);
  if (ca && *ca == 1.0) return b;
  if (cb && *cb == 1.0) return a;
  // fold constants through nested products: c1*(c2*e) -> (c1*c2)*e
  auto fold_nested = [](double c, const NodePtr& other) -> NodePtr {
    const auto* bin = std::get_if<Node::Binary>(&other->v);
    if (!bin || bin->op != BinaryOp::Mul) return nullptr;
    if (auto cl = as_constant(bin->left))
      return s_mul(mk_const(c * *cl), bin->right);
    if (auto cr = as_constant(bin->right))
      return s_mul(mk_const(c * *cr), bin->left);
    return nullptr;
  };
  if (ca)
    if (NodePtr folded = fold_nested(*ca, b)) return folded;
  if (cb)
    if (NodePtr folded = fold_nested(*cb, a)) return folded;
  return mk_binary(BinaryOp::Mul, std::move(a), std::move(b));
}

NodePtr s_div(NodePtr a, NodePtr b) {
  auto ca = as_constant(a), cb = as_constant(b);
  if (cb && *cb == 1.0) return a;
  if (ca && cb && *cb != 0.0) return mk_const(*ca / *cb);
  if (ca && *ca == 0.0) return mk_const(0.0);
  return mk_binary(BinaryOp::Div, std::move(a), std::move(b));
}

NodePtr s_pow(NodePtr a, double p) {
  if (p == 0.0) return mk_const(1.0);
  if (p == 1.0) return a;
  if (auto ca = as_constant(a)) {
    long long ip = 0;
    if (is_small_integer(p, ip) && ip > 0) {
      double r = 1.0;
      for (long long i = 0; i < ip; ++i) r *= *ca;
      return mk_const(r);
    }
  }
  return mk_binary(BinaryOp::Pow, std::move(a), mk_const(p));
}

NodePtr diff_node(const NodePtr& n) {
  return std::visit(
      [&](const auto& node) -> NodePtr {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, Node::Constant>) {
          return mk_const(0.0);
        } else if constexpr (std::is_same_v<N, Node::Variable>) {
          return mk_const(1.0);
        } else if constexpr (std::is_same_v<N, Node::Unary>) {
          NodePtr u = node.child;
          NodePtr du = diff_node(u);
          switch (node.op) {
            case UnaryOp::Neg:
              return s_neg(du);
            case UnaryOp::Sin:
              return s_mul(mk_unary(UnaryOp::Cos, u), du);
            case UnaryOp::Cos:
              return s_neg(s_mul(mk_unary(UnaryOp::Sin, u), du));
            case UnaryOp::Tan:
              return s_div(du, s_pow(mk_unary(UnaryOp::Cos, u), 2.0));
            case UnaryOp::Exp:
              return s_mul(mk_unary(UnaryOp::Exp, u), du);
            case UnaryOp::Log:
              return s_div(du, u);
            case UnaryOp::Sqrt:
              return s_div(du, s_mul(mk_const(2.0), mk_unary(UnaryOp::Sqrt, u)));
            case UnaryOp::Abs:
              // u/|u| is the sign; evaluation at u == 0 divides by zero
              return s_mul(s_div(u, mk_unary(UnaryOp::Abs, u)), du);
          }
          throw Error("unreachable");
        } else if constexpr (std::is_same_v<N, Node::Binary>) {
          NodePtr l = node.left, r = node.right;
          switch (node.op) {
            case BinaryOp::Add:
              return s_add(diff_node(l), diff_node(r));
            case BinaryOp::Sub:
              return s_sub(diff_node(l), diff_node(r));
            case BinaryOp::Mul:
              return s_add(s_mul(diff_node(l), r), s_mul(l, diff_node(r)));
            case BinaryOp::Div:
              return s_div(
                  s_sub(s_mul(diff_node(l), r), s_mul(l, diff_node(r))),
                  s_pow(r, 2.0));
            case BinaryOp::Pow: {
              double p = eval_const(r);
              return s_mul(s_mul(mk_const(p), s_pow(l, p - 1.0)),
                           diff_node(l));
            }
          }
          throw Error("unreachable");
        } else {
          Node::Piecewise pw;
          for (const auto& [g, branch] : node.cases)
            pw.cases.emplace_back(g, diff_node(branch));
          pw.otherwise = diff_node(node.otherwise);
          return mk(Node{std::move(pw)});
        }
      },
      n->v);
}

}  // namespace

bool Guard::holds(double x) const {
  switch (op) {
    case CmpOp::Lt: return x < threshold;
    case CmpOp::Le: return x <= threshold;
    case CmpOp::Gt: return x > threshold;
    case CmpOp::Ge: return x >= threshold;
  }
  return false;
}

Expression Expression::parse(std::string_view text) {
  Parser p{text};
  return Expression(p.parse_full());
}

std::string Expression::format() const {
  std::string out;
  fmt_node(root_, out);
  return out;
}

double Expression::eval(double x) const {
  double v = eval_node<double>(root_, x);
  if (!std::isfinite(v)) throw DomainError("non-finite result");
  return v;
}

Jet2 Expression::eval_jet2(double x) const {
  Jet2 j = eval_node<Jet2>(root_, x);
  if (!std::isfinite(j.value) || !std::isfinite(j.d1) || !std::isfinite(j.d2))
    throw DomainError("non-finite jet component");
  return j;
}

namespace {

bool contains_piecewise(const NodePtr& n) {
  return std::visit(
      [](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Node::Unary>) {
          return contains_piecewise(node.child);
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          return contains_piecewise(node.left) ||
                 contains_piecewise(node.right);
        } else if constexpr (std::is_same_v<T, Node::Piecewise>) {
          return true;
        } else {
          return false;
        }
      },
      n->v);
}

}  // namespace

Interval Expression::eval_interval(Interval domain) const {
  Interval natural = eval_iv(root_, domain);
  if (domain.is_point() || contains_piecewise(root_)) return natural;
  // monotonicity refinement: when the derivative enclosure excludes zero the
  // range is spanned by the endpoint values
  try {
    Interval deriv = eval_iv(diff_node(root_), domain);
    if (deriv.lo > 0.0 || deriv.hi < 0.0) {
      Interval at_lo = eval_iv(root_, Interval::point(domain.lo));
      Interval at_hi = eval_iv(root_, Interval::point(domain.hi));
      Interval h = hull(at_lo, at_hi);
      Interval tight{step_down(h.lo), step_up(h.hi)};
      if (auto refined = intersect(natural, tight)) return *refined;
    }
  } catch (const Error&) {
    // derivative not evaluable here; keep the natural extension
  }
  return natural;
}

Expression Expression::differentiate() const {
  return Expression(diff_node(root_));
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (a->v.index() != b->v.index()) return false;
  if (const auto* ca = std::get_if<Node::Constant>(&a->v)) {
    const auto& cb = std::get<Node::Constant>(b->v);
    return ca->value == cb.value ||
           (std::isnan(ca->value) && std::isnan(cb.value));
  }
  if (std::holds_alternative<Node::Variable>(a->v)) return true;
  if (const auto* ua = std::get_if<Node::Unary>(&a->v)) {
    const auto& ub = std::get<Node::Unary>(b->v);
    return ua->op == ub.op && structurally_equal(ua->child, ub.child);
  }
  if (const auto* ba = std::get_if<Node::Binary>(&a->v)) {
    const auto& bb = std::get<Node::Binary>(b->v);
    return ba->op == bb.op && structurally_equal(ba->left, bb.left) &&
           structurally_equal(ba->right, bb.right);
  }
  const auto& pa = std::get<Node::Piecewise>(a->v);
  const auto& pb = std::get<Node::Piecewise>(b->v);
  if (pa.cases.size() != pb.cases.size()) return false;
  for (std::size_t i = 0; i < pa.cases.size(); ++i) {
    if (pa.cases[i].first.op != pb.cases[i].first.op ||
        pa.cases[i].first.threshold != pb.cases[i].first.threshold ||
        !structurally_equal(pa.cases[i].second, pb.cases[i].second))
      return false;
  }
  return structurally_equal(pa.otherwise, pb.otherwise);
}

Expression make_constant(double v) { return Expression(mk_const(v)); }
Expression make_variable() { return Expression(mk_var()); }
Expression make_unary(UnaryOp op, const Expression& a) {
  return Expression(mk_unary(op, a.root()));
}
Expression make_binary(BinaryOp op, const Expression& a, const Expression& b) {
  return Expression(mk_binary(op, a.root(), b.root()));
}

}  // namespace rootcert
