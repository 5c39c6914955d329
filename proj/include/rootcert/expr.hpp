#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rootcert/errors.hpp"
#include "rootcert/interval.hpp"
#include "rootcert/jet.hpp"

namespace rootcert {

enum class UnaryOp { Neg, Sin, Cos, Tan, Exp, Log, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class CmpOp { Lt, Le, Gt, Ge };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Guard of a piecewise case: `x <op> threshold`.
struct Guard {
  CmpOp op;
  double threshold;

  bool holds(double x) const;
};

struct Node {
  struct Constant {
    double value;
  };
  struct Variable {};
  struct Unary {
    UnaryOp op;
    NodePtr child;
  };
  struct Binary {
    BinaryOp op;
    NodePtr left;
    NodePtr right;
  };
  struct Piecewise {
    std::vector<std::pair<Guard, NodePtr>> cases;
    NodePtr otherwise;
  };

  std::variant<Constant, Variable, Unary, Binary, Piecewise> v;
};

// Immutable single-variable expression. All evaluation entry points are pure
// and safe to call concurrently on a shared instance.
class Expression {
 public:
  // Infix grammar: `x`, decimal/scientific numbers, + - * / ^,
  // sin cos tan exp log sqrt abs, and `if(x<=C, e1, e2)`.
  static Expression parse(std::string_view text);

  std::string format() const;

  double eval(double x) const;
  Jet2 eval_jet2(double x) const;
  Interval eval_interval(Interval domain) const;

  // Symbolic derivative with constant folding and 0/1 simplification.
  Expression differentiate() const;

  const NodePtr& root() const { return root_; }

  explicit Expression(NodePtr root) : root_(std::move(root)) {}

 private:
  NodePtr root_;
};

bool structurally_equal(const NodePtr& a, const NodePtr& b);

// Builders, used to assemble hypothesis expressions like f*f''.
Expression make_constant(double v);
Expression make_variable();
Expression make_unary(UnaryOp op, const Expression& a);
Expression make_binary(BinaryOp op, const Expression& a, const Expression& b);
inline Expression make_add(const Expression& a, const Expression& b) {
  return make_binary(BinaryOp::Add, a, b);
}
inline Expression make_sub(const Expression& a, const Expression& b) {
  return make_binary(BinaryOp::Sub, a, b);
}
inline Expression make_mul(const Expression& a, const Expression& b) {
  return make_binary(BinaryOp::Mul, a, b);
}

}  // namespace rootcert
