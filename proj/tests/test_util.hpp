#pragma once

#include <cmath>
#include <limits>
#include <random>

#include "rootcert/expr.hpp"

namespace testutil {

inline double ulp_of(double v) {
  double a = std::abs(v);
  double next = std::nextafter(a, std::numeric_limits<double>::infinity());
  double u = next - a;
  return u > 0.0 ? u : std::numeric_limits<double>::denorm_min();
}

// Random expressions over the full grammar, for property tests.
class ExprGen {
 public:
  explicit ExprGen(std::uint64_t seed, bool allow_piecewise = false)
      : rng_(seed), allow_piecewise_(allow_piecewise) {}

  rootcert::Expression gen(int max_depth = 4) {
    return rootcert::Expression(gen_node(max_depth));
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  bool allow_piecewise_;

  rootcert::NodePtr gen_node(int depth) {
    using namespace rootcert;
    if (depth <= 0 || pick(100) < 25) {
      if (pick(2) == 0) return make_variable().root();
      return make_constant(round_3(uniform(-3.0, 3.0))).root();
    }
    int r = pick(allow_piecewise_ ? 20 : 18);
    switch (r) {
      case 0:
      case 1:
        return make_add(wrap(depth), wrap(depth)).root();
      case 2:
      case 3:
        return make_sub(wrap(depth), wrap(depth)).root();
      case 4:
      case 5:
        return make_mul(wrap(depth), wrap(depth)).root();
      case 6:
        return make_binary(BinaryOp::Div, wrap(depth), wrap(depth)).root();
      case 7:
      case 8: {
        double p = static_cast<double>(2 + pick(3));
        return make_binary(BinaryOp::Pow, wrap(depth),
                           make_constant(p))
            .root();
      }
      case 9:
      case 10:
        return make_unary(UnaryOp::Sin, wrap(depth)).root();
      case 11:
      case 12:
        return make_unary(UnaryOp::Cos, wrap(depth)).root();
      case 13:
        return make_unary(UnaryOp::Exp, wrap(depth)).root();
      case 14: {
        // the parser folds a negated literal into one constant, so mirror that
        NodePtr child = gen_node(depth - 1);
        if (const auto* k = std::get_if<Node::Constant>(&child->v))
          return make_constant(-k->value).root();
        return make_unary(UnaryOp::Neg, Expression(child)).root();
      }
      case 15:
        return make_unary(UnaryOp::Log, wrap(depth)).root();
      case 16:
        return make_unary(UnaryOp::Sqrt, wrap(depth)).root();
      case 17:
        return make_unary(UnaryOp::Abs, wrap(depth)).root();
      default: {
        // if(x<=t, a, b)
        Guard g{pick(2) == 0 ? CmpOp::Le : CmpOp::Gt,
                round_3(uniform(-2.0, 2.0))};
        Node::Piecewise pw;
        pw.cases.emplace_back(g, gen_node(depth - 1));
        // the parser flattens an if in the else slot, so flatten here as well
        NodePtr other = gen_node(depth - 1);
        if (const auto* nested = std::get_if<Node::Piecewise>(&other->v)) {
          for (const auto& c : nested->cases) pw.cases.push_back(c);
          pw.otherwise = nested->otherwise;
        } else {
          pw.otherwise = other;
        }
        return std::make_shared<const Node>(Node{std::move(pw)});
      }
    }
  }

  rootcert::Expression wrap(int depth) {
    return rootcert::Expression(gen_node(depth - 1));
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  static double round_3(double v) { return std::round(v * 8.0) / 8.0; }
};

// Bisection fixed-point/root oracle, independent of the library's solvers.
template <class F>
double bisect_oracle(F f, double lo, double hi, double tol) {
  double flo = f(lo);
  while (hi - lo > tol) {
    double m = lo + 0.5 * (hi - lo);
    if (m <= lo || m >= hi) break;
    double fm = f(m);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = m;
      flo = fm;
    } else {
      hi = m;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace testutil
