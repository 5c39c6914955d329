#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootcert/expr.hpp"
#include "rootcert/interval.hpp"

namespace rootcert {

enum class SignRelation { GE0, GT0, LE0, LT0, NE0 };
enum class Verdict { Certified, Refuted, Unknown };
enum class Side { Left, Right };
enum class TheoremId { Theorem1, Theorem2, Lemma1, Lemma2 };

const char* to_string(SignRelation rel);
const char* to_string(Verdict v);
const char* to_string(TheoremId t);

struct SignReport {
  Verdict verdict = Verdict::Unknown;
  std::optional<double> witness;  // point violating the relation when Refuted
  int leaves_used = 0;
};

// Adaptive bisection over I: interval enclosures prove the relation,
// point samples refute it, budget bounds the leaf count.
SignReport verify_sign(const Expression& e, Interval I, SignRelation rel,
                       int budget);

struct RootEnclosure {
  Interval interval;
  int sign_left;   // sign of f at interval.lo
  int sign_right;  // sign of f at interval.hi
  double width() const { return interval.width(); }
};

// Bisection on a strict sign change down to width <= tol.
RootEnclosure isolate_root(const Expression& e, Interval search, double tol);

struct Condition {
  std::string name;
  SignRelation relation;
  Verdict verdict = Verdict::Unknown;
  std::optional<double> witness;
};

struct Certificate {
  TheoremId theorem;
  Interval interval;  // full claimed interval including the blind spot
  RootEnclosure root;
  Verdict verdict = Verdict::Unknown;
  std::vector<Condition> conditions;
  int effort = 0;  // total subdivision leaves across conditions
  double blind_spot_width = 0.0;

  Certificate(TheoremId t, Interval iv, RootEnclosure r)
      : theorem(t), interval(iv), root(r) {}
};

// Hypotheses of the one-sided Newton convergence theorems, verified on the
// closed interval between `outer` and the near edge of the root enclosure:
//   C1: f*f'' >= 0   C2: f*f' < 0 (Left) / > 0 (Right)
//   C3: f' != 0      C4: f != 0 (uniqueness outside the enclosure)
Certificate check_theorem(const Expression& e, Side side, double outer,
                          const RootEnclosure& root, int budget);

// Hypotheses of the mean-iterate fixed-point lemmas:
//   L1: f' >= -1     L2: f(x)-x > 0 (Left) / < 0 (Right)
//   L3: f(x)-x != 0 outside the enclosure
Certificate check_lemma_conditions(const Expression& e, Side side, double outer,
                                   const RootEnclosure& fixed_point,
                                   int budget);

}  // namespace rootcert
