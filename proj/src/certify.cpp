#include "rootcert/certify.hpp"

#include <algorithm>
#include <cmath>

namespace rootcert {

const char* to_string(SignRelation rel) {
  switch (rel) {
    case SignRelation::GE0: return "GE0";
    case SignRelation::GT0: return "GT0";
    case SignRelation::LE0: return "LE0";
    case SignRelation::LT0: return "LT0";
    case SignRelation::NE0: return "NE0";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Refuted: return "Refuted";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(TheoremId t) {
  switch (t) {
    case TheoremId::Theorem1: return "Theorem1";
    case TheoremId::Theorem2: return "Theorem2";
    case TheoremId::Lemma1: return "Lemma1";
    case TheoremId::Lemma2: return "Lemma2";
  }
  return "?";
}

namespace {

bool enclosure_proves(Interval enc, SignRelation rel) {
  switch (rel) {
    case SignRelation::GE0: return enc.lo >= 0.0;
    case SignRelation::GT0: return enc.lo > 0.0;
    case SignRelation::LE0: return enc.hi <= 0.0;
    case SignRelation::LT0: return enc.hi < 0.0;
    case SignRelation::NE0: return enc.lo > 0.0 || enc.hi < 0.0;
  }
  return false;
}

bool value_refutes(double v, SignRelation rel) {
  switch (rel) {
    case SignRelation::GE0: return v < 0.0;
    case SignRelation::GT0: return v <= 0.0;
    case SignRelation::LE0: return v > 0.0;
    case SignRelation::LT0: return v >= 0.0;
    case SignRelation::NE0: return v == 0.0;
  }
  return false;
}

struct Leaf {
  Interval dom;
  Interval enc;
};

}  // namespace

SignReport verify_sign(const Expression& e, Interval I, SignRelation rel,
                       int budget) {
  if (budget < 1) throw PreconditionError("verify_sign: budget must be >= 1");
  SignReport report;
  std::vector<Leaf> undecided;
  int leaves = 0;

  auto process = [&](Interval dom) -> bool {
    ++leaves;
    Interval enc = e.eval_interval(dom);
    if (enclosure_proves(enc, rel)) return false;
    // midpoint first: interior witnesses are the most useful ones
    const double samples[3] = {dom.mid(), dom.lo, dom.hi};
    for (double x : samples) {
      if (value_refutes(e.eval(x), rel)) {
        report.verdict = Verdict::Refuted;
        report.witness = x;
        return true;
      }
    }
    undecided.push_back({dom, enc});
    return false;
  };

  if (process(I)) {
    report.leaves_used = leaves;
    return report;
  }

  while (!undecided.empty() && leaves < budget) {
    // split the undecided leaf with the widest enclosure; ties go to the
    // leftmost domain, keeping refinement deterministic
    std::size_t worst = 0;
    for (std::size_t i = 1; i < undecided.size(); ++i) {
      double wi = undecided[i].enc.width();
      double ww = undecided[worst].enc.width();
      if (wi > ww || (wi == ww && undecided[i].dom.lo < undecided[worst].dom.lo))
        worst = i;
    }
    Interval dom = undecided[worst].dom;
    double m = dom.mid();
    if (m <= dom.lo || m >= dom.hi) break;  // cannot split further
    undecided.erase(undecided.begin() + static_cast<std::ptrdiff_t>(worst));
    if (process({dom.lo, m}) || process({m, dom.hi})) {
      report.leaves_used = leaves;
      return report;
    }
  }

  report.verdict = undecided.empty() ? Verdict::Certified : Verdict::Unknown;
  report.leaves_used = leaves;
  return report;
}

RootEnclosure isolate_root(const Expression& e, Interval search, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("isolate_root: tol must be > 0");
  double lo = search.lo, hi = search.hi;
  double flo = e.eval(lo), fhi = e.eval(hi);
  if (flo == 0.0 || fhi == 0.0 || (flo < 0.0) == (fhi < 0.0))
    throw NoSignChangeError("no strict sign change over the search interval");

  auto make = [&](double a, double b, double fa, double fb) -> RootEnclosure {
    return {Interval{a, b}, fa > 0.0 ? 1 : -1, fb > 0.0 ? 1 : -1};
  };

  while (hi - lo > tol) {
    double m = lo + 0.5 * (hi - lo);
    if (m <= lo || m >= hi) break;
    double fm = e.eval(m);
    if (fm == 0.0) {
      // exact hit: shrink to the neighboring representables
      double a = step_down(m), b = step_up(m);
      double fa = e.eval(a), fb = e.eval(b);
      if (fa != 0.0 && fb != 0.0 && (fa < 0.0) != (fb < 0.0))
        return make(a, b, fa, fb);
      // flat neighborhood; fall back to keeping the left half
      hi = m + (b - m);
      fhi = fb != 0.0 ? fb : fhi;
      break;
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = m;
      flo = fm;
    } else {
      hi = m;
      fhi = fm;
    }
  }
  return make(lo, hi, flo, fhi);
}

namespace {

Certificate run_conditions(const Expression& e, TheoremId theorem,
                           Interval claim, const RootEnclosure& root,
                           Interval check,
                           std::vector<std::pair<std::pair<std::string, SignRelation>,
                                                 Expression>> specs,
                           int budget) {
  Certificate cert(theorem, claim, root);
  cert.blind_spot_width = root.width();
  bool any_refuted = false, any_unknown = false;
  for (auto& [head, expr] : specs) {
    SignReport r = verify_sign(expr, check, head.second, budget);
    cert.effort += r.leaves_used;
    cert.conditions.push_back({head.first, head.second, r.verdict, r.witness});
    any_refuted |= r.verdict == Verdict::Refuted;
    any_unknown |= r.verdict == Verdict::Unknown;
  }
  cert.verdict = any_refuted ? Verdict::Refuted
                 : any_unknown ? Verdict::Unknown
                               : Verdict::Certified;
  return cert;
}

}  // namespace

Certificate check_theorem(const Expression& e, Side side, double outer,
                          const RootEnclosure& root, int budget) {
  if (side == Side::Left && !(outer < root.interval.lo))
    throw PreconditionError("check_theorem: outer must lie left of the root");
  if (side == Side::Right && !(root.interval.hi < outer))
    throw PreconditionError("check_theorem: outer must lie right of the root");

  Interval check = side == Side::Left
                       ? Interval{outer, root.interval.lo}
                       : Interval{root.interval.hi, outer};
  Interval claim = side == Side::Left ? Interval{outer, root.interval.hi}
                                      : Interval{root.interval.lo, outer};

  Expression fp = e.differentiate();
  Expression fpp = fp.differentiate();
  SignRelation c2_rel =
      side == Side::Left ? SignRelation::LT0 : SignRelation::GT0;

  std::vector<std::pair<std::pair<std::string, SignRelation>, Expression>> specs;
  specs.emplace_back(std::make_pair("C1", SignRelation::GE0), make_mul(e, fpp));
  specs.emplace_back(std::make_pair("C2", c2_rel), make_mul(e, fp));
  specs.emplace_back(std::make_pair("C3", SignRelation::NE0), fp);
  specs.emplace_back(std::make_pair("C4", SignRelation::NE0), e);

  return run_conditions(
      e, side == Side::Left ? TheoremId::Theorem1 : TheoremId::Theorem2, claim,
      root, check, std::move(specs), budget);
}

Certificate check_lemma_conditions(const Expression& e, Side side, double outer,
                                   const RootEnclosure& fixed_point,
                                   int budget) {
  if (side == Side::Left && !(outer < fixed_point.interval.lo))
    throw PreconditionError(
        "check_lemma_conditions: outer must lie left of the fixed point");
  if (side == Side::Right && !(fixed_point.interval.hi < outer))
    throw PreconditionError(
        "check_lemma_conditions: outer must lie right of the fixed point");

  Interval check = side == Side::Left
                       ? Interval{outer, fixed_point.interval.lo}
                       : Interval{fixed_point.interval.hi, outer};
  Interval claim = side == Side::Left
                       ? Interval{outer, fixed_point.interval.hi}
                       : Interval{fixed_point.interval.lo, outer};

  Expression fp = e.differentiate();
  Expression residual = make_sub(e, make_variable());
  SignRelation l2_rel =
      side == Side::Left ? SignRelation::GT0 : SignRelation::LT0;

  std::vector<std::pair<std::pair<std::string, SignRelation>, Expression>> specs;
  specs.emplace_back(std::make_pair("L1", SignRelation::GE0),
                     make_add(fp, make_constant(1.0)));
  specs.emplace_back(std::make_pair("L2", l2_rel), residual);
  specs.emplace_back(std::make_pair("L3", SignRelation::NE0), residual);

  return run_conditions(
      e, side == Side::Left ? TheoremId::Lemma1 : TheoremId::Lemma2, claim,
      fixed_point, check, std::move(specs), budget);
}

}  // namespace rootcert
