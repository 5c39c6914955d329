#include "rootcert/solve.hpp"

#include <algorithm>
#include <cmath>

namespace rootcert {

const char* to_string(Method m) {
  switch (m) {
    case Method::Newton: return "Newton";
    case Method::MeanIterate: return "MeanIterate";
  }
  return "?";
}

const char* to_string(TerminationKind k) {
  switch (k) {
    case TerminationKind::Converged: return "Converged";
    case TerminationKind::MaxIter: return "MaxIter";
    case TerminationKind::DerivativeZero: return "DerivativeZero";
    case TerminationKind::CycleDetected: return "CycleDetected";
    case TerminationKind::LeftDomain: return "LeftDomain";
    case TerminationKind::DomainError: return "DomainError";
    case TerminationKind::Refused: return "Refused";
  }
  return "?";
}

namespace {

void validate(const SolverConfig& cfg) {
  if (cfg.max_iter < 1 || !(cfg.xtol > 0.0) || !(cfg.ftol > 0.0) ||
      !(cfg.cycle_tol > 0.0) || !(cfg.derivative_floor > 0.0) ||
      cfg.cycle_window < 4)
    throw PreconditionError("invalid solver configuration");
}

bool step_small(double prev, double next, double xtol) {
  return std::abs(next - prev) <= xtol * std::max(1.0, std::abs(next));
}

void finish(IterationTrace& t, TerminationKind kind, std::string detail = {}) {
  t.termination.kind = kind;
  t.termination.detail = std::move(detail);
  t.iterations = static_cast<int>(t.iterates.size()) - 1;
  t.final = t.iterates.back();
}

std::span<const double> trailing_window(const std::vector<double>& xs,
                                        int window) {
  std::size_t n = std::min<std::size_t>(xs.size(), static_cast<std::size_t>(window));
  return {xs.data() + (xs.size() - n), n};
}

}  // namespace

double newton_step(const Expression& e, double x, double floor) {
  Jet2 j = e.eval_jet2(x);
  if (std::abs(j.d1) <= floor)
    throw DerivativeZeroError("derivative below floor in Newton step");
  return x - j.value / j.d1;
}

double damped_transform(const Expression& e, double x, double floor) {
  Jet2 j = e.eval_jet2(x);
  if (std::abs(j.d1) <= floor)
    throw DerivativeZeroError("derivative below floor in damped transform");
  return x - (2.0 * j.value) / j.d1;
}

std::optional<std::pair<int, std::vector<double>>> detect_cycle(
    std::span<const double> window, double tol) {
  const std::size_t m = window.size();
  if (m < 4) return std::nullopt;
  auto close = [&](double a, double b) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
  };
  // a stagnating (converging) window is not a cycle
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (close(window[i], window[i + 1])) return std::nullopt;
  for (std::size_t p = 2; p <= m / 2; ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < m; ++i) {
      if (!close(window[i], window[i + p])) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<double> points(window.end() - static_cast<std::ptrdiff_t>(p),
                                 window.end());
      std::sort(points.begin(), points.end());
      return std::make_pair(static_cast<int>(p), std::move(points));
    }
  }
  return std::nullopt;
}

namespace {

// Shared driver for Newton and the mean-iterate map. `advance` returns the
// next iterate, `residual` the convergence residual at a point.
template <class Advance, class Residual>
IterationTrace iterate(Method method, const Expression& e, double x0,
                       const SolverConfig& cfg, std::optional<Interval> domain,
                       Advance advance, Residual residual) {
  validate(cfg);
  if (!std::isfinite(x0)) throw PreconditionError("x0 must be finite");
  if (domain && !domain->contains(x0))
    throw PreconditionError("x0 must lie in the given domain");

  IterationTrace t;
  t.method = method;
  t.x0 = x0;
  t.iterates.push_back(x0);
  try {
    double r0 = residual(x0);
    t.residuals.push_back(r0);
    if (std::abs(r0) <= cfg.ftol) {
      finish(t, TerminationKind::Converged);
      return t;
    }
    while (static_cast<int>(t.iterates.size()) - 1 < cfg.max_iter) {
      double x = t.iterates.back();
      double next;
      try {
        next = advance(x);
      } catch (const DerivativeZeroError& err) {
        finish(t, TerminationKind::DerivativeZero, err.what());
        return t;
      }
      double r = residual(next);
      t.iterates.push_back(next);
      t.residuals.push_back(r);
      if (step_small(x, next, cfg.xtol) && std::abs(r) <= cfg.ftol) {
        finish(t, TerminationKind::Converged);
        return t;
      }
      if (domain && !domain->contains(next)) {
        finish(t, TerminationKind::LeftDomain);
        return t;
      }
      if (auto cyc = detect_cycle(trailing_window(t.iterates, cfg.cycle_window),
                                  cfg.cycle_tol)) {
        finish(t, TerminationKind::CycleDetected);
        t.termination.period = cyc->first;
        t.termination.cycle_points = std::move(cyc->second);
        return t;
      }
    }
    finish(t, TerminationKind::MaxIter);
  } catch (const DomainError& err) {
    finish(t, TerminationKind::DomainError, err.what());
  }
  return t;
}

}  // namespace

IterationTrace newton_solve(const Expression& e, double x0,
                            const SolverConfig& cfg,
                            std::optional<Interval> domain) {
  return iterate(
      Method::Newton, e, x0, cfg, domain,
      [&](double x) { return newton_step(e, x, cfg.derivative_floor); },
      [&](double x) { return e.eval(x); });
}

IterationTrace mean_iterate_solve(const Expression& e, double x0,
                                  const SolverConfig& cfg,
                                  std::optional<Interval> domain) {
  return iterate(
      Method::MeanIterate, e, x0, cfg, domain,
      [&](double x) { return 0.5 * (x + e.eval(x)); },
      [&](double x) { return e.eval(x) - x; });
}

namespace {

int rank(Verdict v) {
  switch (v) {
    case Verdict::Refuted: return 0;
    case Verdict::Unknown: return 1;
    case Verdict::Certified: return 2;
  }
  return 0;
}

IterationTrace refusal_trace(const Expression& e, double x0) {
  IterationTrace t;
  t.method = Method::Newton;
  t.x0 = x0;
  t.iterates.push_back(x0);
  t.residuals.push_back(e.eval(x0));
  t.termination.kind = TerminationKind::Refused;
  t.termination.detail = "no side of the bracket could be certified";
  t.iterations = 0;
  t.final = x0;
  return t;
}

}  // namespace

CertifiedResult certified_solve(const Expression& e, Interval bracket,
                                const SolverConfig& cfg, int budget,
                                double root_tol) {
  RootEnclosure root = isolate_root(e, bracket, root_tol);

  std::optional<Certificate> left, right;
  if (bracket.lo < root.interval.lo)
    left = check_theorem(e, Side::Left, bracket.lo, root, budget);
  if (root.interval.hi < bracket.hi)
    right = check_theorem(e, Side::Right, bracket.hi, root, budget);
  if (!left && !right)
    throw PreconditionError(
        "bracket leaves no room on either side of the root enclosure");

  auto run_side = [&](const Certificate& cert, Side side,
                      bool restrict_domain) {
    double x0 = side == Side::Left ? bracket.lo : bracket.hi;
    std::optional<Interval> dom;
    if (restrict_domain)
      dom = side == Side::Left ? Interval{bracket.lo, root.interval.hi}
                               : Interval{root.interval.lo, bracket.hi};
    return CertifiedResult{cert, newton_solve(e, x0, cfg, dom),
                           !restrict_domain};
  };

  if (left && left->verdict == Verdict::Certified)
    return run_side(*left, Side::Left, true);
  if (right && right->verdict == Verdict::Certified)
    return run_side(*right, Side::Right, true);

  // neither side certified: report the better certificate
  const Certificate* best;
  Side best_side;
  if (!right || (left && rank(left->verdict) >= rank(right->verdict))) {
    best = &*left;
    best_side = Side::Left;
  } else {
    best = &*right;
    best_side = Side::Right;
  }
  if (cfg.advisory) return run_side(*best, best_side, false);
  double x0 = best_side == Side::Left ? bracket.lo : bracket.hi;
  return {*best, refusal_trace(e, x0), false};
}

}  // namespace rootcert
