#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rootcert/certify.hpp"
#include "rootcert/expr.hpp"

namespace rootcert {

struct SolverConfig {
  int max_iter = 100;
  double xtol = 1e-12;   // step test: |x_{n+1}-x_n| <= xtol*max(1,|x_{n+1}|)
  double ftol = 1e-13;   // residual test: |f(x_n)| <= ftol
  int cycle_window = 8;
  double cycle_tol = 1e-10;
  double derivative_floor = 1e-300;
  bool advisory = false;  // let certified_solve iterate without a certificate
};

enum class Method { Newton, MeanIterate };

enum class TerminationKind {
  Converged,
  MaxIter,
  DerivativeZero,
  CycleDetected,
  LeftDomain,
  DomainError,
  Refused
};

const char* to_string(Method m);
const char* to_string(TerminationKind k);

struct Termination {
  TerminationKind kind = TerminationKind::MaxIter;
  int period = 0;                    // CycleDetected only
  std::vector<double> cycle_points;  // CycleDetected only
  std::string detail;
};

struct IterationTrace {
  Method method = Method::Newton;
  double x0 = 0.0;
  std::vector<double> iterates;
  std::vector<double> residuals;  // f(x_n), or e(x_n)-x_n for MeanIterate
  Termination termination;
  int iterations = 0;
  double final = 0.0;
};

// x - f(x)/f'(x); throws DerivativeZeroError when |f'(x)| <= floor.
double newton_step(const Expression& e, double x, double floor);

// F(x) = x - 2f(x)/f'(x); the mean of x and F(x) is the Newton step.
double damped_transform(const Expression& e, double x, double floor);

IterationTrace newton_solve(const Expression& e, double x0,
                            const SolverConfig& cfg,
                            std::optional<Interval> domain = std::nullopt);

// Fixed-point iteration x_{n+1} = (x_n + e(x_n))/2 toward e(x) = x.
IterationTrace mean_iterate_solve(const Expression& e, double x0,
                                  const SolverConfig& cfg,
                                  std::optional<Interval> domain = std::nullopt);

// Smallest period p in [2, window.size()/2] under the relative tolerance,
// or nullopt; never reports a window that is merely stagnating.
std::optional<std::pair<int, std::vector<double>>> detect_cycle(
    std::span<const double> window, double tol);

struct CertifiedResult {
  Certificate certificate;
  IterationTrace trace;
  bool advisory = false;
};

// Isolate the root in `bracket`, certify one side, then run Newton from the
// certified side's outer endpoint restricted to the certified interval.
CertifiedResult certified_solve(const Expression& e, Interval bracket,
                                const SolverConfig& cfg, int budget,
                                double root_tol = 1e-12);

}  // namespace rootcert
