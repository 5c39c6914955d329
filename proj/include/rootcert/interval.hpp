#pragma once

#include <optional>

#include "rootcert/errors.hpp"

namespace rootcert {

// Closed interval [lo, hi]. Arithmetic widens each endpoint one ulp outward
// after round-to-nearest evaluation, so results enclose the exact real range
// of the operation over the operands.
struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_);
  static Interval point(double v) { return Interval(v, v); }

  double width() const { return hi - lo; }
  double mid() const;
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  bool is_point() const { return lo == hi; }
};

// Next representable double toward -inf / +inf.
double step_down(double v);
double step_up(double v);

Interval operator+(Interval a, Interval b);
Interval operator-(Interval a, Interval b);
Interval operator-(Interval a);
Interval operator*(Interval a, Interval b);
Interval operator/(Interval a, Interval b);  // throws DomainError if 0 in b

Interval iv_sin(Interval a);
Interval iv_cos(Interval a);
Interval iv_tan(Interval a);  // throws DomainError if a straddles a pole
Interval iv_exp(Interval a);
Interval iv_log(Interval a);   // requires a.lo > 0
Interval iv_sqrt(Interval a);  // requires a.lo >= 0
Interval iv_abs(Interval a);

// x^n with the dependency handled exactly (even powers stay nonnegative).
Interval iv_pow_int(Interval a, long long n);
// x^p for non-integer constant p, via exp(p*log(x)); requires a.lo > 0.
Interval iv_pow_real(Interval a, double p);

Interval hull(Interval a, Interval b);
std::optional<Interval> intersect(Interval a, Interval b);

}  // namespace rootcert
