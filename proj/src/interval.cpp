#include "rootcert/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rootcert {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

bool bad(double v) { return std::isnan(v); }

double add_down(double a, double b) { return step_down(a + b); }
double add_up(double a, double b) { return step_up(a + b); }
double sub_down(double a, double b) { return step_down(a - b); }
double sub_up(double a, double b) { return step_up(a - b); }
double mul_down(double a, double b) { return step_down(a * b); }
double mul_up(double a, double b) { return step_up(a * b); }

void check_finite(Interval a, const char* what) {
  if (!std::isfinite(a.lo) || !std::isfinite(a.hi))
    throw DomainError(std::string(what) + ": non-finite interval endpoint");
}

// Does [lo, hi] contain a point t with t == offset + k*step for integer k?
bool contains_grid_point(double lo, double hi, double offset, double step) {
  double k = std::ceil((lo - offset) / step);
  double t = offset + k * step;
  // one step of slop each way against rounding in the division
  for (int i = -1; i <= 1; ++i) {
    double ti = offset + (k + i) * step;
    if (ti >= lo && ti <= hi) return true;
  }
  (void)t;
  return false;
}

// Endpoint powers with directed rounding; base must be >= 0 so every
// intermediate stays nonnegative and the stepping direction is monotone.
double pos_pow_down(double x, long long n) {
  double r = 1.0;
  for (long long i = 0; i < n; ++i) r = std::max(0.0, step_down(r * x));
  return r;
}
double pos_pow_up(double x, long long n) {
  double r = 1.0;
  for (long long i = 0; i < n; ++i) r = step_up(r * x);
  return r;
}
double signed_pow_down(double x, long long n) {
  return x >= 0.0 ? pos_pow_down(x, n) : -pos_pow_up(-x, n);
}
double signed_pow_up(double x, long long n) {
  return x >= 0.0 ? pos_pow_up(x, n) : -pos_pow_down(-x, n);
}

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (bad(lo) || bad(hi) || lo > hi)
    throw PreconditionError("invalid interval endpoints");
}

double Interval::mid() const {
  double m = lo + 0.5 * (hi - lo);
  if (m < lo) m = lo;
  if (m > hi) m = hi;
  return m;
}

double step_down(double v) {
  return std::nextafter(v, -std::numeric_limits<double>::infinity());
}

double step_up(double v) {
  return std::nextafter(v, std::numeric_limits<double>::infinity());
}

Interval operator+(Interval a, Interval b) {
  check_finite(a, "add");
  check_finite(b, "add");
  return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)};
}

Interval operator-(Interval a, Interval b) {
  check_finite(a, "sub");
  check_finite(b, "sub");
  return {sub_down(a.lo, b.hi), sub_up(a.hi, b.lo)};
}

Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

Interval operator*(Interval a, Interval b) {
  check_finite(a, "mul");
  check_finite(b, "mul");
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  double lo = std::min(std::min(p1, p2), std::min(p3, p4));
  double hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return {step_down(lo), step_up(hi)};
}

Interval operator/(Interval a, Interval b) {
  check_finite(a, "div");
  check_finite(b, "div");
  if (b.contains_zero()) throw DomainError("division by an interval containing zero");
  const double q1 = a.lo / b.lo, q2 = a.lo / b.hi;
  const double q3 = a.hi / b.lo, q4 = a.hi / b.hi;
  double lo = std::min(std::min(q1, q2), std::min(q3, q4));
  double hi = std::max(std::max(q1, q2), std::max(q3, q4));
  return {step_down(lo), step_up(hi)};
}

Interval iv_sin(Interval a) {
  check_finite(a, "sin");
  if (a.width() >= kTwoPi) return {-1.0, 1.0};
  double lo, hi;
  // maxima of sin at pi/2 + 2k*pi, minima at -pi/2 + 2k*pi
  if (contains_grid_point(a.lo, a.hi, kPi / 2.0, kTwoPi)) {
    hi = 1.0;
  } else {
    hi = std::min(1.0, step_up(std::max(std::sin(a.lo), std::sin(a.hi))));
  }
  if (contains_grid_point(a.lo, a.hi, -kPi / 2.0, kTwoPi)) {
    lo = -1.0;
  } else {
    lo = std::max(-1.0, step_down(std::min(std::sin(a.lo), std::sin(a.hi))));
  }
  return {lo, hi};
}

Interval iv_cos(Interval a) {
  check_finite(a, "cos");
  if (a.width() >= kTwoPi) return {-1.0, 1.0};
  double lo, hi;
  if (contains_grid_point(a.lo, a.hi, 0.0, kTwoPi)) {
    hi = 1.0;
  } else {
    hi = std::min(1.0, step_up(std::max(std::cos(a.lo), std::cos(a.hi))));
  }
  if (contains_grid_point(a.lo, a.hi, kPi, kTwoPi)) {
    lo = -1.0;
  } else {
    lo = std::max(-1.0, step_down(std::min(std::cos(a.lo), std::cos(a.hi))));
  }
  return {lo, hi};
}

Interval iv_tan(Interval a) {
  check_finite(a, "tan");
  if (a.width() >= kPi || contains_grid_point(a.lo, a.hi, kPi / 2.0, kPi))
    throw DomainError("tan over an interval containing a pole");
  // monotone increasing between poles
  return {step_down(std::tan(a.lo)), step_up(std::tan(a.hi))};
}

Interval iv_exp(Interval a) {
  check_finite(a, "exp");
  double lo = std::max(0.0, step_down(std::exp(a.lo)));
  double hi = step_up(std::exp(a.hi));
  if (!std::isfinite(hi)) throw DomainError("exp overflow in interval evaluation");
  return {lo, hi};
}

Interval iv_log(Interval a) {
  check_finite(a, "log");
  if (a.lo <= 0.0) throw DomainError("log of a non-positive interval");
  return {step_down(std::log(a.lo)), step_up(std::log(a.hi))};
}

Interval iv_sqrt(Interval a) {
  check_finite(a, "sqrt");
  if (a.lo < 0.0) throw DomainError("sqrt of a negative interval");
  double lo = std::max(0.0, step_down(std::sqrt(a.lo)));
  return {lo, step_up(std::sqrt(a.hi))};
}

Interval iv_abs(Interval a) {
  check_finite(a, "abs");
  if (a.lo >= 0.0) return a;
  if (a.hi <= 0.0) return {-a.hi, -a.lo};
  return {0.0, std::max(-a.lo, a.hi)};
}

Interval iv_pow_int(Interval a, long long n) {
  check_finite(a, "pow");
  if (n == 0) return Interval::point(1.0);
  if (n < 0) return Interval::point(1.0) / iv_pow_int(a, -n);
  if (n % 2 != 0) {
    // odd power: monotone increasing
    Interval r{signed_pow_down(a.lo, n), signed_pow_up(a.hi, n)};
    check_finite(r, "pow");
    return r;
  }
  // even power: |x|^n
  double m = std::max(std::abs(a.lo), std::abs(a.hi));
  double hi = pos_pow_up(m, n);
  double lo;
  if (a.contains_zero()) {
    lo = 0.0;
  } else {
    double s = std::min(std::abs(a.lo), std::abs(a.hi));
    lo = pos_pow_down(s, n);
  }
  Interval r{lo, hi};
  check_finite(r, "pow");
  return r;
}

Interval iv_pow_real(Interval a, double p) {
  return iv_exp(iv_log(a) * Interval::point(p));
}

Interval hull(Interval a, Interval b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

std::optional<Interval> intersect(Interval a, Interval b) {
  double lo = std::max(a.lo, b.lo);
  double hi = std::min(a.hi, b.hi);
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

}  // namespace rootcert
