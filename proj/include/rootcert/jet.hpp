#pragma once

#include <cmath>

#include "rootcert/errors.hpp"

namespace rootcert {

// Value with first and second derivative, propagated forward.
struct Jet2 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static Jet2 constant(double c) { return {c, 0.0, 0.0}; }
  static Jet2 variable(double x) { return {x, 1.0, 0.0}; }
};

inline Jet2 operator+(Jet2 a, Jet2 b) {
  return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
}

inline Jet2 operator-(Jet2 a, Jet2 b) {
  return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2};
}

inline Jet2 operator-(Jet2 a) { return {-a.value, -a.d1, -a.d2}; }

inline Jet2 operator*(Jet2 a, Jet2 b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}

inline Jet2 operator/(Jet2 a, Jet2 b) {
  if (b.value == 0.0) throw DomainError("division by zero");
  double v = a.value / b.value;
  double d1 = (a.d1 - v * b.d1) / b.value;
  double d2 = (a.d2 - v * b.d2 - 2.0 * d1 * b.d1) / b.value;
  return {v, d1, d2};
}

// Chain rule for a scalar function with derivatives f1 = f'(u), f2 = f''(u).
inline Jet2 jet_chain(double f0, double f1, double f2, Jet2 u) {
  return {f0, f1 * u.d1, f2 * u.d1 * u.d1 + f1 * u.d2};
}

inline Jet2 jet_sin(Jet2 u) {
  double s = std::sin(u.value), c = std::cos(u.value);
  return jet_chain(s, c, -s, u);
}

inline Jet2 jet_cos(Jet2 u) {
  double s = std::sin(u.value), c = std::cos(u.value);
  return jet_chain(c, -s, -c, u);
}

inline Jet2 jet_tan(Jet2 u) {
  double c = std::cos(u.value);
  if (c == 0.0) throw DomainError("tan at a pole");
  double t = std::tan(u.value);
  double sec2 = 1.0 + t * t;
  return jet_chain(t, sec2, 2.0 * t * sec2, u);
}

inline Jet2 jet_exp(Jet2 u) {
  double e = std::exp(u.value);
  return jet_chain(e, e, e, u);
}

inline Jet2 jet_log(Jet2 u) {
  if (u.value <= 0.0) throw DomainError("log of a non-positive value");
  return jet_chain(std::log(u.value), 1.0 / u.value,
                   -1.0 / (u.value * u.value), u);
}

inline Jet2 jet_sqrt(Jet2 u) {
  if (u.value < 0.0) throw DomainError("sqrt of a negative value");
  if (u.value == 0.0) throw DomainError("sqrt derivative at zero");
  double r = std::sqrt(u.value);
  return jet_chain(r, 0.5 / r, -0.25 / (r * u.value), u);
}

inline Jet2 jet_abs(Jet2 u) {
  if (u.value == 0.0) throw DomainError("abs derivative at zero");
  double s = u.value > 0.0 ? 1.0 : -1.0;
  return jet_chain(std::abs(u.value), s, 0.0, u);
}

// u^n for integer n, by repeated multiplication.
inline Jet2 jet_pow_int(Jet2 u, long long n) {
  if (n == 0) return Jet2::constant(1.0);
  if (n < 0) return Jet2::constant(1.0) / jet_pow_int(u, -n);
  Jet2 r = u;
  for (long long i = 1; i < n; ++i) r = r * u;
  return r;
}

// u^p for non-integer constant p, via exp(p*log(u)).
inline Jet2 jet_pow_real(Jet2 u, double p) {
  return jet_exp(Jet2::constant(p) * jet_log(u));
}

}  // namespace rootcert
