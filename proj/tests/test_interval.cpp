#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rootcert/expr.hpp"
#include "rootcert/interval.hpp"
#include "test_util.hpp"

using namespace rootcert;

TEST_CASE("interval basics") {
  Interval a{1.0, 2.0};
  CHECK(a.contains(1.5));
  CHECK(!a.contains(2.5));
  CHECK_THROWS_AS(Interval(2.0, 1.0), PreconditionError);

  Interval s = a + Interval{10.0, 20.0};
  CHECK(s.lo <= 11.0);
  CHECK(s.hi >= 22.0);
  CHECK(s.width() < 11.0 + 1e-9);

  Interval p = Interval{-1.0, 2.0} * Interval{3.0, 4.0};
  CHECK(p.lo <= -4.0);
  CHECK(p.hi >= 8.0);

  CHECK_THROWS_AS(Interval(1.0, 2.0) / Interval(-1.0, 1.0), DomainError);
}

TEST_CASE("even powers keep the dependency") {
  // x^2 over [-1, 2] must be [0, 4], not [-2, 4]
  Interval r = Expression::parse("x^2").eval_interval({-1.0, 2.0});
  CHECK(r.lo == 0.0);
  CHECK(r.hi >= 4.0);
  CHECK(r.hi <= 4.0 + 1e-12);
}

TEST_CASE("identity is exact") {
  Interval r = Expression::parse("x").eval_interval({3.0, 7.0});
  CHECK(r.lo == 3.0);
  CHECK(r.hi == 7.0);
}

TEST_CASE("cubic enclosure contains the dense-sampling range") {
  Expression e = Expression::parse("x^3-2*x+2");
  Interval I{-5.0, -2.0};
  // oracle: dense sampling of the true range
  double smin = 1e300, smax = -1e300;
  const int n = 100000;
  for (int i = 0; i <= n; ++i) {
    double x = I.lo + (I.hi - I.lo) * i / n;
    double v = e.eval(x);
    smin = std::min(smin, v);
    smax = std::max(smax, v);
  }
  CHECK(smin == -113.0);
  CHECK(smax == -2.0);
  Interval enc = e.eval_interval(I);
  CHECK(enc.lo <= smin);
  CHECK(enc.hi >= smax);
  // the natural extension stays tight on this monotone piece
  CHECK(enc.lo >= -113.0 - 1e-9);
  CHECK(enc.hi <= -2.0 + 1e-9);
}

TEST_CASE("trig enclosures clamp and cover extrema") {
  Interval s = iv_sin(Interval{0.0, 3.2});
  CHECK(s.hi == 1.0);  // contains pi/2
  CHECK(s.lo <= 0.0);
  Interval c = iv_cos(Interval{3.0, 3.3});
  CHECK(c.lo == -1.0);  // contains pi
  Interval wide = iv_sin(Interval{-100.0, 100.0});
  CHECK(wide.lo == -1.0);
  CHECK(wide.hi == 1.0);
  CHECK_THROWS_AS(iv_tan(Interval{1.0, 2.0}), DomainError);
  Interval t = iv_tan(Interval{-0.5, 0.5});
  CHECK(t.lo <= std::tan(-0.5));
  CHECK(t.hi >= std::tan(0.5));
}

TEST_CASE("domain errors over intervals") {
  CHECK_THROWS_AS(Expression::parse("log(x)").eval_interval({-1.0, 1.0}),
                  DomainError);
  CHECK_THROWS_AS(Expression::parse("sqrt(x)").eval_interval({-1.0, 1.0}),
                  DomainError);
  CHECK_THROWS_AS(Expression::parse("1/x").eval_interval({-1.0, 1.0}),
                  DomainError);
}

TEST_CASE("piecewise interval straddling a threshold hulls both branches") {
  Expression pw = Expression::parse("if(x<=0, x^2+x, x^2-x)");
  Interval r = pw.eval_interval({-0.4, 0.4});
  // true range is [-0.25, 0]; both branch minima must be inside
  CHECK(r.lo <= -0.25);
  CHECK(r.hi >= 0.0);
  // away from the threshold only one branch contributes
  Interval left = pw.eval_interval({-0.4, -0.3});
  CHECK(left.hi < 0.0);
}

TEST_CASE("interval extension soundness over random expressions") {
  testutil::ExprGen gen(424242, /*allow_piecewise=*/true);
  int accepted = 0, attempts = 0;
  while (accepted < 10000 && attempts < 500000) {
    ++attempts;
    Expression e = gen.gen(4);
    double c = gen.uniform(-2.0, 2.0);
    double w = gen.uniform(0.0, 1.5);
    Interval I{c - w, c + w};
    double x = gen.uniform(I.lo, I.hi);
    double v;
    Interval enc{0.0, 0.0};
    try {
      v = e.eval(x);
      enc = e.eval_interval(I);
    } catch (const DomainError&) {
      continue;
    }
    ++accepted;
    CAPTURE(e.format());
    CAPTURE(x);
    CAPTURE(I.lo);
    CAPTURE(I.hi);
    CHECK(enc.contains(v));
  }
  CHECK(accepted == 10000);
}
