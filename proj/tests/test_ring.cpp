#include <doctest.h>

#include "linjac/error.hpp"
#include "linjac/exppoly.hpp"
#include "random_fields.hpp"

using namespace linjac;

namespace {

ChartPtr xy_chart() { return Chart::make({{"x", Role::base}, {"y", Role::base}}); }

ChartPtr fiber_chart() {
  return Chart::make({{"x", Role::base}, {"mu1", Role::fiber}, {"mu2", Role::fiber}});
}

ChartPtr timed_chart() { return Chart::make({{"x", Role::base}, {"t", Role::time}}); }

}  // namespace

TEST_CASE("Rat stays in lowest terms") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(3, -6).str() == "-1/2");
  CHECK(Rat(0, 7).str() == "0");
  CHECK(Rat::parse("-6/4") == Rat(-3, 2));
  CHECK(Rat::parse("12") == Rat(12));
  CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
}

TEST_CASE("arith: difference of squares, unit pair, annihilation") {
  auto c = xy_chart();
  auto x = ExpPoly::var(c, "x");
  auto y = ExpPoly::var(c, "y");
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK(((x + y) * (x - y)).str() == "1*x^2 - 1*y^2");

  auto tc = timed_chart();
  CHECK(ExpPoly::exp_t(tc, 1) * ExpPoly::exp_t(tc, -1) == ExpPoly::constant(tc, Rat(1)));

  auto fc = fiber_chart();
  const Rat a(1);
  auto mu2 = ExpPoly::var(fc, "mu2");
  CHECK((mu2 * (ExpPoly::constant(fc, Rat(1)) - ExpPoly::constant(fc, a))).is_zero());
}

TEST_CASE("arith refuses mixed charts") {
  auto x1 = ExpPoly::var(xy_chart(), "x");
  auto x2 = ExpPoly::var(timed_chart(), "x");
  CHECK_THROWS_AS(x1 + x2, ChartMismatch);
  CHECK_THROWS_AS(x1 * x2, ChartMismatch);
  // structurally equal charts built separately are compatible
  CHECK_NOTHROW(x1 + ExpPoly::var(xy_chart(), "y"));
}

TEST_CASE("partial derivatives") {
  auto c = xy_chart();
  auto x = ExpPoly::var(c, "x");
  auto y = ExpPoly::var(c, "y");
  CHECK((x * x * y).partial("x") == Rat(2) * x * y);
  CHECK_THROWS_AS(x.partial("z"), UnknownVariable);

  auto tc = timed_chart();
  auto s = ExpPoly::exp_t(tc, 1);
  auto sinv = ExpPoly::exp_t(tc, -1);
  auto t = ExpPoly::var(tc, "t");
  CHECK(sinv.partial("t") == -sinv);
  CHECK((t * s).partial("t") == s + t * s);
  CHECK((t * t * sinv).partial("t") == Rat(2) * t * sinv - t * t * sinv);
}

TEST_CASE("fiber degree and classifiers") {
  auto c = fiber_chart();
  auto x = ExpPoly::var(c, "x");
  auto m1 = ExpPoly::var(c, "mu1");
  auto m2 = ExpPoly::var(c, "mu2");

  auto lin = x * x * m1 + x * m2;
  CHECK(lin.fiber_degree() == 1);
  CHECK(lin.is_linear());
  CHECK_FALSE(lin.is_basic());

  auto cube = x * x * x;
  CHECK(cube.fiber_degree() == 0);
  CHECK(cube.is_basic());
  CHECK_FALSE(cube.is_linear());

  auto quad = m1 * m2 + m1;
  CHECK(quad.fiber_degree() == 2);
  CHECK_FALSE(quad.is_basic());
  CHECK_FALSE(quad.is_linear());

  ExpPoly zero(c);
  CHECK_FALSE(zero.fiber_degree().has_value());
  CHECK(zero.is_basic());
  CHECK_FALSE(zero.is_linear());
}

TEST_CASE("eval") {
  auto c = Chart::make({{"x", Role::base}, {"mu", Role::fiber}});
  auto p = ExpPoly::var(c, "x").pow(2) + ExpPoly::var(c, "mu");
  CHECK(p.eval({{"x", Rat(2)}, {"mu", Rat(3)}}) == Rat(7));
  CHECK_THROWS_AS(p.eval({{"x", Rat(2)}}), MissingAssignment);

  auto tc = timed_chart();
  auto sx = ExpPoly::exp_t(tc, 1) * ExpPoly::var(tc, "x");
  CHECK(sx.eval({{"x", Rat(5)}, {"t", Rat(0)}}) == Rat(5));
  CHECK_THROWS_AS(ExpPoly::exp_t(tc, 1).eval({{"t", Rat(1)}}), TranscendentalEval);
  // plain t is an ordinary polynomial variable
  CHECK(ExpPoly::var(tc, "t").eval({{"t", Rat(3)}}) == Rat(3));
}

TEST_CASE("exp factor needs a time coordinate") {
  CHECK_THROWS_AS(ExpPoly::exp_t(xy_chart(), 1), UnknownVariable);
  CHECK_NOTHROW(ExpPoly::exp_t(xy_chart(), 0));
}

TEST_CASE("rendering follows the chart order") {
  auto tc = timed_chart();
  auto x = ExpPoly::var(tc, "x");
  auto t = ExpPoly::var(tc, "t");
  auto p = Rat(-1, 2) * x * ExpPoly::exp_t(tc, -1) + t + Rat(3) + x * x;
  CHECK(p.str() == "1*x^2 - 1/2*x*exp(-1*t) + 1*t + 3");
  CHECK(ExpPoly(tc).str() == "0");
  CHECK((-x).str() == "-1*x");
}

TEST_CASE("embedding onto a wider chart") {
  auto small = Chart::make({{"x", Role::base}});
  auto wide = fiber_chart();
  auto p = ExpPoly::var(small, "x").pow(3);
  CHECK(p.on(wide) == ExpPoly::var(wide, "x").pow(3));
  CHECK_THROWS_AS(ExpPoly::var(wide, "mu1").on(small), UnknownVariable);
}

TEST_CASE("property: canonical form uniqueness") {
  testing::FieldGen gen(11);
  auto c = extend_chart(xy_chart(), {{"t", Role::time}});
  for (int i = 0; i < 100; ++i) {
    auto p = gen.poly(c, 3, 5);
    auto q = gen.poly(c, 3, 5);
    CHECK((p - p).terms().empty());
    // construction order does not matter
    CHECK((p + q) - q == p);
    CHECK(q + p == p + q);
  }
}

TEST_CASE("property: ring axioms") {
  testing::FieldGen gen(7);
  auto c = Chart::make({{"x", Role::base}, {"y", Role::base}, {"mu", Role::fiber}, {"t", Role::time}});
  for (int i = 0; i < 120; ++i) {
    auto p = gen.poly(c, 3);
    auto q = gen.poly(c, 3);
    auto r = gen.poly(c, 3);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * q == q * p);
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p + (-p) == ExpPoly(c));
  }
}

TEST_CASE("property: Leibniz rule and commuting partials") {
  testing::FieldGen gen(3);
  auto c = Chart::make({{"x", Role::base}, {"y", Role::base}, {"mu", Role::fiber}, {"t", Role::time}});
  for (int i = 0; i < 100; ++i) {
    auto p = gen.poly(c, 3);
    auto q = gen.poly(c, 3);
    for (std::size_t v = 0; v < c->dim(); ++v) {
      CHECK((p * q).partial(v) == p.partial(v) * q + p * q.partial(v));
      for (std::size_t w = 0; w < c->dim(); ++w) CHECK(p.partial(v).partial(w) == p.partial(w).partial(v));
    }
  }
}
