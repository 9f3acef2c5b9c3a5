#include <doctest.h>

#include "linjac/exterior.hpp"
#include "random_fields.hpp"

using namespace linjac;
using testing::FieldGen;

namespace {

ChartPtr xy() { return Chart::make({{"x", Role::base}, {"y", Role::base}}); }

Multivector d_(const ChartPtr& c, std::string_view n) { return coordinate_field(c, n); }
DiffForm dx_(const ChartPtr& c, std::string_view n) { return coordinate_form(c, n); }
ExpPoly v_(const ChartPtr& c, std::string_view n) { return ExpPoly::var(c, n); }
ExpPoly one(const ChartPtr& c) { return ExpPoly::constant(c, Rat(1)); }

int psign(int n) { return (std::abs(n) % 2) ? -1 : 1; }

// Sign of [P,[Q,R]] in the cyclic graded Jacobi sum, for grades p of P and r of R.
int jacobi_sign(int p, int r) { return psign((p - 1) * (r - 1) + r); }

// Coordinate Lie bracket sum_j (X^i d_i Y^j - Y^i d_i X^j) d_j.
Multivector lie_bracket_oracle(const Multivector& x, const Multivector& y) {
  const auto c = x.chart();
  Multivector out(c, 1);
  for (int j = 0; j < static_cast<int>(c->dim()); ++j) {
    ExpPoly comp(c);
    for (int i = 0; i < static_cast<int>(c->dim()); ++i) {
      comp += x.component({i}) * y.component({j}).partial(static_cast<std::size_t>(i));
      comp -= y.component({i}) * x.component({j}).partial(static_cast<std::size_t>(i));
    }
    out.add({j}, comp);
  }
  return out;
}

// L_X (f dx^J) = X(f) dx^J + f sum_m dx^j1 ^ .. ^ d(X^jm) ^ .. ^ dx^jk
DiffForm lie_form_oracle(const Multivector& x, const DiffForm& w) {
  const auto c = w.chart();
  DiffForm out(c, w.grade());
  for (const auto& [idx, f] : w.components()) {
    out += DiffForm::basis(c, idx, apply(x, f));
    for (std::size_t m = 0; m < idx.size(); ++m) {
      DiffForm piece = DiffForm::scalar(f);
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k == m)
          piece = wedge(piece, differential(x.component({idx[k]})));
        else
          piece = wedge(piece, DiffForm::basis(c, {idx[k]}));
      }
      out += piece;
    }
  }
  return out;
}

ExpPoly poisson(const Multivector& lambda, const ExpPoly& f, const ExpPoly& g) {
  return pairing(lambda, differential(f), differential(g));
}

bool jacobiator_vanishes_on_coordinates(const Multivector& lambda) {
  const auto c = lambda.chart();
  const auto n = c->dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t d = b + 1; d < n; ++d) {
        auto f = ExpPoly::var(c, a), g = ExpPoly::var(c, b), h = ExpPoly::var(c, d);
        auto jac = poisson(lambda, f, poisson(lambda, g, h)) + poisson(lambda, g, poisson(lambda, h, f)) +
                   poisson(lambda, h, poisson(lambda, f, g));
        if (!jac.is_zero()) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("wedge") {
  auto c = xy();
  auto x = v_(c, "x"), y = v_(c, "y");
  auto p = x * d_(c, "x");
  auto q = (x * y) * wedge(d_(c, "x"), d_(c, "y"));
  CHECK(wedge(p, q).is_zero());
  CHECK(wedge(p, q).grade() == 3);

  auto fc = Chart::make({{"mu1", Role::fiber}, {"mu2", Role::fiber}});
  auto m1 = v_(fc, "mu1"), m2 = v_(fc, "mu2");
  auto a = Rat(5);
  auto delta = m1 * d_(fc, "mu1") + m2 * d_(fc, "mu2");
  auto phi_v = a * d_(fc, "mu1");
  // hand expansion: mu2 d/dmu2 ^ a d/dmu1 = -a mu2 d/dmu1 ^ d/dmu2
  auto expected = Multivector::basis(fc, {0, 1}, -(Rat(5) * m2));
  CHECK(wedge(delta, phi_v) == expected);
  CHECK(wedge(delta, phi_v).str() == "-5*mu2 d/dmu1^d/dmu2");

  auto mc = Chart::make({{"x", Role::base}, {"mu", Role::fiber}});
  auto b = wedge(d_(mc, "mu"), d_(mc, "x"));
  CHECK(wedge(b, b).is_zero());
  CHECK(b.str() == "-1 d/dx^d/dmu");
}

TEST_CASE("wedge is graded commutative") {
  FieldGen gen(21);
  auto c = FieldGen::base_chart(4);
  for (int i = 0; i < 50; ++i) {
    const int p = gen.uniform(0, 3), q = gen.uniform(0, 3);
    auto a = gen.form(c, p, 2), b = gen.form(c, q, 2);
    CHECK(wedge(a, b) == Rat(psign(p * q)) * wedge(b, a));
  }
}

TEST_CASE("sn_bracket examples") {
  auto c = Chart::make({{"x1", Role::base}, {"x2", Role::base}, {"mu1", Role::fiber}, {"mu2", Role::fiber}});
  auto symp = wedge(d_(c, "mu1"), d_(c, "x1")) + wedge(d_(c, "mu2"), d_(c, "x2"));
  CHECK(sn_bracket(symp, symp).is_zero());

  auto r = xy();
  auto x = v_(r, "x"), y = v_(r, "y");
  CHECK(sn_bracket(x * d_(r, "x"), (x * y) * wedge(d_(r, "x"), d_(r, "y"))).is_zero());

  auto X = x * d_(r, "y");
  auto Y = y * d_(r, "x");
  CHECK(sn_bracket(X, Y) == x * d_(r, "x") - y * d_(r, "y"));
  CHECK(sn_bracket(X, Y) == lie_bracket_oracle(X, Y));

  // [X, f] = X(f), [f, g] = 0
  auto f = x * x * y;
  CHECK(sn_bracket(X, Multivector::scalar(f)) == Multivector::scalar(apply(X, f)));
  CHECK(sn_bracket(Multivector::scalar(f), Multivector::scalar(x)).is_zero());
  CHECK(sn_bracket(Multivector::scalar(f), Multivector::scalar(x)).grade() == -1);
}

TEST_CASE("exterior_d") {
  auto c = xy();
  auto x = v_(c, "x"), y = v_(c, "y");
  CHECK(exterior_d(x * dx_(c, "y")) == wedge(dx_(c, "x"), dx_(c, "y")));

  auto k = Chart::make({{"x", Role::base}, {"mu", Role::fiber}, {"t", Role::fiber}});
  auto eta = dx_(k, "t") + v_(k, "mu") * dx_(k, "x");
  CHECK(exterior_d(eta) == wedge(dx_(k, "mu"), dx_(k, "x")));

  CHECK(exterior_d(differential(x * x * y)).is_zero());
}

TEST_CASE("interior") {
  auto c = xy();
  auto area = wedge(dx_(c, "x"), dx_(c, "y"));
  CHECK(interior(d_(c, "x"), area) == dx_(c, "y"));
  CHECK(interior(d_(c, "y"), area) == -dx_(c, "x"));
  // full contraction of d/dx ^ d/dy with dx ^ dy is +1
  CHECK(interior(wedge(d_(c, "x"), d_(c, "y")), area).scalar_value() == one(c));
  CHECK_THROWS_AS(interior(wedge(d_(c, "x"), d_(c, "y")), dx_(c, "x")), InvalidInput);
  // pairing of a bivector agrees with contraction against alpha ^ beta
  auto x = v_(c, "x"), y = v_(c, "y");
  auto lam = (x * y) * wedge(d_(c, "x"), d_(c, "y"));
  auto alpha = x * dx_(c, "x") + dx_(c, "y");
  auto beta = y * dx_(c, "y") - x * dx_(c, "x");
  CHECK(interior(lam, wedge(alpha, beta)).scalar_value() == pairing(lam, alpha, beta));
}

TEST_CASE("lie_derivative") {
  auto c = xy();
  auto x = v_(c, "x");
  CHECK(lie_derivative(d_(c, "x"), x * dx_(c, "y")) == dx_(c, "y"));

  auto lam = wedge(d_(c, "x"), d_(c, "y"));
  auto hx = sharp(lam, dx_(c, "x"));
  CHECK(lie_derivative(hx, dx_(c, "y")).is_zero());

  auto X = x * d_(c, "y");
  auto Y = v_(c, "y") * d_(c, "x");
  CHECK(lie_derivative(X, Y) == lie_bracket_oracle(X, Y));
}

TEST_CASE("sharp and pairing") {
  auto c = xy();
  auto lam = wedge(d_(c, "x"), d_(c, "y"));
  CHECK(sharp(lam, dx_(c, "x")) == d_(c, "y"));
  CHECK(sharp(Multivector(c, 2), dx_(c, "x")).is_zero());

  auto t = Chart::make({{"x", Role::base}, {"mu", Role::fiber}});
  auto symp = wedge(d_(t, "mu"), d_(t, "x"));
  CHECK(sharp(symp, dx_(t, "x")) == -d_(t, "mu"));

  auto x = v_(c, "x"), y = v_(c, "y");
  auto remark = (x * y) * lam;
  CHECK(pairing(remark, dx_(c, "x"), dx_(c, "y")) == x * y);
  CHECK(pairing(remark, dx_(c, "x"), dx_(c, "x")).is_zero());

  auto t2 = Chart::make({{"x1", Role::base}, {"mu1", Role::fiber}});
  auto s2 = wedge(d_(t2, "mu1"), d_(t2, "x1"));
  CHECK(pairing(s2, dx_(t2, "mu1"), dx_(t2, "x1")) == one(t2));
}

TEST_CASE("property: sharp satisfies its defining relation") {
  FieldGen gen(5);
  auto c = FieldGen::base_chart(4);
  for (int i = 0; i < 60; ++i) {
    auto lam = gen.multivector(c, 2, 2);
    auto a = gen.form(c, 1, 2), b = gen.form(c, 1, 2);
    CHECK(evaluate(b, sharp(lam, a)) == pairing(lam, a, b));
    CHECK(pairing(lam, a, b) == -pairing(lam, b, a));
  }
}

TEST_CASE("check_nondegenerate") {
  auto c = Chart::make({{"x1", Role::base}, {"x2", Role::base}, {"mu1", Role::fiber}, {"mu2", Role::fiber}});
  auto lcs = wedge(d_(c, "mu1"), d_(c, "x1")) + wedge(d_(c, "mu2"), d_(c, "x2")) -
             v_(c, "mu2") * wedge(d_(c, "mu1"), d_(c, "mu2"));
  // Pf = a12 a34 - a13 a24 + a14 a23 in the order (x1, x2, mu1, mu2)
  CHECK(pfaffian(lcs) == ExpPoly::constant(c, Rat(-1)));
  CHECK(check_nondegenerate(lcs) == Nondegeneracy::nondegenerate_constant);

  auto r2 = xy();
  CHECK(check_nondegenerate(Multivector(r2, 2)) == Nondegeneracy::degenerate);
  CHECK(check_nondegenerate(v_(r2, "x") * wedge(d_(r2, "x"), d_(r2, "y"))) == Nondegeneracy::indeterminate);
  CHECK_THROWS_AS(check_nondegenerate(Multivector(FieldGen::base_chart(3), 2)), InvalidInput);
}

TEST_CASE("property: graded antisymmetry and Lie bracket agreement") {
  FieldGen gen(101);
  for (int i = 0; i < 120; ++i) {
    auto c = FieldGen::base_chart(gen.uniform(1, 4));
    const int p = gen.uniform(0, 3), q = gen.uniform(0, 3);
    auto P = gen.multivector(c, p, 2), Q = gen.multivector(c, q, 2);
    CHECK(sn_bracket(P, Q) == Rat(psign(p * q)) * sn_bracket(Q, P));
    auto X = gen.multivector(c, 1, 2), Y = gen.multivector(c, 1, 2);
    CHECK(sn_bracket(X, Y) == lie_bracket_oracle(X, Y));
  }
}

TEST_CASE("property: graded Jacobi identity") {
  FieldGen gen(202);
  for (int i = 0; i < 120; ++i) {
    auto c = FieldGen::base_chart(gen.uniform(2, 4));
    const int p = gen.uniform(0, 3), q = gen.uniform(0, 3), r = gen.uniform(0, 3);
    auto P = gen.multivector(c, p, 2), Q = gen.multivector(c, q, 2), R = gen.multivector(c, r, 2);
    auto total = Rat(jacobi_sign(p, r)) * sn_bracket(P, sn_bracket(Q, R)) +
                 Rat(jacobi_sign(q, p)) * sn_bracket(Q, sn_bracket(R, P)) +
                 Rat(jacobi_sign(r, q)) * sn_bracket(R, sn_bracket(P, Q));
    CHECK(total.is_zero());
  }
}

TEST_CASE("property: graded Leibniz rule") {
  FieldGen gen(303);
  for (int i = 0; i < 120; ++i) {
    auto c = FieldGen::base_chart(gen.uniform(2, 4));
    const int p = gen.uniform(0, 3), q = gen.uniform(0, 2), r = gen.uniform(0, 2);
    auto P = gen.multivector(c, p, 2), Q = gen.multivector(c, q, 2), R = gen.multivector(c, r, 2);
    auto lhs = sn_bracket(P, wedge(Q, R));
    auto rhs = wedge(sn_bracket(P, Q), R) + Rat(psign((p - 1) * q)) * wedge(Q, sn_bracket(P, R));
    CHECK(lhs == rhs);
    auto X = gen.multivector(c, 1, 2);
    CHECK(lie_derivative(X, wedge(Q, R)) == wedge(lie_derivative(X, Q), R) + wedge(Q, lie_derivative(X, R)));
  }
}

TEST_CASE("property: d^2 = 0 and Cartan formula") {
  FieldGen gen(404);
  for (int i = 0; i < 120; ++i) {
    auto c = FieldGen::base_chart(gen.uniform(1, 4));
    const int k = gen.uniform(0, 3);
    auto w = gen.form(c, k, 2);
    CHECK(exterior_d(exterior_d(w)).is_zero());
    auto X = gen.multivector(c, 1, 2);
    CHECK(lie_derivative(X, w) == lie_form_oracle(X, w));
    // L_X commutes with d
    CHECK(lie_derivative(X, exterior_d(w)) == exterior_d(lie_derivative(X, w)));
  }
}

TEST_CASE("property: exp(t) coefficients behave like the polynomial case") {
  FieldGen gen(505);
  auto c = Chart::make({{"x", Role::base}, {"y", Role::base}, {"t", Role::time}});
  for (int i = 0; i < 40; ++i) {
    auto P = gen.multivector(c, 2, 2), Q = gen.multivector(c, 1, 2), R = gen.multivector(c, 1, 2);
    auto total = Rat(jacobi_sign(2, 1)) * sn_bracket(P, sn_bracket(Q, R)) +
                 Rat(jacobi_sign(1, 2)) * sn_bracket(Q, sn_bracket(R, P)) +
                 Rat(jacobi_sign(1, 1)) * sn_bracket(R, sn_bracket(P, Q));
    CHECK(total.is_zero());
    auto w = gen.form(c, 1, 2);
    CHECK(exterior_d(exterior_d(w)).is_zero());
  }
}

TEST_CASE("Jacobi identity of the bivector bracket holds iff [L,L] = 0") {
  auto c = Chart::make({{"x1", Role::base}, {"x2", Role::base}, {"x3", Role::base}});
  auto x1 = v_(c, "x1"), x2 = v_(c, "x2"), x3 = v_(c, "x3");
  auto so3 = x3 * wedge(d_(c, "x1"), d_(c, "x2")) + x1 * wedge(d_(c, "x2"), d_(c, "x3")) +
             x2 * wedge(d_(c, "x3"), d_(c, "x1"));
  CHECK(sn_bracket(so3, so3).is_zero());
  CHECK(jacobiator_vanishes_on_coordinates(so3));

  // v = (x2, 0, 1) has v . curl v = -1
  auto broken = x2 * wedge(d_(c, "x2"), d_(c, "x3")) + wedge(d_(c, "x1"), d_(c, "x2"));
  CHECK_FALSE(sn_bracket(broken, broken).is_zero());
  CHECK_FALSE(jacobiator_vanishes_on_coordinates(broken));

  FieldGen gen(606);
  int poisson_seen = 0, non_poisson_seen = 0;
  for (int i = 0; i < 80; ++i) {
    auto lam = gen.multivector(c, 2, 1);
    const bool is_poisson = sn_bracket(lam, lam).is_zero();
    (is_poisson ? poisson_seen : non_poisson_seen)++;
    CHECK(is_poisson == jacobiator_vanishes_on_coordinates(lam));
  }
  CHECK(poisson_seen > 0);
  CHECK(non_poisson_seen > 0);
}
