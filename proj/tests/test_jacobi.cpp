#include <doctest.h>

#include "linjac/jacobi.hpp"
#include "random_fields.hpp"

using namespace linjac;
using testing::FieldGen;

namespace {

Multivector d_(const ChartPtr& c, std::string_view n) { return coordinate_field(c, n); }
DiffForm dx_(const ChartPtr& c, std::string_view n) { return coordinate_form(c, n); }
ExpPoly v_(const ChartPtr& c, std::string_view n) { return ExpPoly::var(c, n); }
ExpPoly one(const ChartPtr& c) { return ExpPoly::constant(c, Rat(1)); }

ChartPtr remark_chart() { return Chart::make({{"x", Role::fiber}, {"y", Role::fiber}}); }

JacobiStructure remark() {
  auto c = remark_chart();
  return JacobiStructure((v_(c, "x") * v_(c, "y")) * wedge(d_(c, "x"), d_(c, "y")), v_(c, "x") * d_(c, "x"));
}

// Generators used by the brute-force Jacobiator: all coordinates and 1.
std::vector<ExpPoly> generators(const ChartPtr& c) {
  std::vector<ExpPoly> g;
  for (std::size_t i = 0; i < c->dim(); ++i) g.push_back(ExpPoly::var(c, i));
  g.push_back(one(c));
  return g;
}

bool jacobiator_vanishes(const JacobiStructure& j) {
  const auto g = generators(j.chart());
  auto br = [&](const ExpPoly& a, const ExpPoly& b) { return jacobi_bracket(j, a, b); };
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b)
      for (std::size_t c = b + 1; c < g.size(); ++c) {
        const auto& f = g[a];
        const auto& h = g[b];
        const auto& k = g[c];
        if (!(br(f, br(h, k)) + br(h, br(k, f)) + br(k, br(f, h))).is_zero()) return false;
      }
  return true;
}

// Conformal change (a Lambda, #_Lambda(da) + a E): a Jacobi structure whenever (Lambda, E) is one.
JacobiStructure conformal(const JacobiStructure& j, const ExpPoly& a) {
  return JacobiStructure(a * j.lambda(), sharp(j.lambda(), differential(a)) + a * j.e_field());
}

JacobiStructure so3_star() {
  auto c = FieldGen::base_chart(3);
  auto x0 = v_(c, "x0"), x1 = v_(c, "x1"), x2 = v_(c, "x2");
  auto d0 = d_(c, "x0"), d1 = d_(c, "x1"), d2 = d_(c, "x2");
  return JacobiStructure::poisson(x2 * wedge(d0, d1) + x0 * wedge(d1, d2) + x1 * wedge(d2, d0));
}

ChartPtr contact_chart(int m) {
  std::vector<Coordinate> coords;
  for (int i = 1; i <= m; ++i) coords.push_back({"x" + std::to_string(i), Role::base});
  for (int i = 1; i <= m; ++i) coords.push_back({"mu" + std::to_string(i), Role::fiber});
  coords.push_back({"t", Role::fiber});
  return Chart::make(coords);
}

DiffForm canonical_contact(const ChartPtr& c, int m) {
  DiffForm eta = dx_(c, "t");
  for (int i = 1; i <= m; ++i) {
    auto n = std::to_string(i);
    eta += v_(c, "mu" + n) * dx_(c, "x" + n);
  }
  return eta;
}

}  // namespace

TEST_CASE("jacobi_bracket on the nonlinear counterexample") {
  auto j = remark();
  auto c = j.chart();
  CHECK(jacobi_bracket(j, v_(c, "x"), v_(c, "y")).is_zero());
  CHECK(jacobi_bracket(j, v_(c, "x"), one(c)) == -v_(c, "x"));
  auto f = v_(c, "x") * v_(c, "y") + Rat(3);
  CHECK(jacobi_bracket(j, f, f).is_zero());
  CHECK_THROWS_AS(jacobi_bracket(j, ExpPoly::var(FieldGen::base_chart(1), 0), v_(c, "x")), ChartMismatch);
}

TEST_CASE("JacobiStructure shape checks") {
  auto c = remark_chart();
  CHECK_THROWS_AS(JacobiStructure(d_(c, "x"), d_(c, "y")), InvalidInput);
  CHECK_THROWS_AS(JacobiStructure(wedge(d_(c, "x"), d_(c, "y")), Multivector(FieldGen::base_chart(2), 1)),
                  ChartMismatch);
}

TEST_CASE("verify_jacobi examples") {
  CHECK(verify_jacobi(remark()).all_pass());

  auto c = FieldGen::base_chart(3);
  auto e = v_(c, "x0") * d_(c, "x1") + d_(c, "x2");
  CHECK(verify_jacobi(JacobiStructure(Multivector(c, 2), e)).all_pass());

  auto tr = Chart::make({{"x", Role::base}, {"mu", Role::fiber}});
  JacobiStructure bad(wedge(d_(tr, "mu"), d_(tr, "x")), v_(tr, "mu") * d_(tr, "mu"));
  auto r = verify_jacobi(bad);
  CHECK_FALSE(r.all_pass());
  REQUIRE(r.find("jacobi.e_lambda"));
  CHECK(r.find("jacobi.e_lambda")->verdict == Verdict::fail);
  CHECK(r.find("jacobi.e_lambda")->residual == "1 d/dx^d/dmu");
}

TEST_CASE("check_C1 and check_C2") {
  SUBCASE("nonlinear counterexample satisfies C1 but not C2") {
    auto j = remark();
    CHECK(check_C1(j).all_pass());
    auto r = check_C2(j);
    REQUIRE(r.find("C2"));
    CHECK(r.find("C2")->verdict == Verdict::fail);
    CHECK(r.find("C2")->residual == "-1*x");
  }
  SUBCASE("aff(1) output with a = 2") {
    auto c = Chart::make({{"mu1", Role::fiber}, {"mu2", Role::fiber}});
    JacobiStructure j(-v_(c, "mu2") * wedge(d_(c, "mu1"), d_(c, "mu2")), Rat(-2) * d_(c, "mu1"));
    // Lambda(dmu1, dmu2) = -mu2, and the E-terms contribute -mu2 * E(mu1) = 2 mu2.
    CHECK(jacobi_bracket(j, v_(c, "mu1"), v_(c, "mu2")) == v_(c, "mu2"));
    CHECK(check_C1(j).all_pass());
    CHECK(check_C2(j).all_pass());
  }
  SUBCASE("quadratic bracket fails C1") {
    auto c = Chart::make({{"mu1", Role::fiber}, {"mu2", Role::fiber}});
    JacobiStructure j = JacobiStructure::poisson(v_(c, "mu1").pow(2) * wedge(d_(c, "mu1"), d_(c, "mu2")));
    auto r = check_C1(j);
    CHECK(r.find("C1.fiber_pairs")->verdict == Verdict::fail);
    CHECK(r.find("C1.fiber_pairs")->residual == "{mu1,mu2} = 1*mu1^2");
    CHECK(check_C2(j).all_pass());
  }
  SUBCASE("base sub-checks") {
    auto c = Chart::make({{"x", Role::base}, {"y", Role::base}, {"mu", Role::fiber}});
    JacobiStructure j(wedge(d_(c, "x"), d_(c, "y")) + v_(c, "mu") * wedge(d_(c, "mu"), d_(c, "x")),
                      d_(c, "x"));
    auto r = check_C1(j);
    CHECK(r.find("C1.fiber_pairs")->verdict == Verdict::pass);
    CHECK(r.find("C1.fiber_base")->verdict == Verdict::fail);
    CHECK(r.find("C1.base_pairs")->verdict == Verdict::fail);
    CHECK(r.find("C1.base_unit")->residual == "{x,1} = -1");
  }
  SUBCASE("no fiber coordinates") {
    auto j = so3_star();
    CHECK_THROWS_AS(check_C1(j), InvalidInput);
    CHECK_THROWS_AS(check_C2(j), InvalidInput);
  }
}

TEST_CASE("contact_to_jacobi") {
  SUBCASE("m = 0") {
    auto c = contact_chart(0);
    auto j = contact_to_jacobi(dx_(c, "t"));
    CHECK(j.e_field() == d_(c, "t"));
    CHECK(j.lambda().is_zero());
  }
  SUBCASE("m = 1") {
    auto c = contact_chart(1);
    auto j = contact_to_jacobi(canonical_contact(c, 1));
    CHECK(j.e_field() == d_(c, "t"));
    CHECK(j.lambda() == wedge(d_(c, "mu1"), d_(c, "x1")) - v_(c, "mu1") * wedge(d_(c, "mu1"), d_(c, "t")));
  }
  SUBCASE("m = 2") {
    auto c = contact_chart(2);
    auto eta = canonical_contact(c, 2);
    auto j = contact_to_jacobi(eta);
    CHECK(j.e_field() == d_(c, "t"));
    Multivector expected(c, 2);
    for (std::string n : {"1", "2"})
      expected += wedge(d_(c, "mu" + n), d_(c, "x" + n)) - v_(c, "mu" + n) * wedge(d_(c, "mu" + n), d_(c, "t"));
    CHECK(j.lambda() == expected);
    CHECK(interior(j.e_field(), exterior_d(eta)).is_zero());
    CHECK(evaluate(eta, j.e_field()) == one(c));
  }
  SUBCASE("Reeb conditions for a non-canonical form") {
    auto c = contact_chart(1);
    DiffForm eta = dx_(c, "t") + v_(c, "x1") * dx_(c, "mu1");
    auto j = contact_to_jacobi(eta);
    CHECK(interior(j.e_field(), exterior_d(eta)).is_zero());
    CHECK(evaluate(eta, j.e_field()) == one(c));
    CHECK(verify_jacobi(j).all_pass());
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(contact_to_jacobi(dx_(FieldGen::base_chart(2), "x0")), InvalidInput);
    auto c = contact_chart(1);
    CHECK_THROWS_AS(contact_to_jacobi(dx_(c, "t")), InvalidInput);
    // flat has determinant (1 + x1)^2, not a unit of the coefficient ring
    CHECK_THROWS_AS(contact_to_jacobi((v_(c, "x1") + Rat(1)) * dx_(c, "t") + v_(c, "mu1") * dx_(c, "x1")), InvalidInput);
  }
}

TEST_CASE("property: first-order identity and {f,1} = -E(f)") {
  FieldGen gen(2024);
  for (int trial = 0; trial < 120; ++trial) {
    auto c = FieldGen::base_chart(gen.uniform(1, 4));
    JacobiStructure j(gen.multivector(c, 2, 2), gen.multivector(c, 1, 2));
    auto f = gen.poly(c, 2), g = gen.poly(c, 2), h = gen.poly(c, 2);
    auto lhs = jacobi_bracket(j, f, g * h);
    auto rhs = g * jacobi_bracket(j, f, h) + h * jacobi_bracket(j, f, g) - g * h * jacobi_bracket(j, f, one(c));
    CHECK(lhs == rhs);
    CHECK(jacobi_bracket(j, f, one(c)) == -apply(j.e_field(), f));
    CHECK(jacobi_bracket(j, f, g) == -jacobi_bracket(j, g, f));
  }
}

TEST_CASE("property: coordinate Jacobiator vanishes iff verify_jacobi passes") {
  SUBCASE("known structures") {
    auto c1 = contact_chart(1);
    auto c2 = contact_chart(2);
    std::vector<JacobiStructure> good{remark(), so3_star(), contact_to_jacobi(canonical_contact(c1, 1)),
                                      contact_to_jacobi(canonical_contact(c2, 2))};
    for (const auto& j : good) {
      CHECK(verify_jacobi(j).all_pass());
      CHECK(jacobiator_vanishes(j));
    }
    auto c = FieldGen::base_chart(3);
    auto x1 = v_(c, "x1");
    auto broken = JacobiStructure::poisson(x1 * wedge(d_(c, "x1"), d_(c, "x2")) + wedge(d_(c, "x0"), d_(c, "x1")));
    CHECK_FALSE(verify_jacobi(broken).all_pass());
    CHECK_FALSE(jacobiator_vanishes(broken));
    auto e_broken = JacobiStructure(so3_star().lambda(), x1 * d_(c, "x0"));
    CHECK_FALSE(verify_jacobi(e_broken).all_pass());
    CHECK_FALSE(jacobiator_vanishes(e_broken));
  }
  SUBCASE("randomized conformal changes and random pairs") {
    FieldGen gen(77);
    auto c1 = contact_chart(1);
    std::vector<JacobiStructure> seeds{so3_star(), contact_to_jacobi(canonical_contact(c1, 1)), remark()};
    int passing = 0, failing = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const auto& s = seeds[static_cast<std::size_t>(trial) % seeds.size()];
      auto j = conformal(s, gen.poly(s.chart(), 1, 2) + Rat(1));
      const bool ok = verify_jacobi(j).all_pass();
      CHECK(ok);
      CHECK(jacobiator_vanishes(j) == ok);
      passing += ok;
    }
    for (int trial = 0; trial < 60; ++trial) {
      auto c = FieldGen::base_chart(gen.uniform(2, 3));
      JacobiStructure j(gen.multivector(c, 2, 2), gen.multivector(c, 1, 1));
      const bool ok = verify_jacobi(j).all_pass();
      CHECK(jacobiator_vanishes(j) == ok);
      failing += !ok;
    }
    CHECK(passing == 60);
    CHECK(failing > 30);
  }
}
