#include "linjac/gallery.hpp"

#include <sstream>

namespace linjac {

ChartPtr tangent_chart(const ChartPtr& base) {
  std::vector<Coordinate> dots;
  for (const auto& n : dot_names(*base)) dots.push_back({n, Role::fiber});
  return extend_chart(base, dots);
}

Lifts complete_vertical_lift(const Multivector& t) {
  const auto& base = t.chart();
  if (base->has_role(Role::fiber)) throw InvalidInput("complete_vertical_lift: chart may not contain fiber coordinates");
  if (t.grade() != 1 && t.grade() != 2) throw InvalidInput("complete_vertical_lift: only vector fields and bivectors");
  const auto tc = tangent_chart(base);
  const int m = static_cast<int>(base->dim());
  auto dot = [m](int i) { return m + i; };
  auto xdot = [&](int j) { return ExpPoly::var(tc, static_cast<std::size_t>(dot(j))); };

  Lifts out{Multivector(tc, t.grade()), Multivector(tc, t.grade())};
  for (const auto& [idx, c] : t.components()) {
    const ExpPoly cc = c.on(tc);
    if (t.grade() == 1) {
      const int i = idx[0];
      out.vertical.add({dot(i)}, cc);
      out.complete.add({i}, cc);
      for (int j = 0; j < m; ++j) out.complete.add({dot(i)}, xdot(j) * c.partial(static_cast<std::size_t>(j)).on(tc));
    } else {
      const int i = idx[0], j = idx[1];
      out.vertical.add({dot(i), dot(j)}, cc);
      out.complete.add({dot(i), j}, cc);
      out.complete.add({i, dot(j)}, cc);
      for (int k = 0; k < m; ++k)
        out.complete.add({dot(i), dot(j)}, xdot(k) * c.partial(static_cast<std::size_t>(k)).on(tc));
    }
  }
  return out;
}

Cocycle lift_cocycle(const JacobiStructure& j) {
  const auto a = jacobi_algebroid(j);
  Cocycle phi = a.zero_cocycle();
  for (const auto& [idx, c] : j.e_field().components())
    phi.components[static_cast<std::size_t>(idx[0])] = -c.on(a.base_chart());
  return phi;
}

JacobiStructure jacobi_tangent_lift(const JacobiStructure& j) {
  const auto a = jacobi_algebroid(j);
  const auto& dual = a.dual_chart();
  const std::string& tname = (*dual)[dual->dim() - 1].name;
  const auto lam = complete_vertical_lift(j.lambda());
  const auto e = complete_vertical_lift(j.e_field());
  const auto dt = coordinate_field(dual, tname);
  const auto t = ExpPoly::var(dual, tname);
  Multivector lambda = lam.complete.on(dual) + wedge(dt, e.complete.on(dual)) -
                       t * (lam.vertical.on(dual) + wedge(dt, e.vertical.on(dual)));
  return JacobiStructure(lambda, e.vertical.on(dual));
}

std::string_view step_name(Step s) {
  switch (s) {
    case Step::algebroid: return "algebroid";
    case Step::cocycle: return "cocycle";
    case Step::forward: return "forward";
    case Step::expected: return "expected";
    case Step::roundtrip: return "roundtrip";
    case Step::input: return "input";
    case Step::linearity: return "linearity";
    case Step::inverse: return "inverse";
    case Step::contact: return "contact";
    case Step::poissonization: return "poissonization";
    case Step::complete_lift: return "complete_lift";
    case Step::tangent_lift: return "tangent_lift";
    case Step::jacobi_lift: return "jacobi_lift";
    case Step::nondegenerate: return "nondegenerate";
  }
  return "?";
}

namespace {

ExpPoly num(const ChartPtr& c, const Rat& r) { return ExpPoly::constant(c, r); }

struct Entry {
  int i, j, k;
  Rat c;
};

// Lie algebra over a point from its nonzero c_ij^k (0-based).
AlgebroidPatch lie_algebra(int n, const std::vector<Entry>& table, std::vector<std::string> basis = {}) {
  AlgebroidPatch g(Chart::empty(), n, std::move(basis));
  for (const auto& e : table) g.set_structure(e.i, e.j, e.k, num(g.base_chart(), e.c));
  return g;
}

Cocycle constant_cocycle(const AlgebroidPatch& a, const std::vector<Rat>& values) {
  Cocycle phi;
  for (const auto& v : values) phi.components.push_back(num(a.base_chart(), v));
  return phi;
}

ChartPtr numbered_chart(int m) {
  std::vector<Coordinate> coords;
  for (int i = 1; i <= m; ++i) coords.push_back({"x" + std::to_string(i), Role::base});
  return Chart::make(coords);
}

AlgebroidPatch trivial_tangent_patch(int m, std::vector<std::string> fibers = {}) {
  auto c = numbered_chart(m);
  const int rank = static_cast<int>(fibers.empty() ? m : fibers.size());
  AlgebroidPatch a(c, rank, {}, std::move(fibers));
  for (int i = 0; i < m; ++i) a.set_anchor(i, coordinate_field(c, "x" + std::to_string(i + 1)));
  return a;
}

// "c*body" with the sign in front; "0" for c = 0.
std::string scaled(const Rat& c, const std::string& body) {
  if (c.is_zero()) return "0";
  return (c.sign() < 0 ? "-" : "") + c.abs().str() + body;
}

// -1 d/dx1^d/dmu1 - ... - 1 d/dxm^d/dmum
std::string canonical_pairs(int m) {
  std::string out;
  for (int i = 1; i <= m; ++i) {
    const std::string k = std::to_string(i);
    out += (i == 1 ? "-1 d/dx" : " - 1 d/dx") + k + "^d/dmu" + k;
  }
  return out;
}

const std::vector<Step> kPairSteps = {Step::algebroid, Step::cocycle, Step::forward, Step::expected, Step::roundtrip,
                                      Step::poissonization};

std::vector<Step> with(std::vector<Step> steps, std::initializer_list<Step> more) {
  steps.insert(steps.end(), more);
  return steps;
}

GalleryCase pair_case(std::string name, std::string summary, AlgebroidPatch a, const Cocycle& phi,
                      std::string lambda, std::string e) {
  GalleryCase c;
  c.name = std::move(name);
  c.summary = std::move(summary);
  c.pair = AlgebroidWithCocycle::make(std::move(a), phi);
  c.expected_lambda = std::move(lambda);
  c.expected_e = std::move(e);
  c.checklist = kPairSteps;
  return c;
}

// Hand expansions below: Lambda = sum c_ij^k mu_k d_i^d_j + sum rho^l_i d/dmu_i^d/dx^l + Delta ^ phi^v,
// E = -phi^v, written in the canonical term order.

GalleryCase abelian2() {
  auto g = lie_algebra(2, {});
  return pair_case("abelian2", "abelian R^2 with cocycle (1, -2)", g, constant_cocycle(g, {Rat(1), Rat(-2)}),
                   "-2*mu1 d/dmu1^d/dmu2 - 1*mu2 d/dmu1^d/dmu2", "-1 d/dmu1 + 2 d/dmu2");
}

GalleryCase aff1(const Rat& a) {
  auto g = lie_algebra(2, {{0, 1, 1, Rat(1)}});
  auto c = pair_case("aff1(" + a.str() + ")", "aff(1), [e_1, e_2] = e_2, cocycle (" + a.str() + ", 0)", g,
                     constant_cocycle(g, {a, Rat(0)}), scaled(Rat(1) - a, "*mu2 d/dmu1^d/dmu2"),
                     scaled(-a, " d/dmu1"));
  if (a.is_zero()) c.checklist.push_back(Step::complete_lift);
  return c;
}

GalleryCase heisenberg3() {
  auto g = lie_algebra(3, {{0, 1, 2, Rat(1)}});
  return pair_case("heisenberg3", "Heisenberg algebra, [e_1, e_2] = e_3, cocycle (1, 2, 0)", g,
                   constant_cocycle(g, {Rat(1), Rat(2), Rat(0)}),
                   "2*mu1 d/dmu1^d/dmu2 - 1*mu2 d/dmu1^d/dmu2 + 1*mu3 d/dmu1^d/dmu2 - 1*mu3 d/dmu1^d/dmu3 - "
                   "2*mu3 d/dmu2^d/dmu3",
                   "-1 d/dmu1 - 2 d/dmu2");
}

GalleryCase so3() {
  auto g = lie_algebra(3, {{0, 1, 2, Rat(1)}, {1, 2, 0, Rat(1)}, {2, 0, 1, Rat(1)}});
  auto c = pair_case("so3", "so(3) with the zero cocycle", g, g.zero_cocycle(),
                     "1*mu3 d/dmu1^d/dmu2 - 1*mu2 d/dmu1^d/dmu3 + 1*mu1 d/dmu2^d/dmu3", "0");
  c.checklist.push_back(Step::complete_lift);
  return c;
}

GalleryCase sl2() {
  auto g = lie_algebra(3, {{0, 1, 1, Rat(2)}, {0, 2, 2, Rat(-2)}, {1, 2, 0, Rat(1)}}, {"h", "e", "f"});
  auto c = pair_case("sl2", "sl(2) in the basis h, e, f with the zero cocycle", g, g.zero_cocycle(),
                     "2*mu2 d/dmu1^d/dmu2 - 2*mu3 d/dmu1^d/dmu3 + 1*mu1 d/dmu2^d/dmu3", "0");
  c.checklist.push_back(Step::complete_lift);
  return c;
}

GalleryCase trivial_tangent(int m) {
  auto a = trivial_tangent_patch(m);
  auto c = pair_case("trivial_tangent(" + std::to_string(m) + ")", "TR^" + std::to_string(m) + " with the zero cocycle", a,
                     a.zero_cocycle(), canonical_pairs(m), "0");
  c.checklist.push_back(Step::complete_lift);
  c.checklist.push_back(Step::nondegenerate);
  return c;
}

GalleryCase lcs() {
  auto a = trivial_tangent_patch(2);
  auto c = pair_case("lcs_T*R2", "TR^2 with the closed form dx1 as cocycle", a,
                     constant_cocycle(a, {Rat(1), Rat(0)}), canonical_pairs(2) + " - 1*mu2 d/dmu1^d/dmu2",
                     "-1 d/dmu1");
  c.checklist.push_back(Step::nondegenerate);
  return c;
}

GalleryCase tangent_lift_so3star() {
  auto x = numbered_chart(3);
  auto v = [&](int i) { return ExpPoly::var(x, static_cast<std::size_t>(i)); };
  auto d = [&](int i) { return Multivector::basis(x, {i}); };
  Multivector lambda = v(2) * wedge(d(0), d(1)) - v(1) * wedge(d(0), d(2)) + v(0) * wedge(d(1), d(2));
  Multivector rot = v(1) * d(0) - v(0) * d(1);
  auto a = cotangent_algebroid(lambda);
  Cocycle phi;
  for (int i = 0; i < 3; ++i) phi.components.push_back(rot.component({i}));

  GalleryCase c;
  c.name = "tangent_lift_so3star";
  c.summary = "cotangent algebroid of so(3)* with the rotation x2 d/dx1 - x1 d/dx2 as cocycle";
  c.pair = AlgebroidWithCocycle::make(a, phi);
  c.base_poisson = lambda;
  c.automorphism = rot;
  c.checklist = {Step::algebroid, Step::cocycle, Step::forward, Step::tangent_lift, Step::complete_lift,
                 Step::roundtrip, Step::poissonization};
  return c;
}

// TM x R over R^m with cocycle (0, -1) against the contact form dt + sum mu_i dx^i.
GalleryCase contact_r(int m) {
  std::vector<std::string> fibers;
  for (int i = 1; i <= m; ++i) fibers.push_back("mu" + std::to_string(i));
  fibers.push_back("t");
  auto a = trivial_tangent_patch(m, fibers);
  std::vector<Rat> phi(static_cast<std::size_t>(m), Rat(0));
  phi.push_back(Rat(-1));

  std::string lambda = canonical_pairs(m);
  for (int i = 1; i <= m; ++i) lambda += " - 1*mu" + std::to_string(i) + " d/dmu" + std::to_string(i) + "^d/dt";
  auto c = pair_case("contact_R(" + std::to_string(m) + ")", "TR^" + std::to_string(m) + " x R with cocycle (0, -1) and its contact form", a,
                     constant_cocycle(a, phi), lambda, "1 d/dt");
  const auto& dual = c.pair->algebroid().dual_chart();
  DiffForm eta = coordinate_form(dual, "t");
  for (int i = 1; i <= m; ++i)
    eta += ExpPoly::var(dual, "mu" + std::to_string(i)) * coordinate_form(dual, "x" + std::to_string(i));
  c.contact = eta;
  c.jacobi = contact_to_jacobi(eta);
  c.checklist = with(c.checklist, {Step::contact, Step::input, Step::linearity, Step::inverse, Step::jacobi_lift});
  return c;
}

GalleryCase jacobi_lift_r() {
  auto x = Chart::make({{"x", Role::base}});
  JacobiStructure j(Multivector(x, 2), coordinate_field(x, "x"));
  GalleryCase c;
  c.name = "jacobi_lift_R";
  c.summary = "T*R x R of (0, d/dx) with cocycle (-E, 0) against the lift formula";
  c.jacobi = j;
  c.pair = AlgebroidWithCocycle::make(jacobi_algebroid(j), lift_cocycle(j));
  // L^c + d/dt ^ E^c - t (L^v + d/dt ^ E^v) with L = 0, E^c = d/dx, E^v = d/dxdot.
  c.expected_lambda = "-1 d/dx^d/dt + 1*t d/dxdot^d/dt";
  c.expected_e = "1 d/dxdot";
  c.checklist = {Step::input,     Step::algebroid, Step::cocycle,   Step::forward,
                 Step::expected,  Step::jacobi_lift, Step::roundtrip, Step::poissonization};
  return c;
}

GalleryCase poissonization_aff1() {
  auto c = aff1(Rat(2));
  c.name = "poissonization_aff1";
  c.summary = "aff(1) with cocycle (2, 0), its poissonization and hat algebroid";
  // exp(-t) (-mu2 d/dmu1^d/dmu2 + d/dt ^ (-2 d/dmu1))
  c.expected_poisson = "-1*mu2*exp(-1*t) d/dmu1^d/dmu2 + 2*exp(-1*t) d/dmu1^d/dt";
  return c;
}

GalleryCase remark() {
  auto xy = Chart::make({{"x", Role::fiber}, {"y", Role::fiber}});
  auto x = ExpPoly::var(xy, "x");
  GalleryCase c;
  c.name = "remark_counterexample";
  c.summary = "x y d/dx^d/dy with E = x d/dx on R^2 as a bundle over a point; linear brackets, yet {x, 1} = -x";
  c.jacobi = JacobiStructure((x * ExpPoly::var(xy, "y")) * wedge(coordinate_field(xy, "x"), coordinate_field(xy, "y")),
                             x * coordinate_field(xy, "x"));
  c.checklist = {Step::input, Step::linearity, Step::inverse, Step::jacobi_lift};
  c.expected_verdicts = {{"C2", Verdict::fail}, {"inverse", Verdict::fail}};
  return c;
}

int small_dim(const std::string& arg, const std::string& name) {
  if (arg.size() != 1 || arg[0] < '1' || arg[0] > '3') throw InvalidInput(name + ": dimension must be 1, 2 or 3");
  return arg[0] - '0';
}

CheckRecord compare(std::string name, const std::string& got, const std::string& want) {
  if (got == want) return {std::move(name), Verdict::pass, "", 0.0};
  return {std::move(name), Verdict::fail, "got " + got + ", expected " + want, 0.0};
}

CheckRecord zero_check(std::string name, const Multivector& residual) {
  if (residual.is_zero()) return {std::move(name), Verdict::pass, "", 0.0};
  return {std::move(name), Verdict::fail, residual.str(), 0.0};
}

CheckRecord jacobi_match(std::string name, const JacobiStructure& got, const JacobiStructure& want) {
  if (got == want) return {std::move(name), Verdict::pass, "", 0.0};
  const auto w = want.on(got.chart());
  return {std::move(name), Verdict::fail,
          "lambda - expected = " + (got.lambda() - w.lambda()).str() + "; E - expected = " +
              (got.e_field() - w.e_field()).str(),
          0.0};
}

JacobiStructure on_base_roles(const JacobiStructure& j) {
  return j.on(relabel_roles(j.chart(), Role::fiber, Role::base));
}

Report complete_lift_report(const Multivector& lambda) {
  Report r;
  const auto lifts = complete_vertical_lift(lambda);
  const auto image = psi_forward(AlgebroidWithCocycle::make(cotangent_algebroid(lambda),
                                                            cotangent_algebroid(lambda).zero_cocycle()));
  r.add(zero_check("lift.complete", image.lambda() - lifts.complete.on(image.chart())));
  return r;
}

Report run_step(const GalleryCase& c, Step s) {
  Report r;
  auto need_pair = [&]() -> const AlgebroidWithCocycle& {
    if (!c.pair) throw InvalidInput("step needs an algebroid with cocycle");
    return *c.pair;
  };
  auto need_jacobi = [&]() -> const JacobiStructure& {
    if (!c.jacobi) throw InvalidInput("step needs a Jacobi structure");
    return *c.jacobi;
  };
  switch (s) {
    case Step::algebroid: return verify_algebroid(need_pair().algebroid());
    case Step::cocycle: return verify_cocycle(need_pair().algebroid(), need_pair().cocycle());
    case Step::forward: return forward_report(need_pair());
    case Step::expected: {
      const auto f = psi_forward(need_pair());
      if (!c.expected_lambda.empty()) r.add(compare("expected.lambda", f.lambda().str(), c.expected_lambda));
      if (!c.expected_e.empty()) r.add(compare("expected.efield", f.e_field().str(), c.expected_e));
      return r;
    }
    case Step::roundtrip:
      r.append(roundtrip_check(need_pair()));
      r.append(roundtrip_check(psi_forward(need_pair())));
      return r;
    case Step::input: return verify_jacobi(need_jacobi());
    case Step::linearity:
      r.append(check_C1(need_jacobi()));
      r.append(check_C2(need_jacobi()));
      return r;
    case Step::inverse:
      try {
        psi_inverse(need_jacobi());
      } catch (const InverseError& e) {
        r.add("inverse", Verdict::fail, e.what());
        return r;
      }
      r.add("inverse", Verdict::pass);
      r.append(roundtrip_check(need_jacobi()));
      return r;
    case Step::contact: {
      if (!c.contact) throw InvalidInput("step needs a contact form");
      r.add(jacobi_match("contact.matches_forward", psi_forward(need_pair()), contact_to_jacobi(*c.contact)));
      return r;
    }
    case Step::poissonization: {
      const auto f = psi_forward(need_pair());
      const auto hat = poissonization(f);
      r.add(zero_check("poissonization.schouten", sn_bracket(hat, hat)));
      if (!c.expected_poisson.empty()) r.add(compare("poissonization.expected", hat.str(), c.expected_poisson));
      const auto ha = hat_algebroid(need_pair());
      const bool same = psi_inverse(JacobiStructure::poisson(hat)) == AlgebroidWithCocycle::make(ha, ha.zero_cocycle());
      r.add("poissonization.hat_algebroid", same ? Verdict::pass : Verdict::fail,
            same ? "" : "inverse of the poissonization differs from the hat algebroid");
      return r;
    }
    case Step::complete_lift: {
      if (c.base_poisson) return complete_lift_report(*c.base_poisson);
      const auto f = on_base_roles(psi_forward(need_pair()));
      if (!f.is_poisson_pair()) throw InvalidInput("complete lift needs a Poisson image");
      return complete_lift_report(f.lambda());
    }
    case Step::tangent_lift: {
      if (!c.base_poisson || !c.automorphism) throw InvalidInput("step needs a Poisson bivector and an automorphism");
      r.add(zero_check("lift.automorphism", sn_bracket(*c.automorphism, *c.base_poisson)));
      const auto f = psi_forward(need_pair());
      const auto& chart = f.chart();
      const auto lam = complete_vertical_lift(*c.base_poisson);
      const auto x = complete_vertical_lift(*c.automorphism);
      const JacobiStructure want(lam.complete.on(chart) + wedge(liouville(chart), x.vertical.on(chart)),
                                 -x.vertical.on(chart));
      r.add(jacobi_match("lift.tangent", f, want));
      return r;
    }
    case Step::jacobi_lift: {
      const auto j = on_base_roles(need_jacobi());
      const auto a = jacobi_algebroid(j);
      const auto phi = lift_cocycle(j);
      const auto cocycle = verify_cocycle(a, phi);
      r.add({"lift.cocycle", cocycle.all_pass() ? Verdict::pass : Verdict::fail,
             cocycle.all_pass() ? "" : cocycle.checks().front().residual, 0.0});
      if (cocycle.all_pass())
        r.add(jacobi_match("lift.jacobi", psi_forward(AlgebroidWithCocycle::make(a, phi)), jacobi_tangent_lift(j)));
      return r;
    }
    case Step::nondegenerate: {
      const auto lambda = psi_forward(need_pair()).lambda();
      const auto n = check_nondegenerate(lambda);
      r.add({"nondegenerate", n == Nondegeneracy::nondegenerate_constant ? Verdict::pass : Verdict::fail,
             n == Nondegeneracy::nondegenerate_constant
                 ? ""
                 : std::string(nondegeneracy_name(n)) + ", pfaffian " + pfaffian(lambda).str(),
             0.0});
      return r;
    }
  }
  return r;
}

bool input_side(Step s) { return s == Step::input || s == Step::linearity || s == Step::inverse; }

}  // namespace

std::vector<std::string> catalog() {
  return {"abelian2",    "aff1(0)",    "aff1(1)",       "aff1(2)",       "heisenberg3",
          "so3",         "sl2",        "trivial_tangent(2)", "lcs_T*R2", "tangent_lift_so3star",
          "contact_R(1)", "contact_R(2)", "jacobi_lift_R", "poissonization_aff1", "remark_counterexample"};
}

GalleryCase build_case(const std::string& name) {
  const auto open = name.find('(');
  const std::string head = name.substr(0, open);
  std::optional<std::string> arg;
  if (open != std::string::npos) {
    if (name.back() != ')' || name.size() < open + 3) throw InvalidInput("malformed case name '" + name + "'");
    arg = name.substr(open + 1, name.size() - open - 2);
  }
  auto plain = [&](GalleryCase (*make)()) {
    if (arg) throw InvalidInput("case '" + head + "' takes no parameter");
    return make();
  };
  auto need = [&]() -> const std::string& {
    if (!arg) throw InvalidInput("case '" + head + "' needs a parameter, e.g. " + head + "(2)");
    return *arg;
  };
  if (head == "aff1") {
    Rat a;
    try {
      a = Rat::parse(need());
    } catch (const std::invalid_argument&) {
      throw InvalidInput("aff1: parameter must be a rational number");
    }
    return aff1(a);
  }
  if (head == "trivial_tangent") return trivial_tangent(small_dim(need(), head));
  if (head == "contact_R") return contact_r(small_dim(need(), head));
  if (head == "abelian2") return plain(abelian2);
  if (head == "heisenberg3") return plain(heisenberg3);
  if (head == "so3") return plain(so3);
  if (head == "sl2") return plain(sl2);
  if (head == "lcs_T*R2") return plain(lcs);
  if (head == "tangent_lift_so3star") return plain(tangent_lift_so3star);
  if (head == "jacobi_lift_R") return plain(jacobi_lift_r);
  if (head == "poissonization_aff1") return plain(poissonization_aff1);
  if (head == "remark_counterexample") return plain(remark);
  throw InvalidInput("unknown gallery case '" + name + "'");
}

Report run_case(const GalleryCase& c) {
  Report r;
  const bool prefix = c.pair && c.jacobi;
  for (Step s : c.checklist) {
    r.timed([&] {
      Report part;
      try {
        part = run_step(c, s);
      } catch (const Error& e) {
        part.add(std::string(step_name(s)), Verdict::error, e.what());
      }
      if (!prefix || !input_side(s)) return part;
      Report renamed;
      for (auto rec : part.checks()) {
        rec.name = "input." + rec.name;
        renamed.add(std::move(rec));
      }
      return renamed;
    });
  }
  return r;
}

bool case_ok(const GalleryCase& c, const Report& r) {
  for (const auto& [name, v] : c.expected_verdicts)
    if (!r.find(name)) return false;
  for (const auto& rec : r.checks()) {
    auto it = c.expected_verdicts.find(rec.name);
    if (rec.verdict != (it == c.expected_verdicts.end() ? Verdict::pass : it->second)) return false;
  }
  return !r.empty();
}

SpecFile to_spec(const GalleryCase& c) {
  SpecFile s;
  if (c.contact)
    s.patch = c.contact->chart();
  else if (c.jacobi)
    s.patch = c.jacobi->chart();
  else if (c.pair)
    s.patch = c.pair->algebroid().base_chart();
  if (c.pair) {
    if (!(*drop_role(s.patch, Role::fiber) == *c.pair->algebroid().base_chart()))
      throw InvalidInput("to_spec: algebroid base does not match the patch");
    s.algebroid = c.pair->algebroid();
    s.cocycle = c.pair->cocycle();
  }
  if (c.jacobi) s.jacobi = c.jacobi->on(s.patch);
  s.contact = c.contact;
  return s;
}

}  // namespace linjac
