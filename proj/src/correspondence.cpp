#include "linjac/correspondence.hpp"

namespace linjac {

namespace {

std::string failures(const Report& r) {
  std::string out;
  for (const auto& c : r.checks()) {
    if (c.verdict == Verdict::pass) continue;
    if (!out.empty()) out += "; ";
    out += c.name + ": " + c.residual;
  }
  return out;
}

std::size_t fiber_index(const AlgebroidPatch& a, int i) {
  return a.base_chart()->dim() + static_cast<std::size_t>(i);
}

}  // namespace

AlgebroidWithCocycle AlgebroidWithCocycle::make(AlgebroidPatch algebroid, Cocycle cocycle) {
  auto r = verify_algebroid(algebroid);
  if (!r.all_pass()) throw InvalidInput("not a Lie algebroid: " + failures(r));
  auto rc = verify_cocycle(algebroid, cocycle);
  if (!rc.all_pass()) throw InvalidInput("not a 1-cocycle: " + failures(rc));
  return AlgebroidWithCocycle(std::move(algebroid), std::move(cocycle));
}

Multivector linear_poisson_dual(const AlgebroidPatch& a) {
  auto r = verify_algebroid(a);
  if (!r.all_pass()) throw InvalidInput("linear_poisson_dual: not a Lie algebroid: " + failures(r));
  const auto& dual = a.dual_chart();
  const int n = a.rank();
  Multivector out(dual, 2);
  for (int i = 0; i < n; ++i) {
    const int fi = static_cast<int>(fiber_index(a, i));
    for (int j = i + 1; j < n; ++j) {
      ExpPoly coeff(dual);
      for (int k = 0; k < n; ++k) {
        const auto c = a.structure(i, j, k);
        if (!c.is_zero()) coeff += c.on(dual) * ExpPoly::var(dual, fiber_index(a, k));
      }
      out.add({fi, static_cast<int>(fiber_index(a, j))}, coeff);
    }
    for (const auto& [idx, rho] : a.anchor(i).components()) out.add({fi, idx[0]}, rho.on(dual));
  }
  return out;
}

Multivector liouville(const ChartPtr& chart) {
  const auto fibers = chart->indices_with(Role::fiber);
  if (fibers.empty()) throw InvalidInput("liouville: chart has no fiber coordinates");
  Multivector out(chart, 1);
  for (auto f : fibers) out.add({static_cast<int>(f)}, ExpPoly::var(chart, f));
  return out;
}

Multivector vertical_lift(const AlgebroidPatch& a, const Cocycle& phi) {
  if (phi.components.size() != static_cast<std::size_t>(a.rank()))
    throw InvalidInput("vertical_lift: cocycle rank does not match the algebroid");
  const auto& dual = a.dual_chart();
  Multivector out(dual, 1);
  for (int i = 0; i < a.rank(); ++i)
    out.add({static_cast<int>(fiber_index(a, i))}, phi.components[static_cast<std::size_t>(i)].on(dual));
  return out;
}

JacobiStructure psi_forward(const AlgebroidWithCocycle& in) {
  const auto& a = in.algebroid();
  const auto phi_v = vertical_lift(a, in.cocycle());
  Multivector lambda = linear_poisson_dual(a);
  if (a.rank() > 0) lambda += wedge(liouville(a.dual_chart()), phi_v);
  return JacobiStructure(std::move(lambda), -phi_v);
}

Report forward_report(const AlgebroidWithCocycle& in) {
  const auto& a = in.algebroid();
  Report r;
  const auto j = psi_forward(in);
  r.append(verify_jacobi(j));
  if (a.rank() > 0) {
    r.append(check_C1(j));
    r.append(check_C2(j));
  }

  const auto& dual = a.dual_chart();
  const auto& base = a.base_chart();
  const auto one = ExpPoly::constant(dual, Rat(1));
  auto mu = [&](int i) { return ExpPoly::var(dual, fiber_index(a, i)); };
  auto x = [&](std::size_t l) { return ExpPoly::var(dual, l); };
  auto label = [&](const std::string& f, const std::string& g, const ExpPoly& diff) {
    return "{" + f + "," + g + "} off by " + diff.str();
  };
  const auto& fib = a.fiber_names();

  std::vector<std::string> pairs, mixed, basic;
  for (int i = 0; i < a.rank(); ++i) {
    for (int k = i + 1; k < a.rank(); ++k) {
      ExpPoly expected(dual);
      for (int m = 0; m < a.rank(); ++m) expected += a.structure(i, k, m).on(dual) * mu(m);
      const auto diff = jacobi_bracket(j, mu(i), mu(k)) - expected;
      if (!diff.is_zero()) pairs.push_back(label(fib[static_cast<std::size_t>(i)], fib[static_cast<std::size_t>(k)], diff));
    }
    const auto phi_i = in.cocycle().components[static_cast<std::size_t>(i)].on(dual);
    for (std::size_t l = 0; l < base->dim(); ++l) {
      const auto expected = apply(a.anchor(i), ExpPoly::var(base, l)).on(dual) + phi_i * x(l);
      const auto diff = jacobi_bracket(j, mu(i), x(l)) - expected;
      if (!diff.is_zero()) mixed.push_back(label(fib[static_cast<std::size_t>(i)], (*base)[l].name, diff));
    }
    const auto diff = jacobi_bracket(j, mu(i), one) - phi_i;
    if (!diff.is_zero()) mixed.push_back(label(fib[static_cast<std::size_t>(i)], "1", diff));
  }
  for (std::size_t k = 0; k < base->dim(); ++k) {
    for (std::size_t l = k + 1; l < base->dim(); ++l) {
      const auto v = jacobi_bracket(j, x(k), x(l));
      if (!v.is_zero()) basic.push_back(label((*base)[k].name, (*base)[l].name, v));
    }
    const auto v = jacobi_bracket(j, x(k), one);
    if (!v.is_zero()) basic.push_back(label((*base)[k].name, "1", v));
  }
  r.add(verdict_from_residuals("forward.linear_pairs", pairs));
  r.add(verdict_from_residuals("forward.linear_basic", mixed));
  r.add(verdict_from_residuals("forward.basic_pairs", basic));
  return r;
}

std::string_view inverse_failure_name(InverseFailure k) {
  switch (k) {
    case InverseFailure::invalid_jacobi: return "invalid_jacobi";
    case InverseFailure::C1: return "C1";
    case InverseFailure::C2: return "C2";
    case InverseFailure::derived_vanishing: return "derived_vanishing";
    case InverseFailure::invalid_result: return "invalid_result";
  }
  return "unknown";
}

InverseError::InverseError(InverseFailure kind, std::string residual)
    : Error(std::string(inverse_failure_name(kind)) + " violation: " + residual),
      kind_(kind),
      residual_(std::move(residual)) {}

namespace {

void require(const Report& r, std::initializer_list<std::string_view> names, InverseFailure kind) {
  std::string residual;
  for (auto n : names) {
    const auto* c = r.find(n);
    if (!c || c->verdict == Verdict::pass) continue;
    if (!residual.empty()) residual += "; ";
    residual += c->residual;
  }
  if (!residual.empty()) throw InverseError(kind, residual);
}

}  // namespace

AlgebroidWithCocycle psi_inverse(const JacobiStructure& j) {
  const auto& chart = j.chart();
  const auto fibers = chart->indices_with(Role::fiber);
  if (fibers.empty()) throw InvalidInput("psi_inverse: chart has no fiber coordinates");

  const auto jr = verify_jacobi(j);
  if (!jr.all_pass()) throw InverseError(InverseFailure::invalid_jacobi, failures(jr));
  const auto c1 = check_C1(j);
  require(c1, {"C1.fiber_pairs", "C1.fiber_base"}, InverseFailure::C1);
  require(check_C2(j), {"C2"}, InverseFailure::C2);
  require(c1, {"C1.base_unit", "C1.base_pairs"}, InverseFailure::derived_vanishing);

  const auto base = drop_role(chart, Role::fiber);
  std::vector<std::string> fiber_names;
  for (auto f : fibers) fiber_names.push_back((*chart)[f].name);
  const int n = static_cast<int>(fibers.size());
  AlgebroidPatch a(base, n, {}, fiber_names);
  const auto one = ExpPoly::constant(chart, Rat(1));
  auto mu = [&](int i) { return ExpPoly::var(chart, fibers[static_cast<std::size_t>(i)]); };

  Cocycle phi;
  for (int i = 0; i < n; ++i) {
    const auto unit = jacobi_bracket(j, mu(i), one);
    phi.components.push_back(unit.on(base));
    for (int k = i + 1; k < n; ++k) {
      const auto v = jacobi_bracket(j, mu(i), mu(k));
      for (int m = 0; m < n; ++m)
        a.set_structure(i, k, m, v.partial(fibers[static_cast<std::size_t>(m)]).on(base));
    }
    Multivector anchor(base, 1);
    for (std::size_t l = 0; l < base->dim(); ++l) {
      const auto xl = ExpPoly::var(chart, (*base)[l].name);
      const auto rho = jacobi_bracket(j, mu(i), xl) - xl * unit;
      anchor.add({static_cast<int>(l)}, rho.on(base));
    }
    a.set_anchor(i, anchor);
  }
  try {
    return AlgebroidWithCocycle::make(std::move(a), std::move(phi));
  } catch (const InvalidInput& e) {
    throw InverseError(InverseFailure::invalid_result, e.what());
  }
}

namespace {

std::string first_difference(const AlgebroidWithCocycle& x, const AlgebroidWithCocycle& y) {
  const auto& a = x.algebroid();
  const auto& b = y.algebroid();
  if (!same_chart(a.base_chart(), b.base_chart())) return "base charts differ";
  if (a.rank() != b.rank()) return "ranks differ";
  const int n = a.rank();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (a.structure(i, j, k) != b.structure(i, j, k))
          return "c[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]^" + std::to_string(k + 1) + ": " +
                 a.structure(i, j, k).str() + " vs " + b.structure(i, j, k).str();
  for (int i = 0; i < n; ++i)
    if (a.anchor(i) != b.anchor(i))
      return "rho(e" + std::to_string(i + 1) + "): " + a.anchor(i).str() + " vs " + b.anchor(i).str();
  for (std::size_t i = 0; i < x.cocycle().components.size(); ++i)
    if (x.cocycle().components[i] != y.cocycle().components[i])
      return "phi" + std::to_string(i + 1) + ": " + x.cocycle().components[i].str() + " vs " +
             y.cocycle().components[i].str();
  return {};
}

}  // namespace

Report roundtrip_check(const AlgebroidWithCocycle& in) {
  Report r;
  try {
    const auto back = psi_inverse(psi_forward(in));
    const auto diff = first_difference(in, back);
    r.add("roundtrip.inverse_of_forward", diff.empty() ? Verdict::pass : Verdict::fail, diff);
  } catch (const InverseError& e) {
    r.add("roundtrip.inverse_of_forward", Verdict::fail, e.what());
  }
  return r;
}

Report roundtrip_check(const JacobiStructure& j) {
  Report r;
  try {
    const auto forward = psi_forward(psi_inverse(j));
    const auto original = j.on(forward.chart());
    std::string diff;
    if (original.lambda() != forward.lambda())
      diff = "Lambda: " + original.lambda().str() + " vs " + forward.lambda().str();
    else if (original.e_field() != forward.e_field())
      diff = "E: " + original.e_field().str() + " vs " + forward.e_field().str();
    r.add("roundtrip.forward_of_inverse", diff.empty() ? Verdict::pass : Verdict::fail, diff);
  } catch (const InverseError& e) {
    r.add("roundtrip.forward_of_inverse", Verdict::fail, e.what());
  }
  return r;
}

std::string time_name(const Chart& chart) {
  return chart.find("t") ? fresh_name(chart, "tau") : "t";
}

Multivector poissonization(const JacobiStructure& j) {
  const auto& chart = j.chart();
  if (chart->time_index()) throw InvalidInput("poissonization: chart already has a time coordinate");
  const auto jr = verify_jacobi(j);
  if (!jr.all_pass()) throw InvalidInput("poissonization: not a Jacobi structure: " + failures(jr));
  const auto t = time_name(*chart);
  const auto ext = extend_chart(chart, {{t, Role::time}});
  const auto inv_s = ExpPoly::exp_t(ext, -1);
  return inv_s * (j.lambda().on(ext) + wedge(coordinate_field(ext, t), j.e_field().on(ext)));
}

AlgebroidPatch hat_algebroid(const AlgebroidWithCocycle& in) {
  const auto& a = in.algebroid();
  const auto& base = a.base_chart();
  if (base->time_index()) throw InvalidInput("hat_algebroid: base already has a time coordinate");
  const auto t = time_name(*a.dual_chart());
  const auto ext = extend_chart(base, {{t, Role::time}});
  const auto inv_s = ExpPoly::exp_t(ext, -1);
  const int n = a.rank();
  auto phi = [&](int i) { return in.cocycle().components[static_cast<std::size_t>(i)].on(ext); };

  AlgebroidPatch out(ext, n, a.basis_names(), a.fiber_names());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ExpPoly c = a.structure(i, j, k).on(ext);
        if (k == j) c -= phi(i);
        if (k == i) c += phi(j);
        out.set_structure(i, j, k, inv_s * c);
      }
    out.set_anchor(i, inv_s * (a.anchor(i).on(ext) + phi(i) * coordinate_field(ext, t)));
  }
  return out;
}

}  // namespace linjac
