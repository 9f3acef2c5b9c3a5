#include "linjac/jacobi.hpp"

#include <unordered_map>

namespace linjac {

JacobiStructure::JacobiStructure(Multivector lambda, Multivector e_field)
    : lambda_(std::move(lambda)), e_field_(std::move(e_field)) {
  if (lambda_.grade() != 2) throw InvalidInput("Jacobi structure: lambda must be a bivector");
  if (e_field_.grade() != 1) throw InvalidInput("Jacobi structure: E must be a vector field");
  if (!same_chart(lambda_.chart(), e_field_.chart())) throw ChartMismatch("Jacobi structure: lambda and E on different charts");
}

JacobiStructure JacobiStructure::poisson(Multivector lambda) {
  auto chart = lambda.chart();
  return JacobiStructure(std::move(lambda), Multivector(chart, 1));
}

JacobiStructure JacobiStructure::on(const ChartPtr& target) const {
  return JacobiStructure(lambda_.on(target), e_field_.on(target));
}

ExpPoly jacobi_bracket(const JacobiStructure& j, const ExpPoly& f, const ExpPoly& g) {
  if (!same_chart(j.chart(), f.chart()) || !same_chart(j.chart(), g.chart()))
    throw ChartMismatch("jacobi_bracket: functions not on the structure's chart");
  return pairing(j.lambda(), differential(f), differential(g)) + f * apply(j.e_field(), g) -
         g * apply(j.e_field(), f);
}

Report verify_jacobi(const JacobiStructure& j) {
  Report r;
  const auto ll = sn_bracket(j.lambda(), j.lambda()) - Rat(2) * wedge(j.e_field(), j.lambda());
  r.add("jacobi.lambda_lambda", ll.is_zero() ? Verdict::pass : Verdict::fail, ll.is_zero() ? "" : ll.str());
  const auto el = sn_bracket(j.e_field(), j.lambda());
  r.add("jacobi.e_lambda", el.is_zero() ? Verdict::pass : Verdict::fail, el.is_zero() ? "" : el.str());
  return r;
}

namespace {

std::vector<std::size_t> non_fiber(const Chart& c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.dim(); ++i)
    if (c[i].role != Role::fiber) out.push_back(i);
  return out;
}

std::string label(const Chart& c, std::size_t a, std::string_view b) {
  return "{" + c[a].name + "," + std::string(b) + "}";
}

}  // namespace

Report check_C1(const JacobiStructure& j) {
  const auto& chart = j.chart();
  const auto fibers = chart->indices_with(Role::fiber);
  if (fibers.empty()) throw InvalidInput("check_C1: chart has no fiber coordinates");
  const auto base = non_fiber(*chart);
  const auto one = ExpPoly::constant(chart, Rat(1));

  std::vector<std::string> bad_pairs, bad_mixed, bad_base, bad_unit;
  for (std::size_t a = 0; a < fibers.size(); ++a)
    for (std::size_t b = a + 1; b < fibers.size(); ++b) {
      const auto v = jacobi_bracket(j, ExpPoly::var(chart, fibers[a]), ExpPoly::var(chart, fibers[b]));
      if (!v.is_zero() && !v.is_linear()) bad_pairs.push_back(label(*chart, fibers[a], (*chart)[fibers[b]].name) + " = " + v.str());
    }
  for (auto f : fibers)
    for (auto l : base) {
      const auto v = jacobi_bracket(j, ExpPoly::var(chart, f), ExpPoly::var(chart, l));
      if (!v.is_basic()) bad_mixed.push_back(label(*chart, f, (*chart)[l].name) + " = " + v.str());
    }
  for (std::size_t a = 0; a < base.size(); ++a) {
    for (std::size_t b = a + 1; b < base.size(); ++b) {
      const auto v = jacobi_bracket(j, ExpPoly::var(chart, base[a]), ExpPoly::var(chart, base[b]));
      if (!v.is_zero()) bad_base.push_back(label(*chart, base[a], (*chart)[base[b]].name) + " = " + v.str());
    }
    const auto u = jacobi_bracket(j, ExpPoly::var(chart, base[a]), one);
    if (!u.is_zero()) bad_unit.push_back(label(*chart, base[a], "1") + " = " + u.str());
  }
  Report r;
  r.add(verdict_from_residuals("C1.fiber_pairs", bad_pairs));
  r.add(verdict_from_residuals("C1.fiber_base", bad_mixed));
  r.add(verdict_from_residuals("C1.base_pairs", bad_base));
  r.add(verdict_from_residuals("C1.base_unit", bad_unit));
  return r;
}

Report check_C2(const JacobiStructure& j) {
  const auto& chart = j.chart();
  const auto fibers = chart->indices_with(Role::fiber);
  if (fibers.empty()) throw InvalidInput("check_C2: chart has no fiber coordinates");
  const auto one = ExpPoly::constant(chart, Rat(1));
  std::vector<std::string> bad;
  for (auto f : fibers) {
    const auto v = jacobi_bracket(j, ExpPoly::var(chart, f), one);
    if (!v.is_basic()) bad.push_back(v.str());
  }
  Report r;
  r.add(verdict_from_residuals("C2", bad));
  return r;
}

namespace {

using Matrix = std::vector<std::vector<ExpPoly>>;

// Laplace expansion along rows with memoization on the set of used columns.
ExpPoly determinant(const Matrix& m, const ChartPtr& chart) {
  const std::size_t n = m.size();
  std::unordered_map<unsigned, ExpPoly> memo;
  auto rec = [&](auto&& self, std::size_t row, unsigned used) -> ExpPoly {
    if (row == n) return ExpPoly::constant(chart, Rat(1));
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    ExpPoly out(chart);
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
      if (used & (1u << col)) continue;
      if (!m[row][col].is_zero()) {
        auto term = m[row][col] * self(self, row + 1, used | (1u << col));
        if (sign > 0)
          out += term;
        else
          out -= term;
      }
      sign = -sign;
    }
    memo.emplace(used, out);
    return out;
  };
  return rec(rec, 0, 0u);
}

Matrix minor_of(const Matrix& m, std::size_t row, std::size_t col) {
  Matrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<ExpPoly> r;
    for (std::size_t k = 0; k < m.size(); ++k)
      if (k != col) r.push_back(m[i][k]);
    out.push_back(std::move(r));
  }
  return out;
}

// Inverse of a unit c * s^k of the coefficient ring.
std::optional<ExpPoly> unit_inverse(const ExpPoly& p) {
  if (p.terms().size() != 1) return std::nullopt;
  const auto& [mono, c] = *p.terms().begin();
  if (mono.degree() != 0) return std::nullopt;
  Monomial inv = mono;
  inv.s = -mono.s;
  return ExpPoly::term(p.chart(), inv, Rat(1) / c);
}

}  // namespace

JacobiStructure contact_to_jacobi(const DiffForm& eta) {
  if (eta.grade() != 1) throw InvalidInput("contact_to_jacobi: eta must be a 1-form");
  const auto& chart = eta.chart();
  const std::size_t n = chart->dim();
  if (n % 2 == 0) throw InvalidInput("contact_to_jacobi: chart dimension must be odd");
  if (n > 16) throw InvalidInput("contact_to_jacobi: chart too large");
  const auto deta = exterior_d(eta);

  // (flat X)_b = sum_a X^a F[a][b]
  Matrix flat(n, std::vector<ExpPoly>(n, ExpPoly(chart)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      flat[a][b] = deta.component({static_cast<int>(a), static_cast<int>(b)}) +
                   eta.component({static_cast<int>(a)}) * eta.component({static_cast<int>(b)});

  const auto det = determinant(flat, chart);
  const auto det_inv = unit_inverse(det);
  if (!det_inv) throw InvalidInput("contact_to_jacobi: flat map is not invertible over the coefficient ring (det = " + det.str() + ")");

  Matrix inv(n, std::vector<ExpPoly>(n, ExpPoly(chart)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto cof = determinant(minor_of(flat, b, a), chart) * *det_inv;
      inv[a][b] = (a + b) % 2 ? -cof : cof;
    }

  // flat^-1(alpha)^a = sum_b alpha_b inv[b][a]
  Multivector e(chart, 1);
  for (std::size_t a = 0; a < n; ++a) {
    ExpPoly comp(chart);
    for (std::size_t b = 0; b < n; ++b) comp += eta.component({static_cast<int>(b)}) * inv[b][a];
    e.add({static_cast<int>(a)}, comp);
  }
  Multivector lambda(chart, 2);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = c + 1; d < n; ++d) {
      ExpPoly comp(chart);
      for (const auto& [idx, w] : deta.components()) {
        const auto a = static_cast<std::size_t>(idx[0]);
        const auto b = static_cast<std::size_t>(idx[1]);
        comp += w * (inv[c][a] * inv[d][b] - inv[c][b] * inv[d][a]);
      }
      lambda.add({static_cast<int>(c), static_cast<int>(d)}, comp);
    }
  JacobiStructure j(std::move(lambda), std::move(e));
  if (!verify_jacobi(j).all_pass()) throw InvalidInput("contact_to_jacobi: result is not a Jacobi structure");
  return j;
}

}  // namespace linjac
