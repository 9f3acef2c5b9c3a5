#include "linjac/exterior.hpp"

#include <algorithm>
#include <cstdlib>

namespace linjac {

int sort_with_sign(Index& idx) {
  int sign = 1;
  // insertion sort; index tuples are short
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

namespace {

int parity_sign(int n) { return (std::abs(n) % 2) ? -1 : 1; }

Index without(const Index& idx, std::size_t pos) {
  Index out;
  out.reserve(idx.size() - 1);
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (k != pos) out.push_back(idx[k]);
  return out;
}

Index concat(const Index& a, const Index& b) {
  Index out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void require_grade(const Multivector& x, int grade, const char* what) {
  if (x.grade() != grade) throw InvalidInput(std::string(what) + ": wrong grade");
}

}  // namespace

Multivector coordinate_field(const ChartPtr& chart, std::string_view name) {
  return Multivector::basis(chart, Index{static_cast<int>(chart->index_of(name))});
}

DiffForm coordinate_form(const ChartPtr& chart, std::string_view name) {
  return DiffForm::basis(chart, Index{static_cast<int>(chart->index_of(name))});
}

DiffForm differential(const ExpPoly& f) { return exterior_d(DiffForm::scalar(f)); }

ExpPoly apply(const Multivector& x, const ExpPoly& f) {
  require_grade(x, 1, "apply");
  if (!same_chart(x.chart(), f.chart())) throw ChartMismatch("apply: vector field and function on different charts");
  ExpPoly out(f.chart());
  for (const auto& [idx, c] : x.components()) {
    auto d = f.partial(static_cast<std::size_t>(idx[0]));
    if (!d.is_zero()) out += c * d;
  }
  return out;
}

Multivector sn_bracket(const Multivector& p, const Multivector& q) {
  if (!same_chart(p.chart(), q.chart())) throw ChartMismatch("sn_bracket: fields on different charts");
  const int pg = p.grade();
  const int qg = q.grade();
  Multivector out(p.chart(), pg + qg - 1);

  // right derivative in the odd variable of P, then d/dx^i of Q
  for (const auto& [ip, cp] : p.components()) {
    for (std::size_t m = 0; m < ip.size(); ++m) {
      const int rs = parity_sign(pg - 1 - static_cast<int>(m));
      const Index rest = without(ip, m);
      for (const auto& [iq, cq] : q.components()) {
        auto dq = cq.partial(static_cast<std::size_t>(ip[m]));
        if (dq.is_zero()) continue;
        out.add(concat(rest, iq), Rat(rs) * (cp * dq));
      }
    }
  }
  const int swap_sign = -parity_sign((pg - 1) * (qg - 1));
  for (const auto& [iq, cq] : q.components()) {
    for (std::size_t m = 0; m < iq.size(); ++m) {
      const int rs = parity_sign(qg - 1 - static_cast<int>(m));
      const Index rest = without(iq, m);
      for (const auto& [ip, cp] : p.components()) {
        auto dp = cp.partial(static_cast<std::size_t>(iq[m]));
        if (dp.is_zero()) continue;
        out.add(concat(rest, ip), Rat(swap_sign * rs) * (cq * dp));
      }
    }
  }
  // The sum above is the bracket with [P,Q] = -(-1)^((p-1)(q-1)) [Q,P]; the
  // factor (-1)^(p-1) turns it into the convention in which Jacobi pairs
  // satisfy [L,L] = 2 E^L.
  if (parity_sign(pg - 1) < 0) out = Rat(-1) * out;
  return out;
}

DiffForm exterior_d(const DiffForm& w) {
  DiffForm out(w.chart(), w.grade() + 1);
  const auto n = static_cast<int>(w.chart()->dim());
  for (const auto& [idx, c] : w.components()) {
    for (int k = 0; k < n; ++k) {
      auto dc = c.partial(static_cast<std::size_t>(k));
      if (dc.is_zero()) continue;
      Index with_k{k};
      with_k.insert(with_k.end(), idx.begin(), idx.end());
      out.add(std::move(with_k), dc);
    }
  }
  return out;
}

DiffForm interior(const Multivector& p, const DiffForm& w) {
  if (!same_chart(p.chart(), w.chart())) throw ChartMismatch("interior: fields on different charts");
  if (p.grade() > w.grade()) throw InvalidInput("interior: multivector grade exceeds form degree");
  DiffForm out(w.chart(), w.grade() - p.grade());
  for (const auto& [ip, cp] : p.components()) {
    for (const auto& [iw, cw] : w.components()) {
      Index cur = iw;
      int sign = 1;
      bool hit = true;
      for (int k : ip) {
        auto it = std::find(cur.begin(), cur.end(), k);
        if (it == cur.end()) {
          hit = false;
          break;
        }
        sign *= parity_sign(static_cast<int>(it - cur.begin()));
        cur.erase(it);
      }
      if (hit) out.add(std::move(cur), Rat(sign) * (cp * cw));
    }
  }
  return out;
}

Multivector lie_derivative(const Multivector& x, const Multivector& t) {
  require_grade(x, 1, "lie_derivative");
  return sn_bracket(x, t);
}

DiffForm lie_derivative(const Multivector& x, const DiffForm& w) {
  require_grade(x, 1, "lie_derivative");
  DiffForm out = interior(x, exterior_d(w));
  if (w.grade() > 0) out += exterior_d(interior(x, w));
  return out;
}

ExpPoly pairing(const Multivector& lambda, const DiffForm& alpha, const DiffForm& beta) {
  require_grade(lambda, 2, "pairing");
  if (alpha.grade() != 1 || beta.grade() != 1) throw InvalidInput("pairing: arguments must be 1-forms");
  if (!same_chart(lambda.chart(), alpha.chart()) || !same_chart(lambda.chart(), beta.chart()))
    throw ChartMismatch("pairing: fields on different charts");
  ExpPoly out(lambda.chart());
  for (const auto& [idx, c] : lambda.components()) {
    const auto a = alpha.component({idx[0]});
    const auto b = beta.component({idx[1]});
    const auto a2 = alpha.component({idx[1]});
    const auto b2 = beta.component({idx[0]});
    out += c * (a * b - a2 * b2);
  }
  return out;
}

Multivector sharp(const Multivector& lambda, const DiffForm& alpha) {
  require_grade(lambda, 2, "sharp");
  if (alpha.grade() != 1) throw InvalidInput("sharp: argument must be a 1-form");
  if (!same_chart(lambda.chart(), alpha.chart())) throw ChartMismatch("sharp: fields on different charts");
  Multivector out(lambda.chart(), 1);
  for (const auto& [idx, c] : lambda.components()) {
    // Lambda^{ab} alpha_a d/dx^b with Lambda^{ba} = -Lambda^{ab}
    out.add({idx[1]}, alpha.component({idx[0]}) * c);
    out.add({idx[0]}, -(alpha.component({idx[1]}) * c));
  }
  return out;
}

ExpPoly evaluate(const DiffForm& alpha, const Multivector& x) {
  if (alpha.grade() != 1) throw InvalidInput("evaluate: expected a 1-form");
  require_grade(x, 1, "evaluate");
  return interior(x, alpha).scalar_value();
}

std::string_view nondegeneracy_name(Nondegeneracy n) {
  switch (n) {
    case Nondegeneracy::nondegenerate_constant: return "nondegenerate_constant";
    case Nondegeneracy::degenerate: return "degenerate";
    case Nondegeneracy::indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

ExpPoly pfaffian_rec(const Multivector& lambda, const std::vector<int>& rows) {
  if (rows.empty()) return ExpPoly::constant(lambda.chart(), Rat(1));
  ExpPoly out(lambda.chart());
  const int first = rows[0];
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto a = lambda.component({first, rows[k]});
    if (a.is_zero()) continue;
    std::vector<int> rest;
    for (std::size_t r = 1; r < rows.size(); ++r)
      if (r != k) rest.push_back(rows[r]);
    auto term = a * pfaffian_rec(lambda, rest);
    if (k % 2 == 1)
      out += term;
    else
      out -= term;
  }
  return out;
}

}  // namespace

ExpPoly pfaffian(const Multivector& lambda) {
  require_grade(lambda, 2, "pfaffian");
  const auto n = static_cast<int>(lambda.chart()->dim());
  if (n % 2 != 0) throw InvalidInput("pfaffian: odd-dimensional chart");
  std::vector<int> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = i;
  return pfaffian_rec(lambda, rows);
}

Nondegeneracy check_nondegenerate(const Multivector& lambda) {
  const auto pf = pfaffian(lambda);
  if (pf.is_zero()) return Nondegeneracy::degenerate;
  if (pf.is_constant()) return Nondegeneracy::nondegenerate_constant;
  return Nondegeneracy::indeterminate;
}

}  // namespace linjac
