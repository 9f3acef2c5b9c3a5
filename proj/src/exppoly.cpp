#include "linjac/exppoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "linjac/error.hpp"

namespace linjac {

int Monomial::degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }

ExpPoly::ExpPoly() : chart_(Chart::empty()) {}

ExpPoly::ExpPoly(ChartPtr chart) : chart_(std::move(chart)) {}

ExpPoly ExpPoly::constant(ChartPtr chart, const Rat& value) {
  Monomial m{std::vector<int>(chart->dim(), 0), 0};
  return term(std::move(chart), std::move(m), value);
}

ExpPoly ExpPoly::var(ChartPtr chart, std::string_view name) {
  const auto i = chart->index_of(name);
  return var(std::move(chart), i);
}

ExpPoly ExpPoly::var(ChartPtr chart, std::size_t index) {
  if (index >= chart->dim()) throw UnknownVariable("coordinate index out of range");
  Monomial m{std::vector<int>(chart->dim(), 0), 0};
  m.exps[index] = 1;
  return term(std::move(chart), std::move(m), Rat(1));
}

ExpPoly ExpPoly::exp_t(ChartPtr chart, int k) {
  if (k != 0 && !chart->time_index())
    throw UnknownVariable("exp(k*t) on a chart without a time coordinate");
  Monomial m{std::vector<int>(chart->dim(), 0), k};
  return term(std::move(chart), std::move(m), Rat(1));
}

ExpPoly ExpPoly::term(ChartPtr chart, Monomial m, const Rat& coeff) {
  if (m.exps.size() != chart->dim()) throw ChartMismatch("monomial length does not match chart");
  if (m.s != 0 && !chart->time_index())
    throw UnknownVariable("exp(k*t) on a chart without a time coordinate");
  for (int e : m.exps)
    if (e < 0) throw InvalidInput("negative coordinate exponent");
  ExpPoly p(std::move(chart));
  p.add_term(m, coeff);
  return p;
}

std::optional<Rat> ExpPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  if (m.s != 0 || m.degree() != 0) return std::nullopt;
  return c;
}

void ExpPoly::require_same_chart(const ExpPoly& o) const {
  if (!same_chart(chart_, o.chart_)) throw ChartMismatch("coefficient functions live on different charts");
}

void ExpPoly::add_term(const Monomial& m, const Rat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  require_same_chart(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
  require_same_chart(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ExpPoly& ExpPoly::operator*=(const Rat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  a.require_same_chart(b);
  ExpPoly out(a.chart_);
  const std::size_t n = a.chart_->dim();
  Monomial prod{std::vector<int>(n, 0), 0};
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) prod.exps[i] = ma.exps[i] + mb.exps[i];
      prod.s = ma.s + mb.s;
      out.add_term(prod, ca * cb);
    }
  }
  return out;
}

ExpPoly operator-(ExpPoly a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

bool operator==(const ExpPoly& a, const ExpPoly& b) {
  if (a.terms_.empty() && b.terms_.empty()) return same_chart(a.chart_, b.chart_);
  return same_chart(a.chart_, b.chart_) && a.terms_ == b.terms_;
}

ExpPoly ExpPoly::pow(unsigned n) const {
  ExpPoly out = constant(chart_, Rat(1));
  for (unsigned i = 0; i < n; ++i) out = out * *this;
  return out;
}

ExpPoly ExpPoly::partial(std::size_t index) const {
  if (index >= chart_->dim()) throw UnknownVariable("coordinate index out of range");
  const bool is_time = chart_->time_index() == index;
  ExpPoly out(chart_);
  for (const auto& [m, c] : terms_) {
    const int a = m.exps[index];
    if (a > 0) {
      Monomial d = m;
      d.exps[index] = a - 1;
      out.add_term(d, c * Rat(a));
    }
    if (is_time && m.s != 0) out.add_term(m, c * Rat(m.s));
  }
  return out;
}

ExpPoly ExpPoly::partial(std::string_view name) const { return partial(chart_->index_of(name)); }

std::optional<int> ExpPoly::fiber_degree() const {
  if (terms_.empty()) return std::nullopt;
  const auto fibers = chart_->indices_with(Role::fiber);
  int best = 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (auto i : fibers) d += m.exps[i];
    best = std::max(best, d);
  }
  return best;
}

bool ExpPoly::is_basic() const {
  const auto d = fiber_degree();
  return !d || *d == 0;
}

bool ExpPoly::is_linear() const {
  if (terms_.empty()) return false;
  const auto fibers = chart_->indices_with(Role::fiber);
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (auto i : fibers) d += m.exps[i];
    if (d != 1) return false;
  }
  return true;
}

int ExpPoly::total_degree() const {
  int best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, m.degree());
  return best;
}

bool ExpPoly::uses_exp() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.s != 0; });
}

Rat ExpPoly::eval(const std::map<std::string, Rat>& point) const {
  const std::size_t n = chart_->dim();
  std::vector<std::optional<Rat>> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = point.find((*chart_)[i].name);
    if (it != point.end()) values[i] = it->second;
  }
  Rat total(0);
  for (const auto& [m, c] : terms_) {
    Rat v = c;
    for (std::size_t i = 0; i < n; ++i) {
      if (m.exps[i] == 0) continue;
      if (!values[i]) throw MissingAssignment("no value for '" + (*chart_)[i].name + "'");
      for (int e = 0; e < m.exps[i]; ++e) v *= *values[i];
    }
    if (m.s != 0) {
      const auto t = *chart_->time_index();
      if (!values[t]) throw MissingAssignment("no value for '" + (*chart_)[t].name + "'");
      if (!values[t]->is_zero())
        throw TranscendentalEval("exp(t) can only be evaluated at t = 0");
    }
    total += v;
  }
  return total;
}

ExpPoly ExpPoly::on(const ChartPtr& target) const {
  if (same_chart(chart_, target)) {
    ExpPoly out = *this;
    out.chart_ = target;
    return out;
  }
  const std::size_t n = chart_->dim();
  std::vector<std::optional<std::size_t>> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = target->find((*chart_)[i].name);
  ExpPoly out(target);
  for (const auto& [m, c] : terms_) {
    Monomial mm{std::vector<int>(target->dim(), 0), m.s};
    for (std::size_t i = 0; i < n; ++i) {
      if (m.exps[i] == 0) continue;
      if (!map[i]) throw UnknownVariable("coordinate '" + (*chart_)[i].name + "' is not on the target chart");
      mm.exps[*map[i]] = m.exps[i];
    }
    if (mm.s != 0) {
      const auto src_t = chart_->time_index();
      const auto dst_t = target->time_index();
      if (!dst_t || (*target)[*dst_t].name != (*chart_)[*src_t].name)
        throw UnknownVariable("exp(t) factor has no matching time coordinate on the target chart");
    }
    out.add_term(mm, c);
  }
  return out;
}

std::string ExpPoly::render_abs_term(const Chart& chart, const Monomial& m, const Rat& c) {
  std::ostringstream os;
  os << c.abs();
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (m.exps[i] == 0) continue;
    os << '*' << chart[i].name;
    if (m.exps[i] != 1) os << '^' << m.exps[i];
  }
  if (m.s != 0) os << "*exp(" << m.s << '*' << chart[*chart.time_index()].name << ')';
  return os.str();
}

std::string join_signed(const std::vector<std::pair<bool, std::string>>& pieces) {
  if (pieces.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& [neg, body] = pieces[i];
    if (i == 0)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += body;
  }
  return out;
}

std::string ExpPoly::str() const {
  std::vector<std::pair<bool, std::string>> pieces;
  pieces.reserve(terms_.size());
  for (const auto& [m, c] : terms_) pieces.emplace_back(c.sign() < 0, render_abs_term(*chart_, m, c));
  return join_signed(pieces);
}

}  // namespace linjac
