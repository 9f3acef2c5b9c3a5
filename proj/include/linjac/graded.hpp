#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "linjac/error.hpp"
#include "linjac/exppoly.hpp"

namespace linjac {

/// Strictly increasing coordinate positions of a basis element
/// d/dx^i1 ^ ... ^ d/dx^ik (or dx^i1 ^ ... ^ dx^ik).
using Index = std::vector<int>;

/// Sorts `idx` in place and returns the permutation sign, or 0 when an index
/// repeats.
int sort_with_sign(Index& idx);

struct VectorKind {
  static constexpr const char* kBasisPrefix = "d/d";
  static constexpr const char* kName = "multivector";
};
struct FormKind {
  static constexpr const char* kBasisPrefix = "d";
  static constexpr const char* kName = "form";
};

/// Homogeneous skew tensor field with ExpPoly components.  Components are
/// keyed by strictly increasing index tuples; zero components are never
/// stored.  A negative grade denotes the zero field produced by brackets of
/// functions ([f, g] has grade -1).
template <class Kind>
class Graded {
 public:
  using Components = std::map<Index, ExpPoly>;

  Graded() : Graded(Chart::empty(), 0) {}
  Graded(ChartPtr chart, int grade) : chart_(std::move(chart)), grade_(grade) {}

  static Graded scalar(const ExpPoly& f) {
    Graded g(f.chart(), 0);
    g.add(Index{}, f);
    return g;
  }

  /// c * (basis element of `idx`); `idx` may be unsorted.
  static Graded basis(ChartPtr chart, Index idx, const ExpPoly& c) {
    Graded g(std::move(chart), static_cast<int>(idx.size()));
    g.add(std::move(idx), c);
    return g;
  }
  static Graded basis(ChartPtr chart, Index idx) {
    auto one = ExpPoly::constant(chart, Rat(1));
    return basis(std::move(chart), std::move(idx), one);
  }

  const ChartPtr& chart() const { return chart_; }
  int grade() const { return grade_; }
  const Components& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  /// Adds c * basis(idx) with sign normalization.
  void add(Index idx, const ExpPoly& c) {
    if (static_cast<int>(idx.size()) != grade_) throw InvalidInput("index length does not match grade");
    for (int i : idx)
      if (i < 0 || static_cast<std::size_t>(i) >= chart_->dim()) throw InvalidInput("basis index out of range");
    if (!same_chart(chart_, c.chart())) throw ChartMismatch("component lives on a different chart");
    const int sign = sort_with_sign(idx);
    if (sign == 0 || c.is_zero()) return;
    auto it = comps_.find(idx);
    if (it == comps_.end()) {
      comps_.emplace(std::move(idx), sign > 0 ? c : -c);
      return;
    }
    if (sign > 0)
      it->second += c;
    else
      it->second -= c;
    if (it->second.is_zero()) comps_.erase(it);
  }

  /// Component on a sorted or unsorted index (sign applied); zero if absent.
  ExpPoly component(Index idx) const {
    const int sign = sort_with_sign(idx);
    ExpPoly zero(chart_);
    if (sign == 0) return zero;
    auto it = comps_.find(idx);
    if (it == comps_.end()) return zero;
    return sign > 0 ? it->second : -it->second;
  }

  /// Grade-0 value.
  ExpPoly scalar_value() const {
    if (grade_ != 0) throw InvalidInput("scalar_value on a non-scalar field");
    return component(Index{});
  }

  Graded& operator+=(const Graded& o) {
    require_compatible(o);
    for (const auto& [idx, c] : o.comps_) add(idx, c);
    return *this;
  }
  Graded& operator-=(const Graded& o) {
    require_compatible(o);
    for (const auto& [idx, c] : o.comps_) add(idx, -c);
    return *this;
  }
  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
  friend Graded operator-(Graded a) {
    for (auto& [idx, c] : a.comps_) c = -c;
    return a;
  }
  friend Graded operator*(const ExpPoly& f, const Graded& a) {
    if (!same_chart(f.chart(), a.chart_)) throw ChartMismatch("scalar lives on a different chart");
    Graded out(a.chart_, a.grade_);
    for (const auto& [idx, c] : a.comps_) out.add(idx, f * c);
    return out;
  }
  friend Graded operator*(const Rat& r, Graded a) {
    if (r.is_zero()) return Graded(a.chart_, a.grade_);
    for (auto& [idx, c] : a.comps_) c *= r;
    return a;
  }
  friend bool operator==(const Graded& a, const Graded& b) {
    return a.grade_ == b.grade_ && same_chart(a.chart_, b.chart_) && a.comps_ == b.comps_;
  }

  /// Same field on another chart, coordinates matched by name.
  Graded on(const ChartPtr& target) const {
    Graded out(target, grade_);
    for (const auto& [idx, c] : comps_) {
      Index mapped;
      mapped.reserve(idx.size());
      for (int i : idx) mapped.push_back(static_cast<int>(target->index_of((*chart_)[i].name)));
      out.add(std::move(mapped), c.on(target));
    }
    return out;
  }

  /// Maximum coefficient degree over components.
  int total_degree() const {
    int d = 0;
    for (const auto& [idx, c] : comps_) d = std::max(d, c.total_degree());
    return d;
  }

  /// Sorted signed term list, e.g. "-1*mu2 d/dmu1^d/dmu2"; "0" for zero.
  std::string str() const {
    std::vector<std::pair<bool, std::string>> pieces;
    for (const auto& [idx, c] : comps_) {
      std::string basis;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k) basis += '^';
        basis += Kind::kBasisPrefix;
        basis += (*chart_)[idx[k]].name;
      }
      for (const auto& [m, coeff] : c.terms()) {
        std::string body = ExpPoly::render_abs_term(*chart_, m, coeff);
        if (!basis.empty()) body += ' ' + basis;
        pieces.emplace_back(coeff.sign() < 0, std::move(body));
      }
    }
    return join_signed(pieces);
  }

 private:
  void require_compatible(const Graded& o) const {
    if (!same_chart(chart_, o.chart_)) throw ChartMismatch(std::string(Kind::kName) + "s live on different charts");
    if (grade_ != o.grade_) throw InvalidInput(std::string(Kind::kName) + " grade mismatch");
  }

  ChartPtr chart_;
  int grade_;
  Components comps_;
};

using Multivector = Graded<VectorKind>;
using DiffForm = Graded<FormKind>;

/// P ^ Q with the graded-commutative sign convention.
template <class Kind>
Graded<Kind> wedge(const Graded<Kind>& p, const Graded<Kind>& q) {
  if (!same_chart(p.chart(), q.chart())) throw ChartMismatch("wedge of fields on different charts");
  Graded<Kind> out(p.chart(), p.grade() + q.grade());
  for (const auto& [ip, cp] : p.components()) {
    for (const auto& [iq, cq] : q.components()) {
      Index idx = ip;
      idx.insert(idx.end(), iq.begin(), iq.end());
      out.add(std::move(idx), cp * cq);
    }
  }
  return out;
}

}  // namespace linjac
