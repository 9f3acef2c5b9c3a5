#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linjac/chart.hpp"
#include "linjac/rat.hpp"

namespace linjac {

/// Exponent vector over a chart's coordinates times s^k with s = exp(t).
struct Monomial {
  std::vector<int> exps;
  int s = 0;

  int degree() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Lexicographic in chart order (higher powers first), then by s-exponent.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.exps != b.exps) return a.exps > b.exps;
    return a.s > b.s;
  }
};

/// Coefficient function: a sparse polynomial in the chart coordinates times
/// integer powers of s = exp(t).  The canonical form (no zero coefficients,
/// unique keys, fixed order) makes equality structural.
class ExpPoly {
 public:
  using Terms = std::map<Monomial, Rat, MonomialOrder>;

  /// Zero on the empty chart.
  ExpPoly();
  explicit ExpPoly(ChartPtr chart);

  static ExpPoly constant(ChartPtr chart, const Rat& value);
  static ExpPoly var(ChartPtr chart, std::string_view name);
  static ExpPoly var(ChartPtr chart, std::size_t index);
  /// s^k; requires a time coordinate unless k == 0.
  static ExpPoly exp_t(ChartPtr chart, int k);
  static ExpPoly term(ChartPtr chart, Monomial m, const Rat& coeff);

  const ChartPtr& chart() const { return chart_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Constant value if the polynomial is a rational constant (no s factor).
  std::optional<Rat> constant_value() const;
  bool is_constant() const { return constant_value().has_value(); }

  ExpPoly& operator+=(const ExpPoly& o);
  ExpPoly& operator-=(const ExpPoly& o);
  ExpPoly& operator*=(const ExpPoly& o) { return *this = *this * o; }
  ExpPoly& operator*=(const Rat& c);

  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator*(ExpPoly a, const Rat& c) { return a *= c; }
  friend ExpPoly operator*(const Rat& c, ExpPoly a) { return a *= c; }
  friend ExpPoly operator-(ExpPoly a);
  friend ExpPoly operator+(ExpPoly a, const Rat& c) { return a += constant(a.chart_, c); }
  friend ExpPoly operator-(ExpPoly a, const Rat& c) { return a -= constant(a.chart_, c); }
  friend bool operator==(const ExpPoly& a, const ExpPoly& b);

  ExpPoly pow(unsigned n) const;

  /// Exact partial derivative.  For the time coordinate the rule
  /// d/dt (t^a s^k) = a t^(a-1) s^k + k t^a s^k applies.
  ExpPoly partial(std::size_t index) const;
  ExpPoly partial(std::string_view name) const;

  /// Maximum total degree in the fiber coordinates; nullopt for zero.
  std::optional<int> fiber_degree() const;
  bool is_basic() const;
  bool is_linear() const;
  /// Maximum total degree in all coordinates (s not counted); 0 for zero.
  int total_degree() const;
  bool uses_exp() const;

  /// Exact value at a rational point.  s is only evaluated at t = 0.
  Rat eval(const std::map<std::string, Rat>& point) const;

  /// Same function on another chart, matching coordinates by name.
  ExpPoly on(const ChartPtr& target) const;

  /// Canonical rendering, e.g. "1*x^2 - 1/2*y*exp(-1*t)"; "0" for zero.
  std::string str() const;

  /// Unsigned rendering of one term, "|c|*x^2*exp(k*t)".
  static std::string render_abs_term(const Chart& chart, const Monomial& m, const Rat& c);

 private:
  void require_same_chart(const ExpPoly& o) const;
  void add_term(const Monomial& m, const Rat& c);

  ChartPtr chart_;
  Terms terms_;
};

/// Joins (negative, unsigned body) pieces as "a - b + c"; "0" when empty.
std::string join_signed(const std::vector<std::pair<bool, std::string>>& pieces);

}  // namespace linjac
