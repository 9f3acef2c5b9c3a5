#pragma once

// Random generators for property tests.  Test-only.

#include <random>

#include "linjac/exterior.hpp"

namespace linjac::testing {

class FieldGen {
 public:
  explicit FieldGen(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rat coeff() {
    int num = uniform(-5, 5);
    if (num == 0) num = 1;
    return Rat(num, uniform(1, 3));
  }

  /// Up to `max_terms` random terms of total degree <= max_degree; s-exponents
  /// in [-1, 1] when the chart has a time coordinate.
  ExpPoly poly(const ChartPtr& chart, int max_degree, int max_terms = 3) {
    ExpPoly p(chart);
    const int terms = uniform(0, max_terms);
    const int n = static_cast<int>(chart->dim());
    for (int t = 0; t < terms; ++t) {
      Monomial m{std::vector<int>(chart->dim(), 0), 0};
      const int deg = n == 0 ? 0 : uniform(0, max_degree);
      for (int d = 0; d < deg; ++d) ++m.exps[static_cast<std::size_t>(uniform(0, n - 1))];
      if (chart->time_index()) m.s = uniform(-1, 1);
      p += ExpPoly::term(chart, m, coeff());
    }
    return p;
  }

  template <class Kind>
  Graded<Kind> field(const ChartPtr& chart, int grade, int max_degree, int max_components = 3) {
    Graded<Kind> g(chart, grade);
    const int n = static_cast<int>(chart->dim());
    if (grade > n) return g;
    const int comps = uniform(1, max_components);
    for (int c = 0; c < comps; ++c) {
      Index idx;
      while (static_cast<int>(idx.size()) < grade) {
        int k = uniform(0, n - 1);
        if (std::find(idx.begin(), idx.end(), k) == idx.end()) idx.push_back(k);
      }
      g.add(idx, poly(chart, max_degree, 2));
    }
    return g;
  }

  Multivector multivector(const ChartPtr& chart, int grade, int max_degree) {
    return field<VectorKind>(chart, grade, max_degree);
  }
  DiffForm form(const ChartPtr& chart, int grade, int max_degree) {
    return field<FormKind>(chart, grade, max_degree);
  }

  /// Chart of dimension `dim` with plain base coordinates x0, x1, ...
  static ChartPtr base_chart(int dim) {
    std::vector<Coordinate> coords;
    for (int i = 0; i < dim; ++i) coords.push_back({"x" + std::to_string(i), Role::base});
    return Chart::make(coords);
  }

 private:
  std::mt19937 rng_;
};

}  // namespace linjac::testing
