#pragma once

#include "linjac/exterior.hpp"
#include "linjac/report.hpp"

namespace linjac {

/// A bivector and a vector field on one chart.  Construction only checks
/// shapes; verify_jacobi decides whether the pair is a Jacobi structure.
class JacobiStructure {
 public:
  JacobiStructure(Multivector lambda, Multivector e_field);
  static JacobiStructure poisson(Multivector lambda);

  const ChartPtr& chart() const { return lambda_.chart(); }
  const Multivector& lambda() const { return lambda_; }
  const Multivector& e_field() const { return e_field_; }
  bool is_poisson_pair() const { return e_field_.is_zero(); }

  JacobiStructure on(const ChartPtr& target) const;

  friend bool operator==(const JacobiStructure&, const JacobiStructure&) = default;

 private:
  Multivector lambda_;
  Multivector e_field_;
};

/// {f, g} = Lambda(df, dg) + f E(g) - g E(f).
ExpPoly jacobi_bracket(const JacobiStructure& j, const ExpPoly& f, const ExpPoly& g);

/// Residuals [L,L] - 2 E^L and [E,L]; records "jacobi.lambda_lambda" and
/// "jacobi.e_lambda".
Report verify_jacobi(const JacobiStructure& j);

/// Linearity condition on coordinate generators.  Sub-checks:
///   C1.fiber_pairs  {mu_i, mu_j} is linear or zero
///   C1.fiber_base   {mu_i, x^l} is basic
///   C1.base_pairs   {x^k, x^l} = 0
///   C1.base_unit    {x^k, 1} = 0
/// Base coordinates are those of role base or time.  Throws InvalidInput on a
/// chart without fiber coordinates.
Report check_C1(const JacobiStructure& j);

/// {mu_i, 1} = -E(mu_i) is basic for every fiber coordinate; record "C2".
Report check_C2(const JacobiStructure& j);

/// Jacobi structure of a contact form: E is the Reeb field and
/// Lambda(a, b) = d eta(flat^-1 a, flat^-1 b) with flat X = i_X d eta + eta(X) eta.
/// Throws InvalidInput when the chart is even-dimensional or flat is not
/// invertible over the coefficient ring.
JacobiStructure contact_to_jacobi(const DiffForm& eta);

}  // namespace linjac
