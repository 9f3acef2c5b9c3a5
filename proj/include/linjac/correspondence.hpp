#pragma once

#include <string>

#include "linjac/algebroid.hpp"

namespace linjac {

/// A Lie algebroid together with a 1-cocycle; only `make` constructs one, and
/// it rejects pairs that fail verify_algebroid or verify_cocycle.
class AlgebroidWithCocycle {
 public:
  static AlgebroidWithCocycle make(AlgebroidPatch algebroid, Cocycle cocycle);

  const AlgebroidPatch& algebroid() const { return algebroid_; }
  const Cocycle& cocycle() const { return cocycle_; }

  friend bool operator==(const AlgebroidWithCocycle&, const AlgebroidWithCocycle&) = default;

 private:
  AlgebroidWithCocycle(AlgebroidPatch a, Cocycle c) : algebroid_(std::move(a)), cocycle_(std::move(c)) {}

  AlgebroidPatch algebroid_;
  Cocycle cocycle_;
};

/// sum_{i<j,k} c_ij^k mu_k d/dmu_i ^ d/dmu_j + sum_{i,l} rho^l_i d/dmu_i ^ d/dx^l
/// on the dual chart.  Throws InvalidInput unless verify_algebroid passes.
Multivector linear_poisson_dual(const AlgebroidPatch& a);

/// sum mu_i d/dmu_i over the fiber coordinates of `chart`.
Multivector liouville(const ChartPtr& chart);

/// sum phi_i d/dmu_i on the dual chart.
Multivector vertical_lift(const AlgebroidPatch& a, const Cocycle& phi);

/// (Lambda_A* + Liouville ^ phi^v, -phi^v) on the dual chart.
JacobiStructure psi_forward(const AlgebroidWithCocycle& in);

/// verify_jacobi, check_C1 and check_C2 of the forward image, plus the bracket
/// identities on generators:
///   forward.linear_pairs   {mu_i, mu_j} = sum_k c_ij^k mu_k
///   forward.linear_basic   {mu_i, x^l} = rho(e_i)(x^l) + phi_i x^l, {mu_i, 1} = phi_i
///   forward.basic_pairs    {x^k, x^l} = 0 and {x^k, 1} = 0
Report forward_report(const AlgebroidWithCocycle& in);

enum class InverseFailure { invalid_jacobi, C1, C2, derived_vanishing, invalid_result };

std::string_view inverse_failure_name(InverseFailure k);

/// Raised by psi_inverse; `residual` holds the offending bracket values.
class InverseError : public Error {
 public:
  InverseError(InverseFailure kind, std::string residual);
  InverseFailure kind() const { return kind_; }
  const std::string& residual() const { return residual_; }

 private:
  InverseFailure kind_;
  std::string residual_;
};

/// Reads the algebroid and cocycle back from brackets of coordinate functions:
/// c_ij^k is the mu_k coefficient of {mu_i, mu_j}, phi_i = {mu_i, 1} and
/// rho^l_i = {mu_i, x^l} - x^l {mu_i, 1}.  The base chart is the non-fiber
/// coordinates of J's chart in chart order; the fibers keep J's names.
/// Checks run in the order: Jacobi identities, the fiber parts of C1, C2,
/// then the vanishing of {x^k, 1} and {x^k, x^l}.
AlgebroidWithCocycle psi_inverse(const JacobiStructure& j);

/// "roundtrip.inverse_of_forward": psi_inverse(psi_forward(in)) == in.
Report roundtrip_check(const AlgebroidWithCocycle& in);

/// "roundtrip.forward_of_inverse": psi_forward(psi_inverse(j)) == j, compared
/// on the forward image's chart.  An InverseError is a failing verdict.
Report roundtrip_check(const JacobiStructure& j);

/// Name for the appended time coordinate: "t", else a fresh variant of "tau".
std::string time_name(const Chart& chart);

/// exp(-t) (Lambda + d/dt ^ E) on J's chart with a time coordinate appended.
/// Throws InvalidInput if J fails verify_jacobi or already has a time coordinate.
Multivector poissonization(const JacobiStructure& j);

/// Algebroid on A x R over the base with time appended:
///   c^_ij^k = exp(-t)(c_ij^k - phi_i delta_j^k + phi_j delta_i^k)
///   rho^(e_i) = exp(-t)(rho(e_i) + phi_i d/dt)
/// The time name is chosen against the dual chart, matching poissonization.
AlgebroidPatch hat_algebroid(const AlgebroidWithCocycle& in);

}  // namespace linjac
