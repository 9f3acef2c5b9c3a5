#pragma once

#include <string>
#include <vector>

#include "linjac/jacobi.hpp"

namespace linjac {

/// Section of A in the local basis e_1..e_n; components live on the base chart.
struct Section {
  std::vector<ExpPoly> components;
  friend bool operator==(const Section&, const Section&) = default;
};

/// phi_i = phi(e_i) for a section phi of the dual bundle.
struct Cocycle {
  std::vector<ExpPoly> components;
  friend bool operator==(const Cocycle&, const Cocycle&) = default;
};

/// Local data of a rank-n Lie algebroid over a base chart: structure
/// functions c_ij^k (stored for i < j only, so skew-symmetry holds by
/// construction) and anchor fields rho(e_i).
class AlgebroidPatch {
 public:
  /// `base_chart` may hold base and time coordinates only.  Default basis names
  /// are e_1..e_n; default fiber names of the dual chart are mu1..mun.
  AlgebroidPatch(ChartPtr base_chart, int rank, std::vector<std::string> basis_names = {},
                 std::vector<std::string> fiber_names = {});

  const ChartPtr& base_chart() const { return base_; }
  int rank() const { return rank_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  const std::vector<std::string>& fiber_names() const { return fiber_names_; }

  /// Base coordinates followed by the fiber coordinates mu_j (one per basis
  /// element, in basis order).
  const ChartPtr& dual_chart() const { return dual_; }

  /// Sets c_ij^k (0-based); c_ji^k follows by skew-symmetry.  i == j throws.
  void set_structure(int i, int j, int k, const ExpPoly& c);
  ExpPoly structure(int i, int j, int k) const;
  void set_anchor(int i, const Multivector& field);
  const Multivector& anchor(int i) const { return anchors_.at(static_cast<std::size_t>(i)); }

  Section basis_section(int i) const;
  Section zero_section() const;
  Cocycle zero_cocycle() const;

  /// Largest coefficient degree over structure functions and anchors.
  int max_degree() const;

  /// Equal structure functions and anchors on equal charts (names ignored).
  friend bool operator==(const AlgebroidPatch& a, const AlgebroidPatch& b);

 private:
  std::size_t slot(int i, int j, int k) const;
  void check_index(int i) const;

  ChartPtr base_;
  ChartPtr dual_;
  int rank_;
  std::vector<std::string> basis_names_;
  std::vector<std::string> fiber_names_;
  std::vector<ExpPoly> structure_;
  std::vector<Multivector> anchors_;
};

/// k-th component: sum_ij mu_i eta_j c_ij^k + rho(mu)(eta_k) - rho(eta)(mu_k).
Section bracket_sections(const AlgebroidPatch& a, const Section& mu, const Section& eta);

/// sum_i mu_i rho(e_i).
Multivector anchor_apply(const AlgebroidPatch& a, const Section& mu);

/// Exact checks on basis elements, which suffice because bracket_sections
/// extends them to all sections through the Leibniz rule.  Records:
///   algebroid.jacobi_basis, algebroid.anchor_morphism_basis,
///   algebroid.skew_storage.
Report verify_algebroid(const AlgebroidPatch& a);

/// Residual sum_k c_ij^k phi_k - rho(e_i)(phi_j) + rho(e_j)(phi_i) for i < j;
/// record "cocycle".
Report verify_cocycle(const AlgebroidPatch& a, const Cocycle& phi);

/// [[a, b]]_Lambda = L_{#a} b - L_{#b} a - d(Lambda(a, b)).
DiffForm cotangent_form_bracket(const Multivector& lambda, const DiffForm& alpha, const DiffForm& beta);

/// Cotangent algebroid of a Poisson bivector on a chart without fiber
/// coordinates: basis dx^i, c_ij^k = d Lambda^ij / dx^k, rho(dx^i) = #dx^i.
/// Dual fibers are named "<x>dot".  Throws InvalidInput for non-Poisson input.
AlgebroidPatch cotangent_algebroid(const Multivector& lambda);

/// Section (alpha, f) of T*M x R.
struct FormFunction {
  DiffForm form;
  ExpPoly function;
};

/// Bracket of the algebroid of a Jacobi manifold, evaluated term by term.
FormFunction jacobi_form_bracket(const JacobiStructure& j, const FormFunction& a, const FormFunction& b);

/// Algebroid T*M x R of a Jacobi manifold: basis (dx^i, 0) then (0, 1); dual
/// fibers named "<x>dot" and "t".  Throws InvalidInput if (Lambda, E) fails
/// verify_jacobi or the chart has fiber coordinates.
AlgebroidPatch jacobi_algebroid(const JacobiStructure& j);

/// Name not used on `chart`: `wanted`, else `wanted` followed by 0, 1, ...
std::string fresh_name(const Chart& chart, const std::string& wanted);

/// "<x>dot" for every coordinate x of `chart`, each made fresh against the
/// chart and the names before it.
std::vector<std::string> dot_names(const Chart& chart);

std::string render_section(const Section& s);

}  // namespace linjac
