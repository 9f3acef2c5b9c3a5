#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linjac/correspondence.hpp"
#include "linjac/specfile.hpp"

namespace linjac {

/// `base` followed by fiber coordinates named by dot_names(base).
ChartPtr tangent_chart(const ChartPtr& base);

struct Lifts {
  Multivector complete;
  Multivector vertical;
};

/// Complete and vertical lifts of a vector field or bivector to the tangent
/// chart.  For X = X^i d_i:
///   X^v = X^i d/dxdot^i,  X^c = X^i d_i + xdot^j (d_j X^i) d/dxdot^i
/// and for L = sum_{i<j} L^ij d_i ^ d_j:
///   L^v = sum L^ij d/dxdot^i ^ d/dxdot^j
///   L^c = sum L^ij (d/dxdot^i ^ d_j + d_i ^ d/dxdot^j) + xdot^k (d_k L^ij) d/dxdot^i ^ d/dxdot^j
/// Throws InvalidInput for other grades or a chart with fiber coordinates.
Lifts complete_vertical_lift(const Multivector& t);

/// (-E, 0) as a cocycle of jacobi_algebroid(j).
Cocycle lift_cocycle(const JacobiStructure& j);

/// Closed form on the dual chart of jacobi_algebroid(j), with t its last fiber:
///   L^c + d/dt ^ E^c - t (L^v + d/dt ^ E^v),  E^v.
JacobiStructure jacobi_tangent_lift(const JacobiStructure& j);

enum class Step {
  algebroid,       // verify_algebroid
  cocycle,         // verify_cocycle
  forward,         // forward_report on the pair
  expected,        // forward image against the stored strings
  roundtrip,       // both roundtrip checks
  input,           // verify_jacobi on the Jacobi input
  linearity,       // check_C1 and check_C2 on the Jacobi input
  inverse,         // psi_inverse on the Jacobi input
  contact,         // contact_to_jacobi(eta) against the forward image
  poissonization,  // [L^, L^] = 0 and the hat algebroid read back
  complete_lift,   // L^c against the cotangent algebroid, for Poisson images
  tangent_lift,    // cotangent algebroid with an automorphism cocycle
  jacobi_lift,     // lift cocycle and closed form on T M x R
  nondegenerate,   // Pfaffian of the forward image
};

std::string_view step_name(Step s);

struct GalleryCase {
  std::string name;
  std::string summary;
  std::optional<AlgebroidWithCocycle> pair;
  std::optional<JacobiStructure> jacobi;  // input structure of Jacobi-side cases
  std::optional<DiffForm> contact;
  std::optional<Multivector> base_poisson;  // L on M for the tangent lift
  std::optional<Multivector> automorphism;  // X with [X, L] = 0
  std::string expected_lambda;              // rendered forward image; empty when not stored
  std::string expected_e;
  std::string expected_poisson;             // rendered poissonization
  std::vector<Step> checklist;
  std::map<std::string, Verdict> expected_verdicts;  // records expected not to pass
};

/// Catalog names, parametric ones with their default parameter.
std::vector<std::string> catalog();

/// Accepts the catalog names and aff1(a), trivial_tangent(m), contact_R(m)
/// with a rational a and m in 1..3.  Throws InvalidInput on anything else.
GalleryCase build_case(const std::string& name);

Report run_case(const GalleryCase& c);

/// Every record has its expected verdict (pass unless listed).
bool case_ok(const GalleryCase& c, const Report& r);

/// Spec file holding the case inputs (pair, Jacobi input, contact form).
SpecFile to_spec(const GalleryCase& c);

}  // namespace linjac
