#pragma once

#include <string>

#include "linjac/graded.hpp"

namespace linjac {

/// d/dx^i as a vector field.
Multivector coordinate_field(const ChartPtr& chart, std::string_view name);
/// dx^i as a 1-form.
DiffForm coordinate_form(const ChartPtr& chart, std::string_view name);
/// df.
DiffForm differential(const ExpPoly& f);

/// X(f) for a vector field X.
ExpPoly apply(const Multivector& x, const ExpPoly& f);

/// Schouten-Nijenhuis bracket.  [X,f] = X(f) = [f,X], [X,Y] is the Lie
/// bracket, [P,Q] = (-1)^(pq) [Q,P] and
/// [P,Q^R] = [P,Q]^R + (-1)^((p-1)q) Q^[P,R].
/// With this sign choice (Lambda, E) has a Jacobi bracket exactly when
/// [Lambda,Lambda] = 2 E^Lambda and [E,Lambda] = 0.
Multivector sn_bracket(const Multivector& p, const Multivector& q);

DiffForm exterior_d(const DiffForm& w);

/// Contraction of a degree-q form by a grade-p multivector, p <= q.
/// i_X(dx^i) = X^i and i_{P^Q} = i_Q o i_P, so that the full contraction of
/// d/dx^I with dx^I is +1.  Grade-equal contraction yields a degree-0 form.
DiffForm interior(const Multivector& p, const DiffForm& w);

Multivector lie_derivative(const Multivector& x, const Multivector& t);
/// Cartan formula L_X = i_X d + d i_X.
DiffForm lie_derivative(const Multivector& x, const DiffForm& w);

/// Lambda(alpha, beta) for a bivector and two 1-forms.
ExpPoly pairing(const Multivector& lambda, const DiffForm& alpha, const DiffForm& beta);

/// #_Lambda(alpha), defined by beta(#alpha) = Lambda(alpha, beta).
Multivector sharp(const Multivector& lambda, const DiffForm& alpha);

/// alpha(X) for a 1-form and a vector field.
ExpPoly evaluate(const DiffForm& alpha, const Multivector& x);

enum class Nondegeneracy { nondegenerate_constant, degenerate, indeterminate };
std::string_view nondegeneracy_name(Nondegeneracy n);

/// Pfaffian of the component matrix of a bivector on an even-dimensional chart.
ExpPoly pfaffian(const Multivector& lambda);

/// Three-valued verdict on the Pfaffian: nonzero constant, identically zero,
/// or a nonconstant function.
Nondegeneracy check_nondegenerate(const Multivector& lambda);

}  // namespace linjac
