#pragma once

#include "pqn/calculus.hpp"

namespace pqn {

/// Poisson bracket of functions, {f, g} = <dg, sharp(df)>.
ScalarExpr poisson_bracket_fn(const BivectorField& pi, const ScalarExpr& f, const ScalarExpr& g);

/// Koszul bracket on differential forms. On 1-forms,
///   [a, b] = L_{sharp a} b - L_{sharp b} a - d<b, sharp a>,
/// [a, f] = <df, sharp a> on (1-form, function), [f, g] = 0 on functions, and
/// higher degrees reduce through graded antisymmetry and the degree-(q-1)
/// derivation law [a, b ^ c] = [a, b] ^ c + (-1)^((q-1) deg b) b ^ [a, c].
/// The extension satisfying those rules is unique, so any reduction order
/// computes the same bracket; the property suite certifies this one.
/// The bracket of two functions (degree -1) is returned as the zero 0-form.
DifferentialForm koszul_bracket(const BivectorField& pi, const DifferentialForm& a,
                                const DifferentialForm& b);

}  // namespace pqn
