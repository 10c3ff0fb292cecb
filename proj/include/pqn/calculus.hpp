#pragma once

#include "pqn/tensor.hpp"

namespace pqn {

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

/// Differential of a function as a 1-form.
DifferentialForm differential(const Chart& chart, const ScalarExpr& f);

DifferentialForm exterior_derivative(const DifferentialForm& a);

/// i_X a for degree >= 1 (contraction of the first slot).
DifferentialForm interior_product(const VectorField& X, const DifferentialForm& a);

/// The 1-form pairing a 3-form with X wedge Y: <i_{X^Y} phi, Z> = phi(X, Y, Z).
DifferentialForm interior_bivector_form(const VectorField& X, const VectorField& Y,
                                        const DifferentialForm& phi);

/// pi-sharp on a 1-form, with <beta, sharp(alpha)> = pi(alpha, beta).
VectorField sharp_map(const BivectorField& pi, const DifferentialForm& alpha);

/// Omega-flat on a vector field: flat(X) = i_X Omega for a 2-form.
DifferentialForm flat_map(const DifferentialForm& omega, const VectorField& X);

/// Degree-preserving slot sum: one factor of N applied in each argument.
/// Vanishes on functions, so it is a degree-0 derivation of the wedge product.
DifferentialForm i_n_form(const EndomorphismField& N, const DifferentialForm& a);

/// d_N = i_N d - d i_N. On functions d_N f = N*(df); squares to zero exactly
/// when the torsion of N vanishes.
DifferentialForm d_n_form(const EndomorphismField& N, const DifferentialForm& a);

DifferentialForm lie_derivative(const VectorField& X, const DifferentialForm& a);
VectorField lie_derivative(const VectorField& X, const VectorField& Y);  // commutator [X, Y]
EndomorphismField lie_derivative(const VectorField& X, const EndomorphismField& N);

/// Torsion of N evaluated on the coordinate frame.
VectorValuedTwoForm nijenhuis_torsion(const EndomorphismField& N);

/// Torsion value on two arbitrary vector fields (commutator route); used for
/// function-linearity spot checks against the coordinate-frame tensor.
VectorField torsion_on(const EndomorphismField& N, const VectorField& X, const VectorField& Y);

/// Pairing of a 1-form with a vector field.
ScalarExpr pairing(const DifferentialForm& alpha, const VectorField& X);

/// Full evaluation a(X_1, ..., X_q) by determinant expansion.
ScalarExpr evaluate(const DifferentialForm& a, const std::vector<VectorField>& fields);

/// Transport of a (1,1) tensor along a coordinate map: conjugation by the
/// Jacobian of the forward map, expressed in target coordinates.
EndomorphismField transform_tensor(const CoordinateMap& map, const EndomorphismField& N);

/// pi-sharp composed with Omega-flat as an endomorphism (deformation increment).
EndomorphismField sharp_flat_endomorphism(const BivectorField& pi, const DifferentialForm& omega);

}  // namespace pqn
