#pragma once

#include <map>
#include <string>

#include "pqn/structure.hpp"

namespace pqn {

/// A named structure plus the auxiliary data tests and the CLI use: named
/// scalars (deformation potentials, factorization data) and named 2-forms.
struct ModelDescriptor {
    std::string name;
    int n = 0;  // particle number when applicable, else 0
    Chart chart;
    BivectorField pi;
    EndomorphismField N;
    DifferentialForm phi;
    std::map<std::string, ScalarExpr> scalars;
    std::map<std::string, DifferentialForm> two_forms;

    PqNStructure structure() const { return PqNStructure(chart, pi, N, phi); }
};

/// Canonical bivector with {p_i, q_j} = delta_ij on a q1..qn,p1..pn chart.
BivectorField canonical_bivector(const Chart& chart);

/// Chart (q1..qn, p1..pn) and canonical Poisson tensor, n >= 2.
std::pair<Chart, BivectorField> canonical_phase_space(int n);

/// Recursion tensor of the open Toda chain (diagonal p_i blocks, constant
/// upper couplings, nearest-neighbour exponentials), phi = 0.
ModelDescriptor das_okubo_toda(int n);

struct StandardTwoForms {
    DifferentialForm omega1;    // exp(qn-q1) dq1 ^ dqn
    DifferentialForm omega2;    // (exp(qn) dqn + exp(-q1) dq1) ^ sum dp_i
    DifferentialForm omega_ts;  // omega1 + omega2
    DifferentialForm omega_bc;  // d(exp(-2 q1)) ^ dp1
};

/// The four deformation 2-forms of the Toda family; all closed (asserted).
StandardTwoForms standard_two_forms(int n);

/// Structures obtained from the open-chain tensor by deformation:
/// "n-minus" (omega1), "n-plus" (-omega1), "n-ts" (omega_ts), "n-2" (omega2).
ModelDescriptor derived_structure(const std::string& name, int n);

/// Cotangent-lift separable system on R^4 with its deformation data
/// (Hamiltonian "h", base trace "trL", displayed 2-form "omega").
ModelDescriptor separable_model();

/// Partial data of the deformed D_n chain (two transpose rows, the deformed
/// 3-form, the half trace, and the driving 2-form): enough to validate a
/// user-supplied model without fabricating the full tensor.
struct DnFixture {
    int n;
    Chart chart;
    DifferentialForm nstar_dq1;
    DifferentialForm nstar_dp1;
    DifferentialForm phi_hat;
    ScalarExpr h1;
    DifferentialForm omega;
};

DnFixture dn_toda_fixture(int n);

/// Internal consistency of the fixture data itself: the deformed 3-form must
/// match both -2 dH1 ^ omega and -d(i_N omega) computed from the two rows.
CheckReport dn_fixture_selfcheck(int n);

/// Compares a user model against the fixture rows, 3-form, and half trace.
CheckReport validate_against_dn_fixture(const ModelDescriptor& model, const DnFixture& fixture);

/// Built-in lookup by CLI name: das-okubo | n-minus | n-plus | n-ts | n-2 |
/// separable. n is ignored for the separable model.
ModelDescriptor builtin_model(const std::string& name, int n);

bool is_builtin_model_name(const std::string& name);

}  // namespace pqn
