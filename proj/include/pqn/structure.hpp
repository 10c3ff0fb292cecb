#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqn/koszul.hpp"

namespace pqn {

/// Chart + Poisson bivector + (1,1) tensor + degree-3 form. The defining
/// conditions are checked by classify_structure, not by construction; a PN
/// structure is the special case phi = 0 with vanishing torsion.
struct PqNStructure {
    Chart chart;
    BivectorField pi;
    EndomorphismField N;
    DifferentialForm phi;

    PqNStructure(Chart c, BivectorField p, EndomorphismField n, DifferentialForm f);
};

struct Check {
    std::string name;
    bool pass;
    std::string witness;  // offending nonzero expression / indices when failed
};

class CheckReport {
public:
    explicit CheckReport(std::string subject) : subject_(std::move(subject)) {}

    void add(const std::string& name, bool pass, std::string witness = "");
    bool all_pass() const;
    const std::string& subject() const { return subject_; }
    const std::vector<Check>& checks() const { return checks_; }
    void merge(const CheckReport& other);

private:
    std::string subject_;
    std::vector<Check> checks_;
};

enum class StructureClass { PN, PqN, Invalid };

std::string to_string(StructureClass c);

struct Classification {
    StructureClass label;
    CheckReport report;
};

/// Jacobi identity on all coordinate triples.
CheckReport check_poisson(const BivectorField& pi);

/// Compatibility of (pi, N): N sharp(pi) skew-symmetric, plus the Lie
/// derivative condition on all coordinate 1-forms and frame fields.
CheckReport check_compatibility(const BivectorField& pi, const EndomorphismField& N);

/// Full verification: Poisson, compatibility, d phi = 0, d(i_N phi) = 0, and
/// the torsion/phi matching on the frame. Labels PN, PqN, or invalid.
Classification classify_structure(const PqNStructure& S);

/// Ladder of traces H_k = Tr(N^k)/(2k), Hamiltonian fields X_k, obstruction
/// fields Y_k = N^{k-1} X_1 - X_k, and obstruction 1-forms phi_k with
/// <phi_k, X> = Tr(N^k i_X T_N)/2 for k = 0..kmax-1. The ladder identity
/// N* dH_k = dH_{k+1} + phi_{k-1} is verified for k < kmax and any nonzero
/// residuals are recorded (they indicate the input is not PqN).
struct Hierarchy {
    int kmax;
    std::vector<ScalarExpr> H;            // H[k-1] = H_k
    std::vector<VectorField> X;           // X[k-1] = X_k
    std::vector<VectorField> Y;           // Y[k-1] = Y_k
    std::vector<DifferentialForm> phiK;   // phiK[k] = phi_k
    std::vector<std::pair<int, DifferentialForm>> ladder_residuals;  // (k, nonzero 1-form)
};

Hierarchy hierarchy(const PqNStructure& S, int kmax);

/// Deformation by a closed 2-form: N -> N + sharp.flat(Omega) and
/// phi -> phi + d_N Omega + [Omega, Omega]/2. Throws if Omega is not closed.
PqNStructure deform(const PqNStructure& S, const DifferentialForm& omega);

/// Deformation driven by a wedge of 1-forms. Requires d alpha = d beta = 0 and
/// the ladder hypotheses d_N alpha = alpha ^ gamma, d_N beta = beta ^ gamma
/// (gamma defaults to beta); refuses with a witness otherwise. Builds
/// delta = beta + [beta, alpha]/2 and Omega = alpha ^ delta, certifies
/// d_N Omega + [Omega, Omega]/2 = alpha ^ epsilon exactly, and returns the
/// deformed structure.
struct FactorizedDeformation {
    DifferentialForm omega;
    DifferentialForm epsilon;
    PqNStructure deformed;
    CheckReport report;
};

FactorizedDeformation factorized_deform(const PqNStructure& S, const DifferentialForm& alpha,
                                        const DifferentialForm& beta,
                                        const std::optional<DifferentialForm>& gamma = {});

/// Exact table of brackets {H_l, H_m}, 1 <= l, m <= kmax.
std::vector<std::vector<ScalarExpr>> involutivity_table(const PqNStructure& S, int kmax);

/// Involutivity criterion driven by a 2-form: checks phi + 2 dH_1 ^ Omega = 0
/// and Omega(X_j, Y_k) = 0 for 1 <= j, k <= kmax.
CheckReport verify_two_form_criterion(const PqNStructure& S, const DifferentialForm& omega,
                                      int kmax);

/// Involutivity criterion for factorized phi: checks phi = dH_1 ^ beta ^ gamma
/// and then that the involutivity table vanishes up to kmax.
CheckReport verify_factored_involutivity(const PqNStructure& S, const DifferentialForm& beta,
                                         const DifferentialForm& gamma, int kmax);

/// Identity suite for phi = alpha ^ beta ^ gamma: the factorized torsion,
/// the closed formula for the obstruction 1-forms, the sharp-ladder formula
/// for Y_k against its definition, the annihilation of Y_k by the three
/// factors, and <phi_l, X_k> = <phi_l, N^{k-1} X_1>; all exact, k <= kmax.
CheckReport verify_factored_identities(const PqNStructure& S, const DifferentialForm& alpha,
                                       const DifferentialForm& beta,
                                       const DifferentialForm& gamma, int kmax);

/// The bracket recursion
///   {H_l, H_m} = {H_{l-1}, H_{m+1}} - <phi_{m-1}, X_{l-1}> - <phi_{l-2}, X_m>
/// for 2 <= l, 1 <= m, l + m <= kmax + 1, exact.
CheckReport verify_recursion_identity(const PqNStructure& S, int kmax);

}  // namespace pqn
