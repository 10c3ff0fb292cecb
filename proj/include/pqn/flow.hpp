#pragma once

#include <iosfwd>
#include <vector>

#include "pqn/koszul.hpp"

namespace pqn {

/// Symbolic Hamiltonian vector field X_H = sharp(dH). <dH, X_H> vanishes
/// identically by antisymmetry.
VectorField hamiltonian_vf(const BivectorField& pi, const ScalarExpr& H);

struct Trajectory {
    std::vector<double> times;                 // uniformly spaced by dt
    std::vector<std::vector<double>> states;   // one state per time
    double dt = 0.0;
    std::string method = "rk4";
    bool aborted = false;                      // hit a Laurent pole; truncated
};

/// Classical fixed-step 4th-order Runge-Kutta. On a pole the trajectory is
/// truncated at the last valid state and marked aborted.
Trajectory integrate_rk4(const VectorField& X, std::vector<double> x0, double dt, int steps);

/// Per-function max relative drift along the trajectory:
/// max_t |f(x_t) - f(x_0)| / max(1, |f(x_0)|).
std::vector<double> conservation_report(const Trajectory& traj,
                                        const std::vector<ScalarExpr>& funcs);

/// CSV export with header "t,x1,...,xm" at full double precision.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

/// Default reproducible initial state: q_i = (i-1)/n, p_i = (-1)^i / 2.
std::vector<double> default_initial_state(int n);

}  // namespace pqn
