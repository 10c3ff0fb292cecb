#include "pqn/flow.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "pqn/errors.hpp"

namespace pqn {

VectorField hamiltonian_vf(const BivectorField& pi, const ScalarExpr& H) {
    return sharp_map(pi, differential(pi.chart(), H));
}

namespace {

std::vector<double> eval_field(const VectorField& X, const std::vector<double>& x) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = X.component(i).eval(x);
    return out;
}

}  // namespace

Trajectory integrate_rk4(const VectorField& X, std::vector<double> x0, double dt, int steps) {
    if (dt <= 0.0) throw DomainError("integration needs dt > 0");
    if (steps < 1) throw DomainError("integration needs steps >= 1");
    if (x0.size() != X.chart().dim()) throw DomainError("initial state dimension mismatch");

    Trajectory traj;
    traj.dt = dt;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    const std::size_t m = x0.size();
    std::vector<double> x = std::move(x0);
    for (int s = 1; s <= steps; ++s) {
        std::vector<double> k1, k2, k3, k4, tmp(m);
        try {
            k1 = eval_field(X, x);
            for (std::size_t i = 0; i < m; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
            k2 = eval_field(X, tmp);
            for (std::size_t i = 0; i < m; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
            k3 = eval_field(X, tmp);
            for (std::size_t i = 0; i < m; ++i) tmp[i] = x[i] + dt * k3[i];
            k4 = eval_field(X, tmp);
        } catch (const EvalError&) {
            traj.aborted = true;
            return traj;
        }
        bool finite = true;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            finite = finite && std::isfinite(x[i]);
        }
        // overflow past a pole or a runaway orbit: stop at the last valid state
        if (!finite) {
            traj.aborted = true;
            return traj;
        }
        traj.times.push_back(s * dt);
        traj.states.push_back(x);
    }
    return traj;
}

std::vector<double> conservation_report(const Trajectory& traj,
                                        const std::vector<ScalarExpr>& funcs) {
    std::vector<double> drifts;
    drifts.reserve(funcs.size());
    for (const auto& f : funcs) {
        if (traj.states.empty()) {
            drifts.push_back(0.0);
            continue;
        }
        double f0 = f.eval(traj.states.front());
        double worst = 0.0;
        for (const auto& x : traj.states)
            worst = std::max(worst, std::abs(f.eval(x) - f0));
        drifts.push_back(worst / std::max(1.0, std::abs(f0)));
    }
    return drifts;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    out << "t";
    const std::size_t m = traj.states.empty() ? 0 : traj.states.front().size();
    for (std::size_t i = 1; i <= m; ++i) out << ",x" << i;
    out << "\n";
    char buf[64];
    for (std::size_t s = 0; s < traj.states.size(); ++s) {
        std::snprintf(buf, sizeof buf, "%.17g", traj.times[s]);
        out << buf;
        for (double v : traj.states[s]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << "," << buf;
        }
        out << "\n";
    }
}

std::vector<double> default_initial_state(int n) {
    std::vector<double> x(2 * static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        x[i - 1] = static_cast<double>(i - 1) / n;
        x[n + i - 1] = (i % 2 == 0 ? 0.5 : -0.5);
    }
    return x;
}

}  // namespace pqn
