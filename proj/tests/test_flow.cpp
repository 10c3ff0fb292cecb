#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "pqn/errors.hpp"
#include "pqn/flow.hpp"
#include "pqn/models.hpp"
#include "pqn/parse.hpp"

using namespace pqn;

namespace {

const Chart c1 = Chart::phase_space(1);  // q1, p1

double max_state_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("hamiltonian fields") {
    BivectorField pi = canonical_bivector(c1);
    ScalarExpr H = parse_expr("1/2*p1^2 + 1/2*q1^2", c1);
    VectorField X = hamiltonian_vf(pi, H);
    // p d/dq - q d/dp under the fixed sign convention
    CHECK(X.component(0) == parse_expr("p1", c1));
    CHECK(X.component(1) == parse_expr("-q1", c1));
    CHECK(pairing(differential(c1, H), X).is_zero());

    ModelDescriptor open_chain = das_okubo_toda(3);
    Hierarchy h = hierarchy(open_chain.structure(), 1);
    VectorField X1 = hamiltonian_vf(open_chain.pi, h.H[0]);
    VectorField expected = VectorField::coordinate(open_chain.chart, 0) +
                           VectorField::coordinate(open_chain.chart, 1) +
                           VectorField::coordinate(open_chain.chart, 2);
    CHECK(X1 == expected);

    // <dH, X_H> = 0 for random polynomial H
    std::mt19937 rng(15);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        ScalarExpr Hr = ScalarExpr::zero(2);
        for (int t = 0; t < 3; ++t) {
            std::vector<int> powers{coeff(rng) & 3, coeff(rng) & 3};
            Hr = Hr + ScalarExpr::monomial(2, Rational(coeff(rng) * 2 + 1), powers,
                                           std::vector<Rational>(2, Rational(0)));
        }
        CHECK(pairing(differential(c1, Hr), hamiltonian_vf(pi, Hr)).is_zero());
    }
}

TEST_CASE("rk4 basics") {
    BivectorField pi = canonical_bivector(c1);
    VectorField zero = VectorField::zero(c1);
    Trajectory still = integrate_rk4(zero, {1.0, 2.0}, 0.1, 50);
    for (const auto& x : still.states) {
        CHECK(x[0] == 1.0);
        CHECK(x[1] == 2.0);
    }
    auto drifts = conservation_report(still, {parse_expr("q1*p1", c1)});
    CHECK(drifts[0] == 0.0);

    CHECK_THROWS_AS(integrate_rk4(zero, {1.0, 2.0}, -0.1, 5), DomainError);
    CHECK_THROWS_AS(integrate_rk4(zero, {1.0}, 0.1, 5), DomainError);
}

TEST_CASE("harmonic oscillator returns after one period") {
    BivectorField pi = canonical_bivector(c1);
    VectorField X = hamiltonian_vf(pi, parse_expr("1/2*p1^2 + 1/2*q1^2", c1));
    const double period = 2.0 * M_PI;
    Trajectory traj = integrate_rk4(X, {1.0, 0.0}, period / 1000.0, 1000);
    CHECK(max_state_diff(traj.states.back(), traj.states.front()) <= 1e-10);

    // order-4 signature: halving dt shrinks the period-return error ~16x
    Trajectory fine = integrate_rk4(X, {1.0, 0.0}, period / 2000.0, 2000);
    double coarse_err = max_state_diff(traj.states.back(), traj.states.front());
    double fine_err = max_state_diff(fine.states.back(), fine.states.front());
    CHECK(coarse_err / fine_err > 12.0);
    CHECK(coarse_err / fine_err < 20.0);
}

TEST_CASE("conserved ladder functions drift at integrator accuracy") {
    // the attractive closed chain stays bounded, so the whole ladder is
    // conserved to integrator accuracy along its energy flow
    ModelDescriptor model = derived_structure("n-plus", 3);
    Hierarchy h = hierarchy(model.structure(), 3);
    VectorField X = hamiltonian_vf(model.pi, h.H[1]);
    Trajectory traj = integrate_rk4(X, default_initial_state(3), 1e-2, 1000);  // t in [0,10]
    CHECK_FALSE(traj.aborted);
    auto drifts = conservation_report(traj, h.H);
    for (double d : drifts) CHECK(d <= 1e-7);  // dt = 1e-2 here; the tight bound
                                               // at dt = 1e-3 is acceptance work
}

TEST_CASE("the repulsive-link energy flow runs away and aborts") {
    // d^2(q3 - q1)/dt^2 is a positive sum of exponentials along this flow, so
    // the outer pair separates in finite time and the state overflows
    ModelDescriptor model = derived_structure("n-minus", 3);
    Hierarchy h = hierarchy(model.structure(), 3);
    VectorField X = hamiltonian_vf(model.pi, h.H[1]);
    Trajectory traj = integrate_rk4(X, default_initial_state(3), 1e-3, 10000);
    CHECK(traj.aborted);
    CHECK(traj.times.back() < 2.0);
}

TEST_CASE("time reversal returns to the start") {
    ModelDescriptor model = das_okubo_toda(2);
    Hierarchy h = hierarchy(model.structure(), 2);
    VectorField X = hamiltonian_vf(model.pi, h.H[1]);
    std::vector<double> x0 = default_initial_state(2);
    Trajectory fwd = integrate_rk4(X, x0, 1e-2, 500);
    Trajectory bwd = integrate_rk4(-X, fwd.states.back(), 1e-2, 500);
    auto fwd_drift = conservation_report(fwd, {h.H[1]});
    CHECK(max_state_diff(bwd.states.back(), x0) <= 10.0 * std::max(fwd_drift[0], 1e-12));
}

TEST_CASE("poles abort with the last valid state") {
    // x1 marches down in binary-exact quarters and lands exactly on the
    // pole of the x2 component after four steps
    Chart chart({"x1", "x2"});
    VectorField X(chart, {parse_expr("-1", chart), parse_expr("x1^-1", chart)});
    // the k4 stage of the step leaving x1 = 0.25 lands exactly on the pole
    Trajectory traj = integrate_rk4(X, {1.0, 0.0}, 0.25, 10);
    CHECK(traj.aborted);
    CHECK(traj.states.size() == 4);
    CHECK(traj.states.back()[0] == 0.25);
}

TEST_CASE("trajectory csv export") {
    BivectorField pi = canonical_bivector(c1);
    VectorField X = hamiltonian_vf(pi, parse_expr("1/2*p1^2 + 1/2*q1^2", c1));
    Trajectory traj = integrate_rk4(X, {1.0, 0.0}, 0.25, 2);
    std::ostringstream out;
    write_trajectory_csv(traj, out);
    std::string text = out.str();
    CHECK(text.rfind("t,x1,x2\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    CHECK(text.find("0.25") != std::string::npos);
}

TEST_CASE("default initial state") {
    auto x = default_initial_state(3);
    CHECK(x == std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0, -0.5, 0.5, -0.5});
}
