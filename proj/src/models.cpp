#include "pqn/models.hpp"

#include "pqn/errors.hpp"
#include "pqn/parse.hpp"

namespace pqn {

namespace {

ScalarExpr one(std::size_t m) { return ScalarExpr::constant(m, Rational(1)); }

// exp(sum w_i x_i) with integer weights at the given coordinates.
ScalarExpr exp_weights(std::size_t m, const std::vector<std::pair<std::size_t, int>>& w) {
    std::vector<Rational> weights(m, Rational(0));
    for (auto [i, c] : w) weights[i] += c;
    return ScalarExpr::monomial(m, Rational(1), std::vector<int>(m, 0), std::move(weights));
}

ScalarExpr momentum_sum(std::size_t n) {
    const std::size_t m = 2 * n;
    ScalarExpr s = ScalarExpr::zero(m);
    for (std::size_t i = 0; i < n; ++i) s = s + ScalarExpr::coordinate(m, n + i);
    return s;
}

}  // namespace

BivectorField canonical_bivector(const Chart& chart) {
    const std::size_t m = chart.dim();
    if (m % 2 != 0) throw DomainError("canonical bivector needs an even-dimensional chart");
    const std::size_t n = m / 2;
    BivectorField pi(chart);
    // {p_i, q_i} = 1 under {f,g} = <dg, sharp(df)>.
    for (std::size_t i = 0; i < n; ++i)
        pi.add_entry(static_cast<int>(n + i), static_cast<int>(i), one(m));
    return pi;
}

std::pair<Chart, BivectorField> canonical_phase_space(int n) {
    if (n < 2) throw DomainError("phase-space models need n >= 2");
    Chart chart = Chart::phase_space(n);
    BivectorField pi = canonical_bivector(chart);
    return {std::move(chart), std::move(pi)};
}

ModelDescriptor das_okubo_toda(int n) {
    auto [chart, pi] = canonical_phase_space(n);
    const std::size_t un = static_cast<std::size_t>(n);
    const std::size_t m = 2 * un;

    EndomorphismField N(chart);
    for (std::size_t i = 0; i < un; ++i) {
        ScalarExpr p = ScalarExpr::coordinate(m, un + i);
        N.set_entry(i, i, p);
        N.set_entry(un + i, un + i, p);
    }
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = i + 1; j < un; ++j) {
            N.set_entry(i, un + j, one(m));
            N.set_entry(j, un + i, -one(m));
        }
    for (std::size_t i = 0; i + 1 < un; ++i) {
        ScalarExpr e = exp_weights(m, {{i, 1}, {i + 1, -1}});
        N.set_entry(un + i + 1, i, e);
        N.set_entry(un + i, i + 1, -e);
    }

    ModelDescriptor model{"das-okubo", n,          chart, std::move(pi),
                          std::move(N), DifferentialForm(chart, 3)};
    ScalarExpr eqn = exp_weights(m, {{un - 1, 1}});
    ScalarExpr emq1 = exp_weights(m, {{0, -1}});
    ScalarExpr I = momentum_sum(un);
    model.scalars.emplace("I", I);
    model.scalars.emplace("f1", eqn - emq1);
    model.scalars.emplace("g1", I);
    model.scalars.emplace("h1", I + rat(1, 2) * (eqn + emq1));
    model.scalars.emplace("f2", eqn);
    model.scalars.emplace("g2", emq1);
    StandardTwoForms forms = standard_two_forms(n);
    model.two_forms.emplace("omega1", forms.omega1);
    model.two_forms.emplace("omega2", forms.omega2);
    model.two_forms.emplace("omega-ts", forms.omega_ts);
    model.two_forms.emplace("omega-bc", forms.omega_bc);
    return model;
}

StandardTwoForms standard_two_forms(int n) {
    if (n < 2) throw DomainError("two-form family needs n >= 2");
    const std::size_t un = static_cast<std::size_t>(n);
    const std::size_t m = 2 * un;
    Chart chart = Chart::phase_space(n);

    DifferentialForm omega1(chart, 2);
    omega1.add_component({0, static_cast<int>(un - 1)},
                         exp_weights(m, {{un - 1, 1}, {0, -1}}));

    DifferentialForm omega2(chart, 2);
    for (std::size_t i = 0; i < un; ++i) {
        omega2.add_signed({static_cast<int>(un - 1), static_cast<int>(un + i)},
                          exp_weights(m, {{un - 1, 1}}));
        omega2.add_signed({0, static_cast<int>(un + i)}, exp_weights(m, {{0, -1}}));
    }

    DifferentialForm omega_bc(chart, 2);
    omega_bc.add_component({0, static_cast<int>(un)},
                           rat(-2) * exp_weights(m, {{0, -2}}));

    StandardTwoForms out{omega1, omega2, omega1 + omega2, omega_bc};
    for (const auto* w : {&out.omega1, &out.omega2, &out.omega_ts, &out.omega_bc})
        if (!exterior_derivative(*w).is_zero())
            throw DomainError("two-form family member is not closed");
    return out;
}

ModelDescriptor derived_structure(const std::string& name, int n) {
    ModelDescriptor base = das_okubo_toda(n);
    StandardTwoForms forms = standard_two_forms(n);
    const std::size_t un = static_cast<std::size_t>(n);
    const std::size_t m = 2 * un;

    DifferentialForm omega(base.chart, 2);
    if (name == "n-minus") {
        omega = forms.omega1;
    } else if (name == "n-plus") {
        omega = -forms.omega1;
    } else if (name == "n-ts") {
        omega = forms.omega_ts;
    } else if (name == "n-2") {
        omega = forms.omega2;
    } else {
        throw DomainError("unknown derived structure '" + name + "'");
    }

    PqNStructure deformed = deform(base.structure(), omega);
    ModelDescriptor model{name, n, base.chart, base.pi, deformed.N, deformed.phi};
    model.two_forms.emplace("omega", omega);

    ScalarExpr I = momentum_sum(un);
    ScalarExpr eqn = exp_weights(m, {{un - 1, 1}});
    ScalarExpr emq1 = exp_weights(m, {{0, -1}});
    if (name == "n-minus") {
        model.scalars.emplace("fac_alpha", rat(2) * I);
        model.scalars.emplace("fac_beta", emq1);
        model.scalars.emplace("fac_gamma", eqn);
        model.scalars.emplace("thm3_beta", rat(2) * emq1);
        model.scalars.emplace("thm3_gamma", eqn);
    } else if (name == "n-2" || name == "n-plus") {
        model.scalars.emplace("fac_alpha", rat(2) * I);
        model.scalars.emplace("fac_beta", eqn);
        model.scalars.emplace("fac_gamma", emq1);
        model.scalars.emplace("thm3_beta", rat(2) * eqn);
        model.scalars.emplace("thm3_gamma", emq1);
    }
    return model;
}

ModelDescriptor separable_model() {
    Chart chart = Chart::phase_space(2);
    BivectorField pi = canonical_bivector(chart);
    auto e = [&](const std::string& s) { return parse_expr(s, chart); };

    EndomorphismField N(chart);
    const char* rows[4][4] = {
        {"q1^2", "q1*q2", "0", "0"},
        {"q1*q2", "q2^2", "0", "0"},
        {"0", "q1*p2 - q2*p1", "q1^2", "q1*q2"},
        {"q2*p1 - q1*p2", "0", "q1*q2", "q2^2"},
    };
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) N.set_entry(i, j, e(rows[i][j]));

    ModelDescriptor model{"separable", 2, chart, std::move(pi), std::move(N),
                          DifferentialForm(chart, 3)};
    model.scalars.emplace("h", e("1/2*p1^2 + 1/2*p2^2 + 1/2*q1^-2 + 1/2*q2^-2"));
    model.scalars.emplace("trL", e("q1^2 + q2^2"));

    DifferentialForm omega(chart, 2);
    omega.add_signed({2, 0}, e("-2*p1*q1"));  // -2 p1 q1 dp1 ^ dq1
    omega.add_signed({3, 0}, e("-2*p2*q1"));
    omega.add_signed({2, 1}, e("-2*p1*q2"));
    omega.add_signed({3, 1}, e("-2*p2*q2"));
    model.two_forms.emplace("omega", std::move(omega));
    return model;
}

DnFixture dn_toda_fixture(int n) {
    if (n < 3) throw DomainError("the D-chain fixture needs n >= 3");
    const std::size_t un = static_cast<std::size_t>(n);
    const std::size_t m = 2 * un;
    Chart chart = Chart::phase_space(n);
    auto q = [&](std::size_t i) { return static_cast<int>(i); };
    auto p = [&](std::size_t i) { return static_cast<int>(un + i); };
    auto ew = [&](std::vector<std::pair<std::size_t, int>> w) { return exp_weights(m, w); };
    auto coord = [&](std::size_t i) { return ScalarExpr::coordinate(m, i); };

    DifferentialForm ndq1(chart, 1);
    ndq1.add_component({q(0)}, -(coord(un) * coord(un) + rat(2) * ew({{0, 1}, {1, -1}})));
    ndq1.add_component({q(1)}, ew({{0, 1}, {1, -1}}) - rat(2) * ew({{1, 1}, {2, -1}}));
    for (std::size_t i = 2; i + 1 < un; ++i)
        ndq1.add_component({q(i)},
                           rat(2) * (ew({{i - 1, 1}, {i, -1}}) - ew({{i, 1}, {i + 1, -1}})));
    ndq1.add_component({q(un - 2)}, rat(-2) * ew({{un - 2, 1}, {un - 1, 1}}));
    ndq1.add_component({q(un - 1)}, rat(2) * (ew({{un - 2, 1}, {un - 1, -1}}) -
                                              ew({{un - 2, 1}, {un - 1, 1}})));
    for (std::size_t i = 0; i < un; ++i)
        ndq1.add_component({p(i)}, rat(-2) * coord(un + i));

    DifferentialForm ndp1(chart, 1);
    ndp1.add_component({q(1)}, ew({{0, 1}, {1, -1}}) * (coord(un) + coord(un + 1)));
    ndp1.add_component({p(0)}, -(coord(un) * coord(un) + rat(2) * ew({{0, 1}, {1, -1}})));
    ndp1.add_component({p(1)}, -ew({{0, 1}, {1, -1}}));

    // -8 e^{-2 q1} ( ... ) with legs dq1 ^ dq_i ^ dp1 and dq1 ^ dp1 ^ dp_i.
    DifferentialForm phi_hat(chart, 3);
    ScalarExpr pref = rat(-8) * ew({{0, -2}});
    for (std::size_t i = 1; i + 1 < un; ++i)
        phi_hat.add_signed({q(0), q(i), p(0)},
                           pref * (ew({{i - 1, 1}, {i, -1}}) - ew({{i, 1}, {i + 1, -1}})));
    phi_hat.add_signed({q(0), q(un - 2), p(0)}, -pref * ew({{un - 2, 1}, {un - 1, 1}}));
    phi_hat.add_signed({q(0), q(un - 1), p(0)},
                       pref * (ew({{un - 2, 1}, {un - 1, -1}}) - ew({{un - 2, 1}, {un - 1, 1}})));
    for (std::size_t i = 1; i < un; ++i)
        phi_hat.add_signed({q(0), p(0), p(i)}, pref * coord(un + i));

    ScalarExpr hdn = ScalarExpr::zero(m);
    for (std::size_t i = 0; i < un; ++i)
        hdn = hdn + rat(1, 2) * coord(un + i) * coord(un + i);
    for (std::size_t i = 0; i + 1 < un; ++i) hdn = hdn + ew({{i, 1}, {i + 1, -1}});
    hdn = hdn + ew({{un - 2, 1}, {un - 1, 1}});
    ScalarExpr h1 = rat(-2) * hdn - rat(2) * ew({{0, -2}});

    DifferentialForm omega(chart, 2);
    omega.add_component({q(0), p(0)}, rat(-2) * ew({{0, -2}}));

    return DnFixture{n, chart, std::move(ndq1), std::move(ndp1), std::move(phi_hat),
                     std::move(h1), std::move(omega)};
}

CheckReport dn_fixture_selfcheck(int n) {
    DnFixture fx = dn_toda_fixture(n);
    CheckReport report("d-chain fixture consistency");

    DifferentialForm dh1 = differential(fx.chart, fx.h1);
    DifferentialForm via_h1 = rat(-2) * wedge(dh1, fx.omega);
    report.add("phi-hat = -2 dH1 ^ omega", fx.phi_hat == via_h1, to_string(fx.phi_hat - via_h1));

    // i_N omega needs only the two fixture rows: omega = c dq1 ^ dp1 gives
    // i_N omega = c (N* dq1 ^ dp1 + dq1 ^ N* dp1); omega is closed, so
    // d_N omega = -d(i_N omega).
    ScalarExpr c = fx.omega.component({0, static_cast<int>(fx.chart.dim() / 2)});
    DifferentialForm dq1 = DifferentialForm::coordinate_differential(fx.chart, 0);
    DifferentialForm dp1 =
        DifferentialForm::coordinate_differential(fx.chart, fx.chart.dim() / 2);
    DifferentialForm in_omega =
        c * (wedge(fx.nstar_dq1, dp1) + wedge(dq1, fx.nstar_dp1));
    DifferentialForm via_rows = -exterior_derivative(in_omega);
    report.add("phi-hat = -d(i_N omega) from the fixture rows", fx.phi_hat == via_rows,
               to_string(fx.phi_hat - via_rows));
    return report;
}

CheckReport validate_against_dn_fixture(const ModelDescriptor& model, const DnFixture& fixture) {
    CheckReport report("d-chain fixture validation");
    if (model.chart != fixture.chart) {
        report.add("chart matches fixture", false, "coordinate lists differ");
        return report;
    }
    const std::size_t un = fixture.chart.dim() / 2;
    DifferentialForm dq1 = DifferentialForm::coordinate_differential(fixture.chart, 0);
    DifferentialForm dp1 = DifferentialForm::coordinate_differential(fixture.chart, un);

    DifferentialForm rq = model.N.transpose_apply(dq1) - fixture.nstar_dq1;
    report.add("N* dq1 row", rq.is_zero(), to_string(rq));
    DifferentialForm rp = model.N.transpose_apply(dp1) - fixture.nstar_dp1;
    report.add("N* dp1 row", rp.is_zero(), to_string(rp));
    DifferentialForm rphi = model.phi - fixture.phi_hat;
    report.add("deformed 3-form", rphi.is_zero(), to_string(rphi));
    ScalarExpr rh = rat(1, 2) * model.N.trace() - fixture.h1;
    report.add("half trace", rh.is_zero(), to_string(rh, fixture.chart));
    return report;
}

ModelDescriptor builtin_model(const std::string& name, int n) {
    if (name == "das-okubo") return das_okubo_toda(n);
    if (name == "separable") return separable_model();
    if (name == "n-minus" || name == "n-plus" || name == "n-ts" || name == "n-2")
        return derived_structure(name, n);
    throw DomainError("unknown built-in model '" + name + "'");
}

bool is_builtin_model_name(const std::string& name) {
    return name == "das-okubo" || name == "separable" || name == "n-minus" ||
           name == "n-plus" || name == "n-ts" || name == "n-2";
}

}  // namespace pqn
