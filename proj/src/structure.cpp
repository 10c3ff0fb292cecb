#include "pqn/structure.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "pqn/errors.hpp"
#include "pqn/parse.hpp"

namespace pqn {

namespace {

ScalarExpr trace_product(const EndomorphismField& A, const EndomorphismField& B) {
    const std::size_t m = A.chart().dim();
    ScalarExpr t = ScalarExpr::zero(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t s = 0; s < m; ++s)
            if (!A.entry(i, s).is_zero() && !B.entry(s, i).is_zero())
                t = t + A.entry(i, s) * B.entry(s, i);
    return t;
}

DifferentialForm transpose_power_apply(const EndomorphismField& N, int k,
                                       const DifferentialForm& alpha) {
    DifferentialForm out = alpha;
    for (int i = 0; i < k; ++i) out = N.transpose_apply(out);
    return out;
}

std::string idx_witness(std::initializer_list<int> idx, const std::string& value) {
    std::ostringstream out;
    out << "(";
    bool first = true;
    for (int i : idx) {
        if (!first) out << ",";
        first = false;
        out << i + 1;  // 1-based coordinate positions in reports
    }
    out << "): " << value;
    return out.str();
}

}  // namespace

PqNStructure::PqNStructure(Chart c, BivectorField p, EndomorphismField n, DifferentialForm f)
    : chart(std::move(c)), pi(std::move(p)), N(std::move(n)), phi(std::move(f)) {
    if (pi.chart() != chart || N.chart() != chart || phi.chart() != chart)
        throw DomainError("structure pieces must live on one chart");
    if (phi.degree() != 3) throw DomainError("the structure 3-form must have degree 3");
}

void CheckReport::add(const std::string& name, bool pass, std::string witness) {
    if (!pass && witness.empty()) witness = "nonzero residual";
    checks_.push_back(Check{name, pass, pass ? std::string() : std::move(witness)});
}

bool CheckReport::all_pass() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

void CheckReport::merge(const CheckReport& other) {
    for (const auto& c : other.checks())
        checks_.push_back(Check{other.subject() + ": " + c.name, c.pass, c.witness});
}

std::string to_string(StructureClass c) {
    switch (c) {
        case StructureClass::PN: return "PN";
        case StructureClass::PqN: return "PqN";
        default: return "invalid";
    }
}

CheckReport check_poisson(const BivectorField& pi) {
    CheckReport report("poisson");
    const std::size_t m = pi.chart().dim();
    bool pass = true;
    std::string witness;
    for (std::size_t i = 0; i < m && pass; ++i) {
        for (std::size_t j = i + 1; j < m && pass; ++j) {
            for (std::size_t k = j + 1; k < m && pass; ++k) {
                ScalarExpr xi = ScalarExpr::coordinate(m, i);
                ScalarExpr xj = ScalarExpr::coordinate(m, j);
                ScalarExpr xk = ScalarExpr::coordinate(m, k);
                ScalarExpr jac =
                    poisson_bracket_fn(pi, pi.entry(static_cast<int>(i), static_cast<int>(j)), xk) +
                    poisson_bracket_fn(pi, pi.entry(static_cast<int>(j), static_cast<int>(k)), xi) +
                    poisson_bracket_fn(pi, pi.entry(static_cast<int>(k), static_cast<int>(i)), xj);
                if (!jac.is_zero()) {
                    pass = false;
                    witness = idx_witness({static_cast<int>(i), static_cast<int>(j),
                                           static_cast<int>(k)},
                                          to_string(jac, pi.chart()));
                }
            }
        }
    }
    report.add("jacobi identity", pass, witness);
    return report;
}

CheckReport check_compatibility(const BivectorField& pi, const EndomorphismField& N) {
    CheckReport report("compatibility");
    if (pi.chart() != N.chart()) throw DomainError("chart mismatch in compatibility check");
    const Chart& chart = pi.chart();
    const std::size_t m = chart.dim();

    // N sharp(pi) must be skew-symmetric.
    bool skew = true;
    std::string witness;
    std::vector<VectorField> nsharp;
    nsharp.reserve(m);
    for (std::size_t a = 0; a < m; ++a)
        nsharp.push_back(
            N.apply(sharp_map(pi, DifferentialForm::coordinate_differential(chart, a))));
    for (std::size_t a = 0; a < m && skew; ++a) {
        for (std::size_t b = a; b < m && skew; ++b) {
            ScalarExpr s = nsharp[a].component(b) + nsharp[b].component(a);
            if (!s.is_zero()) {
                skew = false;
                witness = idx_witness({static_cast<int>(a), static_cast<int>(b)},
                                      to_string(s, chart));
            }
        }
    }
    report.add("N sharp skew-symmetric", skew, witness);

    // L_{sharp(dx_a)}(N) X - sharp(L_X(N* dx_a)) + sharp(L_{NX} dx_a) = 0
    // on every coordinate 1-form and frame field.
    bool lie = true;
    witness.clear();
    for (std::size_t a = 0; a < m && lie; ++a) {
        DifferentialForm dxa = DifferentialForm::coordinate_differential(chart, a);
        EndomorphismField LN = lie_derivative(sharp_map(pi, dxa), N);
        DifferentialForm nstar = N.transpose_apply(dxa);
        for (std::size_t b = 0; b < m && lie; ++b) {
            VectorField Xb = VectorField::coordinate(chart, b);
            VectorField lhs = LN.apply(Xb) - sharp_map(pi, lie_derivative(Xb, nstar)) +
                              sharp_map(pi, lie_derivative(N.apply(Xb), dxa));
            if (!lhs.is_zero()) {
                lie = false;
                witness = idx_witness({static_cast<int>(a), static_cast<int>(b)}, to_string(lhs));
            }
        }
    }
    report.add("Lie compatibility", lie, witness);
    return report;
}

Classification classify_structure(const PqNStructure& S) {
    CheckReport report("classification");
    report.merge(check_poisson(S.pi));
    report.merge(check_compatibility(S.pi, S.N));

    DifferentialForm dphi = exterior_derivative(S.phi);
    report.add("phi closed", dphi.is_zero(), to_string(dphi));
    DifferentialForm dinphi = exterior_derivative(i_n_form(S.N, S.phi));
    report.add("i_N phi closed", dinphi.is_zero(), to_string(dinphi));

    VectorValuedTwoForm T = nijenhuis_torsion(S.N);
    bool match = true;
    std::string witness;
    const std::size_t m = S.chart.dim();
    for (std::size_t i = 0; i < m && match; ++i) {
        for (std::size_t j = i + 1; j < m && match; ++j) {
            VectorField lhs = T.value(static_cast<int>(i), static_cast<int>(j));
            VectorField rhs = sharp_map(
                S.pi, interior_bivector_form(VectorField::coordinate(S.chart, i),
                                             VectorField::coordinate(S.chart, j), S.phi));
            if (!(lhs - rhs).is_zero()) {
                match = false;
                witness = idx_witness({static_cast<int>(i), static_cast<int>(j)},
                                      to_string(lhs - rhs));
            }
        }
    }
    report.add("torsion matches phi", match, witness);

    StructureClass label = StructureClass::Invalid;
    if (report.all_pass()) label = S.phi.is_zero() ? StructureClass::PN : StructureClass::PqN;
    return Classification{label, std::move(report)};
}

Hierarchy hierarchy(const PqNStructure& S, int kmax) {
    if (kmax < 1) throw DomainError("hierarchy needs kmax >= 1");
    const Chart& chart = S.chart;
    const std::size_t m = chart.dim();

    Hierarchy h;
    h.kmax = kmax;

    std::vector<EndomorphismField> npow;  // npow[k] = N^k, k = 0..kmax
    npow.push_back(EndomorphismField::identity(chart));
    for (int k = 1; k <= kmax; ++k) npow.push_back(npow.back().compose(S.N));

    for (int k = 1; k <= kmax; ++k) h.H.push_back(rat(1, 2L * k) * npow[k].trace());
    for (int k = 1; k <= kmax; ++k)
        h.X.push_back(sharp_map(S.pi, differential(chart, h.H[k - 1])));
    VectorField nk_x1 = h.X[0];
    for (int k = 1; k <= kmax; ++k) {
        h.Y.push_back(nk_x1 - h.X[k - 1]);  // N^{k-1} X_1 - X_k
        nk_x1 = S.N.apply(nk_x1);
    }

    VectorValuedTwoForm T = nijenhuis_torsion(S.N);
    std::vector<EndomorphismField> slot;  // slot[j] = i_{d_j} T as a matrix
    slot.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        EndomorphismField M(chart);
        for (std::size_t l = 0; l < m; ++l) {
            VectorField v = T.value(static_cast<int>(j), static_cast<int>(l));
            for (std::size_t r = 0; r < m; ++r) M.add_entry(r, l, v.component(r));
        }
        slot.push_back(std::move(M));
    }
    for (int k = 0; k < kmax; ++k) {
        DifferentialForm phik(chart, 1);
        for (std::size_t j = 0; j < m; ++j)
            phik.add_component({static_cast<int>(j)},
                               rat(1, 2) * trace_product(npow[k], slot[j]));
        h.phiK.push_back(std::move(phik));
    }

    for (int k = 1; k < kmax; ++k) {
        DifferentialForm res = S.N.transpose_apply(differential(chart, h.H[k - 1])) -
                               differential(chart, h.H[k]) - h.phiK[k - 1];
        if (!res.is_zero()) h.ladder_residuals.emplace_back(k, std::move(res));
    }
    return h;
}

PqNStructure deform(const PqNStructure& S, const DifferentialForm& omega) {
    if (omega.chart() != S.chart) throw DomainError("chart mismatch in deformation");
    if (omega.degree() != 2) throw DomainError("deformation needs a 2-form");
    if (!exterior_derivative(omega).is_zero())
        throw DomainError("deformation form is not closed: d omega = " +
                          to_string(exterior_derivative(omega)));
    EndomorphismField nhat = S.N + sharp_flat_endomorphism(S.pi, omega);
    DifferentialForm phihat =
        S.phi + d_n_form(S.N, omega) + rat(1, 2) * koszul_bracket(S.pi, omega, omega);
    return PqNStructure(S.chart, S.pi, std::move(nhat), std::move(phihat));
}

FactorizedDeformation factorized_deform(const PqNStructure& S, const DifferentialForm& alpha,
                                        const DifferentialForm& beta,
                                        const std::optional<DifferentialForm>& gamma_opt) {
    if (alpha.degree() != 1 || beta.degree() != 1)
        throw DomainError("factorized deformation needs 1-forms");
    const DifferentialForm gamma = gamma_opt.value_or(beta);
    CheckReport report("factorized deformation");

    DifferentialForm da = exterior_derivative(alpha);
    if (!da.is_zero()) throw DomainError("alpha is not closed: " + to_string(da));
    DifferentialForm db = exterior_derivative(beta);
    if (!db.is_zero()) throw DomainError("beta is not closed: " + to_string(db));
    report.add("alpha closed", true);
    report.add("beta closed", true);

    DifferentialForm ra = d_n_form(S.N, alpha) - wedge(alpha, gamma);
    if (!ra.is_zero())
        throw DomainError("ladder hypothesis d_N alpha = alpha ^ gamma fails: " + to_string(ra));
    DifferentialForm rb = d_n_form(S.N, beta) - wedge(beta, gamma);
    if (!rb.is_zero())
        throw DomainError("ladder hypothesis d_N beta = beta ^ gamma fails: " + to_string(rb));
    report.add("d_N alpha = alpha ^ gamma", true);
    report.add("d_N beta = beta ^ gamma", true);

    DifferentialForm ba = koszul_bracket(S.pi, beta, alpha);
    DifferentialForm delta = beta + rat(1, 2) * ba;
    DifferentialForm omega = wedge(alpha, delta);
    DifferentialForm epsilon = rat(2, 1) * wedge(gamma, beta) +
                               rat(3, 2) * wedge(gamma, ba) +
                               rat(1, 2) * wedge(beta, koszul_bracket(S.pi, alpha, gamma)) +
                               wedge(koszul_bracket(S.pi, delta, alpha), delta);

    DifferentialForm mc = d_n_form(S.N, omega) +
                          rat(1, 2) * koszul_bracket(S.pi, omega, omega) -
                          wedge(alpha, epsilon);
    if (!mc.is_zero())
        throw DomainError("factorized deformation identity fails: " + to_string(mc));
    report.add("d_N omega + [omega,omega]/2 = alpha ^ epsilon", true);

    PqNStructure deformed = deform(S, omega);
    if (!gamma_opt || gamma == beta) {
        DifferentialForm closed_form =
            S.phi + rat(1, 2) * wedge(wedge(alpha, koszul_bracket(S.pi, ba, alpha)), delta);
        report.add("phi-hat closed formula", deformed.phi == closed_form,
                   to_string(deformed.phi - closed_form));
    }
    return FactorizedDeformation{std::move(omega), std::move(epsilon), std::move(deformed),
                                 std::move(report)};
}

std::vector<std::vector<ScalarExpr>> involutivity_table(const PqNStructure& S, int kmax) {
    if (kmax < 1) throw DomainError("involutivity table needs kmax >= 1");
    Hierarchy h = hierarchy(S, kmax);
    std::vector<std::vector<ScalarExpr>> table(
        kmax, std::vector<ScalarExpr>(kmax, ScalarExpr::zero(S.chart.dim())));
    for (int l = 0; l < kmax; ++l)
        for (int r = l + 1; r < kmax; ++r) {
            table[l][r] = poisson_bracket_fn(S.pi, h.H[l], h.H[r]);
            table[r][l] = -table[l][r];
        }
    return table;
}

CheckReport verify_two_form_criterion(const PqNStructure& S, const DifferentialForm& omega,
                                      int kmax) {
    CheckReport report("two-form involutivity criterion");
    Hierarchy h = hierarchy(S, kmax);
    DifferentialForm res =
        S.phi + rat(2, 1) * wedge(differential(S.chart, h.H[0]), omega);
    report.add("phi + 2 dH1 ^ omega = 0", res.is_zero(), to_string(res));

    bool ann = true;
    std::string witness;
    for (int j = 1; j <= kmax && ann; ++j)
        for (int k = 1; k <= kmax && ann; ++k) {
            ScalarExpr v = evaluate(omega, {h.X[j - 1], h.Y[k - 1]});
            if (!v.is_zero()) {
                ann = false;
                witness = idx_witness({j - 1, k - 1}, to_string(v, S.chart));
            }
        }
    report.add("omega(X_j, Y_k) = 0", ann, witness);
    return report;
}

CheckReport verify_factored_involutivity(const PqNStructure& S, const DifferentialForm& beta,
                                         const DifferentialForm& gamma, int kmax) {
    CheckReport report("factored involutivity criterion");
    Hierarchy h = hierarchy(S, kmax);
    DifferentialForm res =
        S.phi - wedge(wedge(differential(S.chart, h.H[0]), beta), gamma);
    report.add("phi = dH1 ^ beta ^ gamma", res.is_zero(), to_string(res));

    auto table = involutivity_table(S, kmax);
    bool zero = true;
    std::string witness;
    for (int l = 0; l < kmax && zero; ++l)
        for (int r = 0; r < kmax && zero; ++r)
            if (!table[l][r].is_zero()) {
                zero = false;
                witness = idx_witness({l, r}, to_string(table[l][r], S.chart));
            }
    report.add("involutivity table vanishes", zero, witness);
    return report;
}

CheckReport verify_factored_identities(const PqNStructure& S, const DifferentialForm& alpha,
                                       const DifferentialForm& beta,
                                       const DifferentialForm& gamma, int kmax) {
    DifferentialForm fact = wedge(wedge(alpha, beta), gamma);
    if (S.phi != fact)
        throw DomainError("phi does not factor as alpha ^ beta ^ gamma: residual " +
                          to_string(S.phi - fact));

    CheckReport report("factored identity suite");
    const Chart& chart = S.chart;
    const std::size_t m = chart.dim();
    Hierarchy h = hierarchy(S, kmax);

    std::array<const DifferentialForm*, 3> cyc{&alpha, &beta, &gamma};
    std::array<VectorField, 3> sharp_cyc{sharp_map(S.pi, alpha), sharp_map(S.pi, beta),
                                         sharp_map(S.pi, gamma)};

    // T_N = sum over cyclic permutations of sharp(alpha) tensor beta ^ gamma.
    VectorValuedTwoForm T = nijenhuis_torsion(S.N);
    bool tfact = true;
    std::string witness;
    for (std::size_t i = 0; i < m && tfact; ++i)
        for (std::size_t j = i + 1; j < m && tfact; ++j) {
            VectorField expected = VectorField::zero(chart);
            for (int c = 0; c < 3; ++c) {
                const DifferentialForm& b = *cyc[(c + 1) % 3];
                const DifferentialForm& g = *cyc[(c + 2) % 3];
                ScalarExpr coeff =
                    b.component({static_cast<int>(i)}) * g.component({static_cast<int>(j)}) -
                    b.component({static_cast<int>(j)}) * g.component({static_cast<int>(i)});
                expected = expected + coeff * sharp_cyc[c];
            }
            VectorField diff = T.value(static_cast<int>(i), static_cast<int>(j)) - expected;
            if (!diff.is_zero()) {
                tfact = false;
                witness = idx_witness({static_cast<int>(i), static_cast<int>(j)}, to_string(diff));
            }
        }
    report.add("factorized torsion", tfact, witness);

    // phi_l = sum_cyc <beta, N^l sharp(gamma)> alpha.
    bool pfact = true;
    witness.clear();
    for (int l = 0; l < kmax && pfact; ++l) {
        DifferentialForm expected(chart, 1);
        for (int c = 0; c < 3; ++c) {
            VectorField ng = sharp_cyc[(c + 2) % 3];
            for (int rep = 0; rep < l; ++rep) ng = S.N.apply(ng);
            expected = expected + pairing(*cyc[(c + 1) % 3], ng) * (*cyc[c]);
        }
        DifferentialForm diff = h.phiK[l] - expected;
        if (!diff.is_zero()) {
            pfact = false;
            witness = "l=" + std::to_string(l) + ": " + to_string(diff);
        }
    }
    report.add("obstruction 1-form closed formula", pfact, witness);

    // Y_k = sharp( sum_{l=0}^{k-2} (N*)^{k-l-2} phi_l ).
    bool yfact = true;
    witness.clear();
    for (int k = 1; k <= kmax && yfact; ++k) {
        DifferentialForm sum(chart, 1);
        for (int l = 0; l <= k - 2; ++l)
            sum = sum + transpose_power_apply(S.N, k - l - 2, h.phiK[l]);
        VectorField diff = h.Y[k - 1] - sharp_map(S.pi, sum);
        if (!diff.is_zero()) {
            yfact = false;
            witness = "k=" + std::to_string(k) + ": " + to_string(diff);
        }
    }
    report.add("sharp ladder for Y_k", yfact, witness);

    // <alpha, Y_k> = <beta, Y_k> = <gamma, Y_k> = 0.
    bool ann = true;
    witness.clear();
    for (int k = 1; k <= kmax && ann; ++k)
        for (int c = 0; c < 3 && ann; ++c) {
            ScalarExpr v = pairing(*cyc[c], h.Y[k - 1]);
            if (!v.is_zero()) {
                ann = false;
                witness = "k=" + std::to_string(k) + ": " + to_string(v, chart);
            }
        }
    report.add("factors annihilate Y_k", ann, witness);

    // <phi_l, X_k> = <phi_l, N^{k-1} X_1>.
    bool pxy = true;
    witness.clear();
    for (int l = 0; l < kmax && pxy; ++l) {
        VectorField nx = h.X[0];
        for (int k = 1; k <= kmax && pxy; ++k) {
            ScalarExpr v = pairing(h.phiK[l], h.X[k - 1]) - pairing(h.phiK[l], nx);
            if (!v.is_zero()) {
                pxy = false;
                witness = "l=" + std::to_string(l) + ",k=" + std::to_string(k) + ": " +
                          to_string(v, chart);
            }
            nx = S.N.apply(nx);
        }
    }
    report.add("phi_l on X_k equals phi_l on N^(k-1) X_1", pxy, witness);
    return report;
}

CheckReport verify_recursion_identity(const PqNStructure& S, int kmax) {
    if (kmax < 2) throw DomainError("recursion identity needs kmax >= 2");
    CheckReport report("bracket recursion identity");
    Hierarchy h = hierarchy(S, kmax);
    bool pass = true;
    std::string witness;
    for (int l = 2; l <= kmax && pass; ++l) {
        for (int m = 1; l + m <= kmax + 1 && pass; ++m) {
            ScalarExpr res = poisson_bracket_fn(S.pi, h.H[l - 1], h.H[m - 1]) -
                             poisson_bracket_fn(S.pi, h.H[l - 2], h.H[m]) +
                             pairing(h.phiK[m - 1], h.X[l - 2]) +
                             pairing(h.phiK[l - 2], h.X[m - 1]);
            if (!res.is_zero()) {
                pass = false;
                witness = "l=" + std::to_string(l) + ",m=" + std::to_string(m) + ": " +
                          to_string(res, S.chart);
            }
        }
    }
    report.add("trace bracket recursion", pass, witness);
    return report;
}

}  // namespace pqn
