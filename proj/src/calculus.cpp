#include "pqn/calculus.hpp"

#include <algorithm>

#include "pqn/errors.hpp"

namespace pqn {

namespace {

void require_same_chart(const Chart& a, const Chart& b, const char* where) {
    if (a != b) throw DomainError(std::string("chart mismatch in ") + where);
}

}  // namespace

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    require_same_chart(a.chart(), b.chart(), "wedge");
    const int m = static_cast<int>(a.chart().dim());
    DifferentialForm out(a.chart(), a.degree() + b.degree());
    if (a.degree() + b.degree() > m) return out;  // only the zero form above top degree
    for (const auto& [ia, ca] : a.components()) {
        for (const auto& [ib, cb] : b.components()) {
            std::vector<int> idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            out.add_signed(std::move(idx), ca * cb);
        }
    }
    return out;
}

DifferentialForm differential(const Chart& chart, const ScalarExpr& f) {
    DifferentialForm out(chart, 1);
    for (std::size_t i = 0; i < chart.dim(); ++i)
        out.add_component({static_cast<int>(i)}, f.derivative(i));
    return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
    if (a.degree() == 0) return differential(a.chart(), a.as_function());
    DifferentialForm out(a.chart(), a.degree() + 1);
    const int m = static_cast<int>(a.chart().dim());
    if (a.degree() + 1 > m) return out;
    for (const auto& [idx, c] : a.components()) {
        for (int i = 0; i < m; ++i) {
            ScalarExpr dc = c.derivative(static_cast<std::size_t>(i));
            if (dc.is_zero()) continue;
            std::vector<int> widx;
            widx.reserve(idx.size() + 1);
            widx.push_back(i);
            widx.insert(widx.end(), idx.begin(), idx.end());
            out.add_signed(std::move(widx), std::move(dc));
        }
    }
    return out;
}

DifferentialForm interior_product(const VectorField& X, const DifferentialForm& a) {
    require_same_chart(X.chart(), a.chart(), "interior product");
    if (a.degree() < 1) throw DomainError("interior product expects degree >= 1");
    DifferentialForm out(a.chart(), a.degree() - 1);
    for (const auto& [idx, c] : a.components()) {
        // a(X, e_rest): contract each slot of the increasing tuple with sign.
        for (std::size_t t = 0; t < idx.size(); ++t) {
            const ScalarExpr& xi = X.component(static_cast<std::size_t>(idx[t]));
            if (xi.is_zero()) continue;
            std::vector<int> rest;
            rest.reserve(idx.size() - 1);
            for (std::size_t u = 0; u < idx.size(); ++u)
                if (u != t) rest.push_back(idx[u]);
            ScalarExpr v = xi * c;
            if (t % 2 == 1) v = -v;
            out.add_component(rest, v);
        }
    }
    return out;
}

DifferentialForm interior_bivector_form(const VectorField& X, const VectorField& Y,
                                        const DifferentialForm& phi) {
    if (phi.degree() != 3) throw DomainError("i_{X^Y} expects a 3-form");
    return interior_product(Y, interior_product(X, phi));
}

VectorField sharp_map(const BivectorField& pi, const DifferentialForm& alpha) {
    require_same_chart(pi.chart(), alpha.chart(), "sharp map");
    if (alpha.degree() != 1) throw DomainError("sharp map expects a 1-form");
    const int m = static_cast<int>(pi.chart().dim());
    std::vector<ScalarExpr> out(m, ScalarExpr::zero(pi.chart().dim()));
    // (sharp a)^j = sum_i pi^{ij} a_i
    for (const auto& [pair, c] : pi.components()) {
        auto [i, j] = pair;
        ScalarExpr ai = alpha.component({i});
        ScalarExpr aj = alpha.component({j});
        if (!ai.is_zero()) out[j] = out[j] + c * ai;
        if (!aj.is_zero()) out[i] = out[i] - c * aj;
    }
    return VectorField(pi.chart(), std::move(out));
}

DifferentialForm flat_map(const DifferentialForm& omega, const VectorField& X) {
    if (omega.degree() != 2) throw DomainError("flat map expects a 2-form");
    return interior_product(X, omega);
}

DifferentialForm i_n_form(const EndomorphismField& N, const DifferentialForm& a) {
    require_same_chart(N.chart(), a.chart(), "i_N");
    const int m = static_cast<int>(a.chart().dim());
    DifferentialForm out(a.chart(), a.degree());
    if (a.degree() == 0) return out;  // i_N vanishes on functions
    for (const auto& [idx, c] : a.components()) {
        // a_{..i..} N^i_j contributes to the component with i replaced by j.
        for (std::size_t t = 0; t < idx.size(); ++t) {
            for (int j = 0; j < m; ++j) {
                const ScalarExpr& n = N.entry(static_cast<std::size_t>(idx[t]),
                                              static_cast<std::size_t>(j));
                if (n.is_zero()) continue;
                std::vector<int> widx = idx;
                widx[t] = j;
                out.add_signed(std::move(widx), n * c);
            }
        }
    }
    return out;
}

DifferentialForm d_n_form(const EndomorphismField& N, const DifferentialForm& a) {
    return i_n_form(N, exterior_derivative(a)) - exterior_derivative(i_n_form(N, a));
}

DifferentialForm lie_derivative(const VectorField& X, const DifferentialForm& a) {
    if (a.degree() == 0)
        return DifferentialForm::function(
            a.chart(), pairing(differential(a.chart(), a.as_function()), X));
    // Cartan formula.
    return interior_product(X, exterior_derivative(a)) +
           exterior_derivative(interior_product(X, a));
}

VectorField lie_derivative(const VectorField& X, const VectorField& Y) {
    require_same_chart(X.chart(), Y.chart(), "vector field commutator");
    const std::size_t m = X.chart().dim();
    std::vector<ScalarExpr> out(m, ScalarExpr::zero(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (!X.component(j).is_zero()) out[i] = out[i] + X.component(j) * Y.component(i).derivative(j);
            if (!Y.component(j).is_zero()) out[i] = out[i] - Y.component(j) * X.component(i).derivative(j);
        }
    }
    return VectorField(X.chart(), std::move(out));
}

EndomorphismField lie_derivative(const VectorField& X, const EndomorphismField& N) {
    require_same_chart(X.chart(), N.chart(), "endomorphism Lie derivative");
    // (L_X N)(Y) = [X, NY] - N[X, Y], assembled column by column on the frame.
    const std::size_t m = X.chart().dim();
    EndomorphismField out(X.chart());
    for (std::size_t j = 0; j < m; ++j) {
        VectorField col = N.apply(VectorField::coordinate(X.chart(), j));
        VectorField bracket = lie_derivative(X, col);
        // [X, d_j] = -(d_j X), so -N[X, d_j] = N(d_j X).
        std::vector<ScalarExpr> djX;
        djX.reserve(m);
        for (std::size_t i = 0; i < m; ++i) djX.push_back(X.component(i).derivative(j));
        VectorField corr = N.apply(VectorField(X.chart(), std::move(djX)));
        for (std::size_t i = 0; i < m; ++i)
            out.set_entry(i, j, bracket.component(i) + corr.component(i));
    }
    return out;
}

VectorValuedTwoForm nijenhuis_torsion(const EndomorphismField& N) {
    const std::size_t m = N.chart().dim();
    VectorValuedTwoForm out(N.chart());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            std::vector<ScalarExpr> comp(m, ScalarExpr::zero(m));
            for (std::size_t k = 0; k < m; ++k) {
                ScalarExpr v = ScalarExpr::zero(m);
                for (std::size_t l = 0; l < m; ++l) {
                    if (!N.entry(l, i).is_zero()) v = v + N.entry(l, i) * N.entry(k, j).derivative(l);
                    if (!N.entry(l, j).is_zero()) v = v - N.entry(l, j) * N.entry(k, i).derivative(l);
                    v = v - N.entry(k, l) * (N.entry(l, j).derivative(i) - N.entry(l, i).derivative(j));
                }
                comp[k] = std::move(v);
            }
            VectorField value(N.chart(), std::move(comp));
            if (!value.is_zero()) out.set_value(static_cast<int>(i), static_cast<int>(j), value);
        }
    }
    return out;
}

VectorField torsion_on(const EndomorphismField& N, const VectorField& X, const VectorField& Y) {
    VectorField NX = N.apply(X), NY = N.apply(Y);
    VectorField t = lie_derivative(NX, NY) -
                    N.apply(lie_derivative(NX, Y) + lie_derivative(X, NY) -
                            N.apply(lie_derivative(X, Y)));
    return t;
}

ScalarExpr pairing(const DifferentialForm& alpha, const VectorField& X) {
    require_same_chart(alpha.chart(), X.chart(), "pairing");
    if (alpha.degree() != 1) throw DomainError("pairing expects a 1-form");
    ScalarExpr out = ScalarExpr::zero(X.chart().dim());
    for (const auto& [idx, c] : alpha.components()) {
        const ScalarExpr& xi = X.component(static_cast<std::size_t>(idx[0]));
        if (!xi.is_zero()) out = out + c * xi;
    }
    return out;
}

ScalarExpr evaluate(const DifferentialForm& a, const std::vector<VectorField>& fields) {
    if (static_cast<int>(fields.size()) != a.degree())
        throw DomainError("evaluate needs one vector field per slot");
    const std::size_t m = a.chart().dim();
    if (a.degree() == 0) return a.as_function();
    ScalarExpr out = ScalarExpr::zero(m);
    for (const auto& [idx, c] : a.components()) {
        // det[(X_r)^{idx_s}] summed over permutations; degrees stay small.
        const std::size_t q = idx.size();
        std::vector<std::size_t> p(q);
        for (std::size_t i = 0; i < q; ++i) p[i] = i;
        ScalarExpr det = ScalarExpr::zero(m);
        do {
            int parity = 1;
            for (std::size_t i = 0; i < q; ++i)
                for (std::size_t j = i + 1; j < q; ++j)
                    if (p[i] > p[j]) parity = -parity;
            ScalarExpr prod = ScalarExpr::constant(m, Rational(parity));
            for (std::size_t r = 0; r < q; ++r)
                prod = prod * fields[r].component(static_cast<std::size_t>(idx[p[r]]));
            det = det + prod;
        } while (std::next_permutation(p.begin(), p.end()));
        out = out + c * det;
    }
    return out;
}

EndomorphismField transform_tensor(const CoordinateMap& map, const EndomorphismField& N) {
    require_same_chart(map.source(), N.chart(), "tensor transport");
    const std::size_t m = map.source().dim();
    // A = Jacobian of the forward map in source coordinates, then pushed to the
    // target chart; B = Jacobian of the inverse map in target coordinates.
    // The transported tensor is A(G(y)) N(G(y)) B(y).
    std::vector<std::vector<ScalarExpr>> A(m, std::vector<ScalarExpr>(m, ScalarExpr::zero(m)));
    std::vector<std::vector<ScalarExpr>> B(m, std::vector<ScalarExpr>(m, ScalarExpr::zero(m)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            A[i][j] = map.forward()[i].derivative(j).substitute(map.inverse());
            B[i][j] = map.inverse()[i].derivative(j);
        }
    EndomorphismField out(map.target());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            ScalarExpr v = ScalarExpr::zero(m);
            for (std::size_t k = 0; k < m; ++k) {
                if (A[i][k].is_zero()) continue;
                for (std::size_t l = 0; l < m; ++l) {
                    if (N.entry(k, l).is_zero() || B[l][j].is_zero()) continue;
                    v = v + A[i][k] * N.entry(k, l).substitute(map.inverse()) * B[l][j];
                }
            }
            out.set_entry(i, j, std::move(v));
        }
    }
    return out;
}

EndomorphismField sharp_flat_endomorphism(const BivectorField& pi, const DifferentialForm& omega) {
    require_same_chart(pi.chart(), omega.chart(), "sharp-flat endomorphism");
    if (omega.degree() != 2) throw DomainError("deformation increment expects a 2-form");
    const std::size_t m = pi.chart().dim();
    EndomorphismField out(pi.chart());
    for (std::size_t j = 0; j < m; ++j) {
        VectorField col = sharp_map(pi, flat_map(omega, VectorField::coordinate(pi.chart(), j)));
        for (std::size_t i = 0; i < m; ++i) out.set_entry(i, j, col.component(i));
    }
    return out;
}

}  // namespace pqn
