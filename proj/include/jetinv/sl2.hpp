#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jetinv/symtensor.hpp"

namespace jetinv {

// SL2 toolkit on the plane chart (x, y).
namespace sl2 {

inline JetContext context(unsigned order) { return JetContext::make({"x", "y"}, order); }

inline JetFunction delta2(const JetContext& ctx) {
    return JetFunction(ctx.extended(2),
                       parse_expression("u[2,0]*u[0,2]-u[1,1]^2", ctx.extended(2).table()));
}

// flex invariant
inline JetFunction j21(const JetContext& ctx) {
    return JetFunction(ctx.extended(2),
                       parse_expression("u[0,1]^2*u[2,0]-2*u[1,0]*u[0,1]*u[1,1]+u[1,0]^2*u[0,2]",
                                        ctx.extended(2).table()));
}

// nabla1 = u01 d/dx - u10 d/dy
// nabla2 = 2(u02 u10 - u11 u01)/Delta2 d/dx + 2(u20 u01 - u11 u10)/Delta2 d/dy
inline std::pair<Derivation, Derivation> frame(const JetContext& ctx0) {
    JetContext ctx = ctx0.extended(std::max(2u, ctx0.max_order()));
    auto f = [&](const std::string& e) {
        return JetFunction(ctx, parse_expression(e, ctx.table()));
    };
    Derivation n1{ctx, {f("u[0,1]"), f("0-u[1,0]")}};
    Derivation n2{ctx,
                  {f("2*(u[0,2]*u[1,0]-u[1,1]*u[0,1])/(u[2,0]*u[0,2]-u[1,1]^2)"),
                   f("2*(u[2,0]*u[0,1]-u[1,1]*u[1,0])/(u[2,0]*u[0,2]-u[1,1]^2)")}};
    return {std::move(n1), std::move(n2)};
}

// omega1, omega2 dual to the frame; denominators carry the flex invariant.
inline std::pair<HorizontalForm, HorizontalForm> coframe(const JetContext& ctx0) {
    JetContext ctx = ctx0.extended(std::max(2u, ctx0.max_order()));
    auto f = [&](const std::string& e) {
        return JetFunction(ctx, parse_expression(e, ctx.table()));
    };
    const std::string J21 = "(u[0,1]^2*u[2,0]-2*u[1,0]*u[0,1]*u[1,1]+u[1,0]^2*u[0,2])";
    const std::string D2 = "(u[2,0]*u[0,2]-u[1,1]^2)";
    HorizontalForm w1{ctx,
                      {f("(u[2,0]*u[0,1]-u[1,1]*u[1,0])/" + J21),
                       f("(0-(u[0,2]*u[1,0]-u[1,1]*u[0,1]))/" + J21)}};
    HorizontalForm w2{ctx, {f(D2 + "/(2*" + J21 + ")*u[1,0]"), f(D2 + "/(2*" + J21 + ")*u[0,1]")}};
    return {std::move(w1), std::move(w2)};
}

// [phi, psi] = d phi/dx d psi/dy - d phi/dy d psi/dx
inline JetFunction poisson(const JetFunction& f, const JetFunction& g) {
    require(f.ctx().nindep() == 2 && g.ctx().nindep() == 2, "bad-context",
            "poisson bracket needs a 2-variable chart");
    return total_derivative(f, 0) * total_derivative(g, 1) -
           total_derivative(f, 1) * total_derivative(g, 0);
}

// phi * psi: substitutes u_sigma <- D_sigma(psi) into phi.
inline JetFunction compose(const JetFunction& phi, const JetFunction& psi) {
    require(phi.ctx().compatible(psi.ctx()), "context-mismatch",
            "composition needs matching independent variables");
    const unsigned k = phi.order(), l = psi.order();
    JetContext ctx = phi.ctx().extended(std::max({phi.ctx().max_order(),
                                                  psi.ctx().max_order(), k + l}));
    std::map<std::size_t, RatFunc> sub;
    JetContext pctx = phi.ctx();
    for (std::size_t v = pctx.nindep(); v < pctx.table()->size(); ++v) {
        if (!phi.value().depends_on(v)) continue;
        Sigma s = *pctx.sigma_of(v);
        JetFunction d = total_derivative_sigma(psi.lifted(ctx), s);
        sub.emplace(ctx.table()->index_of(jet_name(s)), d.value().lifted(ctx.table()));
    }
    RatFunc lifted = phi.value().lifted(ctx.table());
    return JetFunction(ctx, lifted.substituted(sub, ctx.table()));
}

// Structure functions of [a, b] = A a + B b for pointwise independent a, b.
inline std::pair<JetFunction, JetFunction> frame_bracket(const Derivation& a,
                                                         const Derivation& b) {
    require(a.coeffs.size() == 2 && b.coeffs.size() == 2, "bad-shape",
            "frame bracket expects two plane derivations");
    Derivation br = commutator(a, b);
    JetContext ctx = br.ctx;
    auto lift = [&](const JetFunction& g) { return g.lifted(ctx).value(); };
    std::vector<std::vector<RatFunc>> M = {{lift(a.coeffs[0]), lift(b.coeffs[0])},
                                           {lift(a.coeffs[1]), lift(b.coeffs[1])}};
    RatFunc det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
    require(!det.is_zero(), "dependent-derivations",
            "frame bracket needs pointwise independent derivations");
    RatFunc r0 = br.coeffs[0].value(), r1 = br.coeffs[1].value();
    RatFunc A = (r0 * M[1][1] - r1 * M[0][1]) / det;
    RatFunc B = (M[0][0] * r1 - M[1][0] * r0) / det;
    return {JetFunction(ctx, std::move(A)), JetFunction(ctx, std::move(B))};
}

// Expansion of Theta_k in the invariant coframe: Theta_k = sum I[i,j] w1^i w2^j.
// Coefficients follow the plain-monomial convention that matches the golden
// displays for k = 1, 2, 3.
inline std::map<Sigma, JetFunction> theta_expand(unsigned k) {
    JetContext ctx = context(std::max(2u, k));
    auto [w1, w2] = coframe(ctx);

    // invert the coframe matrix: dx = e00 w1 + e01 w2, dy = e10 w1 + e11 w2
    std::vector<std::vector<RatFunc>> W = {{w1.coeffs[0].value(), w1.coeffs[1].value()},
                                           {w2.coeffs[0].value(), w2.coeffs[1].value()}};
    auto E = detail::mat_inverse(W);  // columns of W^{-1}: dx_i = sum_j E[i][j] w_j

    // polynomial in the two coframe symbols with RatFunc coefficients
    using WPoly = std::map<std::pair<unsigned, unsigned>, RatFunc>;
    auto mul = [&](const WPoly& a, const WPoly& b) {
        WPoly r;
        for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b) {
                auto key = std::make_pair(ma.first + mb.first, ma.second + mb.second);
                auto it = r.find(key);
                if (it == r.end()) r.emplace(key, ca * cb);
                else it->second += ca * cb;
            }
        return r;
    };
    auto linear = [&](std::size_t axis) {
        WPoly p;
        p.emplace(std::make_pair(1u, 0u), E[axis][0]);
        p.emplace(std::make_pair(0u, 1u), E[axis][1]);
        return p;
    };
    auto wpow = [&](const WPoly& p, unsigned e) {
        WPoly r;
        r.emplace(std::make_pair(0u, 0u), RatFunc::constant(ctx.table(), Rational(1)));
        for (unsigned i = 0; i < e; ++i) r = mul(r, p);
        return r;
    };

    WPoly acc;
    for (const Sigma& s : multi_indices(2, k)) {
        Rational c = Rational(1) / (factorial(s[0]) * factorial(s[1]));
        WPoly term;
        term.emplace(std::make_pair(0u, 0u),
                     RatFunc::constant(ctx.table(), c) *
                         RatFunc::variable(ctx.table(), ctx.u_index(s)));
        term = mul(term, wpow(linear(0), s[0]));
        term = mul(term, wpow(linear(1), s[1]));
        for (const auto& [m, v] : term) {
            auto it = acc.find(m);
            if (it == acc.end()) acc.emplace(m, v);
            else it->second += v;
        }
    }

    std::map<Sigma, JetFunction> out;
    for (const Sigma& s : multi_indices(2, k)) {
        auto it = acc.find({s[0], s[1]});
        out.emplace(s, it == acc.end() || it->second.is_zero()
                           ? JetFunction::constant(ctx, Rational(0))
                           : JetFunction(ctx, it->second));
    }
    return out;
}

// Contraction of Theta_m with the position field x d/dx + y d/dy in every
// slot; an invariant with explicit base-point dependence (order m).
inline JetFunction radial_invariant(const JetContext& ctx0, unsigned m) {
    JetContext ctx = ctx0.extended(std::max(ctx0.max_order(), m));
    RatFunc acc(ctx.table());
    for (const Sigma& s : multi_indices(2, m)) {
        Rational c = Rational(1) / (factorial(s[0]) * factorial(s[1]));
        RatFunc t = RatFunc::constant(ctx.table(), c) *
                    RatFunc::variable(ctx.table(), ctx.u_index(s));
        t *= RatFunc::variable(ctx.table(), 0).pow(s[0]);
        t *= RatFunc::variable(ctx.table(), 1).pow(s[1]);
        acc += t;
    }
    return JetFunction(ctx, acc);
}

inline JetFunction builtin(const std::string& name) {
    JetContext ctx = context(2);
    if (name == "Delta2") return delta2(ctx);
    if (name == "J21") return j21(ctx);
    // theta coefficient identifiers: I[i,j]@k
    if (name.size() > 2 && name[0] == 'I' && name[1] == '[') {
        auto at = name.find('@');
        auto comma = name.find(',');
        auto close = name.find(']');
        if (at != std::string::npos && comma != std::string::npos && close < at) {
            unsigned i = unsigned(std::stoul(name.substr(2, comma - 2)));
            unsigned j = unsigned(std::stoul(name.substr(comma + 1, close - comma - 1)));
            unsigned k = unsigned(std::stoul(name.substr(at + 1)));
            require(i + j == k, "unknown-name",
                    "theta coefficient indices must sum to the expansion order");
            return theta_expand(k).at(Sigma{i, j});
        }
    }
    throw Error("unknown-name", "unknown builtin invariant '" + name + "'");
}

} // namespace sl2
} // namespace jetinv
