#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jetinv/linalg.hpp"
#include "jetinv/parser.hpp"
#include "jetinv/ratfunc.hpp"

namespace jetinv {

// Derivative multi-index over the independent variables.
using Sigma = std::vector<unsigned>;

inline unsigned sigma_order(const Sigma& s) {
    unsigned t = 0;
    for (unsigned v : s) t += v;
    return t;
}

inline Sigma sigma_plus(Sigma s, std::size_t axis) {
    s.at(axis) += 1;
    return s;
}

// Canonical enumeration of all |sigma| = m, first index descending, then the
// second. Fixes the chart variable order for every context.
inline std::vector<Sigma> multi_indices(unsigned nvars, unsigned m) {
    std::vector<Sigma> out;
    if (nvars == 1) {
        out.push_back({m});
    } else if (nvars == 2) {
        for (unsigned i = m + 1; i-- > 0;) out.push_back({i, m - i});
    } else {
        for (unsigned i = m + 1; i-- > 0;)
            for (unsigned j = m - i + 1; j-- > 0;) out.push_back({i, j, m - i - j});
    }
    return out;
}

inline std::string jet_name(const Sigma& s) {
    std::string n = "u[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) n += ',';
        n += std::to_string(s[i]);
    }
    n += ']';
    return n;
}

// Cap on automatic context extension (JETINV_MAX_ORDER in the CLI).
inline unsigned& max_order_cap() {
    static unsigned cap = 12;
    return cap;
}

// A jet coordinate chart: independent variables plus u_sigma, |sigma| <= k.
class JetContext {
public:
    static JetContext make(std::vector<std::string> indep, unsigned max_order) {
        require(!indep.empty() && indep.size() <= 3, "bad-context",
                "jet context needs 1, 2 or 3 independent variables");
        require(max_order <= max_order_cap(), "order-cap",
                "jet order " + std::to_string(max_order) + " exceeds cap " +
                    std::to_string(max_order_cap()));
        JetContext c;
        c.indep_ = std::move(indep);
        c.max_order_ = max_order;
        std::vector<std::string> names = c.indep_;
        for (unsigned m = 0; m <= max_order; ++m)
            for (const auto& s : multi_indices(unsigned(c.indep_.size()), m))
                names.push_back(jet_name(s));
        c.table_ = VarTable::make(std::move(names));
        return c;
    }

    JetContext extended(unsigned order) const {
        if (order <= max_order_) return *this;
        return make(indep_, order);
    }

    unsigned nindep() const { return unsigned(indep_.size()); }
    unsigned max_order() const { return max_order_; }
    const std::vector<std::string>& indep() const { return indep_; }
    const VarTable::Ptr& table() const { return table_; }

    std::size_t x_index(std::size_t axis) const {
        require(axis < indep_.size(), "axis-range", "independent axis out of range");
        return axis;
    }

    std::size_t u_index(const Sigma& s) const {
        require(s.size() == indep_.size(), "bad-sigma", "multi-index arity mismatch");
        int i = table_->find(jet_name(s));
        require(i >= 0, "order-range",
                "jet variable " + jet_name(s) + " not in chart of order " +
                    std::to_string(max_order_));
        return std::size_t(i);
    }

    // sigma for a u-variable index, nullopt for independent variables.
    std::optional<Sigma> sigma_of(std::size_t var) const {
        if (var < indep_.size()) return std::nullopt;
        const std::string& n = table_->name(var);
        Sigma s;
        std::size_t p = 2;
        unsigned cur = 0;
        for (; p < n.size(); ++p) {
            if (n[p] == ',' || n[p] == ']') { s.push_back(cur); cur = 0; }
            else cur = cur * 10 + unsigned(n[p] - '0');
        }
        return s;
    }

    bool compatible(const JetContext& o) const {
        return indep_ == o.indep_;
    }

private:
    std::vector<std::string> indep_;
    unsigned max_order_ = 0;
    VarTable::Ptr table_;
};

// A rational function on a jet chart.
class JetFunction {
public:
    JetFunction(JetContext ctx, RatFunc value) : ctx_(std::move(ctx)), value_(std::move(value)) {
        require(value_.table()->same_as(*ctx_.table()), "table-mismatch",
                "jet function value not over the context table");
    }

    static JetFunction constant(const JetContext& ctx, const Rational& c) {
        return JetFunction(ctx, RatFunc::constant(ctx.table(), c));
    }

    static JetFunction coordinate(const JetContext& ctx, std::size_t axis) {
        return JetFunction(ctx, RatFunc::variable(ctx.table(), ctx.x_index(axis)));
    }

    static JetFunction jet_var(const JetContext& ctx, const Sigma& s) {
        return JetFunction(ctx, RatFunc::variable(ctx.table(), ctx.u_index(s)));
    }

    const JetContext& ctx() const { return ctx_; }
    const RatFunc& value() const { return value_; }
    bool is_zero() const { return value_.is_zero(); }

    // max |sigma| among occurring jet variables
    unsigned order() const {
        unsigned o = 0;
        for (std::size_t v = ctx_.nindep(); v < ctx_.table()->size(); ++v) {
            if (!value_.depends_on(v)) continue;
            auto s = ctx_.sigma_of(v);
            o = std::max(o, sigma_order(*s));
        }
        return o;
    }

    JetFunction lifted(const JetContext& bigger) const {
        require(ctx_.compatible(bigger), "context-mismatch",
                "jet contexts with different independent variables");
        if (bigger.max_order() <= ctx_.max_order()) return *this;
        return JetFunction(bigger, value_.lifted(bigger.table()));
    }

    friend std::pair<JetFunction, JetFunction> unified(const JetFunction& a,
                                                       const JetFunction& b) {
        require(a.ctx_.compatible(b.ctx_), "context-mismatch",
                "jet contexts with different independent variables");
        if (a.ctx_.max_order() >= b.ctx_.max_order())
            return {a, b.lifted(a.ctx_)};
        return {a.lifted(b.ctx_), b};
    }

    friend JetFunction operator+(const JetFunction& a, const JetFunction& b) {
        auto [x, y] = unified(a, b);
        return JetFunction(x.ctx_, x.value_ + y.value_);
    }
    friend JetFunction operator-(const JetFunction& a, const JetFunction& b) {
        auto [x, y] = unified(a, b);
        return JetFunction(x.ctx_, x.value_ - y.value_);
    }
    friend JetFunction operator*(const JetFunction& a, const JetFunction& b) {
        auto [x, y] = unified(a, b);
        return JetFunction(x.ctx_, x.value_ * y.value_);
    }
    friend JetFunction operator/(const JetFunction& a, const JetFunction& b) {
        auto [x, y] = unified(a, b);
        return JetFunction(x.ctx_, x.value_ / y.value_);
    }

    JetFunction operator-() const { return JetFunction(ctx_, -value_); }

    JetFunction pow(long e) const { return JetFunction(ctx_, value_.pow(e)); }

    friend JetFunction operator*(const Rational& c, const JetFunction& f) {
        return JetFunction(f.ctx_, c * f.value_);
    }
    friend JetFunction operator*(const JetFunction& f, const Rational& c) { return c * f; }

    friend bool jet_equal(const JetFunction& a, const JetFunction& b) {
        auto [x, y] = unified(a, b);
        return ratfunc_equal(x.value_, y.value_);
    }

    std::string to_string() const { return value_.to_string(); }

private:
    JetContext ctx_;
    RatFunc value_;
};

// ---------------------------------------------------------------------------
// Total derivative and total differential
// ---------------------------------------------------------------------------

inline JetFunction total_derivative(const JetFunction& f, std::size_t axis) {
    const unsigned target = std::max(f.ctx().max_order(), f.order() + 1);
    JetContext ctx = f.ctx().extended(target);
    RatFunc v = f.value().lifted(ctx.table());
    RatFunc r = v.derivative(ctx.x_index(axis));
    for (std::size_t var = ctx.nindep(); var < ctx.table()->size(); ++var) {
        if (!v.depends_on(var)) continue;
        Sigma s = *ctx.sigma_of(var);
        RatFunc up = RatFunc::variable(ctx.table(), ctx.u_index(sigma_plus(s, axis)));
        r += up * v.derivative(var);
    }
    return JetFunction(ctx, std::move(r));
}

inline JetFunction total_derivative_sigma(JetFunction f, const Sigma& s) {
    for (std::size_t axis = 0; axis < s.size(); ++axis)
        for (unsigned i = 0; i < s[axis]; ++i) f = total_derivative(f, axis);
    return f;
}

// Invariant derivation sum c_i d/dx_i with jet-function coefficients.
struct Derivation {
    JetContext ctx;
    std::vector<JetFunction> coeffs;  // one per independent variable

    JetFunction apply(const JetFunction& f) const {
        JetFunction acc = JetFunction::constant(ctx, Rational(0));
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            acc = acc + coeffs[i] * total_derivative(f, i);
        return acc;
    }
};

// Horizontal 1-form sum g_i dx_i.
struct HorizontalForm {
    JetContext ctx;
    std::vector<JetFunction> coeffs;
};

inline JetFunction pairing(const HorizontalForm& w, const Derivation& d) {
    require(w.coeffs.size() == d.coeffs.size(), "bad-shape", "form/derivation arity mismatch");
    JetFunction acc = JetFunction::constant(w.ctx, Rational(0));
    for (std::size_t i = 0; i < w.coeffs.size(); ++i)
        acc = acc + w.coeffs[i] * d.coeffs[i];
    return acc;
}

inline HorizontalForm total_differential(const JetFunction& f) {
    std::vector<JetFunction> comps;
    for (std::size_t i = 0; i < f.ctx().nindep(); ++i)
        comps.push_back(total_derivative(f, i));
    JetContext ctx = comps.front().ctx();
    for (auto& c : comps) c = c.lifted(ctx);
    return HorizontalForm{ctx, std::move(comps)};
}

// Commutator of two derivations: coefficients a(b_i) - b(a_i).
inline Derivation commutator(const Derivation& a, const Derivation& b) {
    require(a.coeffs.size() == b.coeffs.size(), "bad-shape", "derivation arity mismatch");
    std::vector<JetFunction> out;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        out.push_back(a.apply(b.coeffs[i]) - b.apply(a.coeffs[i]));
    JetContext ctx = out.front().ctx();
    for (auto& c : out) c = c.lifted(ctx);
    return Derivation{ctx, std::move(out)};
}

// ---------------------------------------------------------------------------
// Point fields and prolongation
// ---------------------------------------------------------------------------

// Vector field on the base: sum a_i(x) d/dx_i, no u-component.
struct PointField {
    std::vector<std::string> indep;
    std::vector<RatFunc> coeffs;  // over the base table (independent variables only)

    static PointField make(const std::vector<std::string>& indep,
                           const std::vector<std::string>& exprs);
};

inline PointField PointField::make(const std::vector<std::string>& indep,
                                   const std::vector<std::string>& exprs) {
    require(indep.size() == exprs.size(), "bad-shape", "point field arity mismatch");
    auto base = VarTable::make(indep);
    PointField f;
    f.indep = indep;
    for (const auto& e : exprs) f.coeffs.push_back(parse_expression(e, base));
    return f;
}

// Prolongation of a point field to order k: the chart vector field
//   X^(k) = sum a_i d/dx_i + sum_sigma phi_sigma d/du_sigma,
//   phi_sigma = D_sigma(Q) + sum_i a_i u_{sigma+e_i},  Q = -sum a_i u_{e_i}.
struct ProlongedField {
    JetContext ctx;
    std::vector<JetFunction> base_coeffs;
    std::map<Sigma, JetFunction> u_coeffs;

    // g must have order <= ctx order; pure partial derivatives.
    JetFunction apply(const JetFunction& g) const {
        JetFunction f = g.ctx().max_order() <= ctx.max_order()
                            ? g.lifted(ctx)
                            : JetFunction(ctx, g.value().restricted(ctx.table()));
        RatFunc acc(ctx.table());
        for (std::size_t i = 0; i < base_coeffs.size(); ++i)
            acc += base_coeffs[i].value() * f.value().derivative(ctx.x_index(i));
        for (const auto& [s, phi] : u_coeffs) {
            std::size_t var = ctx.u_index(s);
            if (!f.value().depends_on(var)) continue;
            acc += phi.value() * f.value().derivative(var);
        }
        return JetFunction(ctx, std::move(acc));
    }
};

inline ProlongedField prolong_field(const PointField& X, unsigned k) {
    const unsigned n = unsigned(X.indep.size());
    // work one order higher so D_sigma(Q) is available at |sigma| = k
    JetContext work = JetContext::make(X.indep, k + 1);
    JetContext ctx = JetContext::make(X.indep, k);

    std::vector<JetFunction> a;
    for (const auto& c : X.coeffs) a.push_back(JetFunction(ctx, c.lifted(ctx.table())));

    // characteristic Q = -sum a_i u_{e_i}
    JetFunction Q = JetFunction::constant(work, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        Sigma e(n, 0);
        e[i] = 1;
        Q = Q - JetFunction(work, X.coeffs[i].lifted(work.table())) *
                    JetFunction::jet_var(work, e);
    }

    ProlongedField out{ctx, a, {}};
    for (unsigned m = 0; m <= k; ++m) {
        for (const Sigma& s : multi_indices(n, m)) {
            JetFunction phi = total_derivative_sigma(Q, s);
            for (std::size_t i = 0; i < n; ++i) {
                JetContext pctx = phi.ctx();
                phi = phi + JetFunction(pctx, X.coeffs[i].lifted(pctx.table())) *
                                JetFunction::jet_var(pctx, sigma_plus(s, i));
            }
            require(phi.order() <= m, "prolong-internal",
                    "prolongation coefficient order did not collapse");
            out.u_coeffs.emplace(s, JetFunction(ctx, phi.value().restricted(ctx.table())));
        }
    }
    return out;
}

// Commutator of the point fields themselves.
inline PointField point_commutator(const PointField& X, const PointField& Y) {
    require(X.indep == Y.indep, "context-mismatch", "point fields on different bases");
    PointField out;
    out.indep = X.indep;
    for (std::size_t i = 0; i < X.coeffs.size(); ++i) {
        RatFunc c(X.coeffs[i].table());
        for (std::size_t j = 0; j < X.coeffs.size(); ++j)
            c += X.coeffs[j] * Y.coeffs[i].derivative(j) -
                 Y.coeffs[j] * X.coeffs[i].derivative(j);
        out.coeffs.push_back(std::move(c));
    }
    return out;
}

// Lie equation X^(k)(I) = 0 for every generator, k = order(I).
inline bool lie_check(const JetFunction& I, const std::vector<PointField>& algebra) {
    const unsigned k = I.order();
    for (const auto& X : algebra) {
        ProlongedField P = prolong_field(X, k);
        if (!P.apply(I).is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Standard Lie algebras
// ---------------------------------------------------------------------------

inline std::vector<PointField> sl2_algebra() {
    return {PointField::make({"x", "y"}, {"0", "x"}),      // X+
            PointField::make({"x", "y"}, {"y", "0"}),      // X-
            PointField::make({"x", "y"}, {"x", "0-y"})};   // X0
}

inline std::vector<PointField> aff2_algebra() {
    return {PointField::make({"x", "y"}, {"1", "0"}),
            PointField::make({"x", "y"}, {"0", "1"}),
            PointField::make({"x", "y"}, {"x", "0"}),
            PointField::make({"x", "y"}, {"0", "x"}),
            PointField::make({"x", "y"}, {"y", "0"}),
            PointField::make({"x", "y"}, {"0", "y"})};
}

inline std::vector<PointField> sl3_algebra() {
    return {PointField::make({"x", "y", "z"}, {"x", "0-y", "0"}),
            PointField::make({"x", "y", "z"}, {"x", "0", "0-z"}),
            PointField::make({"x", "y", "z"}, {"y", "0", "0"}),
            PointField::make({"x", "y", "z"}, {"z", "0", "0"}),
            PointField::make({"x", "y", "z"}, {"0", "x", "0"}),
            PointField::make({"x", "y", "z"}, {"0", "z", "0"}),
            PointField::make({"x", "y", "z"}, {"0", "0", "x"}),
            PointField::make({"x", "y", "z"}, {"0", "0", "y"})};
}

// ---------------------------------------------------------------------------
// Exact group action on jet points
// ---------------------------------------------------------------------------

using JetPoint = std::map<std::string, Rational>;

inline std::vector<Rational> point_vector(const JetContext& ctx, const JetPoint& p) {
    std::vector<Rational> v;
    v.reserve(ctx.table()->size());
    for (const auto& n : ctx.table()->names()) {
        auto it = p.find(n);
        require(it != p.end(), "bad-point", "jet point missing variable " + n);
        v.push_back(it->second);
    }
    return v;
}

inline Rational eval_at(const JetFunction& f, const JetPoint& p) {
    return f.value().eval(point_vector(f.ctx(), p));
}

// p |-> A.p: base point moves by A, the order-m derivative tensors pull back
// through A^{-1} (exact chain rule for a linear change of variables).
inline JetPoint act_on_jet(const std::vector<std::vector<Rational>>& A, const JetContext& ctx,
                           const JetPoint& p) {
    const unsigned n = ctx.nindep();
    require(A.size() == n, "bad-shape", "matrix dimension does not match chart");
    for (const auto& row : A)
        require(row.size() == n, "bad-shape", "matrix is not square");

    // det and inverse (adjugate; det must be 1)
    Rational det(0);
    std::vector<std::vector<Rational>> B(n, std::vector<Rational>(n, Rational(0)));
    if (n == 1) {
        det = A[0][0];
        B[0][0] = Rational(1);
    } else if (n == 2) {
        det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
        B = {{A[1][1], -A[0][1]}, {-A[1][0], A[0][0]}};
    } else {
        det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
              A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
              A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                std::size_t r0 = (i + 1) % 3, r1 = (i + 2) % 3;
                std::size_t c0 = (j + 1) % 3, c1 = (j + 2) % 3;
                // adjugate: transpose of cofactors
                B[j][i] = A[r0][c0] * A[r1][c1] - A[r0][c1] * A[r1][c0];
                if ((i + j) % 2 == 1) B[j][i] = -B[j][i];
            }
    }
    require(det == Rational(1), "not-unimodular", "matrix determinant is not 1");

    JetPoint out;
    // base point: x' = A x
    std::vector<Rational> xv;
    for (unsigned i = 0; i < n; ++i) xv.push_back(p.at(ctx.indep()[i]));
    for (unsigned i = 0; i < n; ++i) {
        Rational s(0);
        for (unsigned j = 0; j < n; ++j) s += A[i][j] * xv[j];
        out[ctx.indep()[i]] = s;
    }

    // scratch polynomial ring in formal covector symbols
    std::vector<std::string> xi_names;
    for (unsigned i = 0; i < n; ++i) xi_names.push_back("t" + std::to_string(i + 1));
    auto xis = VarTable::make(xi_names);
    std::map<std::size_t, MultiPoly> lin;
    for (unsigned j = 0; j < n; ++j) {
        MultiPoly l(xis);
        for (unsigned i = 0; i < n; ++i) {
            Mono m(n, 0);
            m[i] = 1;
            l.add_term(m, B[j][i]);
        }
        lin.emplace(j, std::move(l));
    }

    for (unsigned m = 0; m <= ctx.max_order(); ++m) {
        // P_m(t) = sum u_sigma t^sigma / sigma!
        MultiPoly P(xis);
        for (const Sigma& s : multi_indices(n, m)) {
            Mono mono(n, 0);
            Rational sf(1);
            for (unsigned i = 0; i < n; ++i) {
                mono[i] = static_cast<Exp>(s[i]);
                sf *= factorial(s[i]);
            }
            P.add_term(mono, p.at(jet_name(s)) / sf);
        }
        MultiPoly Pt = P.substitute(lin);
        for (const Sigma& s : multi_indices(n, m)) {
            Mono mono(n, 0);
            Rational sf(1);
            for (unsigned i = 0; i < n; ++i) {
                mono[i] = static_cast<Exp>(s[i]);
                sf *= factorial(s[i]);
            }
            auto it = Pt.terms().find(mono);
            out[jet_name(s)] = it == Pt.terms().end() ? Rational(0) : it->second * sf;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Euler reduction to E_n
// ---------------------------------------------------------------------------

// Substitutes u_sigma = (sum_i x_i u_{sigma+e_i})/(n-|sigma|) for |sigma| < n
// (lowest order first) and u_sigma = 0 above order n. The result depends only
// on the base variables and order-n jet variables.
inline JetFunction euler_reduce(const JetFunction& f, unsigned n) {
    const JetContext& c0 = f.ctx();
    require(c0.max_order() >= n, "order-range",
            "euler_reduce needs context order >= " + std::to_string(n));
    JetContext ctx = c0.extended(std::max(c0.max_order(), f.order()));
    RatFunc v = f.value().lifted(ctx.table());
    const unsigned nv = ctx.nindep();

    for (unsigned m = 0; m < n; ++m) {
        Rational div(long(n - m));
        for (const Sigma& s : multi_indices(nv, m)) {
            std::size_t var = ctx.u_index(s);
            if (!v.depends_on(var)) continue;
            RatFunc repl(ctx.table());
            for (unsigned i = 0; i < nv; ++i)
                repl += RatFunc::variable(ctx.table(), ctx.x_index(i)) *
                        RatFunc::variable(ctx.table(), ctx.u_index(sigma_plus(s, i)));
            repl *= Rational(1) / div;
            v = v.substituted({{var, repl}}, ctx.table());
        }
    }
    std::map<std::size_t, RatFunc> kill;
    for (unsigned m = n + 1; m <= ctx.max_order(); ++m)
        for (const Sigma& s : multi_indices(nv, m)) {
            std::size_t var = ctx.u_index(s);
            if (v.depends_on(var)) kill.emplace(var, RatFunc(ctx.table()));
        }
    if (!kill.empty()) v = v.substituted(kill, ctx.table());
    return JetFunction(ctx, std::move(v));
}

// ---------------------------------------------------------------------------
// Tresse frames
// ---------------------------------------------------------------------------

namespace detail {

// determinant and inverse for small RatFunc matrices (n <= 3)
inline RatFunc mat_det(const std::vector<std::vector<RatFunc>>& M) {
    const std::size_t n = M.size();
    if (n == 1) return M[0][0];
    if (n == 2) return M[0][0] * M[1][1] - M[0][1] * M[1][0];
    return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
           M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
           M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
}

inline std::vector<std::vector<RatFunc>> mat_inverse(
    const std::vector<std::vector<RatFunc>>& M) {
    const std::size_t n = M.size();
    RatFunc det = mat_det(M);
    require(!det.is_zero(), "degenerate-position", "matrix is symbolically singular");
    std::vector<std::vector<RatFunc>> inv(n, std::vector<RatFunc>(n, RatFunc(det.table())));
    if (n == 1) {
        inv[0][0] = RatFunc::constant(det.table(), Rational(1)) / det;
        return inv;
    }
    if (n == 2) {
        inv[0][0] = M[1][1] / det;
        inv[0][1] = -(M[0][1] / det);
        inv[1][0] = -(M[1][0] / det);
        inv[1][1] = M[0][0] / det;
        return inv;
    }
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            RatFunc cof = M[r0][c0] * M[r1][c1] - M[r0][c1] * M[r1][c0];
            if ((i + j) % 2 == 1) cof = -cof;
            inv[i][j] = cof / det;
        }
    return inv;
}

} // namespace detail

// Tresse frame of f_1..f_n (n = number of independent variables): derivations
// tau_i with tau_i(f_j) = delta_ij, via inversion of the total-derivative
// matrix over the fraction field.
inline std::vector<Derivation> tresse_frame(const std::vector<JetFunction>& fs) {
    require(!fs.empty(), "bad-shape", "tresse frame needs at least one function");
    JetContext ctx = fs.front().ctx();
    const unsigned n = ctx.nindep();
    require(fs.size() == n, "bad-shape",
            "tresse frame needs exactly one function per independent variable");

    // J[i][j] = D_j(f_i), all over one context
    std::vector<std::vector<JetFunction>> D;
    unsigned target = ctx.max_order();
    for (const auto& f : fs) {
        std::vector<JetFunction> row;
        for (unsigned j = 0; j < n; ++j) row.push_back(total_derivative(f, j));
        target = std::max(target, row.front().ctx().max_order());
        D.push_back(std::move(row));
    }
    JetContext c = ctx.extended(target);
    std::vector<std::vector<RatFunc>> Jt(n, std::vector<RatFunc>(n, RatFunc(c.table())));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            Jt[j][i] = D[i][j].lifted(c).value();  // transpose
    auto C = detail::mat_inverse(Jt);              // C = (J^T)^{-1}

    std::vector<Derivation> out;
    for (unsigned i = 0; i < n; ++i) {
        std::vector<JetFunction> coeffs;
        for (unsigned j = 0; j < n; ++j) coeffs.emplace_back(c, C[i][j]);
        out.push_back(Derivation{c, std::move(coeffs)});
    }
    return out;
}

inline JetFunction tresse_derivative(const JetFunction& g,
                                     const std::vector<Derivation>& frame, std::size_t i) {
    require(i < frame.size(), "index-range", "tresse derivative index out of range");
    return frame[i].apply(g);
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

// V* = sum x_i d/dx_i - sum |sigma| u_sigma d/du_sigma (prolonged scaling).
inline JetFunction scaling_field_apply(const JetFunction& f) {
    const JetContext& ctx = f.ctx();
    RatFunc acc(ctx.table());
    for (unsigned i = 0; i < ctx.nindep(); ++i)
        acc += RatFunc::variable(ctx.table(), i) * f.value().derivative(i);
    for (std::size_t v = ctx.nindep(); v < ctx.table()->size(); ++v) {
        if (!f.value().depends_on(v)) continue;
        unsigned m = sigma_order(*ctx.sigma_of(v));
        if (m == 0) continue;
        acc -= Rational(long(m)) * RatFunc::variable(ctx.table(), v) * f.value().derivative(v);
    }
    return JetFunction(ctx, std::move(acc));
}

// gamma = sum u_sigma d/du_sigma (scaling of the dependent variable).
inline JetFunction gamma_field_apply(const JetFunction& f) {
    const JetContext& ctx = f.ctx();
    RatFunc acc(ctx.table());
    for (std::size_t v = ctx.nindep(); v < ctx.table()->size(); ++v) {
        if (!f.value().depends_on(v)) continue;
        acc += RatFunc::variable(ctx.table(), v) * f.value().derivative(v);
    }
    return JetFunction(ctx, std::move(acc));
}

namespace detail {

inline long eigen_weight(const JetFunction& f, const JetFunction& Lf, const char* kind) {
    require(!f.is_zero(), "zero-function", "weight of the zero function");
    if (Lf.is_zero()) return 0;
    // candidate c from leading coefficients of the cross products
    const RatFunc& a = Lf.value();
    const RatFunc& b = f.value();
    Rational c = (a.num().leading_coeff() * b.den().leading_coeff()) /
                 (b.num().leading_coeff() * a.den().leading_coeff());
    JetFunction scaled = JetFunction(f.ctx(), b * c);
    require(jet_equal(Lf, scaled), "not-homogeneous",
            std::string("function is not ") + kind + "-homogeneous");
    require(c.is_integer(), "not-homogeneous", "weight is not an integer");
    return long(mpz_class(c.num()).get_si());
}

} // namespace detail

inline long weight(const JetFunction& f) {
    return detail::eigen_weight(f, scaling_field_apply(f), "weight");
}

inline long gamma_weight(const JetFunction& f) {
    return detail::eigen_weight(f, gamma_field_apply(f), "gamma");
}

} // namespace jetinv
