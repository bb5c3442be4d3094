#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jetinv/jets.hpp"

namespace jetinv {

// Binary or ternary form of degree n in the factorial normalization:
// phi = sum b_sigma x^sigma / sigma!. Coefficients may be symbolic (rational
// functions in parameters) or plain rationals.
class Form {
public:
    Form(unsigned arity, unsigned degree, VarTable::Ptr param_table)
        : arity_(arity), degree_(degree), params_(std::move(param_table)) {
        require(arity_ == 2 || arity_ == 3, "bad-form", "forms have arity 2 or 3");
    }

    static std::vector<std::string> base_names(unsigned arity) {
        return arity == 2 ? std::vector<std::string>{"x", "y"}
                          : std::vector<std::string>{"x", "y", "z"};
    }

    // Combined table: base variables then parameters.
    static VarTable::Ptr combined_table(unsigned arity, const VarTable::Ptr& params) {
        return VarTable::extend(VarTable::make(base_names(arity)), params->names());
    }

    unsigned arity() const { return arity_; }
    unsigned degree() const { return degree_; }
    const VarTable::Ptr& params() const { return params_; }

    void set_coeff(const Sigma& s, RatFunc c) {
        require(s.size() == arity_ && sigma_order(s) == degree_, "bad-form",
                "coefficient index must sum to the degree");
        require(c.table()->same_as(*params_), "table-mismatch",
                "form coefficient over the wrong parameter table");
        coeffs_.insert_or_assign(s, std::move(c));
    }

    RatFunc coeff(const Sigma& s) const {
        auto it = coeffs_.find(s);
        if (it != coeffs_.end()) return it->second;
        return RatFunc(params_);
    }

    bool is_rational() const {
        for (const auto& [s, c] : coeffs_)
            if (!c.is_constant()) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& [s, c] : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    // The polynomial sum b_sigma x^sigma / sigma! over the combined table.
    RatFunc polynomial() const {
        auto t = combined_table(arity_, params_);
        const std::map<std::size_t, RatFunc> none;
        RatFunc acc(t);
        for (const auto& [s, c] : coeffs_) {
            Rational sf(1);
            RatFunc term = c.substituted(none, t);  // lift by variable name
            for (unsigned i = 0; i < arity_; ++i) {
                sf *= factorial(s[i]);
                term *= RatFunc::variable(t, i).pow(s[i]);
            }
            acc += term * (Rational(1) / sf);
        }
        return acc;
    }

    // d/dx_axis in the factorial normalization shifts indices down.
    Form derivative(std::size_t axis) const {
        require(degree_ >= 1, "bad-form", "derivative of a degree-0 form");
        Form out(arity_, degree_ - 1, params_);
        for (const Sigma& s : multi_indices(arity_, degree_ - 1))
            out.set_coeff(s, coeff(sigma_plus(s, axis)));
        return out;
    }

    // phi . A^{-1} by exact substitution; A must be square of matching size.
    Form transformed(const std::vector<std::vector<Rational>>& A) const;

    // Parses a polynomial text over (base vars + params), checks homogeneity
    // of the stated degree, and reads off the factorial-normalized coefficients.
    static Form from_polynomial(unsigned arity, unsigned degree, const std::string& text,
                                const VarTable::Ptr& params);

    static Form from_rational_coeffs(unsigned arity, unsigned degree,
                                     const std::map<Sigma, Rational>& bs) {
        auto params = VarTable::make({});
        Form f(arity, degree, params);
        for (const auto& [s, v] : bs) f.set_coeff(s, RatFunc::constant(params, v));
        return f;
    }

private:
    unsigned arity_;
    unsigned degree_;
    VarTable::Ptr params_;
    std::map<Sigma, RatFunc> coeffs_;
};

inline Form Form::from_polynomial(unsigned arity, unsigned degree, const std::string& text,
                                  const VarTable::Ptr& params) {
    auto t = combined_table(arity, params);
    RatFunc p = parse_expression(text, t);
    require(p.is_polynomial(), "bad-form", "a form must be polynomial");
    Form out(arity, degree, params);
    std::map<Sigma, MultiPoly> buckets;
    for (const auto& [m, c] : p.num().terms()) {
        Sigma s(arity, 0);
        unsigned d = 0;
        for (unsigned i = 0; i < arity; ++i) {
            s[i] = m[i];
            d += m[i];
        }
        require(d == degree, "not-homogeneous",
                "polynomial is not homogeneous of degree " + std::to_string(degree));
        Mono pm(params->size(), 0);
        for (std::size_t i = arity; i < m.size(); ++i) pm[i - arity] = m[i];
        auto it = buckets.find(s);
        if (it == buckets.end())
            it = buckets.emplace(s, MultiPoly(params)).first;
        it->second.add_term(pm, c);
    }
    for (auto& [s, poly] : buckets) {
        Rational sf(1);
        for (unsigned i = 0; i < arity; ++i) sf *= factorial(s[i]);
        out.set_coeff(s, RatFunc::from_poly(poly) * sf);
    }
    return out;
}

inline Form Form::transformed(const std::vector<std::vector<Rational>>& A) const {
    const unsigned n = arity_;
    require(A.size() == n, "bad-shape", "matrix does not match the form arity");
    // inverse via adjugate over the rationals
    std::vector<std::vector<Rational>> B(n, std::vector<Rational>(n, Rational(0)));
    Rational det(0);
    if (n == 2) {
        det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
        require(!det.is_zero(), "singular-matrix", "transform matrix is singular");
        Rational inv = Rational(1) / det;
        B = {{A[1][1] * inv, -A[0][1] * inv}, {-A[1][0] * inv, A[0][0] * inv}};
    } else {
        det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
              A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
              A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
        require(!det.is_zero(), "singular-matrix", "transform matrix is singular");
        Rational inv = Rational(1) / det;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                std::size_t r0 = (i + 1) % 3, r1 = (i + 2) % 3;
                std::size_t c0 = (j + 1) % 3, c1 = (j + 2) % 3;
                Rational cof = A[r0][c0] * A[r1][c1] - A[r0][c1] * A[r1][c0];
                if ((i + j) % 2 == 1) cof = -cof;
                B[j][i] = cof * inv;
            }
    }

    auto t = combined_table(arity_, params_);
    RatFunc p = polynomial();
    std::map<std::size_t, RatFunc> sub;
    for (unsigned j = 0; j < n; ++j) {
        RatFunc l(t);
        for (unsigned i = 0; i < n; ++i)
            l += RatFunc::variable(t, i) * RatFunc::constant(t, B[j][i]);
        sub.emplace(j, std::move(l));
    }
    RatFunc q = p.substituted(sub, t);
    require(q.is_polynomial(), "bad-form", "transformed form is not polynomial");

    Form out(arity_, degree_, params_);
    std::map<Sigma, MultiPoly> buckets;
    for (const auto& [m, c] : q.num().terms()) {
        Sigma s(arity_, 0);
        for (unsigned i = 0; i < arity_; ++i) s[i] = m[i];
        Mono pm(params_->size(), 0);
        for (std::size_t i = arity_; i < m.size(); ++i) pm[i - arity_] = m[i];
        auto it = buckets.find(s);
        if (it == buckets.end()) it = buckets.emplace(s, MultiPoly(params_)).first;
        it->second.add_term(pm, c);
    }
    for (auto& [s, poly] : buckets) {
        Rational sf(1);
        for (unsigned i = 0; i < arity_; ++i) sf *= factorial(s[i]);
        out.set_coeff(s, RatFunc::from_poly(poly) * sf);
    }
    return out;
}

// Substitutes u_sigma <- d^sigma phi into a jet function; the result is a
// rational function in the base variables and the form coefficients.
inline RatFunc restrict_to_form(const JetFunction& f, const Form& phi) {
    const JetContext& ctx = f.ctx();
    require(ctx.nindep() == phi.arity(), "bad-form", "form arity does not match the chart");
    auto target = Form::combined_table(phi.arity(), phi.params());
    RatFunc poly = phi.polynomial();

    std::map<std::size_t, RatFunc> sub;
    for (std::size_t v = ctx.nindep(); v < ctx.table()->size(); ++v) {
        if (!f.value().depends_on(v)) continue;
        Sigma s = *ctx.sigma_of(v);
        RatFunc d = poly;
        for (unsigned axis = 0; axis < s.size(); ++axis)
            for (unsigned i = 0; i < s[axis]; ++i) d = d.derivative(axis);
        sub.emplace(v, std::move(d));
    }
    return f.value().substituted(sub, target);
}

// Sylvester resultant with declared formal degrees: dehomogenize at y = 1,
// build the (n+m) x (n+m) matrix from the coefficient sequences (leading
// zeros retained) and take its determinant over the parameter field.
inline RatFunc sylvester_resultant(const Form& phi, const Form& psi) {
    require(phi.arity() == 2 && psi.arity() == 2, "bad-form",
            "sylvester resultant is for binary forms");
    require(!phi.is_zero() && !psi.is_zero(), "zero-form", "resultant of the zero form");
    const unsigned n = phi.degree(), m = psi.degree();
    const auto& params = phi.params();
    require(params->same_as(*psi.params()), "table-mismatch",
            "resultant needs a common parameter table");

    // descending x-powers of the dehomogenized forms: coeff of x^i is b_{i,n-i}/i!
    auto seq = [&](const Form& f, unsigned d) {
        std::vector<RatFunc> out;
        for (unsigned i = d + 1; i-- > 0;)
            out.push_back(f.coeff(Sigma{i, d - i}) * (Rational(1) / (factorial(i) * factorial(d - i))));
        return out;
    };
    auto fc = seq(phi, n), gc = seq(psi, m);

    const unsigned N = n + m;
    std::vector<std::vector<RatFunc>> M(N, std::vector<RatFunc>(N, RatFunc(params)));
    for (unsigned r = 0; r < m; ++r)
        for (unsigned k = 0; k <= n; ++k) M[r][r + k] = fc[k];
    for (unsigned r = 0; r < n; ++r)
        for (unsigned k = 0; k <= m; ++k) M[m + r][r + k] = gc[k];

    // fraction-free style elimination over the field of rational functions
    RatFunc det = RatFunc::constant(params, Rational(1));
    for (unsigned col = 0; col < N; ++col) {
        unsigned piv = N;
        for (unsigned r = col; r < N; ++r)
            if (!M[r][col].is_zero()) { piv = r; break; }
        if (piv == N) return RatFunc(params);  // singular: resultant 0
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det *= Rational(-1);
        }
        det *= M[col][col];
        RatFunc inv = RatFunc::constant(params, Rational(1)) / M[col][col];
        for (unsigned r = col + 1; r < N; ++r) {
            if (M[r][col].is_zero()) continue;
            RatFunc f = M[r][col] * inv;
            for (unsigned c = col; c < N; ++c) M[r][c] -= f * M[col][c];
        }
    }
    return det;
}

// Discr(phi) = Res(phi_x, phi_y) with formal degrees n-1.
inline RatFunc discriminant(const Form& phi) {
    require(phi.arity() == 2, "bad-form", "discriminant is for binary forms");
    require(phi.degree() >= 2, "bad-form", "discriminant needs degree >= 2");
    Form fx = phi.derivative(0), fy = phi.derivative(1);
    require(!fx.is_zero() || !fy.is_zero(), "degenerate-form",
            "both partials vanish identically");
    // a single vanishing partial signals a repeated factor: resultant 0
    if (fx.is_zero() || fy.is_zero()) return RatFunc(phi.params());
    return sylvester_resultant(fx, fy);
}

// Renames u_{i,n-i} -> b[i,n-i] for a jet function of pure order n.
inline RatFunc algebraic_invariant(const JetFunction& I, unsigned n) {
    const JetContext& ctx = I.ctx();
    std::vector<std::string> bnames;
    for (const Sigma& s : multi_indices(ctx.nindep(), n)) {
        std::string nm = jet_name(s);
        nm[0] = 'b';
        bnames.push_back(nm);
    }
    auto bt = VarTable::make(bnames);

    std::map<std::size_t, RatFunc> sub;
    for (std::size_t v = ctx.nindep(); v < ctx.table()->size(); ++v) {
        if (!I.value().depends_on(v)) continue;
        Sigma s = *ctx.sigma_of(v);
        require(sigma_order(s) == n, "order-mismatch",
                "invariant involves jet variables of order != " + std::to_string(n));
        std::string nm = jet_name(s);
        nm[0] = 'b';
        sub.emplace(v, RatFunc::variable(bt, bt->index_of(nm)));
    }
    for (unsigned i = 0; i < ctx.nindep(); ++i)
        require(!I.value().depends_on(i), "order-mismatch",
                "invariant involves base variables");
    return I.value().substituted(sub, bt);
}

// ---------------------------------------------------------------------------
// SL2 equivalence verdicts for cubics and quartics
// ---------------------------------------------------------------------------

enum class EquivStatus { Equivalent, Inequivalent, Irregular };

struct EquivalenceVerdict {
    EquivStatus status = EquivStatus::Irregular;
    // generating-invariant values for both forms plus caveat notes
    std::vector<std::pair<std::string, std::string>> witness;
};

inline const char* to_string(EquivStatus s) {
    switch (s) {
        case EquivStatus::Equivalent: return "equivalent";
        case EquivStatus::Inequivalent: return "inequivalent";
        default: return "irregular";
    }
}

inline EquivalenceVerdict sl2_equivalent(const Form& phi, const Form& psi) {
    require(phi.arity() == 2 && psi.arity() == 2, "bad-form", "equivalence is for binary forms");
    require(phi.degree() == psi.degree(), "bad-form", "forms must share the degree");
    require(phi.is_rational() && psi.is_rational(), "bad-form",
            "equivalence needs rational coefficients");
    const unsigned n = phi.degree();
    require(n == 3 || n == 4, "unsupported-degree", "equivalence verdicts cover degrees 3 and 4");

    EquivalenceVerdict v;
    if (n == 3) {
        Rational d1 = discriminant(phi).constant_value();
        Rational d2 = discriminant(psi).constant_value();
        v.witness.emplace_back("Discr(phi)", d1.to_string());
        v.witness.emplace_back("Discr(psi)", d2.to_string());
        if (d1.is_zero() || d2.is_zero()) {
            v.status = EquivStatus::Irregular;
            v.witness.emplace_back("irregular",
                                   d1.is_zero() ? (d2.is_zero() ? "both" : "phi") : "psi");
            return v;
        }
        v.status = d1 == d2 ? EquivStatus::Equivalent : EquivStatus::Inequivalent;
        return v;
    }

    auto b = [](const Form& f, unsigned i, unsigned j) {
        return f.coeff(Sigma{i, j}).constant_value();
    };
    auto hankel = [&](const Form& f) {
        Rational b40 = b(f, 4, 0), b31 = b(f, 3, 1), b22 = b(f, 2, 2), b13 = b(f, 1, 3),
                 b04 = b(f, 0, 4);
        Rational alpha = Rational(4) * b13 * b31 - b40 * b04 - Rational(3) * b22 * b22;
        Rational delta = b22 * b40 * b04 - b04 * b31 * b31 - b40 * b13 * b13 +
                         Rational(2) * b13 * b22 * b31 - b22 * b22 * b22;
        return std::make_pair(alpha, delta);
    };
    auto [a1, d1] = hankel(phi);
    auto [a2, d2] = hankel(psi);
    v.witness.emplace_back("alpha(phi)", a1.to_string());
    v.witness.emplace_back("delta(phi)", d1.to_string());
    v.witness.emplace_back("alpha(psi)", a2.to_string());
    v.witness.emplace_back("delta(psi)", d2.to_string());
    v.witness.emplace_back("note", "generator-level equivalence: verdict compares the "
                                   "generating pair (alpha, delta)");
    if ((a1.is_zero() && d1.is_zero()) || (a2.is_zero() && d2.is_zero())) {
        v.status = EquivStatus::Irregular;
        v.witness.emplace_back("irregular", (a1.is_zero() && d1.is_zero())
                                                ? ((a2.is_zero() && d2.is_zero()) ? "both" : "phi")
                                                : "psi");
        return v;
    }
    v.status = (a1 == a2 && d1 == d2) ? EquivStatus::Equivalent : EquivStatus::Inequivalent;
    return v;
}

} // namespace jetinv
