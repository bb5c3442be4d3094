#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jetinv/rational.hpp"
#include "jetinv/vartable.hpp"

namespace jetinv {

using Exp = std::uint16_t;
using Mono = std::vector<Exp>;

inline unsigned long mono_degree(const Mono& m) {
    unsigned long d = 0;
    for (Exp e : m) d += e;
    return d;
}

// Graded lexicographic: degree first, then lex with earlier table variables
// weighing more. Total order; leading term is the maximum.
struct GradedLexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        unsigned long da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        // equal sizes by construction within one table
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return a.size() < b.size();
    }
};

// Sparse multivariate polynomial over Rational. No zero coefficients stored.
class MultiPoly {
public:
    using TermMap = std::map<Mono, Rational, GradedLexLess>;

    explicit MultiPoly(VarTable::Ptr table) : table_(std::move(table)) {}

    static MultiPoly constant(VarTable::Ptr table, const Rational& c) {
        MultiPoly p(std::move(table));
        if (!c.is_zero()) p.terms_[Mono(p.table_->size(), 0)] = c;
        return p;
    }

    static MultiPoly variable(VarTable::Ptr table, std::size_t idx) {
        MultiPoly p(std::move(table));
        require(idx < p.table_->size(), "unknown-variable", "variable index out of range");
        Mono m(p.table_->size(), 0);
        p.add_exp(m, idx, 1);
        p.terms_[m] = Rational(1);
        return p;
    }

    static MultiPoly monomial(VarTable::Ptr table, Mono m, const Rational& c) {
        MultiPoly p(std::move(table));
        require(m.size() == p.table_->size(), "table-mismatch", "monomial length mismatch");
        if (!c.is_zero()) p.terms_[std::move(m)] = c;
        return p;
    }

    const VarTable::Ptr& table() const { return table_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        require(is_constant(), "not-constant", "polynomial is not constant");
        return terms_.begin()->second;
    }

    unsigned long total_degree() const {
        return terms_.empty() ? 0 : mono_degree(terms_.rbegin()->first);
    }

    unsigned long degree_in(std::size_t var) const {
        unsigned long d = 0;
        for (const auto& [m, c] : terms_)
            if (m[var] > d) d = m[var];
        return d;
    }

    const Rational& leading_coeff() const {
        require(!terms_.empty(), "zero-polynomial", "leading term of zero polynomial");
        return terms_.rbegin()->second;
    }

    const Mono& leading_mono() const {
        require(!terms_.empty(), "zero-polynomial", "leading term of zero polynomial");
        return terms_.rbegin()->first;
    }

    bool depends_on(std::size_t var) const {
        for (const auto& [m, c] : terms_)
            if (m[var] != 0) return true;
        return false;
    }

    void add_term(const Mono& m, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r(table_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_table(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o) {
        check_table(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { a += b; return a; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { a -= b; return a; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_table(b);
        MultiPoly r(a.table_);
        if (a.is_zero() || b.is_zero()) return r;
        const MultiPoly& small = a.terms_.size() <= b.terms_.size() ? a : b;
        const MultiPoly& big = a.terms_.size() <= b.terms_.size() ? b : a;
        Mono m(a.table_->size());
        for (const auto& [ms, cs] : small.terms_) {
            for (const auto& [mb, cb] : big.terms_) {
                for (std::size_t i = 0; i < m.size(); ++i) {
                    unsigned v = unsigned(ms[i]) + unsigned(mb[i]);
                    require(v <= 0xffffu, "exponent-overflow", "monomial exponent overflow");
                    m[i] = static_cast<Exp>(v);
                }
                r.add_term(m, cs * cb);
            }
        }
        return r;
    }

    MultiPoly& operator*=(const MultiPoly& o) { *this = *this * o; return *this; }

    MultiPoly& operator*=(const Rational& c) {
        if (c.is_zero()) { terms_.clear(); return *this; }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }

    friend MultiPoly operator*(MultiPoly a, const Rational& c) { a *= c; return a; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { a *= c; return a; }

    MultiPoly pow(unsigned long e) const {
        MultiPoly r = constant(table_, Rational(1));
        MultiPoly base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.table_->same_as(*b.table_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly derivative(std::size_t var) const {
        MultiPoly r(table_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Mono d = m;
            d[var] -= 1;
            r.add_term(d, c * Rational(long(m[var])));
        }
        return r;
    }

    // gcd of all coefficients, positive; 0 for the zero polynomial.
    Rational content() const {
        Rational g(0);
        for (const auto& [m, c] : terms_) g = rational_gcd(g, c);
        return g;
    }

    // componentwise min of exponents: the monomial content.
    Mono monomial_content() const {
        if (terms_.empty()) return Mono(table_->size(), 0);
        Mono g = terms_.begin()->first;
        for (const auto& [m, c] : terms_)
            for (std::size_t i = 0; i < g.size(); ++i)
                if (m[i] < g[i]) g[i] = m[i];
        return g;
    }

    MultiPoly shift_down(const Mono& by) const {
        MultiPoly r(table_);
        for (const auto& [m, c] : terms_) {
            Mono d = m;
            for (std::size_t i = 0; i < d.size(); ++i) {
                require(d[i] >= by[i], "bad-shift", "monomial shift below zero");
                d[i] = static_cast<Exp>(d[i] - by[i]);
            }
            r.terms_.emplace(std::move(d), c);
        }
        return r;
    }

    // Exact division: returns *this / d when the division leaves no remainder.
    std::optional<MultiPoly> exact_divide(const MultiPoly& d) const {
        check_table(d);
        require(!d.is_zero(), "division-by-zero", "polynomial division by zero");
        MultiPoly q(table_);
        MultiPoly r = *this;
        const Mono& dm = d.leading_mono();
        const Rational& dc = d.leading_coeff();
        while (!r.is_zero()) {
            const Mono& rm = r.leading_mono();
            Mono qm(rm.size());
            for (std::size_t i = 0; i < rm.size(); ++i) {
                if (rm[i] < dm[i]) return std::nullopt;
                qm[i] = static_cast<Exp>(rm[i] - dm[i]);
            }
            Rational qc = r.leading_coeff() / dc;
            q.add_term(qm, qc);
            r -= d * monomial(table_, qm, qc);
        }
        return q;
    }

    // Total substitution by rationals; every variable must be assigned.
    Rational eval(const std::vector<Rational>& point) const {
        require(point.size() == table_->size(), "bad-point", "point size mismatch");
        Rational acc(0);
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) t *= jetinv::pow(point[i], m[i]);
            acc += t;
        }
        return acc;
    }

    // Polynomial substitution var -> poly for a subset of variables.
    MultiPoly substitute(const std::map<std::size_t, MultiPoly>& sub) const {
        MultiPoly r(table_);
        for (const auto& [m, c] : terms_) {
            MultiPoly t = constant(table_, c);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                auto it = sub.find(i);
                if (it == sub.end()) {
                    Mono v(table_->size(), 0);
                    v[i] = m[i];
                    t *= monomial(table_, v, Rational(1));
                } else {
                    t *= it->second.pow(m[i]);
                }
            }
            r += t;
        }
        return r;
    }

    // Reinterprets over a prefix subtable; trailing variables must be unused.
    MultiPoly restricted(const VarTable::Ptr& smaller) const {
        if (smaller->same_as(*table_)) return *this;
        require(table_->has_prefix(*smaller), "table-mismatch",
                "cannot restrict polynomial to incompatible table");
        MultiPoly r(smaller);
        for (const auto& [m, c] : terms_) {
            for (std::size_t i = smaller->size(); i < m.size(); ++i)
                require(m[i] == 0, "table-mismatch",
                        "polynomial depends on variable outside the target table");
            Mono e(m.begin(), m.begin() + long(smaller->size()));
            r.terms_.emplace(std::move(e), c);
        }
        return r;
    }

    // Reinterprets over a supertable (old variables must form a prefix).
    MultiPoly lifted(const VarTable::Ptr& bigger) const {
        if (bigger->same_as(*table_)) {
            MultiPoly r = *this;
            return r;
        }
        require(bigger->has_prefix(*table_), "table-mismatch",
                "cannot lift polynomial to incompatible table");
        MultiPoly r(bigger);
        for (const auto& [m, c] : terms_) {
            Mono e = m;
            e.resize(bigger->size(), 0);
            r.terms_.emplace(std::move(e), c);
        }
        return r;
    }

    // Renders leading term first; output is re-parseable by parse_expression.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rational a = c.abs();
            if (first) {
                if (c.sign() < 0) os << "-";
                first = false;
            } else {
                os << (c.sign() < 0 ? " - " : " + ");
            }
            bool has_vars = mono_degree(m) > 0;
            if (!a.is_one() || !has_vars) {
                os << a.to_string();
                if (has_vars) os << "*";
            }
            bool firstv = true;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (!firstv) os << "*";
                firstv = false;
                os << table_->name(i);
                if (m[i] > 1) os << "^" << m[i];
            }
        }
        return os.str();
    }

private:
    void check_table(const MultiPoly& o) const {
        require(table_->same_as(*o.table_), "table-mismatch",
                "operation on polynomials over different variable tables");
    }

    static void add_exp(Mono& m, std::size_t i, unsigned v) {
        unsigned r = unsigned(m[i]) + v;
        require(r <= 0xffffu, "exponent-overflow", "monomial exponent overflow");
        m[i] = static_cast<Exp>(r);
    }

    VarTable::Ptr table_;
    TermMap terms_;
};

} // namespace jetinv
