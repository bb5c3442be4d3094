#pragma once

#include <map>
#include <string>
#include <utility>

#include "jetinv/multipoly.hpp"

namespace jetinv {

// Quotient of two MultiPoly. Normal form: nonzero denominator with positive
// graded-lex leading coefficient, joint content reduced, monomial content
// cancelled, and a best-effort exact-division cancellation. Equality testing
// never relies on normalization (cross multiplication).
class RatFunc {
public:
    explicit RatFunc(VarTable::Ptr table)
        : num_(MultiPoly(table)), den_(MultiPoly::constant(table, Rational(1))) {}

    RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
        require(num_.table()->same_as(*den_.table()), "table-mismatch",
                "rational function over mismatched tables");
        require(!den_.is_zero(), "division-by-zero", "rational function with zero denominator");
        normalize();
    }

    static RatFunc from_poly(MultiPoly p) {
        auto t = p.table();
        return RatFunc(std::move(p), MultiPoly::constant(t, Rational(1)));
    }

    static RatFunc constant(VarTable::Ptr table, const Rational& c) {
        return from_poly(MultiPoly::constant(std::move(table), c));
    }

    static RatFunc variable(VarTable::Ptr table, std::size_t idx) {
        return from_poly(MultiPoly::variable(std::move(table), idx));
    }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    const VarTable::Ptr& table() const { return num_.table(); }

    bool is_zero() const { return num_.is_zero(); }

    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    Rational constant_value() const {
        return num_.constant_value() / den_.constant_value();
    }

    bool is_polynomial() const { return den_.is_constant(); }

    bool depends_on(std::size_t var) const {
        return num_.depends_on(var) || den_.depends_on(var);
    }

    RatFunc operator-() const { return RatFunc(-num_, den_); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        a.check_table(b);
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        // try den-divides shortcuts before full cross multiplication
        if (auto q = b.den_.exact_divide(a.den_))
            return RatFunc(a.num_ * *q + b.num_, b.den_);
        if (auto q = a.den_.exact_divide(b.den_))
            return RatFunc(a.num_ + b.num_ * *q, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        a.check_table(b);
        if (a.is_zero() || b.is_zero()) return RatFunc(a.table());
        // cross cancellation keeps intermediate degrees down
        const MultiPoly* an = &a.num_;
        const MultiPoly* bd = &b.den_;
        MultiPoly an2(a.table()), bd2(a.table());
        if (auto q = a.num_.exact_divide(b.den_)) {
            an2 = *q; bd2 = MultiPoly::constant(a.table(), Rational(1));
            an = &an2; bd = &bd2;
        }
        const MultiPoly* bn = &b.num_;
        const MultiPoly* ad = &a.den_;
        MultiPoly bn2(a.table()), ad2(a.table());
        if (auto q = b.num_.exact_divide(a.den_)) {
            bn2 = *q; ad2 = MultiPoly::constant(a.table(), Rational(1));
            bn = &bn2; ad = &ad2;
        }
        return RatFunc(*an * *bn, *ad * *bd);
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        require(!b.is_zero(), "division-by-zero", "rational function division by zero");
        return a * RatFunc(b.den_, b.num_);
    }

    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }
    RatFunc& operator/=(const RatFunc& o) { *this = *this / o; return *this; }

    RatFunc& operator*=(const Rational& c) {
        num_ *= c;
        if (num_.is_zero()) den_ = MultiPoly::constant(table(), Rational(1));
        return *this;
    }
    friend RatFunc operator*(RatFunc a, const Rational& c) { a *= c; return a; }
    friend RatFunc operator*(const Rational& c, RatFunc a) { a *= c; return a; }

    RatFunc pow(long e) const {
        if (e == 0) return constant(table(), Rational(1));
        if (e < 0) return constant(table(), Rational(1)) / pow(-e);
        return RatFunc(num_.pow(static_cast<unsigned long>(e)),
                       den_.pow(static_cast<unsigned long>(e)));
    }

    // f.num * g.den - g.num * f.den == 0; no gcd involved.
    friend bool ratfunc_equal(const RatFunc& a, const RatFunc& b) {
        a.check_table(b);
        if (a.den_ == b.den_) return a.num_ == b.num_;
        return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
    }

    // Structural equality of the normal forms.
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // Quotient-rule partial derivative.
    RatFunc derivative(std::size_t var) const {
        if (den_.is_constant())
            return RatFunc(num_.derivative(var), den_);
        MultiPoly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
        return RatFunc(std::move(n), den_ * den_);
    }

    Rational eval(const std::vector<Rational>& point) const {
        Rational d = den_.eval(point);
        require(!d.is_zero(), "pole", "rational function has a pole at the point");
        return num_.eval(point) / d;
    }

    // var -> value substitution over a target table (values over that table).
    RatFunc substituted(const std::map<std::size_t, RatFunc>& sub,
                        const VarTable::Ptr& target) const {
        RatFunc n = subst_poly(num_, sub, target);
        RatFunc d = subst_poly(den_, sub, target);
        return n / d;
    }

    RatFunc lifted(const VarTable::Ptr& bigger) const {
        if (bigger->same_as(*table())) return *this;
        return RatFunc(num_.lifted(bigger), den_.lifted(bigger));
    }

    RatFunc restricted(const VarTable::Ptr& smaller) const {
        if (smaller->same_as(*table())) return *this;
        return RatFunc(num_.restricted(smaller), den_.restricted(smaller));
    }

    std::string to_string() const {
        if (den_.is_constant() && den_.constant_value().is_one()) return num_.to_string();
        std::string n = num_.term_count() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
        // the denominator must reparse as one factor
        std::string d = den_.to_string();
        bool atom = den_.term_count() == 1 && d.find('*') == std::string::npos &&
                    d.find('/') == std::string::npos && d[0] != '-';
        if (!atom) d = "(" + d + ")";
        return n + "/" + d;
    }

private:
    static RatFunc subst_poly(const MultiPoly& p, const std::map<std::size_t, RatFunc>& sub,
                              const VarTable::Ptr& target) {
        RatFunc acc(target);
        for (const auto& [m, c] : p.terms()) {
            RatFunc t = RatFunc::constant(target, c);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                auto it = sub.find(i);
                if (it == sub.end()) {
                    std::size_t j = target->index_of(p.table()->name(i));
                    t *= RatFunc::variable(target, j).pow(m[i]);
                } else {
                    t *= it->second.pow(m[i]);
                }
            }
            acc += t;
        }
        return acc;
    }

    void check_table(const RatFunc& o) const {
        require(table()->same_as(*o.table()), "table-mismatch",
                "operation on rational functions over different variable tables");
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = MultiPoly::constant(table(), Rational(1));
            return;
        }
        // constant denominator folds into the numerator
        if (den_.is_constant()) {
            num_ *= Rational(1) / den_.constant_value();
            den_ = MultiPoly::constant(table(), Rational(1));
            return;
        }
        // monomial content
        Mono mn = num_.monomial_content();
        Mono md = den_.monomial_content();
        Mono common(mn.size());
        bool any = false;
        for (std::size_t i = 0; i < mn.size(); ++i) {
            common[i] = mn[i] < md[i] ? mn[i] : md[i];
            any = any || common[i] != 0;
        }
        if (any) {
            num_ = num_.shift_down(common);
            den_ = den_.shift_down(common);
        }
        // best-effort full cancellation
        if (auto q = num_.exact_divide(den_)) {
            num_ = std::move(*q);
            den_ = MultiPoly::constant(table(), Rational(1));
            return;
        }
        if (auto q = den_.exact_divide(num_)) {
            // num/(q*num) = 1/q
            den_ = std::move(*q);
            num_ = MultiPoly::constant(table(), Rational(1));
        }
        // joint content and denominator sign
        Rational g = rational_gcd(num_.content(), den_.content());
        if (den_.leading_coeff().sign() < 0) g = -g;
        if (!g.is_one()) {
            Rational inv = Rational(1) / g;
            num_ *= inv;
            den_ *= inv;
        }
    }

    MultiPoly num_;
    MultiPoly den_;
};

} // namespace jetinv
