#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "jetinv/error.hpp"

namespace jetinv {

// Arbitrary-precision rational scalar. Always canonical: gcd(|num|, den) = 1,
// den > 0, zero is 0/1. Canonical text form: "-17/3", integers without "/1".
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}           // NOLINT: implicit by design
    Rational(long n, long d) : v_(n, d) {
        require(d != 0, "division-by-zero", "rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }
    explicit Rational(const mpz_class& z) : v_(z) {}

    // Parses the canonical text form (optionally signed integer or n/d).
    static Rational from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw Error("bad-rational", "not a rational literal: '" + s + "'");
        q.canonicalize();
        require(q.get_den() > 0, "division-by-zero", "zero denominator in '" + s + "'");
        return Rational(std::move(q));
    }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    // Bit size of the larger of numerator and denominator; pivot-selection metric.
    std::size_t bit_size() const {
        std::size_t a = mpz_sizeinbase(v_.get_num().get_mpz_t(), 2);
        std::size_t b = mpz_sizeinbase(v_.get_den().get_mpz_t(), 2);
        return a > b ? a : b;
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        require(!o.is_zero(), "division-by-zero", "rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    std::string to_string() const { return v_.get_str(); }

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

// gcd for positive-content computations: gcd(a/b, c/d) = gcd(a,c)/lcm(b,d).
inline Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    mpz_class n, d;
    mpz_gcd(n.get_mpz_t(), a.num().get_mpz_t(), b.num().get_mpz_t());
    mpz_lcm(d.get_mpz_t(), a.den().get_mpz_t(), b.den().get_mpz_t());
    return Rational(mpq_class(n, d));
}

inline Rational pow(const Rational& base, unsigned long e) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), e);
    return Rational(mpq_class(n, d));
}

inline Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

} // namespace jetinv
