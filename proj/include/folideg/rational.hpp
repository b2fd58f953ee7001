#pragma once

// Exact arbitrary-precision integers and rationals, backed by GMP.
// Rational is kept canonical at all times: lowest terms, positive
// denominator, zero represented as 0/1.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace folideg {

using Int = mpz_class;

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(int n) : v_(n) {}
    Rational(const Int& n) : v_(n) {}
    Rational(const Int& num, const Int& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(Int(num), Int(den)) {}

    static Rational from_mpq(mpq_class q) {
        Rational r;
        q.canonicalize();
        r.v_ = std::move(q);
        return r;
    }

    Int numerator() const { return v_.get_num(); }
    Int denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    // Requires denominator 1.
    Int to_int() const {
        if (!is_integer()) throw std::domain_error("Rational::to_int: not an integer: " + str());
        return v_.get_num();
    }

    Rational operator-() const { return from_mpq(-v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
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

    std::string str() const { return v_.get_str(); }

    template <typename Stream>
    friend Stream& operator<<(Stream& os, const Rational& r) {
        os << r.v_;
        return os;
    }

private:
    mpq_class v_;
};

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// C(n, k) with possibly huge n held as an Int.
inline Int binomial(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// n! / (k_0! k_1! ... k_m!), the k_i summing to n.
inline Int multinomial(unsigned long n, std::initializer_list<unsigned long> parts) {
    Int r = factorial(n);
    unsigned long s = 0;
    for (unsigned long k : parts) {
        mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), factorial(k).get_mpz_t());
        s += k;
    }
    if (s != n) throw std::invalid_argument("multinomial: parts do not sum to n");
    return r;
}

inline Int divexact(const Int& a, const Int& b) {
    if (b == 0 || a % b != 0) throw std::domain_error("divexact: not divisible");
    Int r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace folideg
