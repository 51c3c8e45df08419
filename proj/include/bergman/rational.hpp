#ifndef BERGMAN_RATIONAL_HPP
#define BERGMAN_RATIONAL_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bergman
{

using Rational = mpq_class;

// Canonical "p/q" encoding: q > 0, gcd(p, q) = 1, integers written as "p/1".
std::string to_string(const Rational &q);

// Accepts "p/q" or a bare integer "p". Returns nullopt on a malformed token.
std::optional<Rational> parse_rational(std::string_view s);

// Decimal literal ("0.05", "-1.25e-1", "3") to the exact rational it denotes.
std::optional<Rational> parse_decimal(std::string_view s);

Rational factorial(unsigned k);
Rational binomial(unsigned n, unsigned k);

// Exact square root when q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational &q);

// Exact complex rational number re + i*im.
struct QComplex {
    Rational re;
    Rational im;

    QComplex() = default;
    QComplex(Rational r) : re(std::move(r)) {}
    QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    QComplex(long v) : re(v) {}
    QComplex(int v) : re(v) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    QComplex conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    QComplex &operator+=(const QComplex &o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    QComplex &operator-=(const QComplex &o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    QComplex &operator*=(const QComplex &o);
    QComplex &operator*=(const Rational &r)
    {
        re *= r;
        im *= r;
        return *this;
    }
    QComplex &operator/=(const Rational &r)
    {
        re /= r;
        im /= r;
        return *this;
    }
    QComplex &operator/=(const QComplex &o);

    // this += a * b without allocating a temporary QComplex.
    void add_product(const QComplex &a, const QComplex &b);

    friend QComplex operator+(QComplex a, const QComplex &b) { return a += b; }
    friend QComplex operator-(QComplex a, const QComplex &b) { return a -= b; }
    friend QComplex operator*(QComplex a, const QComplex &b) { return a *= b; }
    friend QComplex operator*(QComplex a, const Rational &b) { return a *= b; }
    friend QComplex operator*(const Rational &b, QComplex a) { return a *= b; }
    friend QComplex operator/(QComplex a, const QComplex &b) { return a /= b; }
    friend QComplex operator/(QComplex a, const Rational &b) { return a /= b; }
    QComplex operator-() const { return {-re, -im}; }

    friend bool operator==(const QComplex &a, const QComplex &b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const QComplex &a, const QComplex &b) { return !(a == b); }
};

std::string to_string(const QComplex &c);
std::ostream &operator<<(std::ostream &os, const QComplex &c);

} // namespace bergman

#endif
