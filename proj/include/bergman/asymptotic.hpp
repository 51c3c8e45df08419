#ifndef BERGMAN_ASYMPTOTIC_HPP
#define BERGMAN_ASYMPTOTIC_HPP

#include <string>
#include <vector>

#include <bergman/series.hpp>

namespace bergman
{

// sum_k c_k m^{-(nu + k)} + O(m^{-(nu + order)}), nu = lead2 / 2.
// order == kExact marks a series known to be exact (no remainder).
class AsymptoticSeries
{
public:
    AsymptoticSeries() = default;
    AsymptoticSeries(int lead2, std::vector<QComplex> coeffs, int order = kExact);

    // c * m^{-lead2/2}, exact.
    static AsymptoticSeries term(const QComplex &c, int lead2);
    // Zero with a known remainder: O(m^{-err2/2}).
    static AsymptoticSeries zero(int err2 = kExact);

    int lead2() const { return lead2_; }
    const std::vector<QComplex> &coeffs() const { return c_; }
    int order() const { return order_; }
    bool is_exact() const { return order_ >= kExact; }
    // Twice the power of 1/m at which the remainder starts (kExact if exact).
    int error2() const;

    // Coefficient of m^{-(nu + k)}; zero past the stored ones, throws past order.
    QComplex coeff(int k) const;
    // Coefficient of m^{-p2/2}.
    QComplex at_power2(int p2) const;

    bool is_zero() const;
    // Drops leading zero coefficients (moves the leading power) and trailing ones.
    AsymptoticSeries normalized() const;
    // Keeps coefficients k < order.
    AsymptoticSeries truncated(int order) const;

    AsymptoticSeries conj() const;
    AsymptoticSeries reciprocal() const;

    AsymptoticSeries &operator+=(const AsymptoticSeries &o);
    AsymptoticSeries &operator-=(const AsymptoticSeries &o);
    AsymptoticSeries &operator*=(const QComplex &s);
    friend AsymptoticSeries operator+(AsymptoticSeries a, const AsymptoticSeries &b) { return a += b; }
    friend AsymptoticSeries operator-(AsymptoticSeries a, const AsymptoticSeries &b) { return a -= b; }
    friend AsymptoticSeries operator*(AsymptoticSeries a, const QComplex &s) { return a *= s; }
    friend AsymptoticSeries operator*(const AsymptoticSeries &a, const AsymptoticSeries &b);

    // Equal retained coefficients, leading power and order.
    friend bool operator==(const AsymptoticSeries &a, const AsymptoticSeries &b);

    // "c0 / m^a + c1 / m^b + ... + O(m^-e)", exponents written as p or p/2.
    std::string to_string() const;

private:
    int lead2_ = 0;
    std::vector<QComplex> c_;
    int order_ = kExact;
};

// series / sqrt(radicand); radicand > 0. Used when a square root of a leading
// coefficient is not rational.
struct RadicalSeries {
    AsymptoticSeries series;
    Rational radicand = 1;
};

// x^{-1/2} for x with positive rational leading coefficient and even lead2.
RadicalSeries inverse_sqrt(const AsymptoticSeries &x);

} // namespace bergman

#endif
