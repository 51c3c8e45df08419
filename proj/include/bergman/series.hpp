#ifndef BERGMAN_SERIES_HPP
#define BERGMAN_SERIES_HPP

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <bergman/rational.hpp>

namespace bergman
{

// Largest ambient dimension supported by the packed monomial keys.
inline constexpr int kMaxDim = 4;
// Largest exponent of a single variable in a packed key.
inline constexpr int kMaxExponent = 255;
// Precision marker for polynomials that are exact in every degree.
inline constexpr int kExact = std::numeric_limits<int>::max() / 4;

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exponent vector of z^P = z_1^{p_1} ... z_n^{p_n}.
class MultiIndex
{
public:
    MultiIndex() = default;
    explicit MultiIndex(int n) : exps_(static_cast<std::size_t>(n), 0) {}
    MultiIndex(std::initializer_list<int> e);
    explicit MultiIndex(std::vector<int> e);

    // The multi-index with a single 1 in slot i.
    static MultiIndex unit(int n, int i);

    int size() const { return static_cast<int>(exps_.size()); }
    int degree() const { return degree_; }
    int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
    const std::vector<int> &exponents() const { return exps_; }

    // P! = p_1! ... p_n!
    Rational factorial() const;

    friend bool operator==(const MultiIndex &a, const MultiIndex &b) { return a.exps_ == b.exps_; }
    friend bool operator!=(const MultiIndex &a, const MultiIndex &b) { return !(a == b); }
    friend bool operator<(const MultiIndex &a, const MultiIndex &b) { return a.exps_ < b.exps_; }

private:
    std::vector<int> exps_;
    int degree_ = 0;
};

// All multi-indices of length n and total degree d, in lexicographic order.
std::vector<MultiIndex> multi_indices_of_degree(int n, int d);

namespace detail
{

// z exponents occupy bytes 0..n-1, zbar exponents bytes kMaxDim..kMaxDim+n-1.
inline int key_z(std::uint64_t k, int i) { return static_cast<int>((k >> (8 * i)) & 0xffu); }
inline int key_zbar(std::uint64_t k, int i) { return static_cast<int>((k >> (8 * (kMaxDim + i))) & 0xffu); }
inline int key_degree(std::uint64_t k)
{
    return static_cast<int>((k * 0x0101010101010101ull) >> 56);
}
inline int key_zdeg(std::uint64_t k) { return key_degree(k & 0xffffffffull); }
inline int key_zbardeg(std::uint64_t k) { return key_degree(k >> 32); }
inline std::uint64_t key_unit_z(int i) { return 1ull << (8 * i); }
inline std::uint64_t key_unit_zbar(int i) { return 1ull << (8 * (kMaxDim + i)); }
// Swaps the roles of z and zbar.
inline std::uint64_t key_swap(std::uint64_t k) { return (k >> 32) | (k << 32); }

std::uint64_t make_key(const MultiIndex &z, const MultiIndex &zbar);
MultiIndex key_z_index(std::uint64_t k, int n);
MultiIndex key_zbar_index(std::uint64_t k, int n);

} // namespace detail

// Truncated polynomial in z_1..z_n and their conjugates with exact complex
// rational coefficients. Terms of total degree <= prec() are exact; nothing
// beyond prec() is stored.
class Series
{
public:
    struct Term {
        std::uint64_t key;
        QComplex coeff;
    };

    explicit Series(int n = 1, int prec = kExact);

    static Series constant(int n, const QComplex &c, int prec = kExact);
    static Series monomial(int n, const MultiIndex &z, const MultiIndex &zbar, const QComplex &c,
                           int prec = kExact);
    static Series z(int n, int i);
    static Series zbar(int n, int i);
    // |z|^2 = sum_i z_i zbar_i
    static Series norm2(int n);

    // Builds from raw terms; duplicate keys are summed and zeros dropped.
    static Series from_terms(int n, std::vector<Term> terms, int prec = kExact);

    int dim() const { return n_; }
    int prec() const { return prec_; }
    bool is_exact() const { return prec_ >= kExact; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    // Sorted by key, no zero coefficients.
    const std::vector<Term> &terms() const { return terms_; }

    QComplex coeff(std::uint64_t key) const;
    QComplex coeff(const MultiIndex &z, const MultiIndex &zbar) const;
    // Value at the origin; requires prec() >= 0.
    QComplex at_origin() const;

    // Lowest / highest total degree present (0 for the zero series).
    int min_degree() const;
    int max_degree() const;

    // Bidegree (p, q) part.
    Series part(int p, int q) const;
    // Homogeneous part of total degree t.
    Series homogeneous(int t) const;
    // Balanced part: all terms of bidegree (p, p) for any p.
    Series balanced() const;
    // Drops terms of degree > d and lowers the precision to d.
    Series truncated(int d) const;
    // Same terms, precision marker replaced (must not exceed what is known).
    Series with_prec(int p) const;

    // f -> conj(f), i.e. c z^I zbar^J -> conj(c) z^J zbar^I.
    Series conj() const;
    bool is_real_valued() const;

    // d/dz_i and d/dzbar_i; precision drops by one.
    Series d(int i) const;
    Series dbar(int i) const;

    Series &operator+=(const Series &o);
    Series &operator-=(const Series &o);
    Series &operator*=(const QComplex &c);
    Series &operator*=(const Rational &c);
    Series operator-() const;

    friend Series operator+(Series a, const Series &b) { return a += b; }
    friend Series operator-(Series a, const Series &b) { return a -= b; }
    friend Series operator*(Series a, const QComplex &c) { return a *= c; }
    friend Series operator*(const QComplex &c, Series a) { return a *= c; }
    friend Series operator*(Series a, const Rational &c) { return a *= c; }
    friend Series operator*(const Rational &c, Series a) { return a *= c; }
    friend Series operator*(const Series &a, const Series &b) { return multiply(a, b); }

    // Product truncated at min(a.prec(), b.prec(), cap).
    static Series multiply(const Series &a, const Series &b, int cap = kExact);

    // Exact equality of terms (precision markers ignored).
    friend bool operator==(const Series &a, const Series &b);
    friend bool operator!=(const Series &a, const Series &b) { return !(a == b); }

    std::string to_string() const;

private:
    void normalize();

    int n_;
    int prec_;
    std::vector<Term> terms_;
};

// f(z, zbar) with z_j -> zsub[j] and zbar_j -> zbarsub[j], truncated at prec.
Series substitute(const Series &f, std::span<const Series> zsub, std::span<const Series> zbarsub, int prec);

// Truncated exp / log of a series with vanishing constant term
// (log is taken of 1 + x).
Series exp_series(const Series &x, int prec);
Series log1p_series(const Series &x, int prec);

} // namespace bergman

#endif
