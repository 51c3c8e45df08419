#include <bergman/rational.hpp>

#include <cctype>
#include <charconv>
#include <vector>

namespace bergman
{

std::string to_string(const Rational &q)
{
    mpq_class c(q);
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace
{

bool is_integer_token(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

mpz_class to_mpz(std::string_view s)
{
    if (!s.empty() && s[0] == '+') {
        s.remove_prefix(1);
    }
    return mpz_class(std::string(s), 10);
}

} // namespace

std::optional<Rational> parse_rational(std::string_view s)
{
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_token(s)) {
            return std::nullopt;
        }
        return Rational(to_mpz(s));
    }
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den) || den[0] == '-' || den[0] == '+') {
        return std::nullopt;
    }
    mpz_class d = to_mpz(den);
    if (d == 0) {
        return std::nullopt;
    }
    Rational q(to_mpz(num), d);
    q.canonicalize();
    return q;
}

std::optional<Rational> parse_decimal(std::string_view s)
{
    if (auto q = parse_rational(s)) {
        return q;
    }
    std::string_view mant = s;
    long exp10 = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        const auto ex = s.substr(e + 1);
        if (!is_integer_token(ex)) {
            return std::nullopt;
        }
        const char *b = ex.data() + (ex[0] == '+' ? 1 : 0);
        if (std::from_chars(b, ex.data() + ex.size(), exp10).ec != std::errc{}) {
            return std::nullopt;
        }
        mant = s.substr(0, e);
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.remove_prefix(1);
    }
    const auto dot = mant.find('.');
    std::string digits(mant.substr(0, dot));
    if (dot != std::string_view::npos) {
        const auto frac = mant.substr(dot + 1);
        digits += frac;
        exp10 -= static_cast<long>(frac.size());
    }
    if (digits.empty() || !is_integer_token(digits)) {
        return std::nullopt;
    }
    Rational q(mpz_class(digits, 10));
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0) {
        q /= Rational(p10);
    } else {
        q *= Rational(p10);
    }
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

Rational factorial(unsigned k)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return Rational(f);
}

Rational binomial(unsigned n, unsigned k)
{
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

std::optional<Rational> exact_sqrt(const Rational &q)
{
    if (sgn(q) < 0) {
        return std::nullopt;
    }
    mpq_class c(q);
    c.canonicalize();
    if (!mpz_perfect_square_p(c.get_num_mpz_t()) || !mpz_perfect_square_p(c.get_den_mpz_t())) {
        return std::nullopt;
    }
    mpz_class a, b;
    mpz_sqrt(a.get_mpz_t(), c.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), c.get_den_mpz_t());
    return Rational(a, b);
}

QComplex &QComplex::operator*=(const QComplex &o)
{
    if (o.is_real()) {
        return *this *= o.re;
    }
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

QComplex &QComplex::operator/=(const QComplex &o)
{
    const Rational d = o.norm2();
    *this *= o.conj();
    re /= d;
    im /= d;
    return *this;
}

void QComplex::add_product(const QComplex &a, const QComplex &b)
{
    thread_local Rational t;
    if (a.is_real()) {
        if (b.is_real()) {
            t = a.re * b.re;
            re += t;
            return;
        }
        t = a.re * b.re;
        re += t;
        t = a.re * b.im;
        im += t;
        return;
    }
    if (b.is_real()) {
        t = a.re * b.re;
        re += t;
        t = a.im * b.re;
        im += t;
        return;
    }
    t = a.re * b.re;
    re += t;
    t = a.im * b.im;
    re -= t;
    t = a.re * b.im;
    im += t;
    t = a.im * b.re;
    im += t;
}

std::string to_string(const QComplex &c)
{
    if (c.is_real()) {
        return to_string(c.re);
    }
    return to_string(c.re) + (sgn(c.im) < 0 ? " - " : " + ") + to_string(Rational(abs(c.im))) + "i";
}

std::ostream &operator<<(std::ostream &os, const QComplex &c)
{
    return os << to_string(c);
}

} // namespace bergman
