#include <bergman/asymptotic.hpp>

#include <algorithm>
#include <sstream>

namespace bergman
{

AsymptoticSeries::AsymptoticSeries(int lead2, std::vector<QComplex> coeffs, int order)
    : lead2_(lead2), c_(std::move(coeffs)), order_(order)
{
    if (order_ < 0) {
        throw std::invalid_argument("AsymptoticSeries: negative order");
    }
    if (!is_exact() && static_cast<int>(c_.size()) > order_) {
        c_.resize(static_cast<std::size_t>(order_));
    }
    while (!c_.empty() && c_.back().is_zero()) {
        c_.pop_back();
    }
}

AsymptoticSeries AsymptoticSeries::term(const QComplex &c, int lead2)
{
    return AsymptoticSeries(lead2, {c});
}

AsymptoticSeries AsymptoticSeries::zero(int err2)
{
    if (err2 >= kExact) {
        return AsymptoticSeries();
    }
    return AsymptoticSeries(err2, {}, 0);
}

int AsymptoticSeries::error2() const
{
    return is_exact() ? kExact : lead2_ + 2 * order_;
}

QComplex AsymptoticSeries::coeff(int k) const
{
    if (k < 0) {
        return QComplex();
    }
    if (!is_exact() && k >= order_) {
        throw TruncationError("AsymptoticSeries: coefficient " + std::to_string(k) + " beyond known order " +
                              std::to_string(order_));
    }
    return k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : QComplex();
}

QComplex AsymptoticSeries::at_power2(int p2) const
{
    const int d = p2 - lead2_;
    if (d < 0) {
        return QComplex();
    }
    if (!is_exact() && p2 >= error2()) {
        throw TruncationError("AsymptoticSeries: power beyond known order");
    }
    if (d % 2 != 0) {
        return QComplex();
    }
    return coeff(d / 2);
}

bool AsymptoticSeries::is_zero() const
{
    return c_.empty();
}

AsymptoticSeries AsymptoticSeries::normalized() const
{
    std::size_t k = 0;
    while (k < c_.size() && c_[k].is_zero()) {
        ++k;
    }
    if (k == c_.size()) {
        return zero(error2());
    }
    std::vector<QComplex> rest(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end());
    const int shift = static_cast<int>(k);
    return AsymptoticSeries(lead2_ + 2 * shift, std::move(rest), is_exact() ? kExact : order_ - shift);
}

AsymptoticSeries AsymptoticSeries::truncated(int order) const
{
    return AsymptoticSeries(lead2_, c_, std::min(order, order_));
}

AsymptoticSeries AsymptoticSeries::conj() const
{
    AsymptoticSeries s(*this);
    for (auto &c : s.c_) {
        c = c.conj();
    }
    return s;
}

AsymptoticSeries &AsymptoticSeries::operator+=(const AsymptoticSeries &o)
{
    if (o.is_zero()) {
        if (!o.is_exact()) {
            const int e = std::min(error2(), o.error2());
            *this = AsymptoticSeries(lead2_, c_, e >= kExact ? kExact : std::max(0, (e - lead2_ + 1) / 2));
            if (e < lead2_) {
                *this = zero(e);
            }
        }
        return *this;
    }
    if (is_zero()) {
        const int e = std::min(error2(), o.error2());
        *this = o;
        if (e < o.error2()) {
            *this = e < o.lead2_ ? zero(e) : AsymptoticSeries(o.lead2_, o.c_, (e - o.lead2_ + 1) / 2);
        }
        return *this;
    }
    if ((lead2_ - o.lead2_) % 2 != 0) {
        throw std::invalid_argument("AsymptoticSeries: adding series on different half-integer grids");
    }
    const int lead = std::min(lead2_, o.lead2_);
    const int e = std::min(error2(), o.error2());
    std::vector<QComplex> c;
    const int top = e >= kExact ? std::max(lead2_ + 2 * static_cast<int>(c_.size()),
                                           o.lead2_ + 2 * static_cast<int>(o.c_.size()))
                                : e;
    for (int p2 = lead; p2 < top; p2 += 2) {
        QComplex v;
        if (p2 >= lead2_ && (p2 - lead2_) / 2 < static_cast<int>(c_.size())) {
            v += c_[static_cast<std::size_t>((p2 - lead2_) / 2)];
        }
        if (p2 >= o.lead2_ && (p2 - o.lead2_) / 2 < static_cast<int>(o.c_.size())) {
            v += o.c_[static_cast<std::size_t>((p2 - o.lead2_) / 2)];
        }
        c.push_back(std::move(v));
    }
    *this = AsymptoticSeries(lead, std::move(c), e >= kExact ? kExact : (e - lead + 1) / 2);
    return *this;
}

AsymptoticSeries &AsymptoticSeries::operator-=(const AsymptoticSeries &o)
{
    return *this += o * QComplex(-1);
}

AsymptoticSeries &AsymptoticSeries::operator*=(const QComplex &s)
{
    for (auto &c : c_) {
        c *= s;
    }
    if (s.is_zero()) {
        c_.clear();
    }
    return *this;
}

AsymptoticSeries operator*(const AsymptoticSeries &a0, const AsymptoticSeries &b0)
{
    // Leading zeros are known exactly, so dropping them first keeps more order.
    const AsymptoticSeries a = a0.normalized();
    const AsymptoticSeries b = b0.normalized();
    // Remainders: a = A + O(m^-ea), b = B + O(m^-eb); product error starts at
    // min(ea + lead_b, eb + lead_a).
    const int lead = a.lead2_ + b.lead2_;
    int order = kExact;
    if (!a.is_exact() || !b.is_exact()) {
        order = std::min(a.order_, b.order_);
    }
    if (a.is_zero() || b.is_zero()) {
        if (order >= kExact) {
            return AsymptoticSeries();
        }
        return AsymptoticSeries::zero(lead + 2 * order);
    }
    const std::size_t na = a.c_.size();
    const std::size_t nb = b.c_.size();
    std::size_t len = na + nb - 1;
    if (order < kExact) {
        len = std::min(len, static_cast<std::size_t>(order));
    }
    std::vector<QComplex> c(len);
    for (std::size_t i = 0; i < na && i < len; ++i) {
        for (std::size_t j = 0; j < nb && i + j < len; ++j) {
            c[i + j].add_product(a.c_[i], b.c_[j]);
        }
    }
    return AsymptoticSeries(lead, std::move(c), order);
}

AsymptoticSeries AsymptoticSeries::reciprocal() const
{
    const AsymptoticSeries x = normalized();
    if (x.is_zero()) {
        throw std::domain_error("AsymptoticSeries: reciprocal of zero");
    }
    const QComplex inv0 = QComplex(1) / x.c_[0];
    // 1/(c0 (1 + y)) with y_k = c_k / c0.
    const int order = x.order_;
    const int len = order >= kExact ? static_cast<int>(x.c_.size()) : order;
    if (order >= kExact && x.c_.size() > 1) {
        throw std::domain_error("AsymptoticSeries: reciprocal of an exact multi-term series is infinite; truncate first");
    }
    std::vector<QComplex> r(static_cast<std::size_t>(std::max(len, 1)));
    r[0] = inv0;
    for (int k = 1; k < len; ++k) {
        QComplex s;
        for (int j = 1; j <= k; ++j) {
            s.add_product(x.coeff(j), r[static_cast<std::size_t>(k - j)]);
        }
        r[static_cast<std::size_t>(k)] = -(s * inv0);
    }
    return AsymptoticSeries(-x.lead2_, std::move(r), order);
}

bool operator==(const AsymptoticSeries &a, const AsymptoticSeries &b)
{
    const auto x = a.normalized();
    const auto y = b.normalized();
    if (x.is_zero() && y.is_zero()) {
        return x.error2() == y.error2();
    }
    return x.lead2_ == y.lead2_ && x.c_ == y.c_ && x.order_ == y.order_;
}

namespace
{

std::string power_string(int p2)
{
    if (p2 % 2 == 0) {
        return std::to_string(p2 / 2);
    }
    return std::to_string(p2) + "/2";
}

} // namespace

std::string AsymptoticSeries::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        const std::string c = bergman::to_string(c_[k]);
        os << (c_[k].is_real() ? c : "(" + c + ")") << " / m^" << power_string(lead2_ + 2 * static_cast<int>(k));
    }
    if (first) {
        os << "0";
    }
    if (!is_exact()) {
        os << " + O(m^-" << power_string(error2()) << ")";
    }
    return os.str();
}

RadicalSeries inverse_sqrt(const AsymptoticSeries &x0)
{
    const AsymptoticSeries x = x0.normalized();
    if (x.is_zero()) {
        throw std::domain_error("inverse_sqrt: zero series");
    }
    const QComplex c0 = x.coeffs()[0];
    if (!c0.is_real() || sgn(c0.re) <= 0) {
        throw std::domain_error("inverse_sqrt: leading coefficient must be positive, got " + to_string(c0));
    }
    if (x.lead2() % 2 != 0) {
        throw std::domain_error("inverse_sqrt: leading power must be an integer");
    }
    if (x.is_exact() && x.coeffs().size() > 1) {
        throw std::domain_error("inverse_sqrt: exact multi-term series needs a truncation order");
    }
    const int len = x.is_exact() ? 1 : x.order();
    // (1 + y)^{-1/2} = sum_k binom(-1/2, k) y^k, y_k = c_k / c0.
    std::vector<QComplex> y(static_cast<std::size_t>(len));
    for (int k = 1; k < len; ++k) {
        y[static_cast<std::size_t>(k)] = x.coeff(k) / c0;
    }
    std::vector<QComplex> out(static_cast<std::size_t>(len));
    std::vector<QComplex> pw(static_cast<std::size_t>(len));
    pw[0] = QComplex(1);
    Rational binom(1);
    for (int j = 0; j < len; ++j) {
        if (j > 0) {
            std::vector<QComplex> next(static_cast<std::size_t>(len));
            for (int a = 0; a < len; ++a) {
                if (pw[static_cast<std::size_t>(a)].is_zero()) {
                    continue;
                }
                for (int b = 1; a + b < len; ++b) {
                    next[static_cast<std::size_t>(a + b)].add_product(pw[static_cast<std::size_t>(a)],
                                                                      y[static_cast<std::size_t>(b)]);
                }
            }
            pw = std::move(next);
            binom *= Rational(-1, 2) - Rational(j - 1);
            binom /= Rational(j);
        }
        for (int k = 0; k < len; ++k) {
            out[static_cast<std::size_t>(k)] += pw[static_cast<std::size_t>(k)] * binom;
        }
    }
    RadicalSeries r;
    r.series = AsymptoticSeries(-x.lead2() / 2, std::move(out), x.order());
    if (auto s = exact_sqrt(c0.re)) {
        r.series *= QComplex(Rational(1) / *s);
    } else {
        r.radicand = c0.re;
    }
    return r;
}

} // namespace bergman
