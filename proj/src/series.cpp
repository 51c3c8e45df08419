#include <bergman/series.hpp>

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace bergman
{

MultiIndex::MultiIndex(std::initializer_list<int> e) : MultiIndex(std::vector<int>(e)) {}

MultiIndex::MultiIndex(std::vector<int> e) : exps_(std::move(e))
{
    for (int x : exps_) {
        if (x < 0) {
            throw std::invalid_argument("MultiIndex: negative exponent");
        }
        degree_ += x;
    }
}

MultiIndex MultiIndex::unit(int n, int i)
{
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e.at(static_cast<std::size_t>(i)) = 1;
    return MultiIndex(std::move(e));
}

Rational MultiIndex::factorial() const
{
    Rational f(1);
    for (int x : exps_) {
        f *= bergman::factorial(static_cast<unsigned>(x));
    }
    return f;
}

std::vector<MultiIndex> multi_indices_of_degree(int n, int d)
{
    std::vector<MultiIndex> out;
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    // Recursive fill, first slot varies slowest.
    auto rec = [&](auto &&self, int slot, int left) -> void {
        if (slot == n - 1) {
            e[static_cast<std::size_t>(slot)] = left;
            out.emplace_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[static_cast<std::size_t>(slot)] = k;
            self(self, slot + 1, left - k);
        }
    };
    if (n > 0) {
        rec(rec, 0, d);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace detail
{

std::uint64_t make_key(const MultiIndex &z, const MultiIndex &zbar)
{
    if (z.size() != zbar.size() || z.size() > kMaxDim) {
        throw std::invalid_argument("make_key: bad multi-index length");
    }
    std::uint64_t k = 0;
    for (int i = 0; i < z.size(); ++i) {
        if (z[i] > kMaxExponent || zbar[i] > kMaxExponent) {
            throw std::overflow_error("make_key: exponent too large");
        }
        k |= static_cast<std::uint64_t>(z[i]) << (8 * i);
        k |= static_cast<std::uint64_t>(zbar[i]) << (8 * (kMaxDim + i));
    }
    return k;
}

MultiIndex key_z_index(std::uint64_t k, int n)
{
    std::vector<int> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        e[static_cast<std::size_t>(i)] = key_z(k, i);
    }
    return MultiIndex(std::move(e));
}

MultiIndex key_zbar_index(std::uint64_t k, int n)
{
    std::vector<int> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        e[static_cast<std::size_t>(i)] = key_zbar(k, i);
    }
    return MultiIndex(std::move(e));
}

} // namespace detail

using detail::key_degree;

Series::Series(int n, int prec) : n_(n), prec_(prec)
{
    if (n < 1 || n > kMaxDim) {
        throw std::invalid_argument("Series: dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    }
}

Series Series::constant(int n, const QComplex &c, int prec)
{
    Series s(n, prec);
    if (!c.is_zero()) {
        s.terms_.push_back({0, c});
    }
    return s;
}

Series Series::monomial(int n, const MultiIndex &z, const MultiIndex &zbar, const QComplex &c, int prec)
{
    Series s(n, prec);
    if (!c.is_zero() && z.degree() + zbar.degree() <= prec) {
        s.terms_.push_back({detail::make_key(z, zbar), c});
    }
    return s;
}

Series Series::z(int n, int i)
{
    Series s(n);
    s.terms_.push_back({detail::key_unit_z(i), QComplex(1)});
    return s;
}

Series Series::zbar(int n, int i)
{
    Series s(n);
    s.terms_.push_back({detail::key_unit_zbar(i), QComplex(1)});
    return s;
}

Series Series::norm2(int n)
{
    Series s(n);
    for (int i = 0; i < n; ++i) {
        s.terms_.push_back({detail::key_unit_z(i) + detail::key_unit_zbar(i), QComplex(1)});
    }
    s.normalize();
    return s;
}

Series Series::from_terms(int n, std::vector<Term> terms, int prec)
{
    Series s(n, prec);
    s.terms_ = std::move(terms);
    s.normalize();
    return s;
}

void Series::normalize()
{
    std::sort(terms_.begin(), terms_.end(), [](const Term &a, const Term &b) { return a.key < b.key; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto &t : terms_) {
        if (key_degree(t.key) > prec_) {
            continue;
        }
        if (!out.empty() && out.back().key == t.key) {
            out.back().coeff += t.coeff;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const Term &t) { return t.coeff.is_zero(); });
    terms_ = std::move(out);
}

QComplex Series::coeff(std::uint64_t key) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term &t, std::uint64_t k) { return t.key < k; });
    if (it != terms_.end() && it->key == key) {
        return it->coeff;
    }
    return QComplex();
}

QComplex Series::coeff(const MultiIndex &z, const MultiIndex &zbar) const
{
    return coeff(detail::make_key(z, zbar));
}

QComplex Series::at_origin() const
{
    if (prec_ < 0) {
        throw TruncationError("Series::at_origin: value at the origin is not determined");
    }
    return coeff(std::uint64_t{0});
}

int Series::min_degree() const
{
    int d = terms_.empty() ? 0 : kExact;
    for (const auto &t : terms_) {
        d = std::min(d, key_degree(t.key));
    }
    return d;
}

int Series::max_degree() const
{
    int d = 0;
    for (const auto &t : terms_) {
        d = std::max(d, key_degree(t.key));
    }
    return d;
}

Series Series::part(int p, int q) const
{
    Series s(n_, prec_);
    for (const auto &t : terms_) {
        if (detail::key_zdeg(t.key) == p && detail::key_zbardeg(t.key) == q) {
            s.terms_.push_back(t);
        }
    }
    return s;
}

Series Series::homogeneous(int d) const
{
    if (d > prec_) {
        throw TruncationError("Series::homogeneous: degree " + std::to_string(d) + " exceeds precision " +
                              std::to_string(prec_));
    }
    Series s(n_, prec_);
    for (const auto &t : terms_) {
        if (key_degree(t.key) == d) {
            s.terms_.push_back(t);
        }
    }
    return s;
}

Series Series::balanced() const
{
    Series s(n_, prec_);
    for (const auto &t : terms_) {
        if (detail::key_zdeg(t.key) == detail::key_zbardeg(t.key)) {
            s.terms_.push_back(t);
        }
    }
    return s;
}

Series Series::truncated(int d) const
{
    Series s(n_, std::min(d, prec_));
    for (const auto &t : terms_) {
        if (key_degree(t.key) <= d) {
            s.terms_.push_back(t);
        }
    }
    return s;
}

Series Series::with_prec(int p) const
{
    Series s = truncated(p);
    s.prec_ = p;
    return s;
}

Series Series::conj() const
{
    Series s(n_, prec_);
    s.terms_.reserve(terms_.size());
    for (const auto &t : terms_) {
        s.terms_.push_back({detail::key_swap(t.key), t.coeff.conj()});
    }
    std::sort(s.terms_.begin(), s.terms_.end(), [](const Term &a, const Term &b) { return a.key < b.key; });
    return s;
}

bool Series::is_real_valued() const
{
    return *this == conj();
}

Series Series::d(int i) const
{
    Series s(n_, is_exact() ? kExact : prec_ - 1);
    const auto unit = detail::key_unit_z(i);
    for (const auto &t : terms_) {
        const int e = detail::key_z(t.key, i);
        if (e > 0) {
            s.terms_.push_back({t.key - unit, t.coeff * Rational(e)});
        }
    }
    s.normalize();
    return s;
}

Series Series::dbar(int i) const
{
    Series s(n_, is_exact() ? kExact : prec_ - 1);
    const auto unit = detail::key_unit_zbar(i);
    for (const auto &t : terms_) {
        const int e = detail::key_zbar(t.key, i);
        if (e > 0) {
            s.terms_.push_back({t.key - unit, t.coeff * Rational(e)});
        }
    }
    s.normalize();
    return s;
}

namespace
{

void check_dims(const Series &a, const Series &b)
{
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("Series: dimension mismatch");
    }
}

} // namespace

Series &Series::operator+=(const Series &o)
{
    check_dims(*this, o);
    prec_ = std::min(prec_, o.prec_);
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->key < b->key)) {
            out.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->key < a->key) {
            out.push_back(*b++);
        } else {
            a->coeff += b->coeff;
            if (!a->coeff.is_zero()) {
                out.push_back(std::move(*a));
            }
            ++a;
            ++b;
        }
    }
    std::erase_if(out, [this](const Term &t) { return key_degree(t.key) > prec_; });
    terms_ = std::move(out);
    return *this;
}

Series &Series::operator-=(const Series &o)
{
    return *this += -o;
}

Series &Series::operator*=(const QComplex &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_) {
        t.coeff *= c;
    }
    return *this;
}

Series &Series::operator*=(const Rational &c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_) {
        t.coeff *= c;
    }
    return *this;
}

Series Series::operator-() const
{
    Series s(*this);
    for (auto &t : s.terms_) {
        t.coeff = -t.coeff;
    }
    return s;
}

Series Series::multiply(const Series &a, const Series &b, int cap)
{
    check_dims(a, b);
    const int prec = std::min({a.prec_, b.prec_, cap});
    Series out(a.n_, prec);
    if (a.terms_.empty() || b.terms_.empty()) {
        return out;
    }
    // Bucket b by degree so the inner loop can stop at the truncation degree.
    std::vector<std::vector<const Term *>> bdeg;
    for (const auto &t : b.terms_) {
        const auto d = static_cast<std::size_t>(key_degree(t.key));
        if (static_cast<int>(d) > prec) {
            continue;
        }
        if (bdeg.size() <= d) {
            bdeg.resize(d + 1);
        }
        bdeg[d].push_back(&t);
    }
    std::unordered_map<std::uint64_t, QComplex> acc;
    acc.reserve(a.terms_.size() * 4 + 16);
    for (const auto &ta : a.terms_) {
        const int da = key_degree(ta.key);
        if (da > prec) {
            continue;
        }
        const int left = prec - da;
        for (std::size_t d = 0; d < bdeg.size() && static_cast<int>(d) <= left; ++d) {
            for (const Term *tb : bdeg[d]) {
                acc[ta.key + tb->key].add_product(ta.coeff, tb->coeff);
            }
        }
    }
    out.terms_.reserve(acc.size());
    for (auto &[k, c] : acc) {
        if (!c.is_zero()) {
            out.terms_.push_back({k, std::move(c)});
        }
    }
    std::sort(out.terms_.begin(), out.terms_.end(), [](const Term &x, const Term &y) { return x.key < y.key; });
    return out;
}

bool operator==(const Series &a, const Series &b)
{
    if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].key != b.terms_[i].key || a.terms_[i].coeff != b.terms_[i].coeff) {
            return false;
        }
    }
    return true;
}

std::string Series::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &t : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << bergman::to_string(t.coeff) << ")";
        for (int i = 0; i < n_; ++i) {
            if (int e = detail::key_z(t.key, i)) {
                os << "*z" << (i + 1) << (e > 1 ? "^" + std::to_string(e) : "");
            }
        }
        for (int i = 0; i < n_; ++i) {
            if (int e = detail::key_zbar(t.key, i)) {
                os << "*zb" << (i + 1) << (e > 1 ? "^" + std::to_string(e) : "");
            }
        }
    }
    return os.str();
}

Series substitute(const Series &f, std::span<const Series> zsub, std::span<const Series> zbarsub, int prec)
{
    const int n = f.dim();
    if (static_cast<int>(zsub.size()) != n || static_cast<int>(zbarsub.size()) != n) {
        throw std::invalid_argument("substitute: need one replacement per variable");
    }
    const int out_dim = zsub.empty() ? n : zsub[0].dim();
    // Cached powers: pw[v][e] for v < n the z's, v >= n the zbar's.
    std::vector<std::vector<Series>> pw(static_cast<std::size_t>(2 * n));
    auto power = [&](int v, int e) -> const Series & {
        auto &cache = pw[static_cast<std::size_t>(v)];
        const Series &base = v < n ? zsub[static_cast<std::size_t>(v)] : zbarsub[static_cast<std::size_t>(v - n)];
        if (cache.empty()) {
            cache.push_back(Series::constant(out_dim, QComplex(1), prec));
        }
        while (static_cast<int>(cache.size()) <= e) {
            cache.push_back(Series::multiply(cache.back(), base, prec));
        }
        return cache[static_cast<std::size_t>(e)];
    };
    Series out(out_dim, std::min(prec, f.prec()));
    for (const auto &t : f.terms()) {
        Series term = Series::constant(out_dim, t.coeff, prec);
        for (int v = 0; v < 2 * n; ++v) {
            const int e = v < n ? detail::key_z(t.key, v) : detail::key_zbar(t.key, v - n);
            if (e > 0) {
                term = Series::multiply(term, power(v, e), prec);
            }
        }
        out += term;
    }
    return out;
}

Series exp_series(const Series &x, int prec)
{
    if (prec >= kExact) {
        throw std::invalid_argument("exp_series: needs a finite truncation degree");
    }
    if (!x.coeff(std::uint64_t{0}).is_zero()) {
        throw std::invalid_argument("exp_series: constant term must vanish");
    }
    const int n = x.dim();
    Series xt = x.truncated(prec);
    Series out = Series::constant(n, QComplex(1), std::min(prec, x.prec()));
    Series power = Series::constant(n, QComplex(1), prec);
    for (unsigned k = 1;; ++k) {
        power = Series::multiply(power, xt, prec);
        if (power.is_zero()) {
            break;
        }
        out += power * (Rational(1) / factorial(k));
    }
    return out;
}

Series log1p_series(const Series &x, int prec)
{
    if (prec >= kExact) {
        throw std::invalid_argument("log1p_series: needs a finite truncation degree");
    }
    if (!x.coeff(std::uint64_t{0}).is_zero()) {
        throw std::invalid_argument("log1p_series: constant term must vanish");
    }
    const int n = x.dim();
    Series xt = x.truncated(prec);
    Series out(n, std::min(prec, x.prec()));
    Series power = Series::constant(n, QComplex(1), prec);
    for (long k = 1;; ++k) {
        power = Series::multiply(power, xt, prec);
        if (power.is_zero()) {
            break;
        }
        out += power * Rational(k % 2 == 1 ? 1 : -1, k);
    }
    return out;
}

} // namespace bergman
