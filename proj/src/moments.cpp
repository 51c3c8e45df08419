#include <bergman/moments.hpp>

#include <algorithm>
#include <numeric>

namespace bergman
{

using detail::key_degree;
using detail::key_zbardeg;
using detail::key_zdeg;

AsymptoticSeries monomial_moment(const MultiIndex &P, const MultiIndex &Q, int q, int n)
{
    if (P.size() != n || Q.size() != n) {
        throw std::invalid_argument("monomial_moment: multi-index length differs from n");
    }
    if (q < 0) {
        throw std::invalid_argument("monomial_moment: q must be non-negative");
    }
    const int p = P.degree();
    if (P != Q) {
        return AsymptoticSeries();
    }
    const Rational v = factorial(static_cast<unsigned>(n + p + q - 1)) * P.factorial() /
                       factorial(static_cast<unsigned>(n + p - 1));
    return AsymptoticSeries::term(QComplex(v), 2 * (n + p + q));
}

void GradedPolynomial::add(int mu, int weight2, const Series &s)
{
    if (s.is_zero()) {
        return;
    }
    auto [it, inserted] = parts.try_emplace({mu, weight2}, s);
    if (!inserted) {
        it->second += s;
    }
}

GradedPolynomial GradedPolynomial::multiply(const GradedPolynomial &a, const GradedPolynomial &b, int max_excess)
{
    GradedPolynomial out;
    out.n = a.n;
    for (const auto &[ka, sa] : a.parts) {
        for (const auto &[kb, sb] : b.parts) {
            const int mu = ka.first + kb.first;
            const int cap = max_excess + 2 * mu;
            if (cap < 0 || sa.min_degree() + sb.min_degree() > cap) {
                continue;
            }
            out.add(mu, ka.second + kb.second, Series::multiply(sa, sb, cap).with_prec(kExact));
        }
    }
    return out;
}

GradedPolynomial GradedPolynomial::exp(const GradedPolynomial &x, int max_excess)
{
    for (const auto &[k, s] : x.parts) {
        // Each factor must raise the excess, otherwise the sum does not terminate.
        if (!s.is_zero() && s.min_degree() - 2 * k.first < 1) {
            throw std::invalid_argument("GradedPolynomial::exp: every term needs positive excess");
        }
    }
    GradedPolynomial out;
    out.n = x.n;
    out.add(0, 0, Series::constant(x.n, QComplex(1)));
    GradedPolynomial power = out;
    for (unsigned k = 1;; ++k) {
        power = multiply(power, x, max_excess);
        if (power.parts.empty()) {
            break;
        }
        const Rational inv = Rational(1) / factorial(k);
        for (const auto &[key, s] : power.parts) {
            out.add(key.first, key.second, s * inv);
        }
    }
    return out;
}

bool GradedPolynomial::is_regular() const
{
    for (const auto &[key, s] : parts) {
        for (const auto &t : s.terms()) {
            // 2*(mu + w - t/2) with weight2 = 2w
            if (2 * key.first + key.second - key_degree(t.key) != 0) {
                return false;
            }
        }
    }
    return true;
}

namespace
{

// Adds sum over balanced terms of c * alpha! * m^{mu - n - |alpha|} into acc (keyed by power of 1/m).
void accumulate_K(const Series &s, int mu, std::map<int, QComplex> &acc)
{
    const int n = s.dim();
    for (const auto &t : s.terms()) {
        bool balanced = true;
        Rational f(1);
        for (int i = 0; i < n && balanced; ++i) {
            const int a = detail::key_z(t.key, i);
            if (a != detail::key_zbar(t.key, i)) {
                balanced = false;
            } else if (a > 1) {
                f *= factorial(static_cast<unsigned>(a));
            }
        }
        if (!balanced) {
            continue;
        }
        acc[n + key_zdeg(t.key) - mu] += t.coeff * f;
    }
}

AsymptoticSeries from_power_map(const std::map<int, QComplex> &acc)
{
    std::vector<std::pair<int, QComplex>> nz;
    for (const auto &[p, c] : acc) {
        if (!c.is_zero()) {
            nz.push_back({p, c});
        }
    }
    if (nz.empty()) {
        return AsymptoticSeries();
    }
    const int lead = nz.front().first;
    std::vector<QComplex> c(static_cast<std::size_t>(nz.back().first - lead + 1));
    for (const auto &[p, v] : nz) {
        c[static_cast<std::size_t>(p - lead)] = v;
    }
    return AsymptoticSeries(2 * lead, std::move(c));
}

} // namespace

AsymptoticSeries K_functional(const Series &poly)
{
    if (!poly.is_exact() && poly.prec() < poly.max_degree()) {
        throw std::logic_error("K_functional: inconsistent series");
    }
    std::map<int, QComplex> acc;
    accumulate_K(poly, 0, acc);
    return from_power_map(acc);
}

AsymptoticSeries K_functional(const GradedPolynomial &poly)
{
    std::map<int, QComplex> acc;
    for (const auto &[key, s] : poly.parts) {
        accumulate_K(s, key.first, acc);
    }
    return from_power_map(acc);
}

QComplex L_functional_complex(const Series &poly)
{
    int p = -1;
    QComplex sum;
    for (const auto &t : poly.terms()) {
        const int a = key_zdeg(t.key);
        const int b = key_zbardeg(t.key);
        if (a != b || (p >= 0 && a != p)) {
            throw std::invalid_argument("L_functional: input must be homogeneous of bidegree (p,p)");
        }
        p = a;
        bool diag = true;
        Rational f(1);
        for (int i = 0; i < poly.dim(); ++i) {
            const int e = detail::key_z(t.key, i);
            if (e != detail::key_zbar(t.key, i)) {
                diag = false;
                break;
            }
            f *= factorial(static_cast<unsigned>(e));
        }
        if (diag) {
            sum += t.coeff * f;
        }
    }
    if (p > 0) {
        sum /= factorial(static_cast<unsigned>(p));
    }
    return sum;
}

Rational L_functional(const Series &poly)
{
    const QComplex v = L_functional_complex(poly);
    if (!v.is_real()) {
        throw std::domain_error("L_functional: value is not real: " + to_string(v));
    }
    return v.re;
}

QComplex L_permutation_sum(const TensorCoefficients &A, int n, int p)
{
    std::vector<int> I(static_cast<std::size_t>(p), 0);
    std::vector<int> sigma(static_cast<std::size_t>(p));
    std::vector<int> J(static_cast<std::size_t>(p));
    QComplex total;
    while (true) {
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
            for (int k = 0; k < p; ++k) {
                J[static_cast<std::size_t>(k)] = I[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])];
            }
            const QComplex v = A(I, J);
            if (!v.is_zero()) {
                total += v;
            }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        int d = p - 1;
        while (d >= 0 && ++I[static_cast<std::size_t>(d)] == n) {
            I[static_cast<std::size_t>(d)] = 0;
            --d;
        }
        if (d < 0) {
            break;
        }
    }
    return total / QComplex(factorial(static_cast<unsigned>(p)));
}

TensorCoefficients symmetric_coefficients(const Series &poly)
{
    const int n = poly.dim();
    int p = 0;
    for (const auto &t : poly.terms()) {
        p = key_zdeg(t.key);
        break;
    }
    const Rational pf2 = factorial(static_cast<unsigned>(p)) * factorial(static_cast<unsigned>(p));
    return [poly, n, pf2](std::span<const int> I, std::span<const int> J) -> QComplex {
        std::uint64_t key = 0;
        std::vector<int> a(static_cast<std::size_t>(n), 0), b(static_cast<std::size_t>(n), 0);
        for (int i : I) {
            key += detail::key_unit_z(i);
            ++a[static_cast<std::size_t>(i)];
        }
        for (int j : J) {
            key += detail::key_unit_zbar(j);
            ++b[static_cast<std::size_t>(j)];
        }
        QComplex c = poly.coeff(key);
        if (c.is_zero()) {
            return c;
        }
        Rational f(1);
        for (int i = 0; i < n; ++i) {
            f *= factorial(static_cast<unsigned>(a[static_cast<std::size_t>(i)])) *
                 factorial(static_cast<unsigned>(b[static_cast<std::size_t>(i)]));
        }
        return c * (f / pf2);
    };
}

} // namespace bergman
