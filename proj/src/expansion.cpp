#include <bergman/expansion.hpp>

#include <algorithm>
#include <map>

namespace bergman
{

std::vector<Rational> DensityCoefficients::as_vector() const
{
    return {a0, a1, a2, a3};
}

int required_degree_for_order(int order)
{
    return 2 * order + 2;
}

GradedPolynomial kernel_exponential(const PotentialJet &jet, int max_excess)
{
    if (jet.max_degree() < max_excess + 2) {
        throw TruncationError("kernel exponential with excess " + std::to_string(max_excess) + " needs jet degree " +
                              std::to_string(max_excess + 2) + ", got " + std::to_string(jet.max_degree()));
    }
    const int n = jet.dim();
    const ExpansionTerms et = expansion_terms(jet);
    GradedPolynomial x;
    x.n = n;
    // m xi_t has weight (t-2)/2, eta_t has weight t/2.
    for (int t = 4; t <= max_excess + 2; ++t) {
        x.add(1, t - 2, et.e.at(t));
    }
    for (int t = 2; t <= max_excess; ++t) {
        x.add(0, t, et.c.at(t));
    }
    GradedPolynomial e = GradedPolynomial::exp(x, max_excess);
    if (!e.is_regular()) {
        throw std::logic_error("kernel exponential: a term has non-zero index");
    }
    return e;
}

namespace
{

AsymptoticSeries K_with_monomial(const GradedPolynomial &e, const MultiIndex &P, const MultiIndex &Q)
{
    const Series mono = Series::monomial(e.n, P, Q, QComplex(1));
    GradedPolynomial shifted;
    shifted.n = e.n;
    for (const auto &[key, s] : e.parts) {
        shifted.add(key.first, key.second, Series::multiply(s, mono));
    }
    return K_functional(shifted);
}

// The `count` coefficients of s on the grid lead2, lead2 + 2, ...
AsymptoticSeries known_part(const AsymptoticSeries &s, int lead2, int count)
{
    std::vector<QComplex> c;
    for (int k = 0; k < count; ++k) {
        c.push_back(s.at_power2(lead2 + 2 * k));
    }
    return AsymptoticSeries(lead2, std::move(c), count);
}

void check_order(int order)
{
    if (order < 0 || order > 3) {
        throw std::invalid_argument("order must be between 0 and 3");
    }
}

AsymptoticSeries B_diag(const GradedPolynomial &e, const MultiIndex &P, int n, int order)
{
    return known_part(K_with_monomial(e, P, P), 2 * (n + P.degree()), order + 1);
}

RadicalSeries inner_product(const GradedPolynomial &e, const MultiIndex &P, const MultiIndex &Q, int n, int order)
{
    const int parity = (P.degree() + Q.degree()) % 2;
    const int base = 2 * n + P.degree() + Q.degree();
    const AsymptoticSeries bpq = known_part(K_with_monomial(e, P, Q), base + parity, (2 * order - parity) / 2 + 1);
    const AsymptoticSeries d = B_diag(e, P, n, order) * B_diag(e, Q, n, order);
    RadicalSeries r = inverse_sqrt(d);
    r.series = bpq * r.series;
    return r;
}

} // namespace

AsymptoticSeries lambda_inverse_series(const PotentialJet &jet, const MultiIndex &P, int order)
{
    check_order(order);
    if (P.size() != jet.dim()) {
        throw std::invalid_argument("lambda_inverse_series: multi-index length differs from n");
    }
    const GradedPolynomial e = kernel_exponential(jet, 2 * order);
    return B_diag(e, P, jet.dim(), order);
}

RadicalSeries peak_inner_product_series(const PotentialJet &jet, const MultiIndex &P, const MultiIndex &Q,
                                        int order)
{
    check_order(order);
    if (P.size() != jet.dim() || Q.size() != jet.dim()) {
        throw std::invalid_argument("peak_inner_product_series: multi-index length differs from n");
    }
    const GradedPolynomial e = kernel_exponential(jet, 2 * order);
    return inner_product(e, P, Q, jet.dim(), order);
}

Rational sigma3_closed(const ScalarInvariants &inv)
{
    return inv.normDrho2 / 4;
}

namespace
{

Rational sigma3_from(const GradedPolynomial &e, int n)
{
    const MultiIndex zero(n);
    AsymptoticSeries total = AsymptoticSeries::zero(8);
    for (int i = 0; i < n; ++i) {
        const RadicalSeries m = inner_product(e, zero, MultiIndex::unit(n, i), n, 2);
        total += (m.series * m.series.conj()) * QComplex(Rational(1) / m.radicand);
    }
    const QComplex v = total.at_power2(6);
    if (!v.is_real()) {
        throw std::logic_error("sigma3: non-real value");
    }
    return v.re;
}

} // namespace

Rational sigma3_via_inner_products(const PotentialJet &jet)
{
    return sigma3_from(kernel_exponential(jet, 4), jet.dim());
}

DensityCoefficients density_coeffs_bruteforce(const PotentialJet &jet, int order)
{
    check_order(order);
    const int n = jet.dim();
    const GradedPolynomial e = kernel_exponential(jet, 2 * std::max(order, 2));
    const AsymptoticSeries lam = B_diag(e, MultiIndex(n), n, order).reciprocal();
    AsymptoticSeries i00 = AsymptoticSeries(0, {QComplex(1)}, order + 1);
    if (order >= 3) {
        i00 += AsymptoticSeries::term(QComplex(sigma3_from(e, n)), 6);
    }
    const AsymptoticSeries dens = i00 * lam;
    DensityCoefficients d;
    d.order = order;
    std::vector<Rational *> slots = {&d.a0, &d.a1, &d.a2, &d.a3};
    for (int j = 0; j <= 3; ++j) {
        *slots[static_cast<std::size_t>(j)] = j <= order ? dens.at_power2(-2 * n + 2 * j).re : Rational(0);
    }
    return d;
}

Rational a3_verbatim(const ScalarInvariants &s)
{
    const Rational &rho = s.rho;
    return s.laplap_rho / 8 + s.divdiv_R_Ric / 24 - s.divdiv_rhoRic / 6 +
           (s.lap_normR2 - 4 * s.lap_normRic2 + 8 * s.lap_rho2) / 48 +
           rho * (rho * rho - 4 * s.normRic2 + s.normR2) / 48 + (s.sigma3Ric - s.Ric_R_R - s.R_Ric_Ric) / 24;
}

Rational a3_reduced(const ScalarInvariants &s)
{
    const Rational &rho = s.rho;
    return s.laplap_rho / 8 - s.normDRic2 / 4 + s.normDR2 / 24 + rho * s.lap_rho / 6 -
           Rational(3, 8) * s.ric_hess_rho + rho * rho * rho / 48 - rho * s.normRic2 / 12 + rho * s.normR2 / 48 +
           s.sigma1R / 12 - s.sigma2R / 24 - s.sigma3Ric / 6 - s.R_Ric_Ric / 4;
}

DensityCoefficients density_coeffs_closed_form(const ScalarInvariants &s, A3Form form)
{
    DensityCoefficients d;
    d.a1 = s.rho / 2;
    d.a2 = s.lap_rho / 3 + (s.normR2 - 4 * s.normRic2 + 3 * s.rho * s.rho) / 24;
    if (s.third_order) {
        d.a3 = form == A3Form::verbatim ? a3_verbatim(s) : a3_reduced(s);
    } else {
        d.order = 2;
    }
    return d;
}

const std::vector<std::string> &identity_groups()
{
    static const std::vector<std::string> g = {"prop44", "claims", "prop52", "prop53", "sigma3", "dual"};
    return g;
}

namespace
{

Rational real_or_throw(const QComplex &v, const std::string &what)
{
    if (!v.is_real()) {
        throw std::logic_error(what + " is not real: " + to_string(v));
    }
    return v.re;
}

// Coefficient of m^{-power} in K(poly).
Rational K_coeff(const Series &poly, int power)
{
    return real_or_throw(K_functional(poly).at_power2(2 * power), "K coefficient");
}

struct Lcalc {
    LhsMethod method;
    int n;
    Rational operator()(const Series &prod, int p) const
    {
        const Series bal = prod.part(p, p);
        if (method == LhsMethod::polynomial) {
            return L_functional(bal);
        }
        return real_or_throw(L_permutation_sum(symmetric_coefficients(bal), n, p), "L");
    }
};

} // namespace

std::vector<Residual> identity_suite(const PotentialJet &jet, const std::vector<std::string> &groups,
                                     LhsMethod method)
{
    auto want = [&groups](const char *g) {
        return groups.empty() || std::find(groups.begin(), groups.end(), g) != groups.end();
    };
    for (const auto &g : groups) {
        if (std::find(identity_groups().begin(), identity_groups().end(), g) == identity_groups().end()) {
            throw std::invalid_argument("unknown identity group '" + g + "'");
        }
    }
    if (jet.max_degree() < 8) {
        throw TruncationError("identity suite needs a jet of degree 8, got " + std::to_string(jet.max_degree()));
    }
    const int n = jet.dim();
    const ScalarInvariants s = curvature_invariants(jet);
    const ExpansionTerms et = expansion_terms(jet);
    const Rational &rho = s.rho;
    const Rational &lrho = s.lap_rho;
    const Rational &R2 = s.normR2;
    const Rational &Ric2 = s.normRic2;
    const Rational &H = s.ric_hess_rho;
    const Rational &C = s.cross_R_D2Ric;
    const Rational &RRR = s.R_Ric_Ric;  // R(Ric,Ric)
    const Rational &RicRR = s.Ric_R_R; // Ric(R,R)
    const Rational &s1 = s.sigma1R;
    const Rational &s2 = s.sigma2R;
    const Rational &s3 = s.sigma3Ric;
    const Rational &Drho = s.normDrho2;
    const Rational &DRic = s.normDRic2;
    const Rational &DR = s.normDR2;
    const Rational rho3 = rho * rho * rho;

    std::vector<Residual> out;
    auto push = [&out](const char *g, const char *name, Rational lhs, Rational rhs) {
        out.push_back({g, name, std::move(lhs), std::move(rhs)});
    };
    const Series &e4 = et.e.at(4);
    const Series &e5 = et.e.at(5);
    const Series &e6 = et.e.at(6);
    const Series &c2 = et.c.at(2);
    const Series &c3 = et.c.at(3);
    const Series &c4 = et.c.at(4);
    const Series &e6t = et.e6_tilde;
    const Series &e8t = et.e8_tilde;
    const Series &c4t = et.c4_tilde;
    const Series &c6t = et.c6_tilde;
    auto mul = [](const Series &a, const Series &b) { return Series::multiply(a, b); };

    if (want("prop44")) {
        push("prop44", "K(1)", K_coeff(Series::constant(n, QComplex(1)), n), Rational(1));
        push("prop44", "mK(e4)", K_coeff(e4, n + 2), rho / 2);
        push("prop44", "K(c2)", K_coeff(c2, n + 1), -rho);
        push("prop44", "mK(e6)", K_coeff(e6, n + 3), -(-lrho + 2 * Ric2 + R2) / 6);
        push("prop44", "m^2K(e4^2)/2", K_coeff(mul(e4, e4), n + 4) / 2, (rho * rho + 4 * Ric2 + R2) / 8);
        push("prop44", "mK(c2e4)", K_coeff(mul(c2, e4), n + 3), -(rho * rho + 2 * Ric2) / 2);
        push("prop44", "K(c2^2)/2", K_coeff(mul(c2, c2), n + 2) / 2, (rho * rho + Ric2) / 2);
        push("prop44", "K(c4)", K_coeff(c4, n + 2), -(lrho - Ric2) / 2);
    }

    const bool need_claims = want("claims") || want("prop52");
    if (need_claims) {
        const Lcalc L{method, n};
        const Series c2c2 = mul(c2, c2);
        const Series e4e4 = mul(e4, e4);
        struct Claim {
            const char *name;
            Rational lhs, rhs;
        };
        const std::vector<Claim> claims = {
            {"L(c2^3)", L(mul(c2c2, c2), 3), -(rho3 + 3 * rho * Ric2 + 2 * s3) / 6},
            {"3L(c3^2)", 3 * L(mul(c3, c3), 3), Drho + DRic / 2},
            {"12L(c2^2e4)", 12 * L(mul(c2c2, e4), 4), (rho3 - 2 * RRR + 4 * s3 + 5 * rho * Ric2) / 4},
            {"6L(c2c4~)", 6 * L(mul(c2, c4t), 3), rho * lrho / 2 + H - rho * Ric2 / 2 + RRR},
            {"120L(e4^3)", 120 * L(mul(e4e4, e4), 6),
             rho3 / 48 + rho * Ric2 / 4 + rho * R2 / 16 - RRR / 2 + RicRR / 2 - s1 / 6 - s2 / 24 + s3 / 3},
            {"24L(c4~e4)", 24 * L(mul(c4t, e4), 4),
             -rho * lrho / 4 + rho * Ric2 / 4 - H - RRR + C / 4 + RicRR / 4},
            {"24L(c2e6~)", 24 * L(mul(c2, e6t), 4),
             -rho * lrho / 6 - H / 2 + rho * Ric2 / 3 + rho * R2 / 6 - RRR + RicRR / 2},
            {"120L(e4e6~)", 120 * L(mul(e4, e6t), 5),
             rho * lrho / 12 + H / 2 - C / 4 - rho * Ric2 / 6 - rho * R2 / 12 + RRR - Rational(3, 4) * RicRR +
                 s1 / 2},
            {"60L(c2e4^2)", 60 * L(mul(c2, e4e4), 5),
             -rho3 / 8 - rho * Ric2 - rho * R2 / 8 + RRR - s3 - RicRR / 2},
            {"24L(c3e5)", 24 * L(mul(c3, e5), 4), -Drho - DRic},
            {"60L(e5^2)", 60 * L(mul(e5, e5), 5), (3 * Drho + 6 * DRic + DR) / 12},
            {"6L(c6~)", 6 * L(c6t, 3),
             -s.laplap_rho / 6 + Rational(2, 3) * H - C / 3 + Rational(2, 3) * DRic - RicRR / 6 +
                 Rational(2, 3) * RRR + s3 / 3},
            {"24L(e8~)", 24 * L(e8t, 4),
             s.laplap_rho / 24 - Rational(5, 12) * DRic - DR / 8 - Rational(7, 24) * H + C / 3 + RicRR / 6 -
                 Rational(5, 12) * RRR - Rational(5, 12) * s1 + s2 / 12 - s3 / 6},
        };
        if (want("claims")) {
            for (const auto &c : claims) {
                push("claims", c.name, c.lhs, c.rhs);
            }
        }
        if (want("prop52")) {
            Rational lhs;
            for (const auto &c : claims) {
                lhs += c.lhs;
            }
            const Rational f3 = -s.laplap_rho / 8 + Drho / 4 + DRic / 4 - DR / 24 + rho * lrho / 6 +
                                Rational(3, 8) * H - rho3 / 48 - rho * Ric2 / 12 + rho * R2 / 48 - s1 / 12 +
                                s2 / 24 + s3 / 6 + RRR / 4;
            push("prop52", "sum of third-order L terms", lhs, f3);
        }
    }

    if (want("prop53")) {
        push("prop53", "divdiv(R,Ric)", s.divdiv_R_Ric, -H - 2 * DRic + C - RRR - s3);
        push("prop53", "divdiv(rho Ric)", s.divdiv_rhoRic, 2 * Drho + H + rho * lrho);
        push("prop53", "lap|R|^2", s.lap_normR2, -2 * C + 2 * DR + 4 * s1 - 2 * s2 + 2 * RicRR);
        push("prop53", "lap|Ric|^2", s.lap_normRic2, 2 * DRic + 2 * H + 2 * RRR + 2 * s3);
        push("prop53", "lap rho^2", s.lap_rho2, 2 * Drho + 2 * rho * lrho);
    }

    if (want("sigma3")) {
        push("sigma3", "sigma3 via inner products", sigma3_via_inner_products(jet), sigma3_closed(s));
    }

    if (want("dual")) {
        const DensityCoefficients brute = density_coeffs_bruteforce(jet, 3);
        const DensityCoefficients closed = density_coeffs_closed_form(s);
        push("dual", "a0", brute.a0, closed.a0);
        push("dual", "a1", brute.a1, closed.a1);
        push("dual", "a2", brute.a2, closed.a2);
        push("dual", "a3", brute.a3, closed.a3);
        push("dual", "a3 reduced form", a3_reduced(s), a3_verbatim(s));
    }
    return out;
}

} // namespace bergman
