#include <gtest/gtest.h>

#include <bergman/expansion.hpp>
#include <bergman/verify.hpp>

using namespace bergman;

namespace
{

std::vector<Rational> coeffs(std::initializer_list<long> v)
{
    std::vector<Rational> out;
    for (long x : v) {
        out.emplace_back(x);
    }
    return out;
}

} // namespace

TEST(LambdaSeries, FlatJet)
{
    for (int n = 1; n <= 3; ++n) {
        const PotentialJet flat = PotentialJet::flat(n, 8);
        const AsymptoticSeries s0 = lambda_inverse_series(flat, MultiIndex(n), 3);
        EXPECT_EQ(s0.normalized().coeffs().size(), 1u);
        EXPECT_EQ(s0.at_power2(2 * n), QComplex(1));
        for (int k = 1; k <= 3; ++k) {
            EXPECT_EQ(s0.at_power2(2 * (n + k)), QComplex(0));
        }
        const AsymptoticSeries s1 = lambda_inverse_series(flat, MultiIndex::unit(n, 0), 3);
        EXPECT_EQ(s1.at_power2(2 * n + 2), QComplex(1));
        EXPECT_EQ(s1.at_power2(2 * n + 4), QComplex(0));
    }
}

TEST(LambdaSeries, ProjectiveLineIsGeometric)
{
    const AsymptoticSeries s = lambda_inverse_series(cpn_jet(1), MultiIndex(1), 3);
    EXPECT_EQ(s, AsymptoticSeries(2, {QComplex(1), QComplex(-1), QComplex(1), QComplex(-1)}, 4));
}

TEST(LambdaSeries, LeadingTermIsMomentOfSection)
{
    const PotentialJet j = random_kgauge_jet(2, 8, 2);
    const MultiIndex P{2, 1};
    const AsymptoticSeries s = lambda_inverse_series(j, P, 2);
    EXPECT_EQ(s.at_power2(2 * (2 + 3)), QComplex(P.factorial()));
}

TEST(KernelExponential, RetainedTermsAreRegular)
{
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const GradedPolynomial g = kernel_exponential(random_kgauge_jet(2, 8, seed), 6);
        EXPECT_TRUE(g.is_regular());
    }
}

TEST(KernelExponential, WiderTruncationKeepsLowOrderTerms)
{
    const PotentialJet j = random_kgauge_jet(2, 10, 6);
    const AsymptoticSeries a = K_functional(kernel_exponential(j, 6));
    const AsymptoticSeries b = K_functional(kernel_exponential(j, 8));
    for (int k = 0; k <= 3; ++k) {
        EXPECT_EQ(a.at_power2(2 * (2 + k)), b.at_power2(2 * (2 + k))) << k;
    }
    // the extra jet terms past degree 8 do not move a_0..a_3 either
    const PotentialJet j8(2, 8, j.xi().truncated(8));
    EXPECT_EQ(density_coeffs_bruteforce(j), density_coeffs_bruteforce(j8));
}

TEST(PeakInnerProducts, ProjectiveSpaceIsOrthogonal)
{
    for (int n = 1; n <= 2; ++n) {
        const PotentialJet j = cpn_jet(n);
        const RadicalSeries r = peak_inner_product_series(j, MultiIndex(n), MultiIndex::unit(n, 0), 3);
        EXPECT_TRUE(r.series.is_zero());
        const RadicalSeries r2 = peak_inner_product_series(PotentialJet::flat(n, 8), MultiIndex(n),
                                                           MultiIndex::unit(n, n - 1), 3);
        EXPECT_TRUE(r2.series.is_zero());
    }
}

TEST(PeakInnerProducts, OffDiagonalDecay)
{
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const PotentialJet j = random_kgauge_jet(2, 8, seed);
        for (const MultiIndex &Q : {MultiIndex{1, 0}, MultiIndex{0, 1}, MultiIndex{1, 1}, MultiIndex{2, 0}}) {
            const AsymptoticSeries s = peak_inner_product_series(j, MultiIndex(2), Q, 2).series.normalized();
            if (!s.is_zero()) {
                EXPECT_GE(s.lead2(), 3) << "seed " << seed;
            }
        }
    }
}

TEST(PeakInnerProducts, LeadingOffDiagonalTermCarriesScalarCurvatureGradient)
{
    // n = 1: |(S_0, S_1)|^2 = |rho_{,1}|^2 / (4 m^3) + ...
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const PotentialJet j = random_kgauge_jet(1, 8, seed);
        const RadicalSeries r = peak_inner_product_series(j, MultiIndex(1), MultiIndex::unit(1, 0), 2);
        const QComplex c = r.series.at_power2(3);
        EXPECT_EQ(c.norm2() / r.radicand, curvature_invariants(j).normDrho2 / 4) << "seed " << seed;
    }
}

TEST(Sigma3, ClosedFormExamples)
{
    ScalarInvariants s;
    s.normDrho2 = 4;
    EXPECT_EQ(sigma3_closed(s), 1);
    EXPECT_EQ(sigma3_closed(curvature_invariants(cpn_jet(2))), 0);
    EXPECT_EQ(sigma3_via_inner_products(PotentialJet::flat(2, 8)), 0);
    EXPECT_EQ(sigma3_via_inner_products(cpn_jet(1)), 0);
}

TEST(Sigma3, BothRoutesAgree)
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const PotentialJet j = random_kgauge_jet(2, 8, seed);
        EXPECT_EQ(sigma3_via_inner_products(j), sigma3_closed(curvature_invariants(j))) << "seed " << seed;
    }
}

TEST(DensityCoefficients, FlatAndProjective)
{
    EXPECT_EQ(density_coeffs_bruteforce(PotentialJet::flat(2, 8)).as_vector(), coeffs({1, 0, 0, 0}));
    EXPECT_EQ(density_coeffs_bruteforce(cpn_jet(1)).as_vector(), coeffs({1, 1, 0, 0}));
    EXPECT_EQ(density_coeffs_bruteforce(cpn_jet(2)).as_vector(), coeffs({1, 3, 2, 0}));
    EXPECT_EQ(density_coeffs_closed_form(ScalarInvariants{}).as_vector(), coeffs({1, 0, 0, 0}));
    for (int n = 1; n <= 4; ++n) {
        const Rational N = n;
        const std::vector<Rational> expected = {1, N * (N + 1) / 2, N * (N + 1) * (N - 1) * (3 * N + 2) / 24,
                                                N * N * (N + 1) * (N + 1) * (N - 1) * (N - 2) / 48};
        const ScalarInvariants s = curvature_invariants(cpn_jet(n));
        EXPECT_EQ(density_coeffs_closed_form(s).as_vector(), expected) << n;
        EXPECT_EQ(density_coeffs_closed_form(s, A3Form::reduced).as_vector(), expected) << n;
    }
}

TEST(DensityCoefficients, LowerOrderNeedsSmallerJet)
{
    EXPECT_EQ(required_degree_for_order(2), 6);
    EXPECT_EQ(required_degree_for_order(3), 8);
    const PotentialJet j8 = random_kgauge_jet(2, 8, 4);
    const PotentialJet j6(2, 6, j8.xi().truncated(6));
    const DensityCoefficients a = density_coeffs_bruteforce(j8);
    const DensityCoefficients b = density_coeffs_bruteforce(j6, 2);
    EXPECT_EQ(b.order, 2);
    EXPECT_EQ(a.a1, b.a1);
    EXPECT_EQ(a.a2, b.a2);
    EXPECT_THROW(density_coeffs_bruteforce(j6, 3), TruncationError);
}

TEST(DensityCoefficients, TwoRoutesAgreeOnRandomJets)
{
    for (int n = 1; n <= 2; ++n) {
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const PotentialJet j = random_kgauge_jet(n, 8, seed);
            const ScalarInvariants s = curvature_invariants(j);
            EXPECT_EQ(density_coeffs_bruteforce(j), density_coeffs_closed_form(s)) << n << " " << seed;
            EXPECT_EQ(a3_verbatim(s), a3_reduced(s));
        }
    }
}

TEST(IdentitySuite, AllGroupsVanish)
{
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto res = identity_suite(random_kgauge_jet(2, 8, seed));
        EXPECT_EQ(res.size(), 33u);
        for (const auto &r : res) {
            EXPECT_EQ(r.residual(), 0) << r.group << " / " << r.name << " seed " << seed;
        }
    }
}

TEST(IdentitySuite, GroupSizesAndSelection)
{
    const PotentialJet j = random_kgauge_jet(2, 8, 1);
    const std::pair<const char *, std::size_t> sizes[] = {{"prop44", 8}, {"claims", 13}, {"prop52", 1},
                                                         {"prop53", 5}, {"sigma3", 1},  {"dual", 5}};
    for (const auto &[g, count] : sizes) {
        const auto res = identity_suite(j, {g});
        EXPECT_EQ(res.size(), count) << g;
        for (const auto &r : res) {
            EXPECT_EQ(r.group, g);
        }
    }
}

TEST(IdentitySuite, PermutationRouteMatchesPolynomialRoute)
{
    const PotentialJet j = random_kgauge_jet(2, 8, 12);
    const auto a = identity_suite(j, {"claims"}, LhsMethod::polynomial);
    const auto b = identity_suite(j, {"claims"}, LhsMethod::permutation);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].lhs, b[i].lhs) << a[i].name;
        EXPECT_EQ(b[i].residual(), 0) << b[i].name;
    }
}

TEST(IdentitySuite, ProjectiveLineMomentLine)
{
    // m K(e_4) = rho / (2 m^{n+1}) with rho = 2, n = 1
    const auto res = identity_suite(cpn_jet(1), {"prop44"});
    const auto it = std::find_if(res.begin(), res.end(), [](const Residual &r) { return r.name == "mK(e4)"; });
    ASSERT_NE(it, res.end());
    EXPECT_EQ(it->lhs, 1);
    EXPECT_EQ(it->residual(), 0);
}
