#include <gtest/gtest.h>

#include <bergman/curvature.hpp>
#include <bergman/verify.hpp>

using namespace bergman;

TEST(Invariants, FlatJetIsZero)
{
    for (int n = 1; n <= 4; ++n) {
        const ScalarInvariants s = curvature_invariants(PotentialJet::flat(n, 8));
        for (const auto &[name, v] : s.fields()) {
            EXPECT_EQ(v, 0) << name << " n=" << n;
        }
    }
}

TEST(Invariants, ProjectiveSpaceValues)
{
    for (int n = 1; n <= 3; ++n) {
        const ScalarInvariants s = curvature_invariants(cpn_jet(n));
        const Rational k = n * (n + 1);
        EXPECT_EQ(s.rho, k);
        EXPECT_EQ(s.normR2, 2 * k);
        EXPECT_EQ(s.normRic2, k * (n + 1));
        EXPECT_EQ(s.R_Ric_Ric, -k * (n + 1) * (n + 1));
        EXPECT_EQ(s.Ric_R_R, 2 * k * (n + 1));
        EXPECT_EQ(s.sigma3Ric, k * (n + 1) * (n + 1));
        // covariantly constant curvature: every derivative quantity vanishes
        EXPECT_EQ(s.lap_rho, 0);
        EXPECT_EQ(s.normDrho2, 0);
        EXPECT_EQ(s.normDRic2, 0);
        EXPECT_EQ(s.normDR2, 0);
        EXPECT_EQ(s.lap_normR2, 0);
    }
}

TEST(Invariants, CubicRiemannContractionsOnProjectiveSpace)
{
    const Rational s1[] = {-8, -30, -72};
    const Rational s2[] = {-8, -24, -48};
    for (int n = 1; n <= 3; ++n) {
        const ScalarInvariants s = curvature_invariants(cpn_jet(n));
        EXPECT_EQ(s.sigma1R, s1[n - 1]);
        EXPECT_EQ(s.sigma2R, s2[n - 1]);
    }
}

TEST(Invariants, NormsAreNonNegative)
{
    for (int n = 1; n <= 3; ++n) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const ScalarInvariants s = curvature_invariants(random_kgauge_jet(n, 8, seed));
            EXPECT_GE(s.normR2, 0);
            EXPECT_GE(s.normRic2, 0);
            EXPECT_GE(s.normDrho2, 0);
            EXPECT_GE(s.normDRic2, 0);
            EXPECT_GE(s.normDR2, 0);
        }
    }
}

TEST(Invariants, LowDegreeJetSupportsOnlySecondOrder)
{
    const PotentialJet j = random_kgauge_jet(2, 6, 3);
    const ScalarInvariants s2 = curvature_invariants(j, CurvatureOrder::through_a2);
    EXPECT_FALSE(s2.third_order);
    try {
        curvature_invariants(j, CurvatureOrder::through_a3);
        FAIL() << "expected TruncationError";
    } catch (const TruncationError &e) {
        EXPECT_FALSE(std::string(e.what()).empty());
    }
}

TEST(Invariants, SecondOrderFieldsIgnoreHigherJetTerms)
{
    // rho, lap_rho, |R|^2, |Ric|^2 depend on the 6-jet only
    const PotentialJet j8 = random_kgauge_jet(2, 8, 9);
    const PotentialJet j6(2, 6, j8.xi().truncated(6));
    const ScalarInvariants a = curvature_invariants(j8);
    const ScalarInvariants b = curvature_invariants(j6, CurvatureOrder::through_a2);
    EXPECT_EQ(a.rho, b.rho);
    EXPECT_EQ(a.lap_rho, b.lap_rho);
    EXPECT_EQ(a.normR2, b.normR2);
    EXPECT_EQ(a.normRic2, b.normRic2);
}

TEST(TaylorData, ProjectiveLineLowTerms)
{
    const ExpansionTerms t = expansion_terms(cpn_jet(1));
    const Series r = Series::norm2(1);
    EXPECT_EQ(t.e.at(4), r * r * Rational(1, 2));
    EXPECT_EQ(t.c.at(2), r * Rational(-2));
}

TEST(TaylorData, FlatJetIsZero)
{
    const ExpansionTerms t = expansion_terms(PotentialJet::flat(2, 8));
    for (const auto &[k, s] : t.e) {
        EXPECT_TRUE(s.is_zero()) << "e" << k;
    }
    for (const auto &[k, s] : t.c) {
        EXPECT_TRUE(s.is_zero()) << "c" << k;
    }
}

TEST(TaylorData, LowOrderTermsMatchCurvature)
{
    for (int n = 1; n <= 3; ++n) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            for (const auto &[name, res] : structural_residuals(random_kgauge_jet(n, 8, seed))) {
                EXPECT_TRUE(res.is_zero()) << name << " n=" << n << " seed=" << seed << ": " << res.to_string();
            }
        }
    }
}
