#include <gtest/gtest.h>

#include <bergman/curvature.hpp>
#include <bergman/jet.hpp>
#include <bergman/verify.hpp>

using namespace bergman;

namespace
{

Series monomial(int n, std::vector<int> a, std::vector<int> b, const Rational &c)
{
    return Series::monomial(n, MultiIndex(std::move(a)), MultiIndex(std::move(b)), QComplex(c));
}

} // namespace

TEST(KGauge, FlatJetPasses)
{
    EXPECT_TRUE(validate_kgauge(PotentialJet::flat(3, 8)).pass);
}

TEST(KGauge, HolomorphicCubicIsReported)
{
    const Series xi = monomial(2, {3, 0}, {0, 0}, 1) + monomial(2, {0, 0}, {3, 0}, 1);
    const KGaugeReport r = validate_kgauge(PotentialJet(2, 8, xi));
    EXPECT_FALSE(r.pass);
    ASSERT_FALSE(r.offending.empty());
    EXPECT_EQ(r.offending.front(), std::make_pair(0, 3));
    EXPECT_NE(std::find(r.offending.begin(), r.offending.end(), std::make_pair(3, 0)), r.offending.end());
}

TEST(KGauge, FubiniStudyJetTerms)
{
    const PotentialJet jet = cpn_jet(1);
    const Series r = Series::norm2(1);
    const Series expected = r * r * Rational(1, 2) - r * r * r * Rational(1, 3) + r * r * r * r * Rational(1, 4);
    EXPECT_EQ(jet.xi().with_prec(kExact), expected);
    EXPECT_TRUE(validate_kgauge(jet).pass);
}

TEST(RandomJet, DeterministicGaugedAndReal)
{
    const PotentialJet a = random_kgauge_jet(2, 8, 7);
    const PotentialJet b = random_kgauge_jet(2, 8, 7);
    EXPECT_TRUE(a == b);
    EXPECT_FALSE(a == random_kgauge_jet(2, 8, 8));
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const PotentialJet j = random_kgauge_jet(3, 8, seed);
        const KGaugeReport r = validate_kgauge(j);
        EXPECT_TRUE(r.pass);
        EXPECT_TRUE(r.real_valued);
        EXPECT_EQ(j.xi().conj(), j.xi());
    }
}

TEST(RandomJet, CoefficientsBoundedByMagnitude)
{
    const PotentialJet j = random_kgauge_jet(2, 8, 3, 2);
    for (const auto &t : j.xi().terms()) {
        for (const Rational *v : {&t.coeff.re, &t.coeff.im}) {
            EXPECT_LE(abs(v->get_num()), 2);
            EXPECT_LE(v->get_den(), 2);
        }
    }
}

TEST(RandomJet, RejectsBadShape)
{
    EXPECT_THROW(random_kgauge_jet(0, 8, 1), std::invalid_argument);
    EXPECT_THROW(random_kgauge_jet(2, 3, 1), std::invalid_argument);
}

TEST(Normalize, KGaugeInputIsAFixedPoint)
{
    const PotentialJet j = random_kgauge_jet(2, 8, 4);
    EXPECT_TRUE(normalize_to_kgauge(j.potential(), 8) == j);
}

TEST(Normalize, PluriharmonicPerturbationIsGauge)
{
    // |z|^2 + Re(z1^3)
    const Series pot = (Series::norm2(2) + (monomial(2, {3, 0}, {0, 0}, 1) + monomial(2, {0, 0}, {3, 0}, 1)) *
                                               Rational(1, 2))
                           .with_prec(8);
    const PotentialJet j = normalize_to_kgauge(pot, 8);
    EXPECT_TRUE(j.xi().is_zero());
    const ScalarInvariants s = potential_invariants(pot);
    for (const auto &[name, v] : s.fields()) {
        EXPECT_EQ(v, 0) << name;
    }
}

TEST(Normalize, FubiniStudyAtAnotherChartPoint)
{
    const Series pot = Perturbation{}.local_potential(QComplex(Rational(1, 2)), 8);
    const PotentialJet j = normalize_to_kgauge(pot, 8);
    EXPECT_TRUE(validate_kgauge(j).pass);
    EXPECT_EQ(curvature_invariants(j).fields(), curvature_invariants(cpn_jet(1)).fields());
}

TEST(Normalize, InvariantsSurviveCoordinateChange)
{
    // z -> 2 z + (z1 z2, z1^2) applied to a K-gauge potential
    const PotentialJet j = random_kgauge_jet(2, 8, 11);
    const Series z1 = Series::z(2, 0), z2 = Series::z(2, 1);
    const std::vector<Series> zs{z1 * QComplex(2) + z1 * z2, z2 * QComplex(2) + z1 * z1};
    const std::vector<Series> zbs{zs[0].conj(), zs[1].conj()};
    const Series pot = substitute(j.potential(), zs, zbs, 8);
    const auto direct = curvature_invariants(j).fields();
    EXPECT_EQ(potential_invariants(pot).fields(), direct);
    const PotentialJet back = normalize_to_kgauge(pot, 8);
    EXPECT_TRUE(validate_kgauge(back).pass);
    EXPECT_EQ(curvature_invariants(back).fields(), direct);
}

TEST(Normalize, IrrationalScaleIsRefused)
{
    const Series pot = (Series::norm2(1) * Rational(2)).with_prec(8);
    EXPECT_THROW(normalize_to_kgauge(pot, 8), NormalizationError);
}

TEST(Normalize, DegenerateMetricIsRefused)
{
    const Series pot = Series::norm2(2).part(1, 1) - monomial(2, {0, 1}, {0, 1}, 1);
    EXPECT_THROW(normalize_to_kgauge(pot.with_prec(8), 8), NormalizationError);
}

TEST(JetJson, RoundTrip)
{
    const PotentialJet j = random_kgauge_jet(2, 8, 5);
    EXPECT_TRUE(jet_from_string(jet_to_json(j).dump()) == j);
}

TEST(JetJson, ErrorsCarryLocation)
{
    try {
        jet_from_string(R"({"n":2,"max_degree":8,"terms":[{"zi":[2,0],"zbar":[2,0],"re":"1/2"},)"
                        R"({"zi":[2,0],"zbar":[2,0],"re":"x/2"}]})");
        FAIL() << "expected JetFormatError";
    } catch (const JetFormatError &e) {
        EXPECT_EQ(e.location, "/terms/1/re");
    }
    try {
        jet_from_string("{\"n\": 2,");
        FAIL() << "expected JetFormatError";
    } catch (const JetFormatError &e) {
        EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
    }
    EXPECT_THROW(jet_from_string(R"({"n":2,"max_degree":4,"terms":[{"zi":[3,0],"zbar":[3,0],"re":"1"}]})"),
                 JetFormatError);
}
