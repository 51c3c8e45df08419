#include <gtest/gtest.h>

#include <bergman/rational.hpp>
#include <bergman/series.hpp>

using namespace bergman;

TEST(Rational, CanonicalStringForm)
{
    EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
    EXPECT_EQ(to_string(Rational(-2, 1)), "-2/1");
    EXPECT_EQ(to_string(Rational(0)), "0/1");
    EXPECT_EQ(*parse_rational("-10/4"), Rational(-5, 2));
    EXPECT_EQ(*parse_rational("7"), Rational(7));
    EXPECT_FALSE(parse_rational("1/0").has_value());
    EXPECT_FALSE(parse_rational("abc").has_value());
    EXPECT_EQ(*parse_decimal("0.05"), Rational(1, 20));
    EXPECT_EQ(*parse_decimal("-1.25"), Rational(-5, 4));
}

TEST(Rational, FactorialsBinomialsSquareRoots)
{
    EXPECT_EQ(factorial(6), Rational(720));
    EXPECT_EQ(binomial(7, 3), Rational(35));
    EXPECT_EQ(*exact_sqrt(Rational(9, 16)), Rational(3, 4));
    EXPECT_FALSE(exact_sqrt(Rational(2)).has_value());
}

TEST(QComplexArith, ConjugateAndDivision)
{
    const QComplex a(Rational(1), Rational(2));
    const QComplex b(Rational(3), Rational(-1));
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(a * a.conj(), QComplex(a.norm2()));
}

TEST(MultiIndexBasics, DegreeAndFactorial)
{
    const MultiIndex P{2, 1, 0};
    EXPECT_EQ(P.size(), 3);
    EXPECT_EQ(P.degree(), 3);
    EXPECT_EQ(P.factorial(), Rational(2));
    EXPECT_EQ(multi_indices_of_degree(2, 3).size(), 4u);
}

TEST(SeriesArith, ProductRespectsTruncation)
{
    const Series r = Series::norm2(2).with_prec(6);
    const Series r2 = r * r;
    EXPECT_EQ(r2.prec(), 6);
    EXPECT_EQ(r2.max_degree(), 4);
    const Series r4 = r2 * r2;
    EXPECT_TRUE(r4.is_zero());
    EXPECT_EQ(r4.prec(), 6);
}

TEST(SeriesArith, ExpInvertsLog)
{
    const Series z = Series::z(2, 0) + Series::zbar(2, 1) * QComplex(Rational(1, 3));
    const Series x = (z + Series::norm2(2)).with_prec(7);
    const Series back = exp_series(log1p_series(x, 7), 7);
    EXPECT_EQ(back, (Series::constant(2, QComplex(1)) + x).with_prec(7));
}

TEST(SeriesArith, BidegreeParts)
{
    const Series s = Series::z(1, 0) * Series::z(1, 0) * Series::zbar(1, 0) + Series::norm2(1);
    EXPECT_EQ(s.part(2, 1).size(), 1u);
    EXPECT_EQ(s.balanced(), Series::norm2(1));
    EXPECT_EQ(s.homogeneous(3).size(), 1u);
}

TEST(SeriesArith, DerivativesAndRealness)
{
    const Series r = Series::norm2(2);
    EXPECT_EQ(r.d(0), Series::zbar(2, 0));
    EXPECT_EQ(r.dbar(1), Series::z(2, 1));
    EXPECT_TRUE(r.is_real_valued());
    EXPECT_FALSE(Series::z(2, 0).is_real_valued());
    const Series c = Series::z(2, 0) * QComplex(Rational(0), Rational(1));
    EXPECT_EQ(c.conj(), Series::zbar(2, 0) * QComplex(Rational(0), Rational(-1)));
}

TEST(SeriesArith, SubstitutionComposes)
{
    // f(z) = z^2 with z -> z + z^2 gives z^2 + 2 z^3 + z^4
    const Series z = Series::z(1, 0);
    const Series f = z * z;
    const std::vector<Series> zs{z + z * z};
    const std::vector<Series> zbs{Series::zbar(1, 0)};
    const Series g = substitute(f, zs, zbs, 4);
    EXPECT_EQ(g, (z * z + z * z * z * QComplex(2) + z * z * z * z).with_prec(4));
}
