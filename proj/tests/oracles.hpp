#ifndef BERGMAN_TESTS_ORACLES_HPP
#define BERGMAN_TESTS_ORACLES_HPP

#include <random>

#include <bergman/asymptotic.hpp>
#include <bergman/series.hpp>

namespace testing_oracles
{

using namespace bergman;

// Integral of |z^P|^2 |z|^{2q} e^{-m|z|^2}: expand |z|^{2q} multinomially and
// use the one-variable integral of |z|^{2k} e^{-m|z|^2} = k!/m^{k+1}.
inline AsymptoticSeries gamma_moment(const MultiIndex &P, int q)
{
    const int n = P.size();
    Rational total;
    for (const MultiIndex &beta : multi_indices_of_degree(n, q)) {
        Rational t = factorial(static_cast<unsigned>(q)) / beta.factorial();
        for (int i = 0; i < n; ++i) {
            t *= factorial(static_cast<unsigned>(P[i] + beta[i]));
        }
        total += t;
    }
    return AsymptoticSeries::term(QComplex(total), 2 * (n + P.degree() + q));
}

// Random homogeneous (p,p) polynomial with complex rational coefficients,
// including unbalanced monomials.
inline Series random_balanced(int n, int p, std::mt19937_64 &rng)
{
    Series s(n);
    const auto idx = multi_indices_of_degree(n, p);
    for (const auto &a : idx) {
        for (const auto &b : idx) {
            if (rng() % 3 == 0) {
                continue;
            }
            Rational re(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
            Rational im(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 4));
            re.canonicalize();
            im.canonicalize();
            s += Series::monomial(n, a, b, QComplex(re, im));
        }
    }
    return s;
}

} // namespace testing_oracles

#endif
