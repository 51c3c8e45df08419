#ifndef BERGMAN_MOMENTS_HPP
#define BERGMAN_MOMENTS_HPP

#include <functional>
#include <map>
#include <span>
#include <utility>

#include <bergman/asymptotic.hpp>
#include <bergman/series.hpp>

namespace bergman
{

// Integral of z^P zbar^Q |z|^{2q} e^{-m|z|^2} over C^n against the Euclidean
// volume normalized so that the integral of e^{-m|z|^2} is m^{-n}:
// zero unless P == Q, else (n+p+q-1)! P! / ((n+p-1)! m^{n+p+q}).
AsymptoticSeries monomial_moment(const MultiIndex &P, const MultiIndex &Q, int q, int n);

// Polynomial whose pieces carry a power m^mu and a weight tag (twice the
// weight, so half-integers stay integral). Keyed by (mu, 2*weight).
struct GradedPolynomial {
    int n = 1;
    std::map<std::pair<int, int>, Series> parts;

    void add(int mu, int weight2, const Series &s);
    // Product keeping only terms with total degree - 2*mu <= max_excess.
    static GradedPolynomial multiply(const GradedPolynomial &a, const GradedPolynomial &b, int max_excess);
    // exp of a graded polynomial without constant term, truncated by excess.
    static GradedPolynomial exp(const GradedPolynomial &x, int max_excess);
    // Every term c m^mu z^I zbar^J, weight w, satisfies mu + w - (|I|+|J|)/2 == 0.
    bool is_regular() const;
};

// K(f) = integral of f e^{-m|z|^2} dV_0 term by term; only balanced monomials
// contribute. The result is exact.
AsymptoticSeries K_functional(const Series &poly);
AsymptoticSeries K_functional(const GradedPolynomial &poly);

// L(A) for a homogeneous balanced polynomial of bidegree (p,p), computed from
// the monomial coefficients: sum_alpha alpha! c_{alpha alpha} / p!.
Rational L_functional(const Series &poly);
QComplex L_functional_complex(const Series &poly);

// Coefficient function of a (p,p) tensor: A(I, J) for index tuples I, J.
using TensorCoefficients = std::function<QComplex(std::span<const int>, std::span<const int>)>;

// (1/p!) sum_{I in [n]^p} sum_{sigma in S_p} A(I, sigma(I)), by enumeration.
QComplex L_permutation_sum(const TensorCoefficients &A, int n, int p);

// Fully symmetric coefficient function of a homogeneous (p,p) polynomial:
// A(I, J) = c_{alpha beta} alpha! beta! / (p!)^2 with alpha, beta the
// multi-indices of I and J.
TensorCoefficients symmetric_coefficients(const Series &poly);

} // namespace bergman

#endif
