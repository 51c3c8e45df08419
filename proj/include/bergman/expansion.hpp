#ifndef BERGMAN_EXPANSION_HPP
#define BERGMAN_EXPANSION_HPP

#include <string>
#include <vector>

#include <bergman/asymptotic.hpp>
#include <bergman/curvature.hpp>
#include <bergman/jet.hpp>
#include <bergman/moments.hpp>

namespace bergman
{

// Values at the point of the first coefficients of
// density(m) = m^n (a0 + a1/m + a2/m^2 + a3/m^3 + ...).
struct DensityCoefficients {
    Rational a0 = 1, a1, a2, a3;
    int order = 3;

    std::vector<Rational> as_vector() const;
    friend bool operator==(const DensityCoefficients &x, const DensityCoefficients &y)
    {
        return x.as_vector() == y.as_vector();
    }
};

// Jet degree needed for a series of the given relative order.
int required_degree_for_order(int order);

// exp(m xi + log det g), keeping terms m^mu z^I zbar^J with |I|+|J| - 2 mu <= max_excess.
// Pieces are tagged with their weight; the result is checked to be regular.
GradedPolynomial kernel_exponential(const PotentialJet &jet, int max_excess);

// |lambda_P|^{-2} = K(z^P zbar^P e^{m xi + eta}) through relative order `order`
// (coefficients of m^{-(n+|P|+k)}, k <= order).
AsymptoticSeries lambda_inverse_series(const PotentialJet &jet, const MultiIndex &P, int order);

// B_PQ / sqrt(B_PP B_QQ) with B_PQ = K(z^P zbar^Q e^{m xi + eta}); terms of
// excess up to 2*order are kept.
RadicalSeries peak_inner_product_series(const PotentialJet &jet, const MultiIndex &P, const MultiIndex &Q,
                                        int order);

Rational sigma3_closed(const ScalarInvariants &inv);
// m^{-3} coefficient of sum_i |(S_0, S_i)|^2.
Rational sigma3_via_inner_products(const PotentialJet &jet);

DensityCoefficients density_coeffs_bruteforce(const PotentialJet &jet, int order = 3);

enum class A3Form {
    // Divergence and Laplacian-of-norm terms used as they stand.
    verbatim,
    // Rewritten in first-order contractions (|D'Ric|^2, |D'R|^2, ...).
    reduced,
};
DensityCoefficients density_coeffs_closed_form(const ScalarInvariants &inv, A3Form form = A3Form::verbatim);
Rational a3_verbatim(const ScalarInvariants &inv);
Rational a3_reduced(const ScalarInvariants &inv);

struct Residual {
    std::string group;
    std::string name;
    Rational lhs;
    Rational rhs;
    Rational residual() const { return lhs - rhs; }
};

enum class LhsMethod {
    // L from monomial coefficients.
    polynomial,
    // L by enumerating index tuples and permutations of a symmetric tensor.
    permutation,
};

// Groups: "prop44" (moment formulas up to second order), "claims" (the
// thirteen third-order L identities), "prop52" (their weighted aggregate),
// "prop53" (Laplacian/divergence identities), "sigma3", "dual" (brute-force
// vs closed-form coefficients). An empty list means all groups.
std::vector<Residual> identity_suite(const PotentialJet &jet, const std::vector<std::string> &groups = {},
                                     LhsMethod method = LhsMethod::polynomial);

const std::vector<std::string> &identity_groups();

} // namespace bergman

#endif
