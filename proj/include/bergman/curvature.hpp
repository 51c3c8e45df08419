#ifndef BERGMAN_CURVATURE_HPP
#define BERGMAN_CURVATURE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <bergman/jet.hpp>

namespace bergman
{

// Conventions: R_{i jbar k lbar} = d_k dbar_l g_{ij} - g^{p qbar} d_k g_{i qbar} dbar_l g_{p jbar},
// Ric_{i jbar} = -g^{k lbar} R_{i jbar k lbar} = -d_i dbar_j log det g, rho = g^{i jbar} Ric_{i jbar},
// Laplacian = g^{i jbar} d_i dbar_j. Comma indices are covariant derivatives
// taken left to right. Sums below are written in a unitary frame at the point.
struct ScalarInvariants {
    Rational rho;
    Rational lap_rho;
    Rational laplap_rho;
    Rational normR2;
    Rational normRic2;
    Rational normDrho2;   // sum |rho_{,i}|^2
    Rational normDRic2;   // sum |Ric_{i jbar, k}|^2
    Rational normDR2;     // sum |R_{i jbar k lbar, p}|^2
    Rational R_Ric_Ric;    // R_{i jbar k lbar} Ric_{j ibar} Ric_{l kbar}
    Rational Ric_R_R;      // Ric_{i jbar} R_{j kbar p qbar} R_{k ibar q pbar}
    Rational sigma1R;       // R_{i jbar k lbar} R_{l kbar p qbar} R_{q pbar j ibar}
    Rational sigma2R;       // R_{i jbar k lbar} R_{p ibar q kbar} R_{j pbar l qbar}
    Rational sigma3Ric;   // Ric_{i jbar} Ric_{j kbar} Ric_{k ibar}
    Rational divdiv_R_Ric; // (R_{i jbar k lbar} Ric_{j ibar})_{,l kbar}
    Rational divdiv_rhoRic; // (rho Ric_{j ibar})_{,jbar i}
    Rational ric_hess_rho; // Ric_{i jbar} rho_{,j ibar}
    Rational cross_R_D2Ric; // R_{j ibar l kbar} Ric_{i jbar, k lbar}
    Rational lap_normR2;
    Rational lap_normRic2;
    Rational lap_rho2;

    // Whether the derivative-heavy fields (those entering a_3) were computed.
    bool third_order = false;

    // (name, value) in declaration order; third-order fields only when present.
    std::vector<std::pair<std::string, Rational>> fields() const;
};

enum class CurvatureOrder {
    // rho, lap_rho, |R|^2, |Ric|^2: needs a jet of degree 6.
    through_a2,
    // everything: needs a jet of degree 8.
    through_a3,
};

// Minimum jet degree for the given order.
int required_degree(CurvatureOrder order);

// Invariants at the base point of a K-gauge jet.
ScalarInvariants curvature_invariants(const PotentialJet &jet, CurvatureOrder order = CurvatureOrder::through_a3);

// Invariants at the origin for a real Kahler potential in arbitrary
// holomorphic coordinates (g = d dbar potential, any positive g(0)).
ScalarInvariants potential_invariants(const Series &potential, CurvatureOrder order = CurvatureOrder::through_a3);

// Homogeneous pieces of xi (e_k) and of log det g (c_k) for a K-gauge jet,
// with the balanced (p,p) parts of the even ones.
struct ExpansionTerms {
    int n = 1;
    std::map<int, Series> e; // degrees 4..max_degree
    std::map<int, Series> c; // degrees 2..max_degree-2
    Series e6_tilde, e8_tilde;
    Series c4_tilde, c6_tilde;
};

ExpansionTerms expansion_terms(const PotentialJet &jet);

// Checks the low-order pieces of xi and log det g against their expressions in
// curvature at the base point (e_4, e_5, balanced e_6, c_2, c_3, balanced c_4).
// Returns (identity name, residual) for each checked identity; a residual is
// the difference polynomial and is zero when the identity holds.
std::vector<std::pair<std::string, Series>> structural_residuals(const PotentialJet &jet);

} // namespace bergman

#endif
