#ifndef BERGMAN_VERIFY_HPP
#define BERGMAN_VERIFY_HPP

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <bergman/expansion.hpp>
#include <bergman/jet.hpp>

namespace bergman
{

// xi for the Fubini-Study weight a = (1+|z|^2)^{-1}: |z|^2 - log(1+|z|^2) to the given degree.
PotentialJet cpn_jet(int n, int degree = 8);

// Top coefficients of prod_{k=1..n} (m+k), i.e. e_j(1..n), j = 0..order.
std::vector<Rational> cpn_density_polynomial(int n, int order = 3);

struct CpnReport {
    int n = 0;
    std::vector<Rational> expected;
    std::vector<Rational> bruteforce;
    std::vector<Rational> closed_form;
    bool pass = false;
};
CpnReport cpn_exact_check(int n, int order = 3);

// dim H^0(CP^n, O(m)) = C(m+n, n) against the integrated expansion.
// Convention: the Kahler form is the curvature of O(1) (integral of omega^n is 1),
// dV = omega^n / n!, so vol = 1/n! and c_k(CP^n) = C(n+1, k) H^k.
struct RiemannRochReport {
    int n = 0;
    // coefficients of m^n, m^{n-1}, m^{n-2}, m^{n-3}
    std::vector<Rational> binomial;
    std::vector<Rational> integrated;     // vol * a_j from the local expansion
    std::vector<Rational> characteristic; // Todd-class pairing with c_1, c_2
    struct Sample {
        long m;
        Rational dimension;
        Rational truncated; // four-term asymptotic polynomial at m
    };
    std::vector<Sample> samples;
    bool pass = false;
};
RiemannRochReport riemann_roch_check(int n, const std::vector<long> &m_list);

// Weight on the affine chart of CP^1: phi = log(1+|z|^2) + psi.
//   sym:  psi = eps |z|^4 / (1+|z|^2)^2
//   freq: psi = eps Re(z^K) / (1+|z|^2)^K
struct Perturbation {
    enum class Kind { none, sym, freq };
    Kind kind = Kind::none;
    Rational eps = 0;
    int K = 0;

    // "none", "sym", "freqK" (e.g. "freq3")
    std::string mode_string() const;
    static Perturbation parse(const std::string &mode, const Rational &eps);

    double psi(std::complex<double> z) const;
    // Series of phi(x + w) in w (constant dropped) through total degree `degree`.
    Series local_potential(const QComplex &x, int degree) const;
};

struct QuadratureSpec {
    int radial = 200;
    // 0 picks 2m + 64
    int angular = 0;

    int angular_for(int m) const { return angular > 0 ? angular : 2 * m + 64; }
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int count, std::vector<double> &nodes, std::vector<double> &weights);

// F_{AB} = (z^A, z^B) for A, B = 0..m, sections of O(m) as degree <= m polynomials.
struct GramMatrix {
    int m = 0;
    Eigen::MatrixXcd entries;

    bool is_hermitian(double tol = 1e-12) const;
};

// Exact Fubini-Study value A!(m-A)!/(m+1)! of the diagonal entry.
Rational fs_gram_diagonal(int m, int A);

// r = tan(beta) on [0, pi/2) (Gauss-Legendre) times a uniform angular rule.
// Summation is radial-major, ascending. Throws if the metric is not positive
// on a node or the result is not positive definite.
GramMatrix cp1_gram(const Perturbation &p, int m, const QuadratureSpec &q);

// values^* F^{-1} values for a Gram matrix F of any section basis and the
// (weighted) values of those sections at a point. F is rescaled by its own
// diagonal before the Cholesky factorization.
double density_from_gram(const Eigen::MatrixXcd &gram, const Eigen::VectorXcd &values);

// Sum over an orthonormal basis of |s(x)|^2_{h^m} for the monomial basis.
double cp1_density(const GramMatrix &gram, const Perturbation &p, std::complex<double> x);

struct FitReport {
    struct Sample {
        int m;
        double density_over_m;
    };
    std::vector<Sample> samples;
    int terms = 3;                 // model sum_{j<terms} c_j / m^j
    std::vector<double> fitted;    // c_0, c_1, ...
    std::vector<Rational> reference; // a_0, a_1, a_2 (a_3) at the point
    std::vector<double> abs_error;
    std::vector<double> rel_error; // abs_error / |reference|, or abs_error when reference is 0
    double residual_norm = 0;
    double condition = 0;
};

// Least squares of density/m against {1, 1/m, ..., 1/m^{terms-1}}.
// `reference` may be empty (errors then left empty).
FitReport fit_coefficients(const std::vector<FitReport::Sample> &samples, const std::vector<Rational> &reference,
                           int terms = 3);

// Closed-form a_0..a_3 at the point for the perturbed weight.
std::vector<Rational> cp1_reference_coefficients(const Perturbation &p, const QComplex &x);

struct Cp1FitRun {
    Perturbation perturbation;
    QComplex point;
    QuadratureSpec quadrature;
    FitReport fit;
};
// Samples density/m over m_list (m values in parallel when threads > 1) and fits.
Cp1FitRun fit_cp1(const Perturbation &p, const std::vector<int> &m_list, const QuadratureSpec &q, const QComplex &x,
                  int terms = 3, int threads = 1);

} // namespace bergman

#endif
