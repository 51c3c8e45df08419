#include <bergman/verify.hpp>

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <bergman/curvature.hpp>

namespace bergman
{

PotentialJet cpn_jet(int n, int degree)
{
    const Series r = Series::norm2(n).with_prec(degree);
    return PotentialJet(n, degree, r - log1p_series(r, degree));
}

std::vector<Rational> cpn_density_polynomial(int n, int order)
{
    // e_j(1, ..., n) by the recurrence for prod (m + k)
    std::vector<Rational> e(static_cast<std::size_t>(n + 1));
    e[0] = 1;
    for (int k = 1; k <= n; ++k) {
        for (int j = k; j >= 1; --j) {
            e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * k;
        }
    }
    std::vector<Rational> out(static_cast<std::size_t>(order + 1));
    for (int j = 0; j <= order && j <= n; ++j) {
        out[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(j)];
    }
    return out;
}

CpnReport cpn_exact_check(int n, int order)
{
    if (n < 1 || n > 4) {
        throw std::invalid_argument("cpn_exact_check: n must be in 1..4");
    }
    if (order < 0 || order > 3) {
        throw std::invalid_argument("cpn_exact_check: order must be in 0..3");
    }
    CpnReport r;
    r.n = n;
    r.expected = cpn_density_polynomial(n, order);
    const PotentialJet jet = cpn_jet(n, required_degree_for_order(std::max(order, 3)));
    const auto cut = [order](std::vector<Rational> v) {
        v.resize(static_cast<std::size_t>(order + 1));
        return v;
    };
    r.bruteforce = cut(density_coeffs_bruteforce(jet, 3).as_vector());
    r.closed_form = cut(density_coeffs_closed_form(curvature_invariants(jet)).as_vector());
    r.pass = r.expected == r.bruteforce && r.expected == r.closed_form;
    return r;
}

RiemannRochReport riemann_roch_check(int n, const std::vector<long> &m_list)
{
    if (n < 1 || n > 4) {
        throw std::invalid_argument("riemann_roch_check: n must be in 1..4");
    }
    RiemannRochReport r;
    r.n = n;
    const Rational vol = Rational(1) / factorial(static_cast<unsigned>(n));

    const std::vector<Rational> e = cpn_density_polynomial(n, 3);
    for (const auto &c : e) {
        r.binomial.push_back(c * vol);
    }

    const DensityCoefficients a = density_coeffs_closed_form(curvature_invariants(cpn_jet(n, 8)));
    for (const auto &c : a.as_vector()) {
        r.integrated.push_back(c * vol);
    }

    // Todd classes: 1, c1/2, (c1^2 + c2)/12, c1 c2 / 24, paired with omega^{n-j}/(n-j)!.
    const Rational c1 = n + 1;
    const Rational c2 = binomial(static_cast<unsigned>(n + 1), 2);
    const Rational td[4] = {1, c1 / 2, (c1 * c1 + c2) / 12, c1 * c2 / 24};
    for (int j = 0; j < 4; ++j) {
        r.characteristic.push_back(j <= n ? td[j] / factorial(static_cast<unsigned>(n - j)) : Rational(0));
    }

    bool ok = r.binomial == r.integrated && r.binomial == r.characteristic;
    for (long m : m_list) {
        if (m < 0) {
            throw std::invalid_argument("riemann_roch_check: m must be non-negative");
        }
        RiemannRochReport::Sample s;
        s.m = m;
        s.dimension = binomial(static_cast<unsigned>(m + n), static_cast<unsigned>(n));
        Rational mp = 1;
        std::vector<Rational> pw(static_cast<std::size_t>(n + 1));
        for (int k = 0; k <= n; ++k) {
            pw[static_cast<std::size_t>(k)] = mp;
            mp *= m;
        }
        for (int j = 0; j < 4 && j <= n; ++j) {
            s.truncated += r.integrated[static_cast<std::size_t>(j)] * pw[static_cast<std::size_t>(n - j)];
        }
        // all of C(m+n, n) is captured when n <= 3
        if (n <= 3 && s.truncated != s.dimension) {
            ok = false;
        }
        r.samples.push_back(std::move(s));
    }
    r.pass = ok;
    return r;
}

std::string Perturbation::mode_string() const
{
    switch (kind) {
    case Kind::none:
        return "none";
    case Kind::sym:
        return "sym";
    case Kind::freq:
        return "freq" + std::to_string(K);
    }
    return "none";
}

Perturbation Perturbation::parse(const std::string &mode, const Rational &eps)
{
    Perturbation p;
    p.eps = eps;
    if (mode == "none") {
        p.kind = Kind::none;
        p.eps = 0;
    } else if (mode == "sym") {
        p.kind = Kind::sym;
    } else if (mode.rfind("freq", 0) == 0 && mode.size() > 4) {
        p.kind = Kind::freq;
        try {
            std::size_t used = 0;
            p.K = std::stoi(mode.substr(4), &used);
            if (used != mode.size() - 4) {
                throw std::invalid_argument("");
            }
        } catch (const std::exception &) {
            throw std::invalid_argument("perturbation mode '" + mode + "': expected freq<K> with integer K");
        }
        if (p.K < 1 || p.K > 16) {
            throw std::invalid_argument("perturbation mode '" + mode + "': K must be in 1..16");
        }
    } else {
        throw std::invalid_argument("perturbation mode '" + mode + "': expected none, sym or freq<K>");
    }
    return p;
}

double Perturbation::psi(std::complex<double> z) const
{
    const double e = eps.get_d();
    const double t = std::norm(z);
    switch (kind) {
    case Kind::none:
        return 0;
    case Kind::sym:
        return e * t * t / ((1 + t) * (1 + t));
    case Kind::freq:
        return e * std::pow(z, K).real() / std::pow(1 + t, K);
    }
    return 0;
}

Series Perturbation::local_potential(const QComplex &x, int degree) const
{
    const Series z = Series::z(1, 0);
    const Series zb = Series::zbar(1, 0);
    const auto mul = [degree](const Series &a, const Series &b) { return Series::multiply(a, b, degree); };

    // |x + z|^2 = |x|^2 + u
    const Series u = (z * x.conj() + zb * x + z * zb).with_prec(degree);
    const Rational c = 1 + x.norm2();
    const Series L = log1p_series(u * (Rational(1) / c), degree);
    Series phi = L;

    if (kind == Kind::sym) {
        const Series s = Series::constant(1, QComplex(x.norm2())) + u;
        const Series inv2 = exp_series(L * Rational(-2), degree) * (Rational(1) / (c * c));
        phi += mul(mul(s, s), inv2) * eps;
    } else if (kind == Kind::freq) {
        Series w = Series::constant(1, x, degree) + z.with_prec(degree);
        Series pw = Series::constant(1, QComplex(1), degree);
        for (int k = 0; k < K; ++k) {
            pw = mul(pw, w);
        }
        const Series re = (pw + pw.conj()) * Rational(1, 2);
        Rational cK = 1;
        for (int k = 0; k < K; ++k) {
            cK *= c;
        }
        const Series invK = exp_series(L * Rational(-K), degree) * (Rational(1) / cK);
        phi += mul(re, invK) * eps;
    }
    // constants do not enter the metric
    return phi - Series::constant(1, phi.at_origin(), degree);
}

namespace
{

// P_count(x) and its derivative by the three-term recurrence.
std::pair<double, double> legendre(int count, double x)
{
    double p0 = 1, p1 = x;
    for (int k = 2; k <= count; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, count * (x * p1 - p0) / (x * x - 1)};
}

} // namespace

void gauss_legendre(int count, std::vector<double> &nodes, std::vector<double> &weights)
{
    if (count < 1) {
        throw std::invalid_argument("gauss_legendre: need at least one node");
    }
    nodes.assign(static_cast<std::size_t>(count), 0.0);
    weights.assign(static_cast<std::size_t>(count), 0.0);
    for (int i = 0; i < (count + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(count, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double dp = legendre(count, x).second;
        const double w = 2 / ((1 - x * x) * dp * dp);
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(count - 1 - i)] = x;
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(count - 1 - i)] = w;
    }
}

bool GramMatrix::is_hermitian(double tol) const
{
    const double scale = entries.cwiseAbs().maxCoeff();
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Rational fs_gram_diagonal(int m, int A)
{
    return factorial(static_cast<unsigned>(A)) * factorial(static_cast<unsigned>(m - A)) /
           factorial(static_cast<unsigned>(m + 1));
}

namespace
{

// exp(-m psi) * (dd^c phi / dd^c log(1+|z|^2)) at r = tan(beta), angle theta.
double angular_factor(const Perturbation &p, int m, double sb, double cb, double theta)
{
    const double e = p.eps.get_d();
    double psi = 0, ratio = 1;
    if (p.kind == Perturbation::Kind::sym) {
        const double s2 = sb * sb;
        psi = e * s2 * s2;
        ratio = 1 + e * (4 * s2 - 6 * s2 * s2);
    } else if (p.kind == Perturbation::Kind::freq) {
        const double base = std::pow(sb * cb, p.K) * std::cos(p.K * theta);
        psi = e * base;
        ratio = 1 - e * p.K * (p.K + 1) * base;
    }
    if (!(ratio > 0)) {
        throw std::domain_error("cp1_gram: perturbed metric is not positive (eps too large)");
    }
    return std::exp(-m * psi) * ratio;
}

} // namespace

GramMatrix cp1_gram(const Perturbation &p, int m, const QuadratureSpec &q)
{
    if (m < 0 || m > 200) {
        throw std::invalid_argument("cp1_gram: m must be in 0..200");
    }
    const int nr = q.radial;
    const int na = q.angular_for(m);
    if (nr < 1 || na < 1 || static_cast<long>(nr) * na > 50'000'000L) {
        throw std::invalid_argument("cp1_gram: quadrature budget exceeded or empty");
    }
    std::vector<double> x, w;
    gauss_legendre(nr, x, w);

    std::vector<std::complex<double>> phase(static_cast<std::size_t>(na));
    for (int l = 0; l < na; ++l) {
        phase[static_cast<std::size_t>(l)] = std::polar(1.0, 2 * std::numbers::pi * l / na);
    }
    const int size = m + 1;
    GramMatrix g;
    g.m = m;
    g.entries = Eigen::MatrixXcd::Zero(size, size);
    std::vector<std::complex<double>> D(static_cast<std::size_t>(2 * m + 1));
    std::vector<double> a(static_cast<std::size_t>(na));
    std::vector<double> rad(static_cast<std::size_t>(2 * m + 1));

    for (int j = 0; j < nr; ++j) {
        const double beta = std::numbers::pi / 4 * (x[static_cast<std::size_t>(j)] + 1);
        const double wb = std::numbers::pi / 4 * w[static_cast<std::size_t>(j)];
        const double sb = std::sin(beta), cb = std::cos(beta);
        const double logtan = std::log(sb / cb);
        const double logcos = std::log(cb);

        for (int l = 0; l < na; ++l) {
            a[static_cast<std::size_t>(l)] = angular_factor(p, m, sb, cb, 2 * std::numbers::pi * l / na);
        }
        // D(k) = int e^{i k theta} a dtheta, uniform rule
        for (int k = -m; k <= m; ++k) {
            std::complex<double> s = 0;
            for (int l = 0; l < na; ++l) {
                const long idx = ((static_cast<long>(k) * l) % na + na) % na;
                s += phase[static_cast<std::size_t>(idx)] * a[static_cast<std::size_t>(l)];
            }
            D[static_cast<std::size_t>(k + m)] = s * (2 * std::numbers::pi / na);
        }
        // (1/pi) tan^{A+B+1} cos^{2m+2} dbeta
        for (int s = 0; s <= 2 * m; ++s) {
            rad[static_cast<std::size_t>(s)] = wb / std::numbers::pi * std::exp((s + 1) * logtan + (2 * m + 2) * logcos);
        }
        for (int A = 0; A < size; ++A) {
            for (int B = 0; B < size; ++B) {
                g.entries(A, B) += rad[static_cast<std::size_t>(A + B)] * D[static_cast<std::size_t>(A - B + m)];
            }
        }
    }
    for (int A = 0; A < size; ++A) {
        if (!(g.entries(A, A).real() > 0)) {
            throw std::domain_error("cp1_gram: non-positive diagonal entry (under-resolved quadrature)");
        }
    }
    return g;
}

double density_from_gram(const Eigen::MatrixXcd &gram, const Eigen::VectorXcd &values)
{
    if (gram.rows() != gram.cols() || gram.rows() != values.size()) {
        throw std::invalid_argument("density_from_gram: shape mismatch");
    }
    Eigen::VectorXd d(gram.rows());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const double v = gram(i, i).real();
        if (!(v > 0)) {
            throw std::domain_error("density_from_gram: Gram matrix is not positive definite");
        }
        d(i) = 1 / std::sqrt(v);
    }
    const Eigen::MatrixXcd G = d.asDiagonal() * gram * d.asDiagonal();
    Eigen::LLT<Eigen::MatrixXcd> llt(G);
    if (llt.info() != Eigen::Success) {
        throw std::domain_error("density_from_gram: Gram matrix is not positive definite");
    }
    const Eigen::VectorXcd scaled = d.cast<std::complex<double>>().cwiseProduct(values);
    return llt.matrixL().solve(scaled).squaredNorm();
}

double cp1_density(const GramMatrix &gram, const Perturbation &p, std::complex<double> x)
{
    const int m = gram.m;
    // e^{-m phi / 2} folded into each value; log form keeps large |x|^A finite
    const double half = -m * (std::log1p(std::norm(x)) + p.psi(x)) / 2;
    Eigen::VectorXcd v(m + 1);
    const double r = std::abs(x);
    for (int A = 0; A <= m; ++A) {
        if (r == 0) {
            v(A) = A == 0 ? std::exp(half) : 0.0;
        } else {
            v(A) = std::polar(std::exp(A * std::log(r) + half), A * std::arg(x));
        }
    }
    return density_from_gram(gram.entries, v);
}

FitReport fit_coefficients(const std::vector<FitReport::Sample> &samples, const std::vector<Rational> &reference,
                           int terms)
{
    if (terms < 1 || terms > 6) {
        throw std::invalid_argument("fit_coefficients: terms must be in 1..6");
    }
    if (samples.size() < 6 || samples.size() < static_cast<std::size_t>(terms + 1)) {
        throw std::invalid_argument("fit_coefficients: need at least 6 samples and more samples than terms");
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].m <= samples[i - 1].m) {
            throw std::invalid_argument("fit_coefficients: m values must be strictly increasing");
        }
    }
    if (samples.front().m < 1) {
        throw std::invalid_argument("fit_coefficients: m must be positive");
    }
    const auto N = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd X(N, terms);
    Eigen::VectorXd y(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        const double inv = 1.0 / samples[static_cast<std::size_t>(i)].m;
        double pw = 1;
        for (int j = 0; j < terms; ++j) {
            X(i, j) = pw;
            pw *= inv;
        }
        y(i) = samples[static_cast<std::size_t>(i)].density_over_m;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    FitReport r;
    r.samples = samples;
    r.terms = terms;
    r.condition = sv(0) / sv(sv.size() - 1);
    if (!(r.condition < 1e12)) {
        throw std::domain_error("fit_coefficients: design matrix is ill-conditioned (m range too narrow)");
    }
    const Eigen::VectorXd c = svd.solve(y);
    r.fitted.assign(c.data(), c.data() + c.size());
    r.residual_norm = (X * c - y).norm();
    r.reference = reference;
    for (std::size_t j = 0; j < r.fitted.size() && j < reference.size(); ++j) {
        const double ref = reference[j].get_d();
        const double err = std::abs(r.fitted[j] - ref);
        r.abs_error.push_back(err);
        r.rel_error.push_back(ref != 0 ? err / std::abs(ref) : err);
    }
    return r;
}

std::vector<Rational> cp1_reference_coefficients(const Perturbation &p, const QComplex &x)
{
    const Series phi = p.local_potential(x, 8);
    return density_coeffs_closed_form(potential_invariants(phi)).as_vector();
}

Cp1FitRun fit_cp1(const Perturbation &p, const std::vector<int> &m_list, const QuadratureSpec &q, const QComplex &x,
                  int terms, int threads)
{
    Cp1FitRun run;
    run.perturbation = p;
    run.point = x;
    run.quadrature = q;
    const std::complex<double> xd(x.re.get_d(), x.im.get_d());
    std::vector<FitReport::Sample> samples(m_list.size());
    std::vector<std::exception_ptr> errors(m_list.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < m_list.size(); i = next++) {
            try {
                const int m = m_list[i];
                const GramMatrix g = cp1_gram(p, m, q);
                samples[i] = {m, cp1_density(g, p, xd) / m};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int nt = std::max(1, std::min<int>(threads, static_cast<int>(m_list.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) {
        pool.emplace_back(work);
    }
    work();
    for (auto &t : pool) {
        t.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    run.fit = fit_coefficients(samples, cp1_reference_coefficients(p, x), terms);
    return run;
}

} // namespace bergman
