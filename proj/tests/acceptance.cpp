// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include <bergman/cli.hpp>
#include <bergman/curvature.hpp>
#include <bergman/expansion.hpp>
#include <bergman/moments.hpp>
#include <bergman/verify.hpp>

#include "oracles.hpp"

using namespace bergman;

namespace
{

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &why)
    {
        if (!ok) {
            if (pass) {
                detail << " first failure: " << why << ";";
            }
            pass = false;
        }
    }
};

int failures = 0;

void report(int id, const std::string &title, const std::function<void(Check &)> &body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
        body(c);
    } catch (const std::exception &e) {
        c.pass = false;
        c.detail << " exception: " << e.what() << ";";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !c.pass;
    std::printf("[%s] %d. %s --%s (%.1fs)\n", c.pass ? "PASS" : "FAIL", id, title.c_str(), c.detail.str().c_str(),
                secs);
    std::fflush(stdout);
}

// Shared random-jet pool: 20 jets in n = 2 and 5 in n = 3, all groups, plus the
// permutation route for the third-order L identities.
struct PoolResult {
    int jets = 0;
    std::map<std::string, std::pair<int, int>> by_group; // checked, nonzero
    int permutation_checked = 0, permutation_nonzero = 0;
};

const PoolResult &pool()
{
    static const PoolResult r = [] {
        PoolResult out;
        const std::pair<int, int> plan[] = {{2, 20}, {3, 5}};
        for (const auto &[n, count] : plan) {
            for (int t = 0; t < count; ++t) {
                const PotentialJet j = random_kgauge_jet(n, 8, 1000 + static_cast<std::uint64_t>(t));
                ++out.jets;
                for (const auto &res : identity_suite(j)) {
                    auto &g = out.by_group[res.group];
                    ++g.first;
                    g.second += res.residual() != 0;
                }
                for (const auto &res : identity_suite(j, {"claims"}, LhsMethod::permutation)) {
                    ++out.permutation_checked;
                    out.permutation_nonzero += res.residual() != 0;
                }
            }
        }
        return out;
    }();
    return r;
}

std::string group_summary(const PoolResult &p, const std::string &g)
{
    const auto it = p.by_group.find(g);
    if (it == p.by_group.end()) {
        return g + ": none";
    }
    return g + ": " + std::to_string(it->second.first - it->second.second) + "/" + std::to_string(it->second.first) +
           " zero";
}

std::string run_cli(const std::vector<std::string> &args, int &code)
{
    std::ostringstream out, err;
    std::vector<std::string> full = {"bergman"};
    full.insert(full.end(), args.begin(), args.end());
    code = run(full, out, err);
    return out.str();
}

} // namespace

int main()
{
    report(1, "projective-space golden coefficients, both paths, n = 1..4", [](Check &c) {
        for (int n = 1; n <= 4; ++n) {
            const Rational N = n;
            const std::vector<Rational> expected = {1, N * (N + 1) / 2, N * (N + 1) * (N - 1) * (3 * N + 2) / 24,
                                                    N * N * (N + 1) * (N + 1) * (N - 1) * (N - 2) / 48};
            const CpnReport r = cpn_exact_check(n);
            c.require(r.expected == expected, "product polynomial vs closed formulas, n=" + std::to_string(n));
            c.require(r.bruteforce == expected, "brute force, n=" + std::to_string(n));
            c.require(r.closed_form == expected, "closed form, n=" + std::to_string(n));
            c.detail << " n=" << n << ":(" << to_string(r.bruteforce[1]) << "," << to_string(r.bruteforce[2]) << ","
                     << to_string(r.bruteforce[3]) << ")";
        }
    });

    report(2, "identity suite exact on 20 jets (n=2) + 5 jets (n=3)", [](Check &c) {
        const PoolResult &p = pool();
        for (const char *g : {"prop44", "claims", "prop52", "prop53"}) {
            const auto it = p.by_group.find(g);
            c.require(it != p.by_group.end() && it->second.first > 0 && it->second.second == 0, g);
            c.detail << " " << group_summary(p, g) << ";";
        }
        c.require(p.by_group.at("prop44").first == 8 * p.jets, "eight moment formulas per jet");
        c.require(p.by_group.at("claims").first == 13 * p.jets, "thirteen third-order L identities per jet");
        c.require(p.by_group.at("prop53").first == 5 * p.jets, "five Laplacian identities per jet");
        c.require(p.permutation_nonzero == 0, "permutation route");
        c.detail << " permutation route: " << p.permutation_checked - p.permutation_nonzero << "/"
                 << p.permutation_checked << " zero";
    });

    report(3, "brute-force density coefficients = closed form on the same pool", [](Check &c) {
        const PoolResult &p = pool();
        const auto &g = p.by_group.at("dual");
        c.require(g.first == 5 * p.jets && g.second == 0, "dual group");
        c.detail << " " << group_summary(p, "dual") << " (a0..a3 and the reduced a3 form)";
    });

    report(4, "sigma3 from peak-section inner products = |D'rho|^2 / 4 on the same pool", [](Check &c) {
        const PoolResult &p = pool();
        const auto &g = p.by_group.at("sigma3");
        c.require(g.first == p.jets && g.second == 0, "sigma3 group");
        c.detail << " " << group_summary(p, "sigma3");
    });

    report(5, "Gaussian moments vs radial Gamma integrals; L vs K on 100 random polynomials", [](Check &c) {
        int moments = 0;
        for (int n = 1; n <= 3; ++n) {
            for (int p = 0; p <= 4; ++p) {
                for (const MultiIndex &P : multi_indices_of_degree(n, p)) {
                    for (int q = 0; q <= 3; ++q) {
                        ++moments;
                        c.require(monomial_moment(P, P, q, n) == testing_oracles::gamma_moment(P, q),
                                  "moment n=" + std::to_string(n) + " |P|=" + std::to_string(p));
                    }
                }
            }
        }
        std::mt19937_64 rng(77);
        int lk = 0;
        for (int t = 0; t < 100; ++t) {
            const int n = 1 + static_cast<int>(rng() % 3);
            const int p = static_cast<int>(rng() % 4);
            const Series A = testing_oracles::random_balanced(n, p, rng);
            const QComplex L = L_functional_complex(A);
            const AsymptoticSeries k = K_functional(A);
            const QComplex viaK = k.is_zero() ? QComplex() : k.at_power2(2 * (n + p)) / QComplex(factorial(p));
            c.require(L == viaK, "L vs K, trial " + std::to_string(t));
            c.require(L == L_permutation_sum(symmetric_coefficients(A), n, p), "L vs permutation sum");
            ++lk;
        }
        c.detail << " " << moments << " moments, " << lk << " polynomials";
    });

    report(6, "Riemann-Roch: integrated coefficients = top coefficients of C(m+n, n), n = 1..3", [](Check &c) {
        for (int n = 1; n <= 3; ++n) {
            const RiemannRochReport r = riemann_roch_check(n, {0, 1, 2, 3, 5, 10, 50, 100});
            c.require(r.pass, "n=" + std::to_string(n));
            c.require(r.integrated == r.binomial && r.characteristic == r.binomial, "coefficients");
            c.detail << " n=" << n << ":(" << to_string(r.binomial[0]) << "," << to_string(r.binomial[1]) << ","
                     << to_string(r.binomial[2]) << "," << to_string(r.binomial[3]) << ")";
        }
    });

    report(7, "CP^1 numeric density: FS = m+1 (1e-9); eps=0.05 bump fit a1 within 1%, a2 within 10%", [](Check &c) {
        const Perturbation fs;
        const QuadratureSpec q;
        double worst = 0, drift = 0;
        for (int m = 10; m <= 60; ++m) {
            const GramMatrix g = cp1_gram(fs, m, q);
            for (std::complex<double> x : {std::complex<double>(0, 0), {0.5, 0.25}, {2, -1}}) {
                worst = std::max(worst, std::abs(cp1_density(g, fs, x) / (m + 1) - 1));
            }
        }
        // quadrature convergence: doubling both rules at the largest m
        {
            const GramMatrix a = cp1_gram(fs, 60, q);
            const GramMatrix b = cp1_gram(fs, 60, {2 * q.radial, 2 * q.angular_for(60)});
            for (int A = 0; A <= 60; ++A) {
                for (int B = 0; B <= 60; ++B) {
                    const double s = std::sqrt(b.entries(A, A).real() * b.entries(B, B).real());
                    drift = std::max(drift, std::abs(a.entries(A, B) - b.entries(A, B)) / s);
                }
            }
        }
        c.require(worst <= 1e-9, "FS density");
        c.require(drift < 1e-12, "quadrature convergence");

        std::vector<int> ms;
        for (int m = 20; m <= 60; m += 4) {
            ms.push_back(m);
        }
        const Perturbation bump = Perturbation::parse("sym", Rational(1, 20));
        const Cp1FitRun run = fit_cp1(bump, ms, q, QComplex(0), 4, thread_count_from_env());
        const FitReport &f = run.fit;
        c.require(f.rel_error[1] <= 0.01, "a1 fit");
        c.require(f.rel_error[2] <= 0.10, "a2 fit");
        const FitReport three = fit_coefficients(f.samples, f.reference, 3);
        char buf[400];
        std::snprintf(buf, sizeof buf,
                      " FS max rel dev %.2e, node-doubling drift %.2e; fit 1..1/m^3: a1=%.6f (ref %.6f, %.3f%%),"
                      " a2=%.6f (ref %.6f, %.2f%%); three-term fit would give a2 off by %.1f%%",
                      worst, drift, f.fitted[1], f.reference[1].get_d(), 100 * f.rel_error[1], f.fitted[2],
                      f.reference[2].get_d(), 100 * f.rel_error[2], 100 * three.rel_error[2]);
        c.detail << buf;
    });

    report(8, "flat jet gives (1,0,0,0) with zero invariants; exact commands identical across thread counts",
           [](Check &c) {
               for (int n = 1; n <= 4; ++n) {
                   const PotentialJet flat = PotentialJet::flat(n, 8);
                   const DensityCoefficients b = density_coeffs_bruteforce(flat);
                   const std::vector<Rational> unit = {1, 0, 0, 0};
                   c.require(b.as_vector() == unit, "flat brute force n=" + std::to_string(n));
                   const ScalarInvariants s = curvature_invariants(flat);
                   c.require(density_coeffs_closed_form(s).as_vector() == unit, "flat closed form");
                   for (const auto &[name, v] : s.fields()) {
                       c.require(v == 0, "flat invariant " + name);
                   }
               }
               const std::vector<std::vector<std::string>> commands = {
                   {"verify", "--suite", "all", "--n", "2", "--trials", "4", "--seed", "5"},
                   {"verify", "--suite", "claims", "--n", "3", "--trials", "2", "--seed", "5"},
                   {"cpn", "--n", "3"},
                   {"rr", "--n", "2"},
                   {"moments", "2,1", "2,1", "2", "--n", "2"}};
               for (const auto &cmd : commands) {
                   std::string ref;
                   for (const char *t : {"1", "2", "4"}) {
                       setenv("BERGMAN_THREADS", t, 1);
                       int code = 0;
                       const auto doc = nlohmann::json::parse(run_cli(cmd, code));
                       c.require(code == 0, cmd[0] + " exit code");
                       const std::string payload = doc["payload"].dump() + doc["digest"].dump();
                       if (ref.empty()) {
                           ref = payload;
                       }
                       c.require(payload == ref, cmd[0] + " differs with BERGMAN_THREADS=" + t);
                   }
               }
               unsetenv("BERGMAN_THREADS");
               c.detail << " n=1..4 flat; " << commands.size() << " commands x threads {1,2,4}";
           });

    std::printf("%s: %d of 8 criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
