#include <bergman/curvature.hpp>

#include <optional>

#include "tensor.hpp"

namespace bergman
{

using detail::Factor;
using detail::Geometry;
using detail::Slot;
using detail::Tensor;

std::vector<std::pair<std::string, Rational>> ScalarInvariants::fields() const
{
    std::vector<std::pair<std::string, Rational>> f = {
        {"rho", rho}, {"lap_rho", lap_rho}, {"normR2", normR2}, {"normRic2", normRic2}};
    if (!third_order) {
        return f;
    }
    const std::vector<std::pair<std::string, Rational>> rest = {
        {"laplap_rho", laplap_rho},
        {"normDrho2", normDrho2},
        {"normDRic2", normDRic2},
        {"normDR2", normDR2},
        {"R_Ric_Ric", R_Ric_Ric},
        {"Ric_R_R", Ric_R_R},
        {"sigma1R", sigma1R},
        {"sigma2R", sigma2R},
        {"sigma3Ric", sigma3Ric},
        {"divdiv_R_Ric", divdiv_R_Ric},
        {"divdiv_rhoRic", divdiv_rhoRic},
        {"ric_hess_rho", ric_hess_rho},
        {"cross_R_D2Ric", cross_R_D2Ric},
        {"lap_normR2", lap_normR2},
        {"lap_normRic2", lap_normRic2},
        {"lap_rho2", lap_rho2},
    };
    f.insert(f.end(), rest.begin(), rest.end());
    return f;
}

int required_degree(CurvatureOrder order)
{
    return order == CurvatureOrder::through_a3 ? 8 : 6;
}

namespace
{

Rational real_value(const Series &s, const char *field)
{
    if (s.prec() < 0) {
        throw TruncationError(std::string("jet degree too low to determine ") + field);
    }
    const QComplex v = s.at_origin();
    if (!v.is_real()) {
        throw std::logic_error(std::string("invariant ") + field + " came out non-real: " + to_string(v));
    }
    return v.re;
}

// Curvature data of a potential at the origin, computed once and shared.
struct CurvatureData {
    CurvatureData(const Series &potential, CurvatureOrder order);

    int n;
    int top; // precision of rho
    std::optional<Geometry> geo;
    Series eta;
    Tensor ric;
    Series rho;
    Tensor riem;
};

int effective_degree(const Series &potential, CurvatureOrder order)
{
    const int need = required_degree(order);
    if (potential.prec() < need) {
        const char *what = order == CurvatureOrder::through_a3 ? "laplap_rho" : "lap_rho";
        throw TruncationError(std::string("jet degree ") + std::to_string(potential.prec()) +
                              " too low to determine " + what + " (needs " + std::to_string(need) + ")");
    }
    return need;
}

CurvatureData::CurvatureData(const Series &potential, CurvatureOrder order) : n(potential.dim())
{
    const int d = effective_degree(potential, order);
    if (!potential.is_real_valued()) {
        throw std::invalid_argument("curvature: potential must be real-valued");
    }
    const Series phi = potential.truncated(d);
    top = d - 4;
    geo.emplace(phi, top, top - 2);
    eta = geo->log_det(d - 2);
    ric = Tensor(n, {Slot::holo, Slot::anti}, top);
    for (int i = 0; i < n; ++i) {
        const Series di = eta.d(i);
        for (int j = 0; j < n; ++j) {
            ric.at({i, j}) = -di.dbar(j);
        }
    }
    rho = -geo->laplacian(eta);
    riem = geo->riemann(top - 2);
}

Series scalar_einsum(const Geometry &geo, const std::vector<Factor> &f)
{
    return geo.einsum(f, "", 0).c[0];
}

} // namespace

ScalarInvariants potential_invariants(const Series &potential, CurvatureOrder order)
{
    CurvatureData cd(potential, order);
    const Geometry &geo = *cd.geo;
    ScalarInvariants s;
    s.rho = real_value(cd.rho, "rho");
    s.lap_rho = real_value(geo.laplacian(cd.rho.truncated(2)), "lap_rho");
    const Tensor R0 = cd.riem.truncated(0);
    const Tensor Ric0 = cd.ric.truncated(0);
    s.normR2 = real_value(geo.norm2(R0, 0), "normR2");
    s.normRic2 = real_value(geo.norm2(Ric0, 0), "normRic2");
    if (order == CurvatureOrder::through_a2) {
        return s;
    }
    s.third_order = true;

    const Series lap_rho = geo.laplacian(cd.rho);
    s.laplap_rho = real_value(geo.laplacian(lap_rho), "laplap_rho");

    const Tensor rho_t = Tensor::scalar(cd.rho.truncated(2));
    const Tensor drho = geo.covariant(rho_t, Slot::holo);
    s.normDrho2 = real_value(geo.norm2(drho.truncated(0), 0), "normDrho2");
    const Tensor hess = geo.covariant(drho, Slot::anti);

    const Tensor ric2 = cd.ric.truncated(2);
    const Tensor dric = geo.covariant(ric2, Slot::holo);
    s.normDRic2 = real_value(geo.norm2(dric.truncated(0), 0), "normDRic2");
    const Tensor ddric = geo.covariant(dric, Slot::anti);

    const Tensor dR = geo.covariant(cd.riem, Slot::holo);
    s.normDR2 = real_value(geo.norm2(dR.truncated(0), 0), "normDR2");

    s.R_Ric_Ric = real_value(scalar_einsum(geo, {{&R0, "ijkl"}, {&Ric0, "ji"}, {&Ric0, "lk"}}), "R_Ric_Ric");
    s.Ric_R_R = real_value(scalar_einsum(geo, {{&Ric0, "ij"}, {&R0, "jkpq"}, {&R0, "kiqp"}}), "Ric_R_R");
    s.sigma1R = real_value(scalar_einsum(geo, {{&R0, "ijkl"}, {&R0, "lkpq"}, {&R0, "qpji"}}), "sigma1R");
    s.sigma2R = real_value(scalar_einsum(geo, {{&R0, "ijkl"}, {&R0, "piqk"}, {&R0, "jplq"}}), "sigma2R");
    s.sigma3Ric = real_value(scalar_einsum(geo, {{&Ric0, "ij"}, {&Ric0, "jk"}, {&Ric0, "ki"}}), "sigma3Ric");

    const Tensor hess0 = hess.truncated(0);
    s.ric_hess_rho = real_value(scalar_einsum(geo, {{&Ric0, "ij"}, {&hess0, "ji"}}), "ric_hess_rho");
    const Tensor ddric0 = ddric.truncated(0);
    s.cross_R_D2Ric = real_value(scalar_einsum(geo, {{&R0, "jilk"}, {&ddric0, "ijkl"}}), "cross_R_D2Ric");

    // (R_{i jbar k lbar} Ric_{j ibar})_{,l kbar}
    const Tensor rric = geo.einsum({{&cd.riem, "ijkl"}, {&ric2, "ji"}}, "kl", 2);
    const Tensor w = geo.covariant(geo.covariant(rric, Slot::holo), Slot::anti).truncated(0);
    s.divdiv_R_Ric = real_value(scalar_einsum(geo, {{&w, "xyyx"}}), "divdiv_R_Ric");

    // (rho Ric_{j ibar})_{,jbar i}
    Tensor rho_ric = ric2;
    for (auto &c : rho_ric.c) {
        c = Series::multiply(c, cd.rho, 2);
    }
    const Tensor v = geo.covariant(geo.covariant(rho_ric, Slot::anti), Slot::holo).truncated(0);
    s.divdiv_rhoRic = real_value(scalar_einsum(geo, {{&v, "xyxy"}}), "divdiv_rhoRic");

    s.lap_normR2 = real_value(geo.laplacian(geo.norm2(cd.riem, 2)), "lap_normR2");
    s.lap_normRic2 = real_value(geo.laplacian(geo.norm2(ric2, 2)), "lap_normRic2");
    s.lap_rho2 = real_value(geo.laplacian(Series::multiply(cd.rho, cd.rho, 2)), "lap_rho2");
    return s;
}

ScalarInvariants curvature_invariants(const PotentialJet &jet, CurvatureOrder order)
{
    return potential_invariants(jet.potential(), order);
}

ExpansionTerms expansion_terms(const PotentialJet &jet)
{
    const int n = jet.dim();
    const int d = jet.max_degree();
    ExpansionTerms t;
    t.n = n;
    for (int k = 4; k <= d; ++k) {
        t.e[k] = jet.xi().homogeneous(k).with_prec(kExact);
    }
    if (d >= 4) {
        Geometry geo(jet.potential(), 0, 0);
        const Series eta = geo.log_det(d - 2);
        for (int k = 2; k <= d - 2; ++k) {
            t.c[k] = eta.homogeneous(k).with_prec(kExact);
        }
    }
    auto bal = [n](const std::map<int, Series> &m, int k) {
        auto it = m.find(k);
        return it == m.end() ? Series(n) : it->second.balanced();
    };
    t.e6_tilde = bal(t.e, 6);
    t.e8_tilde = bal(t.e, 8);
    t.c4_tilde = bal(t.c, 4);
    t.c6_tilde = bal(t.c, 6);
    return t;
}

namespace
{

// Adds coeff * T[idx] * z^{holo idx} zbar^{anti idx} over all components.
Series tensor_polynomial(const Tensor &t0, const Rational &coeff)
{
    const int n = t0.n;
    std::vector<Series::Term> terms;
    std::vector<int> idx;
    for (std::size_t k = 0; k < t0.size(); ++k) {
        const QComplex v = t0.c[k].coeff(std::uint64_t{0});
        if (v.is_zero()) {
            continue;
        }
        t0.unflatten(k, idx);
        std::uint64_t key = 0;
        for (int s = 0; s < t0.rank(); ++s) {
            const int i = idx[static_cast<std::size_t>(s)];
            key += t0.slots[static_cast<std::size_t>(s)] == Slot::holo ? detail::key_unit_z(i)
                                                                        : detail::key_unit_zbar(i);
        }
        terms.push_back({key, v * coeff});
    }
    return Series::from_terms(n, std::move(terms));
}

} // namespace

std::vector<std::pair<std::string, Series>> structural_residuals(const PotentialJet &jet)
{
    const int n = jet.dim();
    const int d = jet.max_degree();
    std::vector<std::pair<std::string, Series>> out;
    if (d < 6) {
        throw TruncationError("structural identities need a jet of degree at least 6");
    }
    const ExpansionTerms et = expansion_terms(jet);
    const int rp = 2;
    Geometry geo(jet.potential(), rp + 2, rp);
    const Series eta = geo.log_det(d - 2);
    Tensor ric(n, {Slot::holo, Slot::anti}, rp);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            ric.at({i, j}) = -eta.d(i).dbar(j).truncated(rp);
        }
    }
    const Tensor R = geo.riemann(rp);
    const Tensor R0 = R.truncated(0);
    const Tensor Ric0 = ric.truncated(0);

    out.push_back({"e4", et.e.at(4) - tensor_polynomial(R0, Rational(-1, 4))});
    out.push_back({"c2", et.c.at(2) - tensor_polynomial(Ric0, Rational(-1))});

    const Tensor dR = geo.covariant(R, Slot::holo);
    const Tensor dbR = geo.covariant(R, Slot::anti);
    out.push_back({"e5", et.e.at(5) - tensor_polynomial(dR.truncated(0), Rational(-1, 12)) -
                             tensor_polynomial(dbR.truncated(0), Rational(-1, 12))});

    const Tensor dRic = geo.covariant(ric, Slot::holo);
    const Tensor dbRic = geo.covariant(ric, Slot::anti);
    out.push_back({"c3", et.c.at(3) - tensor_polynomial(dRic.truncated(0), Rational(-1, 2)) -
                             tensor_polynomial(dbRic.truncated(0), Rational(-1, 2))});

    // c~4 = -1/4 (Ric_{i jbar, k lbar} + R_{i sbar k lbar} Ric_{s jbar}) z_i z_k zbar_j zbar_l
    Tensor c4 = geo.covariant(dRic, Slot::anti).truncated(0);
    c4 += geo.einsum({{&R0, "iskl"}, {&Ric0, "sj"}}, "ijkl", 0);
    out.push_back({"c4_tilde", et.c4_tilde - tensor_polynomial(c4, Rational(-1, 4))});

    {
        // e~6 = -1/36 (R_{i jbar k lbar, p qbar} + R_{i sbar p qbar} R_{s jbar k lbar}
        //   + R_{k sbar p qbar} R_{s lbar i jbar} + R_{i sbar k qbar} R_{s jbar p lbar}) z_i z_k z_p zbar_j zbar_l zbar_q
        Tensor e6 = geo.covariant(dR, Slot::anti).truncated(0);
        e6 += geo.einsum({{&R0, "ispq"}, {&R0, "sjkl"}}, "ijklpq", 0);
        e6 += geo.einsum({{&R0, "kspq"}, {&R0, "slij"}}, "ijklpq", 0);
        e6 += geo.einsum({{&R0, "iskq"}, {&R0, "sjpl"}}, "ijklpq", 0);
        out.push_back({"e6_tilde", et.e6_tilde - tensor_polynomial(e6, Rational(-1, 36))});
    }
    return out;
}

} // namespace bergman
