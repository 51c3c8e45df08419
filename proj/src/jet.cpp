#include <bergman/jet.hpp>

#include <algorithm>
#include <random>
#include <set>

namespace bergman
{

using detail::key_zbardeg;
using detail::key_zdeg;

PotentialJet::PotentialJet(int n, int max_degree, Series xi) : n_(n), max_degree_(max_degree), xi_(std::move(xi))
{
    if (n < 1 || n > kMaxDim) {
        throw std::invalid_argument("PotentialJet: dimension must be between 1 and " + std::to_string(kMaxDim));
    }
    if (max_degree < 0 || max_degree > kMaxExponent) {
        throw std::invalid_argument("PotentialJet: bad max_degree");
    }
    if (xi_.dim() != n) {
        throw std::invalid_argument("PotentialJet: xi has the wrong dimension");
    }
    if (xi_.max_degree() > max_degree) {
        throw std::invalid_argument("PotentialJet: xi has terms above max_degree");
    }
    xi_ = xi_.with_prec(max_degree);
}

PotentialJet PotentialJet::flat(int n, int max_degree)
{
    return PotentialJet(n, max_degree, Series(n, max_degree));
}

Series PotentialJet::log_a() const
{
    return xi_ - Series::norm2(n_);
}

Series PotentialJet::potential() const
{
    return Series::norm2(n_) - xi_;
}

KGaugeReport validate_kgauge(const PotentialJet &jet)
{
    KGaugeReport r;
    std::set<std::pair<int, int>> bad;
    for (const auto &t : jet.xi().terms()) {
        const int p = key_zdeg(t.key);
        const int q = key_zbardeg(t.key);
        if (p < 2 || q < 2) {
            bad.insert({p, q});
        }
    }
    r.offending.assign(bad.begin(), bad.end());
    r.real_valued = jet.xi().is_real_valued();
    r.pass = r.offending.empty() && r.real_valued;
    return r;
}

namespace
{

Rational random_rational(std::mt19937_64 &rng, int bound)
{
    const auto b = static_cast<std::uint64_t>(bound);
    const long num = static_cast<long>(rng() % (2 * b + 1)) - bound;
    const long den = static_cast<long>(rng() % b) + 1;
    Rational q(num, den);
    q.canonicalize();
    return q;
}

} // namespace

PotentialJet random_kgauge_jet(int n, int max_degree, std::uint64_t seed, int magnitude_bound)
{
    if (magnitude_bound < 1) {
        throw std::invalid_argument("random_kgauge_jet: magnitude bound must be positive");
    }
    // below degree 4 a K-gauge jet has no free terms
    if (max_degree < 4) {
        throw std::invalid_argument("random_kgauge_jet: max_degree must be at least 4");
    }
    std::mt19937_64 rng(seed);
    std::vector<Series::Term> terms;
    for (int p = 2; p <= max_degree - 2; ++p) {
        for (int q = 2; p + q <= max_degree; ++q) {
            if (q < p) {
                continue;
            }
            const auto ps = multi_indices_of_degree(n, p);
            const auto qs = multi_indices_of_degree(n, q);
            for (std::size_t a = 0; a < ps.size(); ++a) {
                for (std::size_t b = 0; b < qs.size(); ++b) {
                    // Each unordered pair {(I,J), (J,I)} is drawn once.
                    if (p == q && b < a) {
                        continue;
                    }
                    const auto key = detail::make_key(ps[a], qs[b]);
                    if (p == q && a == b) {
                        terms.push_back({key, QComplex(random_rational(rng, magnitude_bound))});
                        continue;
                    }
                    QComplex c(random_rational(rng, magnitude_bound), random_rational(rng, magnitude_bound));
                    terms.push_back({detail::key_swap(key), c.conj()});
                    terms.push_back({key, std::move(c)});
                }
            }
        }
    }
    return PotentialJet(n, max_degree, Series::from_terms(n, std::move(terms), max_degree));
}

namespace
{

Series drop_pluriharmonic(const Series &f)
{
    std::vector<Series::Term> keep;
    for (const auto &t : f.terms()) {
        if (key_zdeg(t.key) > 0 && key_zbardeg(t.key) > 0) {
            keep.push_back(t);
        }
    }
    return Series::from_terms(f.dim(), std::move(keep), f.prec());
}

} // namespace

PotentialJet normalize_to_kgauge(const Series &potential, int order)
{
    const int n = potential.dim();
    if (order < 2) {
        throw std::invalid_argument("normalize_to_kgauge: order must be at least 2");
    }
    if (potential.prec() < order) {
        throw TruncationError("normalize_to_kgauge: potential known only to degree " +
                              std::to_string(potential.prec()));
    }
    if (!potential.is_real_valued()) {
        throw std::invalid_argument("normalize_to_kgauge: potential must be real-valued");
    }
    Series phi = drop_pluriharmonic(potential.truncated(order));

    // (1,1) block H_ij = coefficient of z_i zbar_j; Hermitian.
    std::vector<std::vector<QComplex>> H(n, std::vector<QComplex>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            H[i][j] = phi.coeff(MultiIndex::unit(n, i), MultiIndex::unit(n, j));
        }
    }
    // H = L D L*, L unit lower triangular.
    std::vector<std::vector<QComplex>> L(n, std::vector<QComplex>(n));
    std::vector<Rational> D(n);
    for (int j = 0; j < n; ++j) {
        QComplex d = H[j][j];
        for (int k = 0; k < j; ++k) {
            d -= L[j][k] * L[j][k].conj() * D[k];
        }
        if (!d.is_real() || sgn(d.re) <= 0) {
            throw NormalizationError("normalize_to_kgauge: metric at the origin is not positive definite");
        }
        D[j] = d.re;
        L[j][j] = QComplex(1);
        for (int i = j + 1; i < n; ++i) {
            QComplex s = H[i][j];
            for (int k = 0; k < j; ++k) {
                s -= L[i][k] * L[j][k].conj() * D[k];
            }
            L[i][j] = s / QComplex(D[j]);
        }
    }
    std::vector<Rational> dsqrt(n);
    for (int j = 0; j < n; ++j) {
        auto r = exact_sqrt(D[j]);
        if (!r) {
            throw NormalizationError("normalize_to_kgauge: pivot " + to_string(D[j]) +
                                     " is not a rational square; no rational unitary frame");
        }
        dsqrt[j] = *r;
    }
    // Linv = L^{-1} (unit lower triangular), then z = A w with A = Linv^T D^{-1/2}.
    std::vector<std::vector<QComplex>> Linv(n, std::vector<QComplex>(n));
    for (int j = 0; j < n; ++j) {
        Linv[j][j] = QComplex(1);
        for (int i = j + 1; i < n; ++i) {
            QComplex s;
            for (int k = j; k < i; ++k) {
                s.add_product(L[i][k], Linv[k][j]);
            }
            Linv[i][j] = -s;
        }
    }
    std::vector<Series> zs, zbs;
    for (int i = 0; i < n; ++i) {
        Series zi(n, order);
        for (int j = 0; j < n; ++j) {
            const QComplex a = Linv[j][i] / QComplex(dsqrt[j]);
            if (!a.is_zero()) {
                zi += Series::monomial(n, MultiIndex::unit(n, j), MultiIndex(n), a, order);
            }
        }
        zbs.push_back(zi.conj());
        zs.push_back(std::move(zi));
    }
    phi = substitute(phi, zs, zbs, order);

    // Remove (d-1, 1) and (1, d-1) parts degree by degree.
    for (int d = 3; d <= order; ++d) {
        const Series T = phi.part(d - 1, 1);
        if (T.is_zero()) {
            continue;
        }
        std::vector<Series> ws, wbs;
        for (int j = 0; j < n; ++j) {
            Series f(n, order);
            std::vector<Series::Term> fj;
            for (const auto &t : T.terms()) {
                if (detail::key_zbar(t.key, j) == 1) {
                    fj.push_back({t.key - detail::key_unit_zbar(j), t.coeff});
                }
            }
            f = Series::from_terms(n, std::move(fj), order);
            Series w = Series::z(n, j).with_prec(order) - f;
            wbs.push_back(w.conj());
            ws.push_back(std::move(w));
        }
        phi = drop_pluriharmonic(substitute(phi, ws, wbs, order));
        if (!phi.part(d - 1, 1).is_zero()) {
            throw std::logic_error("normalize_to_kgauge: failed to clear a (p,1) part");
        }
    }
    phi = drop_pluriharmonic(phi);
    Series xi = Series::norm2(n).with_prec(order) - phi;
    if (!xi.part(1, 1).is_zero()) {
        throw std::logic_error("normalize_to_kgauge: metric at the origin not normalized");
    }
    return PotentialJet(n, order, xi);
}

// JSON

nlohmann::json series_to_json(const Series &s)
{
    const int n = s.dim();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &t : s.terms()) {
        terms.push_back({{"zi", detail::key_z_index(t.key, n).exponents()},
                         {"zbar", detail::key_zbar_index(t.key, n).exponents()},
                         {"re", to_string(t.coeff.re)},
                         {"im", to_string(t.coeff.im)}});
    }
    return terms;
}

nlohmann::json jet_to_json(const PotentialJet &jet)
{
    return {{"n", jet.dim()}, {"max_degree", jet.max_degree()}, {"terms", series_to_json(jet.xi())}};
}

namespace
{

const nlohmann::json &field(const nlohmann::json &obj, const std::string &where, const char *name)
{
    if (!obj.is_object()) {
        throw JetFormatError(where, "expected an object");
    }
    auto it = obj.find(name);
    if (it == obj.end()) {
        throw JetFormatError(where, std::string("missing field '") + name + "'");
    }
    return *it;
}

int int_field(const nlohmann::json &obj, const std::string &where, const char *name)
{
    const auto &v = field(obj, where, name);
    if (!v.is_number_integer()) {
        throw JetFormatError(where + "/" + name, "expected an integer");
    }
    return v.get<int>();
}

Rational rational_field(const nlohmann::json &obj, const std::string &where, const char *name, bool optional)
{
    auto it = obj.find(name);
    if (it == obj.end()) {
        if (optional) {
            return Rational(0);
        }
        throw JetFormatError(where, std::string("missing field '") + name + "'");
    }
    const std::string loc = where + "/" + name;
    if (it->is_number_integer()) {
        return Rational(it->get<long>());
    }
    if (!it->is_string()) {
        throw JetFormatError(loc, "expected a rational string \"p/q\"");
    }
    auto q = parse_rational(it->get<std::string>());
    if (!q) {
        throw JetFormatError(loc, "malformed rational '" + it->get<std::string>() + "'");
    }
    return *q;
}

MultiIndex exponent_field(const nlohmann::json &obj, const std::string &where, const char *name, int n)
{
    const auto &v = field(obj, where, name);
    const std::string loc = where + "/" + name;
    if (!v.is_array() || static_cast<int>(v.size()) != n) {
        throw JetFormatError(loc, "expected an array of " + std::to_string(n) + " exponents");
    }
    std::vector<int> e;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer() || v[i].get<long>() < 0 || v[i].get<long>() > kMaxExponent) {
            throw JetFormatError(loc + "/" + std::to_string(i), "expected a small non-negative integer");
        }
        e.push_back(v[i].get<int>());
    }
    return MultiIndex(std::move(e));
}

} // namespace

PotentialJet jet_from_json(const nlohmann::json &j)
{
    const int n = int_field(j, "", "n");
    if (n < 1 || n > kMaxDim) {
        throw JetFormatError("/n", "dimension must be between 1 and " + std::to_string(kMaxDim));
    }
    const int max_degree = int_field(j, "", "max_degree");
    if (max_degree < 0 || max_degree > kMaxExponent) {
        throw JetFormatError("/max_degree", "out of range");
    }
    const auto &terms = field(j, "", "terms");
    if (!terms.is_array()) {
        throw JetFormatError("/terms", "expected an array");
    }
    std::vector<Series::Term> out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const std::string where = "/terms/" + std::to_string(k);
        const auto &t = terms[k];
        const MultiIndex zi = exponent_field(t, where, "zi", n);
        const MultiIndex zb = exponent_field(t, where, "zbar", n);
        if (zi.degree() + zb.degree() > max_degree) {
            throw JetFormatError(where, "term degree exceeds max_degree");
        }
        out.push_back({detail::make_key(zi, zb),
                       QComplex(rational_field(t, where, "re", false), rational_field(t, where, "im", true))});
    }
    return PotentialJet(n, max_degree, Series::from_terms(n, std::move(out), max_degree));
}

PotentialJet jet_from_string(const std::string &text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw JetFormatError("byte " + std::to_string(e.byte), "invalid JSON");
    }
    return jet_from_json(j);
}

} // namespace bergman
