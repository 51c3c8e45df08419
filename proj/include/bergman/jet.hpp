#ifndef BERGMAN_JET_HPP
#define BERGMAN_JET_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <bergman/series.hpp>

namespace bergman
{

// Taylor data of xi = log a + |z|^2 at the base point, truncated at total
// degree max_degree. In K-gauge the metric potential is |z|^2 - xi.
class PotentialJet
{
public:
    PotentialJet(int n, int max_degree, Series xi);

    static PotentialJet flat(int n, int max_degree);

    int dim() const { return n_; }
    int max_degree() const { return max_degree_; }
    const Series &xi() const { return xi_; }

    // log a = -|z|^2 + xi
    Series log_a() const;
    // Kahler potential -log a = |z|^2 - xi, so that g = d dbar of it.
    Series potential() const;

    friend bool operator==(const PotentialJet &a, const PotentialJet &b)
    {
        return a.n_ == b.n_ && a.max_degree_ == b.max_degree_ && a.xi_ == b.xi_;
    }

private:
    int n_;
    int max_degree_;
    Series xi_;
};

struct KGaugeReport {
    bool pass = true;
    // Bidegrees (p, q) present in xi with p < 2 or q < 2, ascending.
    std::vector<std::pair<int, int>> offending;
    bool real_valued = true;
};

KGaugeReport validate_kgauge(const PotentialJet &jet);

// Deterministic random K-gauge jet. Every bidegree (p, q) with p, q >= 2 and
// p + q <= max_degree is populated; coefficients are p/q with |p| <= bound
// and 1 <= q <= bound, mirrored so that xi is real-valued.
PotentialJet random_kgauge_jet(int n, int max_degree, std::uint64_t seed, int magnitude_bound = 3);

struct NormalizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Brings a real Kahler potential (g = d dbar potential) into K-gauge: drops
// pluriharmonic terms, normalizes g(0) to the identity and removes (p,1) and
// (1,p) terms degree by degree with holomorphic changes z -> w - f(w).
// The linear normalization is exact only when the LDL* pivots of the (1,1)
// block are rational squares; otherwise NormalizationError is thrown.
PotentialJet normalize_to_kgauge(const Series &potential, int order);

// JSON interchange format:
// { "n": int, "max_degree": int,
//   "terms": [ { "zi": [..], "zbar": [..], "re": "p/q", "im": "p/q" } ] }
struct JetFormatError : std::runtime_error {
    JetFormatError(std::string where, const std::string &what)
        : std::runtime_error(where + ": " + what), location(std::move(where))
    {
    }
    std::string location;
};

nlohmann::json series_to_json(const Series &s);
nlohmann::json jet_to_json(const PotentialJet &jet);
PotentialJet jet_from_json(const nlohmann::json &j);
PotentialJet jet_from_string(const std::string &text);

} // namespace bergman

#endif
