#include <bergman/cli.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include <bergman/curvature.hpp>
#include <bergman/expansion.hpp>
#include <bergman/jet.hpp>
#include <bergman/moments.hpp>
#include <bergman/verify.hpp>

namespace bergman
{

using nlohmann::json;

std::string fnv1a_hex(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

int thread_count_from_env()
{
    const char *v = std::getenv("BERGMAN_THREADS");
    if (v == nullptr) {
        return 1;
    }
    try {
        const int t = std::stoi(v);
        return t >= 1 ? std::min(t, 256) : 1;
    } catch (const std::exception &) {
        return 1;
    }
}

namespace
{

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Result of a subcommand before the envelope is added.
struct Outcome {
    json payload;
    bool pass = true;
    std::string digest_source;
};

json rationals(const std::vector<Rational> &v)
{
    json a = json::array();
    for (const auto &x : v) {
        a.push_back(to_string(x));
    }
    return a;
}

// Round to `digits` significant digits; the shortest round-trip print of the
// result is then at most that long.
double rounded(double x, int digits)
{
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

std::vector<int> parse_int_list(const std::string &s, const std::string &what)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument("");
            }
            out.push_back(v);
        } catch (const std::exception &) {
            throw InputError(what + ": '" + item + "' is not an integer");
        }
    }
    if (out.empty()) {
        throw InputError(what + ": empty list");
    }
    return out;
}

Rational parse_number(const std::string &s, const std::string &what)
{
    if (auto q = parse_rational(s)) {
        return *q;
    }
    if (auto q = parse_decimal(s)) {
        return *q;
    }
    throw InputError(what + ": '" + s + "' is neither p/q nor a decimal");
}

void require_jet_degree(int degree, int needed, const std::string &what)
{
    if (degree < needed) {
        throw InputError(what + " needs a jet of degree at least " + std::to_string(needed) + ", got " +
                         std::to_string(degree));
    }
}

// ---- coeffs

Outcome cmd_coeffs(const std::string &file, int order, const std::string &path)
{
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw InputError("cannot open potential file '" + file + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    PotentialJet jet = [&] {
        try {
            return jet_from_string(text);
        } catch (const JetFormatError &e) {
            throw InputError(std::string("malformed potential file: ") + e.what());
        }
    }();
    const KGaugeReport kg = validate_kgauge(jet);
    if (!kg.pass) {
        throw InputError("jet is not in K-gauge (xi must have no (p,0), (p,1) or (1,q) terms and be real)");
    }
    const bool brute = path == "brute" || path == "both";
    const bool closed = path == "closed" || path == "both";
    if (brute) {
        require_jet_degree(jet.max_degree(), required_degree_for_order(order),
                           "order " + std::to_string(order) + " by brute force");
    }
    if (closed) {
        require_jet_degree(jet.max_degree(), order <= 2 ? 6 : 8,
                           "order " + std::to_string(order) + " in closed form");
    }

    Outcome o;
    o.digest_source = "coeffs|" + std::to_string(order) + "|" + path + "|" + text;
    std::vector<Rational> b, c;
    if (brute) {
        b = density_coeffs_bruteforce(jet, order).as_vector();
        b.resize(static_cast<std::size_t>(order + 1));
    }
    if (closed) {
        const auto inv = curvature_invariants(jet, order <= 2 ? CurvatureOrder::through_a2 : CurvatureOrder::through_a3);
        c = density_coeffs_closed_form(inv).as_vector();
        c.resize(static_cast<std::size_t>(order + 1));
    }
    const std::vector<Rational> &shown = brute ? b : c;
    for (int j = 0; j <= order; ++j) {
        o.payload["a" + std::to_string(j)] = to_string(shown[static_cast<std::size_t>(j)]);
    }
    o.payload["order"] = order;
    o.payload["path"] = path;
    if (brute && closed) {
        o.payload["bruteforce"] = rationals(b);
        o.payload["closed_form"] = rationals(c);
        o.payload["paths_agree"] = b == c;
        o.pass = b == c;
    } else {
        o.payload["paths_agree"] = nullptr;
    }
    return o;
}

// ---- verify

Outcome cmd_verify(const std::string &suite, int n, int degree, int trials, std::uint64_t seed,
                   const std::string &method_name, int threads)
{
    std::vector<std::string> groups;
    if (suite != "all") {
        const auto &known = identity_groups();
        if (std::find(known.begin(), known.end(), suite) == known.end()) {
            throw InputError("unknown suite '" + suite + "'");
        }
        groups.push_back(suite);
    }
    if (n < 1 || n > 4) {
        throw InputError("--n must be in 1..4");
    }
    require_jet_degree(degree, 8, "the identity suite");
    if (trials < 1) {
        throw InputError("--trials must be positive");
    }
    const LhsMethod method = method_name == "permutation" ? LhsMethod::permutation : LhsMethod::polynomial;

    std::vector<std::vector<Residual>> results(static_cast<std::size_t>(trials));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int t = next++; t < trials; t = next++) {
            try {
                const PotentialJet jet = random_kgauge_jet(n, degree, seed + static_cast<std::uint64_t>(t));
                results[static_cast<std::size_t>(t)] = identity_suite(jet, groups, method);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 1; k < std::min(threads, trials); ++k) {
        pool.emplace_back(work);
    }
    work();
    for (auto &th : pool) {
        th.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    Outcome o;
    o.digest_source = "verify|" + suite + "|" + std::to_string(n) + "|" + std::to_string(degree) + "|" +
                      std::to_string(trials) + "|" + std::to_string(seed) + "|" + method_name;
    json rows = json::array();
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        for (const auto &r : results[static_cast<std::size_t>(t)]) {
            const Rational res = r.residual();
            failures += res != 0;
            rows.push_back({{"trial", t},
                            {"seed", seed + static_cast<std::uint64_t>(t)},
                            {"group", r.group},
                            {"name", r.name},
                            {"lhs", to_string(r.lhs)},
                            {"rhs", to_string(r.rhs)},
                            {"residual", to_string(res)}});
        }
    }
    o.payload = {{"suite", suite}, {"n", n},          {"degree", degree},       {"trials", trials},
                 {"seed", seed},   {"method", method_name}, {"residuals", rows}, {"count", rows.size()},
                 {"failures", failures}};
    o.pass = failures == 0;
    return o;
}

// ---- cpn / rr

Outcome cmd_cpn(int n, int order)
{
    if (n < 1 || n > 4) {
        throw InputError("--n must be in 1..4");
    }
    if (order < 0 || order > 3) {
        throw InputError("--order must be in 0..3");
    }
    const CpnReport r = cpn_exact_check(n, order);
    Outcome o;
    o.digest_source = "cpn|" + std::to_string(n) + "|" + std::to_string(order);
    o.payload = {{"n", n},
                 {"order", order},
                 {"a", rationals(r.expected)},
                 {"bruteforce", rationals(r.bruteforce)},
                 {"closed_form", rationals(r.closed_form)}};
    o.pass = r.pass;
    return o;
}

Outcome cmd_rr(int n, const std::string &m_spec)
{
    if (n < 1 || n > 4) {
        throw InputError("--n must be in 1..4");
    }
    std::vector<long> ms;
    for (int m : parse_int_list(m_spec, "--m")) {
        if (m < 0) {
            throw InputError("--m values must be non-negative");
        }
        ms.push_back(m);
    }
    const RiemannRochReport r = riemann_roch_check(n, ms);
    Outcome o;
    o.digest_source = "rr|" + std::to_string(n) + "|" + m_spec;
    json samples = json::array();
    for (const auto &s : r.samples) {
        samples.push_back({{"m", s.m}, {"dimension", to_string(s.dimension)}, {"expansion", to_string(s.truncated)}});
    }
    o.payload = {{"n", n},
                 {"binomial", rationals(r.binomial)},
                 {"integrated", rationals(r.integrated)},
                 {"characteristic", rationals(r.characteristic)},
                 {"samples", samples}};
    o.pass = r.pass;
    return o;
}

// ---- fit-cp1

std::vector<int> parse_range(const std::string &s)
{
    const auto parts = [&] {
        std::vector<std::string> v;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ':')) {
            v.push_back(item);
        }
        return v;
    }();
    if (parts.size() != 3) {
        throw InputError("--m: expected START:END:STEP, got '" + s + "'");
    }
    const int a = parse_int_list(parts[0], "--m")[0];
    const int b = parse_int_list(parts[1], "--m")[0];
    const int st = parse_int_list(parts[2], "--m")[0];
    if (a < 1 || b < a || st < 1 || b > 200) {
        throw InputError("--m: need 1 <= START <= END <= 200 and STEP >= 1");
    }
    std::vector<int> out;
    for (int m = a; m <= b; m += st) {
        out.push_back(m);
    }
    return out;
}

QComplex parse_point(const std::string &s)
{
    const std::vector<std::string> parts = [&] {
        std::vector<std::string> v;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            v.push_back(item);
        }
        return v;
    }();
    if (parts.empty() || parts.size() > 2) {
        throw InputError("--point: expected X or X,Y");
    }
    QComplex x(parse_number(parts[0], "--point"));
    if (parts.size() == 2) {
        x.im = parse_number(parts[1], "--point");
    }
    return x;
}

Outcome cmd_fit(const std::string &eps_s, const std::string &mode, const std::string &m_spec,
                const std::string &nodes, const std::string &point, int terms, double tol_a1, double tol_a2,
                int precision, int threads)
{
    const Rational eps = parse_number(eps_s, "--eps");
    const Perturbation p = [&] {
        try {
            return Perturbation::parse(mode, eps);
        } catch (const std::invalid_argument &e) {
            throw InputError(e.what());
        }
    }();
    const std::vector<int> ms = parse_range(m_spec);
    const std::vector<int> nd = parse_int_list(nodes, "--nodes");
    if (nd.size() != 2 || nd[0] < 1 || nd[1] < 0) {
        throw InputError("--nodes: expected RADIAL,ANGULAR (ANGULAR 0 = automatic)");
    }
    if (terms < 3 || terms > 6) {
        throw InputError("--terms must be in 3..6");
    }
    if (ms.size() < 6 || ms.size() <= static_cast<std::size_t>(terms)) {
        throw InputError("--m: need at least 6 sample values and more samples than fit terms");
    }
    const QComplex x = parse_point(point);
    const QuadratureSpec q{nd[0], nd[1]};

    Cp1FitRun run;
    try {
        run = fit_cp1(p, ms, q, x, terms, threads);
    } catch (const std::domain_error &e) {
        throw InputError(e.what());
    }
    const FitReport &f = run.fit;
    const auto fl = [precision](double v) { return rounded(v, precision); };
    auto floats = [&](const std::vector<double> &v) {
        json a = json::array();
        for (double d : v) {
            a.push_back(fl(d));
        }
        return a;
    };
    json samples = json::array();
    for (const auto &s : f.samples) {
        samples.push_back({{"m", s.m}, {"density_over_m", fl(s.density_over_m)}});
    }
    Outcome o;
    o.digest_source = "fit-cp1|" + mode + "|" + to_string(eps) + "|" + m_spec + "|" + nodes + "|" + point + "|" +
                      std::to_string(terms);
    o.payload = {{"perturbation", {{"mode", p.mode_string()}, {"eps", to_string(p.eps)}, {"K", p.K}}},
                 {"point", {to_string(x.re), to_string(x.im)}},
                 {"quadrature", {{"radial", q.radial}, {"angular", q.angular}}},
                 {"terms", terms},
                 {"samples", samples},
                 {"fitted", floats(f.fitted)},
                 {"reference", rationals(f.reference)},
                 {"abs_error", floats(f.abs_error)},
                 {"rel_error", floats(f.rel_error)},
                 {"residual_norm", fl(f.residual_norm)},
                 {"condition", fl(f.condition)},
                 {"tolerance", {{"a1", tol_a1}, {"a2", tol_a2}}}};
    o.pass = f.rel_error.size() > 2 && f.rel_error[1] <= tol_a1 && f.rel_error[2] <= tol_a2;
    return o;
}

// ---- moments / gen-jet

Outcome cmd_moments(const std::string &P_s, const std::string &Q_s, int q, int n)
{
    const MultiIndex P(parse_int_list(P_s, "P"));
    const MultiIndex Q(parse_int_list(Q_s, "Q"));
    if (P.size() != n || Q.size() != n) {
        throw InputError("P and Q must have --n = " + std::to_string(n) + " entries");
    }
    for (int i = 0; i < n; ++i) {
        if (P[i] < 0 || Q[i] < 0) {
            throw InputError("multi-index entries must be non-negative");
        }
    }
    if (q < 0) {
        throw InputError("q must be non-negative");
    }
    const AsymptoticSeries s = monomial_moment(P, Q, q, n);
    std::string value = "0";
    if (!s.is_zero()) {
        const Rational c = s.coeffs()[0].re;
        const std::string cs = to_string(c);
        value = (c.get_den() == 1 ? c.get_num().get_str() : "(" + cs + ")") + "/m^" + std::to_string(s.lead2() / 2);
    }
    Outcome o;
    o.digest_source = "moments|" + P_s + "|" + Q_s + "|" + std::to_string(q) + "|" + std::to_string(n);
    o.payload = {{"P", P.exponents()}, {"Q", Q.exponents()}, {"q", q}, {"n", n}, {"value", value}};
    return o;
}

std::string command_echo(const std::vector<std::string> &args)
{
    std::string s;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (i > 1) {
            s += ' ';
        }
        s += args[i];
    }
    return s;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    const auto start = std::chrono::steady_clock::now();
    const int threads = thread_count_from_env();

    CLI::App app{"Bergman density expansion coefficients and checks"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand
    int precision = 12;
    app.add_option("--precision", precision, "significant digits for floating-point output")
        ->check(CLI::Range(1, 17));

    auto *coeffs = app.add_subcommand("coeffs", "density coefficients a0..a3 of a K-gauge jet file");
    std::string potential_file, path = "both";
    int order = 3;
    coeffs->add_option("--potential", potential_file, "jet JSON file")->required();
    coeffs->add_option("--order", order, "highest coefficient")->check(CLI::Range(0, 3));
    coeffs->add_option("--path", path, "brute|closed|both")->check(CLI::IsMember({"brute", "closed", "both"}));

    auto *verify = app.add_subcommand("verify", "identity suite on random K-gauge jets");
    std::string suite = "all", method = "polynomial";
    int vn = 2, degree = 8, trials = 1;
    std::uint64_t seed = 1;
    verify->add_option("--suite", suite, "all|prop44|claims|prop52|prop53|sigma3|dual");
    verify->add_option("--n", vn, "dimension");
    verify->add_option("--degree", degree, "jet degree");
    verify->add_option("--trials", trials, "number of random jets");
    verify->add_option("--seed", seed, "seed of the first jet");
    verify->add_option("--method", method, "polynomial|permutation")
        ->check(CLI::IsMember({"polynomial", "permutation"}));

    auto *cpn = app.add_subcommand("cpn", "CP^n exact density check");
    int cn = 1, corder = 3;
    cpn->add_option("--n", cn, "dimension")->required();
    cpn->add_option("--order", corder, "highest coefficient");

    auto *rr = app.add_subcommand("rr", "Riemann-Roch check on CP^n");
    int rn = 1;
    std::string rm = "1,2,3,4,5,10,20";
    rr->add_option("--n", rn, "dimension")->required();
    rr->add_option("--m", rm, "comma-separated tensor powers");

    auto *fit = app.add_subcommand("fit-cp1", "numeric Bergman density on CP^1 and coefficient fit");
    std::string eps = "0.05", mode = "sym", mrange = "20:60:4", nodes = "200,0", point = "0";
    int terms = 4;
    double tol_a1 = 0.01, tol_a2 = 0.10;
    fit->add_option("--eps", eps, "perturbation size (decimal or p/q)");
    fit->add_option("--mode", mode, "none|sym|freqK");
    fit->add_option("--m", mrange, "START:END:STEP");
    fit->add_option("--nodes", nodes, "RADIAL,ANGULAR (0 = 2m+64)");
    fit->add_option("--point", point, "X or X,Y (rational)");
    fit->add_option("--terms", terms, "number of 1/m^j terms in the fit");
    fit->add_option("--tol-a1", tol_a1, "relative tolerance on a1");
    fit->add_option("--tol-a2", tol_a2, "relative tolerance on a2");

    auto *moments = app.add_subcommand("moments", "Gaussian moment of z^P zbar^Q |z|^{2q}");
    std::string mp, mq;
    int mqq = 0, mn = 1;
    moments->add_option("P", mp, "comma-separated exponents")->required();
    moments->add_option("Q", mq, "comma-separated exponents")->required();
    moments->add_option("q", mqq, "power of |z|^2")->required();
    moments->add_option("--n", mn, "dimension")->required();

    auto *gen = app.add_subcommand("gen-jet", "random K-gauge jet as a JSON file");
    int gn = 2, gdeg = 8, gbound = 3;
    std::uint64_t gseed = 1;
    gen->add_option("--n", gn, "dimension");
    gen->add_option("--degree", gdeg, "jet degree");
    gen->add_option("--seed", gseed, "seed");
    gen->add_option("--bound", gbound, "coefficient magnitude bound");

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::ParseError &e) {
        err << e.what() << "\n";
        out << json{{"command", command_echo(args)}, {"error", e.what()}, {"pass", false}}.dump(2) << "\n";
        return exit_input_error;
    }

    Outcome o;
    try {
        if (*gen) {
            if (gn < 1 || gn > 4 || gdeg < 4 || gdeg > 12 || gbound < 1) {
                throw InputError("gen-jet: need 1 <= n <= 4, 4 <= degree <= 12, bound >= 1");
            }
            // the bare jet document, so the output can be fed to `coeffs --potential`
            out << jet_to_json(random_kgauge_jet(gn, gdeg, gseed, gbound)).dump(2) << "\n";
            return exit_pass;
        }
        if (*coeffs) {
            o = cmd_coeffs(potential_file, order, path);
        } else if (*verify) {
            o = cmd_verify(suite, vn, degree, trials, seed, method, threads);
        } else if (*cpn) {
            o = cmd_cpn(cn, corder);
        } else if (*rr) {
            o = cmd_rr(rn, rm);
        } else if (*fit) {
            o = cmd_fit(eps, mode, mrange, nodes, point, terms, tol_a1, tol_a2, precision, threads);
        } else if (*moments) {
            o = cmd_moments(mp, mq, mqq, mn);
        }
    } catch (const InputError &e) {
        err << "input error: " << e.what() << "\n";
        out << json{{"command", command_echo(args)}, {"error", e.what()}, {"pass", false}}.dump(2) << "\n";
        return exit_input_error;
    } catch (const TruncationError &e) {
        err << "input error: " << e.what() << "\n";
        out << json{{"command", command_echo(args)}, {"error", e.what()}, {"pass", false}}.dump(2) << "\n";
        return exit_input_error;
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const json report = {{"command", command_echo(args)},
                         {"digest", fnv1a_hex(o.digest_source)},
                         {"payload", o.payload},
                         {"pass", o.pass},
                         {"duration_seconds", rounded(secs, 4)}};
    out << report.dump(2) << "\n";
    return o.pass ? exit_pass : exit_check_failed;
}

} // namespace bergman
