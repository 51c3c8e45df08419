#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <bergman/cli.hpp>
#include <bergman/curvature.hpp>
#include <bergman/expansion.hpp>
#include <bergman/jet.hpp>

using namespace bergman;
using nlohmann::json;

namespace
{

struct Result {
    int code;
    std::string out;
    std::string err;
    json doc() const { return json::parse(out); }
};

Result call(std::vector<std::string> args)
{
    args.insert(args.begin(), "bergman");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / "bergman_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST(Cli, ProjectiveSpaceCoefficients)
{
    const Result r = call({"cpn", "--n", "2", "--order", "3"});
    EXPECT_EQ(r.code, 0);
    const json d = r.doc();
    EXPECT_EQ(d["payload"]["a"], json({"1/1", "3/1", "2/1", "0/1"}));
    EXPECT_TRUE(d["pass"].get<bool>());
    EXPECT_EQ(d["command"], "cpn --n 2 --order 3");
    EXPECT_EQ(d["digest"].get<std::string>().size(), 16u);
}

TEST(Cli, MomentTerm)
{
    const Result r = call({"moments", "2,1", "2,1", "2", "--n", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.doc()["payload"]["value"], "60/m^7");
    EXPECT_EQ(call({"moments", "1,0", "0,1", "0", "--n", "2"}).doc()["payload"]["value"], "0");
    EXPECT_EQ(call({"moments", "1,0", "1,0", "0", "--n", "3"}).code, 2);
}

TEST(Cli, ClaimsSuiteTable)
{
    const Result r = call({"verify", "--suite", "claims", "--n", "2", "--degree", "8", "--trials", "5", "--seed", "1"});
    EXPECT_EQ(r.code, 0);
    const json d = r.doc();
    const json &rows = d["payload"]["residuals"];
    ASSERT_EQ(rows.size(), 65u);
    for (const auto &row : rows) {
        EXPECT_EQ(row["residual"], "0/1");
    }
}

TEST(Cli, InputErrorsExitTwo)
{
    const auto bad = scratch("bad.json");
    std::ofstream(bad) << R"({"n": 2, "max_degree": 8, "terms": [{"zi": [2, 0], "zbar": [2], "re": "1"}]})";
    const Result r = call({"coeffs", "--potential", bad.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.doc()["error"].get<std::string>().find("/terms/0/zbar"), std::string::npos);

    const Result low = call({"verify", "--suite", "claims", "--degree", "6"});
    EXPECT_EQ(low.code, 2);
    EXPECT_NE(low.doc()["error"].get<std::string>().find("at least 8"), std::string::npos);

    EXPECT_EQ(call({"coeffs", "--potential", scratch("missing.json").string()}).code, 2);
    EXPECT_EQ(call({"verify", "--suite", "nonsense"}).code, 2);
    EXPECT_EQ(call({"frobnicate"}).code, 2);
    EXPECT_EQ(call({"fit-cp1", "--m", "10:12:1"}).code, 2);
    EXPECT_EQ(call({"fit-cp1", "--mode", "sym", "--eps", "1"}).code, 2);
}

TEST(Cli, DegreeTooLowForOrderNamesMinimum)
{
    const auto f = scratch("low.json");
    const Result gen = call({"gen-jet", "--n", "2", "--degree", "6", "--seed", "3"});
    std::ofstream(f) << gen.out;
    const Result r = call({"coeffs", "--potential", f.string(), "--order", "3"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.doc()["error"].get<std::string>().find("at least 8"), std::string::npos);
    const Result ok = call({"coeffs", "--potential", f.string(), "--order", "2"});
    EXPECT_EQ(ok.code, 0);
    EXPECT_FALSE(ok.doc()["payload"].contains("a3"));
}

TEST(Cli, GeneratedJetRoundTrip)
{
    const Result gen = call({"gen-jet", "--n", "2", "--degree", "8", "--seed", "17"});
    ASSERT_EQ(gen.code, 0);
    const auto f = scratch("gen17.json");
    std::ofstream(f) << gen.out;
    const Result r = call({"coeffs", "--potential", f.string()});
    ASSERT_EQ(r.code, 0);
    const json p = r.doc()["payload"];
    EXPECT_TRUE(p["paths_agree"].get<bool>());

    const DensityCoefficients d = density_coeffs_bruteforce(random_kgauge_jet(2, 8, 17));
    EXPECT_EQ(p["a1"], to_string(d.a1));
    EXPECT_EQ(p["a2"], to_string(d.a2));
    EXPECT_EQ(p["a3"], to_string(d.a3));
}

TEST(Cli, DeterministicAcrossThreadCounts)
{
    const std::vector<std::string> args = {"verify", "--suite", "all", "--n", "2", "--trials", "4", "--seed", "9"};
    setenv("BERGMAN_THREADS", "1", 1);
    const Result a = call(args);
    setenv("BERGMAN_THREADS", "3", 1);
    const Result b = call(args);
    unsetenv("BERGMAN_THREADS");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.doc()["payload"].dump(), b.doc()["payload"].dump());
    EXPECT_EQ(a.doc()["digest"], b.doc()["digest"]);
}

TEST(Cli, RiemannRochAndFit)
{
    const Result rr = call({"rr", "--n", "3"});
    EXPECT_EQ(rr.code, 0);
    EXPECT_EQ(rr.doc()["payload"]["binomial"], json({"1/6", "1/1", "11/6", "1/1"}));

    const Result fit = call({"fit-cp1", "--eps", "0.05", "--mode", "sym", "--m", "20:60:4", "--nodes", "200,0",
                             "--point", "0", "--precision", "6"});
    const Result before = call({"--precision", "6", "fit-cp1", "--m", "20:60:4"});
    EXPECT_EQ(before.code, 0);
    EXPECT_EQ(fit.code, 0);
    const json p = fit.doc()["payload"];
    EXPECT_EQ(p["perturbation"]["mode"], "sym");
    EXPECT_EQ(p["perturbation"]["eps"], "1/20");
    EXPECT_EQ(p["samples"].size(), 11u);
    EXPECT_LE(p["fitted"][1].dump().size(), 9u);
}

TEST(Cli, FnvDigest)
{
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}
