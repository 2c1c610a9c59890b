#include "coverkit/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace coverkit;
using coverkit::io::Json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(COVERKIT_FIXTURES) + "/" + name; }

std::string slurp(const std::string& path)
{
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const std::vector<std::string> valid_covers{
    "covers/quartic_double_plane.json", "covers/octic_double_plane.json",   "covers/sextic_triple_plane.json",
    "covers/bidouble_three_conics.json", "covers/bidouble_quadric.json",     "covers/chain_3x3_abelian.json",
    "covers/genus_two_curve.json"};

}  // namespace

TEST(Cli, GroupTableHasOneRowPerNonzeroElement)
{
    auto r = run({"group", "--factors", "2,2"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    int data_rows = 0;
    while (std::getline(lines, line))
        if (line.rfind("| ", 0) == 0 && line.find("generator") == std::string::npos) ++data_rows;
    EXPECT_EQ(data_rows, 3);

    auto j = Json::parse(run({"group", "--factors", "2,2", "--format", "json", "--aut"}).out);
    EXPECT_EQ(j["I_G_size"], 3);
    EXPECT_EQ(j["aut_order"], 6);
}

TEST(Cli, GroupBoundCommand)
{
    auto r = run({"prop66", "--n", "3", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["predicted_order"], 9);
    EXPECT_EQ(j["K2_quoted"], "64");
    EXPECT_EQ(j["bound_quoted"], true);
    EXPECT_NE(run({"prop66", "--n", "3"}).out.find("Z_3 x Z_3"), std::string::npos);
    EXPECT_EQ(run({"prop66", "--n", "1"}).code, cli::invalid);
}

TEST(Cli, ChainFamilyCommand)
{
    auto r = run({"construction62", "--d", "3,3", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = Json::parse(r.out);
    ASSERT_EQ(j["components"].size(), 3u);
    EXPECT_EQ(j["components"][0]["predicted"]["order"], 1);
    EXPECT_EQ(j["components"][1]["predicted"]["order"], 3);
    EXPECT_EQ(j["components"][2]["predicted"]["order"], 9);
    EXPECT_EQ(run({"construction62", "--d", "3,3", "--base", "P2", "--xi", "3"}).code, cli::invalid);
    EXPECT_EQ(run({"construction62", "--d", "2,3"}).code, cli::invalid);
}

TEST(Cli, ResolveCommand)
{
    auto r = run({"resolve", "--n", "3", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["steps"].back()["ledger_text"], "D + 2E1 + 3E2 + 6F");
    EXPECT_EQ(j["audit"], "passed");
    EXPECT_EQ(run({"resolve", "--n", "1"}).code, cli::invalid);
    EXPECT_EQ(run({"resolve", "--n", "4", "--case", "sideways"}).code, cli::invalid);
    EXPECT_EQ(run({"resolve", "--n", "5", "--case", "h-vanishing"}).code, 0);
}

TEST(Cli, CheckAcceptsTheWorkedExamples)
{
    for (const auto& name : valid_covers) {
        auto r = run({"cover", "check", fixture(name)});
        EXPECT_EQ(r.code, 0) << name << ": " << r.err << r.out;
    }
}

TEST(Cli, CheckFlagsTriplePoints)
{
    auto r = run({"cover", "check", fixture("covers/bidouble_triple_point.json"), "--format", "json"});
    EXPECT_EQ(r.code, cli::invalid);
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["smoothness"]["all_injective"], false);
    EXPECT_EQ(j["fundamental_relations"], "hold");
}

TEST(Cli, InvalidInputsExitTwo)
{
    EXPECT_EQ(run({"cover", "check", fixture("covers/malformed.json")}).code, cli::invalid);
    EXPECT_EQ(run({"cover", "check", fixture("covers/not_integral.json")}).code, cli::invalid);
    EXPECT_EQ(run({"cover", "check", fixture("covers/does_not_exist.json")}).code, cli::invalid);
    EXPECT_EQ(run({"cover", "check"}).code, cli::invalid);
    EXPECT_EQ(run({"cover", "check", "--json", R"({"schema": 2})"}).code, cli::invalid);
    EXPECT_EQ(run({"cover", "check", "--json", R"({"schema": 1, "group": [2], "inertia": [[1]], "base": "P2",
                                                   "branch_classes": [[2]], "colour": "blue"})"})
                  .code,
              cli::invalid);
    EXPECT_EQ(run({"cover", "check", "--json", R"({"schema": 1, "group": [2], "inertia": [[3]], "base": "P2",
                                                   "branch_classes": [[2]]})"})
                  .code,
              cli::invalid);
}

TEST(Cli, UsageErrorsExitOne)
{
    EXPECT_EQ(run({}).code, cli::usage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::usage);
    EXPECT_EQ(run({"group"}).code, cli::usage);
    EXPECT_EQ(run({"group", "--factors", "2", "--format", "yaml"}).code, cli::usage);
    EXPECT_EQ(run({"--help"}).code, cli::ok);
}

TEST(Cli, InvariantsOfDoublePlanes)
{
    auto quartic = Json::parse(run({"cover", "invariants", fixture("covers/quartic_double_plane.json"), "--format", "json"}).out);
    EXPECT_EQ(quartic["KX_squared"], "2");
    EXPECT_EQ(quartic["euler_number"], "10");
    EXPECT_EQ(quartic["chi_OX"], "1");
    auto octic = Json::parse(run({"cover", "invariants", fixture("covers/octic_double_plane.json"), "--format", "json"}).out);
    EXPECT_EQ(octic["KX_squared"], "2");
    EXPECT_EQ(octic["euler_number"], "46");
    auto curve = Json::parse(run({"cover", "invariants", fixture("covers/genus_two_curve.json"), "--format", "json"}).out);
    EXPECT_EQ(curve["genus"], 2);
}

TEST(Cli, StrictModeTurnsUnknownsIntoExitThree)
{
    auto triple = fixture("covers/bidouble_triple_point.json");
    EXPECT_EQ(run({"cover", "invariants", triple}).code, 0);
    EXPECT_EQ(run({"cover", "invariants", triple, "--strict"}).code, cli::unknown_result);

    const std::string undecided =
        R"({"schema": 1, "group": [3], "inertia": [[1]], "base": {"preset": "curve_product", "genus": 3},
            "branch_classes": [[6, 6]]})";
    EXPECT_EQ(run({"cover", "deformations", "--json", undecided}).code, 0);
    EXPECT_EQ(run({"cover", "deformations", "--json", undecided, "--strict"}).code, cli::unknown_result);

    const std::string small = R"({"schema": 1, "group": [2], "inertia": [[1]], "base": {"preset": "curve_product", "genus": 3},
                                  "branch_classes": [[2, 2]]})";
    EXPECT_EQ(run({"moduli-dim", "--json", small}).code, 0);
    EXPECT_EQ(run({"moduli-dim", "--json", small, "--strict"}).code, cli::unknown_result);

    ::setenv("COVERKIT_STRICT", "1", 1);
    EXPECT_EQ(run({"moduli-dim", "--json", small}).code, cli::unknown_result);
    ::unsetenv("COVERKIT_STRICT");
}

TEST(Cli, ModuliOfTheFixtures)
{
    auto q = Json::parse(run({"moduli-dim", fixture("covers/quartic_double_plane.json"), "--format", "json"}).out);
    EXPECT_EQ(q["dimension"], 15 - 1 - 8);
    auto o = Json::parse(run({"moduli-dim", fixture("covers/octic_double_plane.json"), "--format", "json"}).out);
    EXPECT_EQ(o["dimension"], 45 - 1 - 8);
}

TEST(Cli, DeformationsOfTheTriplePlane)
{
    auto r = run({"cover", "deformations", fixture("covers/sextic_triple_plane.json"), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["fixed_base_parameter_count"], 43);
    EXPECT_EQ(j["natural_deformation_dim"], 27 + 15);
    EXPECT_EQ(j["predicted_automorphisms"]["order"], 1);
    EXPECT_EQ(j["moduli"]["dimension"], 28 - 1 - 8);
    EXPECT_EQ(j["cstar_weights"][0]["exponents"], Json::array({3}));
}

TEST(Cli, EmitMatchesTheFixtures)
{
    const std::string z2 = R"({"schema": 1, "group": [2], "inertia": [[1]], "base": "P2", "branch_classes": [[2]]})";
    EXPECT_EQ(run({"cover", "emit", "--galois", "--json", z2}).out, slurp(fixture("emitter/z2_galois.txt")));
    auto bidouble = run({"cover", "emit", "--galois", fixture("covers/bidouble_three_conics.json")});
    EXPECT_EQ(bidouble.out, slurp(fixture("emitter/z2x2_galois.txt")));
    auto singular = run({"cover", "emit", "--flavor", "singular", "--json", z2});
    EXPECT_NE(singular.out.find("ring R = 0"), std::string::npos);
    EXPECT_EQ(run({"cover", "emit", "--flavor", "maple", "--json", z2}).code, cli::usage);
}

TEST(Cli, CoverJsonRoundTripIsIdempotent)
{
    for (const auto& name : valid_covers) {
        auto first = Json::parse(run({"cover", "check", fixture(name), "--format", "json"}).out);
        auto again = run({"cover", "check", "--json", first["cover"].dump(), "--format", "json"});
        ASSERT_EQ(again.code, 0) << name << ": " << again.err;
        auto second = Json::parse(again.out);
        EXPECT_EQ(first, second) << name;

        auto parsed = io::parse_cover(Json::parse(slurp(fixture(name))));
        auto echoed = io::parse_cover(io::cover_json(parsed.cover));
        EXPECT_EQ(io::cover_json(parsed.cover), io::cover_json(echoed.cover)) << name;
    }
}

TEST(Cli, MarkdownOutputsRender)
{
    for (const auto& name : valid_covers)
        for (const std::string sub : {"check", "invariants", "deformations"}) {
            auto r = run({"cover", sub, fixture(name)});
            EXPECT_EQ(r.code, 0) << name << " " << sub << ": " << r.err;
            EXPECT_FALSE(r.out.empty());
        }
    EXPECT_NE(run({"construction62", "--d", "2,2"}).out.find("fallback character"), std::string::npos);
}
