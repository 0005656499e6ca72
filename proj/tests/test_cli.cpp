#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace kgrundy;

namespace
{
    struct Outcome
    {
        int status;
        std::string out;
        std::string err;
    };

    auto run(std::vector<std::string> args, const std::string & input = "") -> Outcome
    {
        std::istringstream in(input);
        std::ostringstream out, err;
        int status = cli::run(args, in, out, err);
        return { status, out.str(), err.str() };
    }

    auto temp_file(const std::string & name, const std::string & contents) -> std::string
    {
        auto path = (std::filesystem::temp_directory_path() / ("kgrundy-test-" + name)).string();
        std::ofstream(path) << contents;
        return path;
    }
}

TEST(Cli, SolveCycle)
{
    auto r = run({ "solve", "--family", "cycle:6", "--variant", "plain", "--k", "2" });
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("value: 5"), std::string::npos);
    EXPECT_NE(r.out.find("sequence: "), std::string::npos);
}

TEST(Cli, JsonMatchesHuman)
{
    auto human = run({ "solve", "--family", "kbipartite:3,2", "--variant", "z", "--k", "2" });
    auto js = run({ "solve", "--family", "kbipartite:3,2", "--variant", "z", "--k", "2", "--format", "json" });
    ASSERT_EQ(js.status, 0) << js.err;
    auto j = json::parse(js.out);
    EXPECT_EQ(j.at("value"), 4);
    EXPECT_NE(human.out.find("value: " + std::to_string(j.at("value").get<int>())), std::string::npos);
    std::string seq;
    for (const auto & v : j.at("certificate").at("sequence"))
        seq += (seq.empty() ? "" : " ") + std::to_string(v.get<int>());
    EXPECT_NE(human.out.find("sequence: " + seq + "\n"), std::string::npos);
}

TEST(Cli, OutputStableAcrossJobs)
{
    auto one = run({ "solve", "--family", "hypercube:4", "--variant", "l", "--k", "2", "--format", "json" });
    auto four = run({ "solve", "--family", "hypercube:4", "--variant", "l", "--k", "2", "--format", "json", "--jobs", "4" });
    EXPECT_EQ(one.out, four.out);
    auto a1 = run({ "audit", "--random", "12,7,0.5", "--seed", "3", "--format", "json" });
    auto a3 = run({ "audit", "--random", "12,7,0.5", "--seed", "3", "--format", "json", "--jobs", "3" });
    EXPECT_EQ(a1.status, 0) << a1.err;
    EXPECT_EQ(a1.out, a3.out);
}

TEST(Cli, SolveWitnessVerifies)
{
    for (std::string variant : { "plain", "total", "z", "l" }) {
        auto solved = run({ "solve", "--family", "grid:3,3", "--variant", variant, "--k", "2", "--format", "json", "--allow-z-below-delta" });
        ASSERT_EQ(solved.status, 0) << solved.err;
        auto verified = run({ "verify", "--family", "grid:3,3", "--certificate", "-" }, solved.out);
        EXPECT_EQ(verified.status, 0) << verified.out << verified.err;
        EXPECT_NE(verified.out.find("valid"), std::string::npos);
    }
}

TEST(Cli, VerifyDuplicate)
{
    auto g = temp_file("c5.g6", "Dhc\n");
    auto cert = temp_file("bad.json", R"({"variant": "l", "k": 2, "sequence": [0, 1, 0]})");
    auto r = run({ "verify", "--graph", g, "--certificate", cert });
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.out.find("duplicate vertex 0 at index 3"), std::string::npos) << r.out;
    auto text = temp_file("good.txt", "plain 2\n0 1 2 3\n");
    EXPECT_EQ(run({ "verify", "--graph", g, "--certificate", text }).status, 0);
}

TEST(Cli, WitnessGadget)
{
    auto r = run({ "witness", "--construction", "gadget", "--h", "3", "--verify" });
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("length 14"), std::string::npos);
    EXPECT_NE(r.out.find("verified"), std::string::npos);
    auto cube = run({ "witness", "--construction", "hypercube", "--d", "4", "--k", "3", "--verify", "--format", "json" });
    EXPECT_EQ(json::parse(cube.out).at("length"), 15);
}

TEST(Cli, BoundsAndClosedForm)
{
    auto r = run({ "bounds", "--family", "hypercube:6", "--variant", "l", "--k", "5", "--format", "json" });
    ASSERT_EQ(r.status, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j.at("lower"), 63);
    EXPECT_EQ(j.at("upper"), 63);
    auto csv = run({ "bounds", "--family", "cycle:7", "--variant", "total", "--k", "2", "--format", "csv" });
    EXPECT_EQ(csv.out, "family,params,variant,k,exact,lower,upper,source\ncycle,\"7\",total,2,7,7,7,\"cycles, 2-t-sequences\"\n");
    auto na = run({ "bounds", "--family", "gadget:3", "--variant", "l", "--k", "2" });
    EXPECT_EQ(na.status, 0);
    EXPECT_NE(na.out.find("not applicable"), std::string::npos);
}

TEST(Cli, Forcing)
{
    auto r = run({ "forcing", "--family", "cycle:5", "--k", "2", "--format", "json" });
    ASSERT_EQ(r.status, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j.at("forcing_number"), 1);
    EXPECT_EQ(j.at("z_certificate").at("sequence").size(), 4u);
    auto stuck = run({ "forcing", "--family", "path:3", "--k", "1", "--initial", "1" });
    EXPECT_EQ(stuck.status, 0);
    EXPECT_NE(stuck.out.find("final blue: 1 of 3"), std::string::npos);
}

TEST(Cli, Family)
{
    auto r = run({ "family", "--family", "gadget:3", "--format", "json" });
    auto j = json::parse(r.out);
    EXPECT_EQ(j.at("n"), 14);
    EXPECT_EQ(j.at("edges"), 20);
    EXPECT_EQ(j.at("min_degree"), 2);
    EXPECT_EQ(run({ "family", "--family", "complete:4", "--emit", "g6" }).out, "C~\n");
    auto edges = run({ "family", "--family", "path:3", "--emit", "edges" }).out;
    auto back = run({ "family", "--graph", "-", "--graph-format", "edges", "--emit", "g6" }, edges);
    EXPECT_EQ(back.out, run({ "family", "--family", "path:3", "--emit", "g6" }).out);
}

TEST(Cli, AuditOutputs)
{
    auto input = temp_file("small.g6", "A_\nBw\nC~\n");
    auto r = run({ "audit", "--input", input, "--ks", "1,2", "--format", "json" });
    ASSERT_EQ(r.status, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        auto j = json::parse(line);
        EXPECT_EQ(j.at("index"), count);
        ++count;
    }
    EXPECT_EQ(count, 3);
    auto csv = run({ "audit", "--input", input, "--format", "csv" });
    EXPECT_EQ(csv.out.substr(0, 9), "campaign,");
    auto raw = run({ "audit", "--family", "complete:2", "--ks", "2", "--raw" });
    EXPECT_EQ(raw.status, 1);
    EXPECT_NE(raw.out.find("FAIL plain_le_l_minus_1"), std::string::npos);
}

TEST(Cli, Conjectures)
{
    auto f = run({ "conjecture", "forcing", "--family", "cycle:5", "--k", "2" });
    EXPECT_EQ(f.status, 0) << f.err;
    EXPECT_NE(f.out.find("equal"), std::string::npos);
    auto cube = run({ "conjecture", "cube", "--d", "5", "--k", "4", "--format", "json" });
    EXPECT_EQ(json::parse(cube.out).at("status"), "CONFIRMED-BY-BOUND-PINCH");
    auto product = run({ "conjecture", "product", "--left", "path:2", "--right", "path:3", "--k", "2", "--format", "json" });
    EXPECT_EQ(json::parse(product.out).at("status"), "SKIPPED-HYPOTHESIS");
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).status, 2);
    EXPECT_EQ(run({ "frobnicate" }).status, 2);
    EXPECT_EQ(run({ "solve", "--family", "cycle:6", "--variant", "plain" }).status, 2);
    EXPECT_EQ(run({ "solve", "--family", "cycle:6", "--graph", "x.g6", "--variant", "plain", "--k", "2" }).status, 2);
    EXPECT_EQ(run({ "solve", "--variant", "plain", "--k", "2" }).status, 2);
    EXPECT_EQ(run({ "solve", "--family", "torus:3", "--variant", "plain", "--k", "2" }).status, 2);
    EXPECT_EQ(run({ "solve", "--graph", "/nonexistent/g.g6", "--variant", "plain", "--k", "2" }).status, 2);
    auto cap = run({ "solve", "--family", "grid:5,5", "--variant", "l", "--k", "2" });
    EXPECT_EQ(cap.status, 2);
    EXPECT_NE(cap.err.find("bounds"), std::string::npos);
    EXPECT_EQ(run({ "solve", "--family", "path:4", "--variant", "z", "--k", "2" }).status, 2);
    auto bad = temp_file("loop.edges", "0 1\n1 1\n");
    auto parse = run({ "solve", "--graph", bad, "--variant", "plain", "--k", "1" });
    EXPECT_EQ(parse.status, 2);
    EXPECT_NE(parse.err.find("byte 4"), std::string::npos) << parse.err;
    EXPECT_EQ(run({ "--help" }).status, 0);
}
