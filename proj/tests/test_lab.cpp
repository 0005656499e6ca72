#include <kgrundy/family.hpp>
#include <kgrundy/lab.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace kgrundy;

namespace
{
    auto named(const std::vector<Graph> & graphs) -> std::vector<NamedGraph>
    {
        std::vector<NamedGraph> out;
        for (std::size_t i = 0 ; i < graphs.size() ; ++i)
            out.push_back({ "g" + std::to_string(i), graphs[i] });
        return out;
    }
}

TEST(Audit, CompleteGraphChain)
{
    AuditOptions options;
    options.ks = { 1, 2, 3 };
    auto report = audit_bounds({ { "complete:4", generate(family::Complete{ 4 }) } }, options);
    ASSERT_EQ(report.instances.size(), 1u);
    const auto & rec = report.instances[0];
    EXPECT_FALSE(rec.failed());
    for (const auto & kv : rec.values) {
        EXPECT_EQ(kv[Variant::Plain], kv.k);
        EXPECT_EQ(kv[Variant::L], kv.k + 1);
        EXPECT_EQ(kv[Variant::Total], kv.k + 1);
        EXPECT_EQ(kv[Variant::Z], kv.k);
    }
    // the tight cases: plain = L - 1 and total = L
    for (const auto & c : rec.checks)
        if (c.name == "plain_le_l_minus_1" || c.name == "total_le_l") {
            EXPECT_NE(c.detail.find("tight"), std::string::npos) << c.name << ": " << c.detail;
        }
}

TEST(Audit, EmptyStream)
{
    auto report = audit_bounds({}, AuditOptions{});
    EXPECT_TRUE(report.instances.empty());
    EXPECT_EQ(to_json_lines(report), "");
}

TEST(Audit, SmallCatalogPasses)
{
    auto report = audit_bounds(named(oracle::catalog(5)), AuditOptions{});
    EXPECT_EQ(report.count(CheckStatus::Fail), 0u);
    EXPECT_GT(report.count(CheckStatus::Pass), 0u);
}

TEST(Audit, CapacitySkipIsRecorded)
{
    auto report = audit_bounds({ { "grid:5,5", generate(family::Grid{ 5, 5 }) } }, AuditOptions{});
    ASSERT_TRUE(report.instances[0].skipped.has_value());
    auto line = json::parse(to_json_lines(report));
    EXPECT_TRUE(line.contains("skipped"));
}

TEST(Audit, RawChainFailsBelowMinimumDegreeAndReplays)
{
    // K_2 with k = 2 is outside delta >= k: plain = 2 = L, so plain <= L - 1 fails
    AuditOptions raw;
    raw.ks = { 2 };
    raw.respect_hypotheses = false;
    auto report = audit_bounds({ { "complete:2", generate(family::Complete{ 2 }) } }, raw);
    ASSERT_TRUE(report.instances[0].failed());
    auto line = json::parse(to_json_lines(report));
    ASSERT_TRUE(line.contains("counterexample"));
    EXPECT_TRUE(replay_failure(line));

    AuditOptions gated = raw;
    gated.respect_hypotheses = true;
    auto ok = audit_bounds({ { "complete:2", generate(family::Complete{ 2 }) } }, gated);
    EXPECT_FALSE(ok.instances[0].failed());
    EXPECT_GT(ok.count(CheckStatus::Skipped), 0u);
    EXPECT_FALSE(replay_failure(json::parse(to_json_lines(ok))));
}

TEST(Audit, TamperedCertificateDoesNotReplay)
{
    AuditOptions raw;
    raw.ks = { 2 };
    raw.respect_hypotheses = false;
    auto report = audit_bounds({ { "complete:2", generate(family::Complete{ 2 }) } }, raw);
    auto line = json::parse(to_json_lines(report));
    line["counterexample"]["certificates"]["plain_k2"]["sequence"] = json::array({ 0, 0 });
    EXPECT_FALSE(replay_failure(line));
}

TEST(Audit, DeterministicAcrossJobs)
{
    auto stream = named(oracle::random_graphs(30, 8, 123));
    AuditOptions one, four;
    four.jobs = 4;
    EXPECT_EQ(to_json_lines(audit_bounds(stream, one)), to_json_lines(audit_bounds(stream, four)));
    EXPECT_EQ(csv_summary(audit_bounds(stream, one)), csv_summary(audit_bounds(stream, four)));
}

TEST(Audit, FullLFilter)
{
    AuditOptions options;
    options.ks = { 2 };
    auto report = audit_bounds({ { "gadget:3", generate(family::TreeCycleGadget{ 3 }) }, { "path:4", generate(family::Path{ 4 }) },
                                   { "complete:5", generate(family::Complete{ 5 }) } }, options);
    EXPECT_EQ(report.instances[0].full_l, (std::vector<int>{ 2 }));
    EXPECT_TRUE(report.instances[2].full_l.empty());
    auto filtered = to_json_lines(report, true);
    EXPECT_NE(filtered.find("gadget:3"), std::string::npos);
    EXPECT_EQ(filtered.find("complete:5"), std::string::npos);
}

TEST(ForcingConjecture, Examples)
{
    auto c5 = check_forcing_conjecture(generate(family::Cycle{ 5 }), 2);
    EXPECT_EQ(c5.zk, 4);
    EXPECT_EQ(c5.n_minus_fk, 4);
    EXPECT_TRUE(c5.equal);

    auto k33 = check_forcing_conjecture(generate(family::CompleteBipartite{ 3, 3 }), 2);
    EXPECT_EQ(k33.zk, 4);
    EXPECT_EQ(k33.n_minus_fk, 6 - oracle::brute_forcing_number(generate(family::CompleteBipartite{ 3, 3 }), 2));

    auto k3 = check_forcing_conjecture(generate(family::Complete{ 3 }), 1);
    EXPECT_EQ(k3.zk, 1);
    EXPECT_EQ(k3.forcing_number, 2);
    EXPECT_TRUE(k3.equal);

    EXPECT_THROW(check_forcing_conjecture(generate(family::Path{ 3 }), 2), PreconditionError);
}

TEST(CubeConjecture, Examples)
{
    auto c32 = check_cube_conjecture(3, 2);
    EXPECT_EQ(c32.formula, 7);
    ASSERT_TRUE(c32.exact.has_value());
    EXPECT_EQ(c32.status, *c32.exact == 7 ? CubeStatus::ConfirmedByExact : CubeStatus::RefutedByExact);

    auto c43 = check_cube_conjecture(4, 3);
    EXPECT_EQ(c43.exact, 15);
    EXPECT_EQ(c43.status, CubeStatus::ConfirmedByExact);

    auto c54 = check_cube_conjecture(5, 4);
    EXPECT_EQ(c54.lower, 31);
    EXPECT_EQ(c54.upper, 31);
    EXPECT_EQ(c54.status, CubeStatus::ConfirmedByPinch);

    auto c62 = check_cube_conjecture(6, 2);
    EXPECT_EQ(c62.status, CubeStatus::UndecidedInterval);
    EXPECT_LT(c62.lower, c62.upper);
}

TEST(ProductQuestion, Examples)
{
    auto p2 = generate(family::Path{ 2 });
    auto r = check_product_question(p2, p2, 1);
    EXPECT_EQ(r.lhs.lower, 3);
    EXPECT_TRUE(r.lhs.exact());
    EXPECT_EQ(r.rhs.lower, 4);
    EXPECT_EQ(r.relation, Relation::LhsLess);

    auto k2 = generate(family::Complete{ 2 });
    EXPECT_EQ(to_json(check_product_question(k2, k2, 1)), to_json(r));

    auto skipped = check_product_question(p2, generate(family::Path{ 3 }), 2);
    EXPECT_FALSE(skipped.hypothesis_holds);
    EXPECT_TRUE(skipped.lhs.exact());
    EXPECT_EQ(to_json(skipped).at("status"), "SKIPPED-HYPOTHESIS");
}
