#include <kgrundy/certificate.hpp>
#include <kgrundy/family.hpp>
#include <kgrundy/sequence.hpp>
#include <kgrundy/solver.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace kgrundy;

namespace
{
    auto seq(Variant variant, int k, std::vector<Vertex> order) -> GrundySequence
    {
        GrundySequence s;
        s.variant = variant;
        s.k = k;
        s.order = std::move(order);
        return s;
    }

    auto footprints_from_scratch(const Graph & g, const std::vector<Vertex> & chosen) -> std::vector<int>
    {
        std::vector<int> open(g.size(), 0);
        for (Vertex v : chosen)
            for (Vertex u = 0 ; u < g.size() ; ++u)
                open[u] += g.adjacent(u, v);
        return open;
    }
}

TEST(Footprint, NewState)
{
    auto c5 = generate(family::Cycle{ 5 });
    auto st = new_state(c5);
    for (Vertex v = 0 ; v < 5 ; ++v)
        EXPECT_EQ(st.open_count(v), 0);
    EXPECT_EQ(new_state(generate(family::Complete{ 3 })).chosen_count(), 0u);
}

TEST(Footprint, Append)
{
    auto c4 = generate(family::Cycle{ 4 });
    auto st = append(new_state(c4), c4, 0);
    EXPECT_EQ(st.open_count(0), 0);
    EXPECT_EQ(st.open_count(1), 1);
    EXPECT_EQ(st.open_count(2), 0);
    EXPECT_EQ(st.open_count(3), 1);
    EXPECT_EQ(st.closed_count(0), 1);

    auto k22 = generate(family::CompleteBipartite{ 2, 2 });
    auto both = state_of(k22, { 0, 1 });
    EXPECT_EQ(both.open_count(2), 2);
    EXPECT_EQ(both.open_count(3), 2);

    EXPECT_THROW(append(st, c4, 0), ParameterError);
}

TEST(Footprint, IncrementalMatchesRecompute)
{
    std::mt19937_64 rng(5);
    for (const auto & g : oracle::random_graphs(60, 10, 7)) {
        std::vector<Vertex> order(g.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        auto st = new_state(g);
        std::vector<Vertex> prefix;
        for (Vertex v : order) {
            st.append(g, v);
            prefix.push_back(v);
            auto expected = footprints_from_scratch(g, prefix);
            for (Vertex u = 0 ; u < g.size() ; ++u)
                ASSERT_EQ(st.open_count(u), expected[u]);
            EXPECT_EQ(st, state_of(g, prefix));
        }
    }
}

TEST(LegalWitnesses, Examples)
{
    auto k3 = generate(family::Complete{ 3 });
    EXPECT_EQ(legal_witnesses(k3, new_state(k3), Variant::Plain, 1, 0), (std::vector<Vertex>{ 0, 1, 2 }));
    EXPECT_TRUE(legal_witnesses(k3, state_of(k3, { 0 }), Variant::Plain, 1, 1).empty());
    EXPECT_THROW(legal_witnesses(k3, state_of(k3, { 0 }), Variant::Plain, 1, 0), ParameterError);
}

TEST(LegalWitnesses, CycleNextNeighbour)
{
    for (int n = 5 ; n <= 10 ; ++n) {
        auto g = generate(family::Cycle{ n });
        for (int i = 0 ; i + 2 < n ; ++i) {
            std::vector<Vertex> prefix(i);
            std::iota(prefix.begin(), prefix.end(), 0);
            auto ws = legal_witnesses(g, state_of(g, prefix), Variant::Plain, 2, i);
            EXPECT_NE(std::find(ws.begin(), ws.end(), i + 1), ws.end()) << "n=" << n << " i=" << i;
        }
    }
}

TEST(LegalWitnesses, MatchesDefinition)
{
    std::mt19937_64 rng(11);
    for (const auto & g : oracle::random_graphs(80, 8, 300)) {
        for (Variant variant : all_variants)
            for (int k = 1 ; k <= 3 ; ++k) {
                std::vector<Vertex> order(g.size());
                std::iota(order.begin(), order.end(), 0);
                std::shuffle(order.begin(), order.end(), rng);
                std::vector<Vertex> prefix;
                for (Vertex v : order) {
                    bool legal = ! legal_witnesses(g, state_of(g, prefix), variant, k, v).empty();
                    ASSERT_EQ(legal, oracle::can_append(g, variant, k, prefix, v));
                    if (legal)
                        prefix.push_back(v);
                }
            }
    }
}

TEST(Verify, Examples)
{
    auto c5 = generate(family::Cycle{ 5 });
    EXPECT_TRUE(verify(c5, seq(Variant::Z, 2, { 0, 1, 2, 3 })).valid);

    auto k4 = generate(family::Complete{ 4 });
    EXPECT_TRUE(verify(k4, seq(Variant::L, 2, { 2, 0, 3 })).valid);
    for (Vertex last = 0 ; last < 4 ; ++last) {
        if (last == 2 || last == 0 || last == 3)
            continue;
        auto r = verify(k4, seq(Variant::L, 2, { 2, 0, 3, last }));
        EXPECT_FALSE(r.valid);
        EXPECT_EQ(r.index, 4u);
    }
    EXPECT_TRUE(verify(k4, seq(Variant::Total, 3, {})).valid);
}

TEST(Verify, Duplicate)
{
    auto c5 = generate(family::Cycle{ 5 });
    auto r = verify(c5, seq(Variant::L, 2, { 0, 1, 0 }));
    EXPECT_FALSE(r.valid);
    EXPECT_EQ(r.index, 3u);
    EXPECT_NE(r.reason.find("duplicate vertex"), std::string::npos);
}

TEST(Verify, BadWitnessClaim)
{
    auto p3 = generate(family::Path{ 3 });
    auto s = seq(Variant::Plain, 1, { 0, 2 });
    s.witnesses = { 1, 1 };
    auto r = verify(p3, s);
    EXPECT_FALSE(r.valid);
    EXPECT_EQ(r.index, 2u);
    s.witnesses = { 0, 2 };
    EXPECT_TRUE(verify(p3, s).valid);
    s.witnesses = { 0 };
    EXPECT_THROW(verify(p3, s), ParameterError);
    EXPECT_THROW(verify(p3, seq(Variant::Plain, 1, { 3 })), ParameterError);
    EXPECT_THROW(verify(p3, seq(Variant::Plain, 0, {})), ParameterError);
}

TEST(Verify, ZBelowMinimumDegreeWarns)
{
    auto p3 = generate(family::Path{ 3 });
    auto r = verify(p3, seq(Variant::Z, 2, { 0 }));
    EXPECT_TRUE(r.valid);
    EXPECT_FALSE(r.warnings.empty());
}

TEST(Verify, PrefixesAndStrongerKStayValid)
{
    for (const auto & g : oracle::random_graphs(50, 8, 900))
        for (Variant variant : all_variants)
            for (int k = 1 ; k <= 2 ; ++k) {
                auto best = grundy_number(g, variant, k, SolverConfig{ .allow_z_below_delta = true }).witness;
                for (std::size_t len = 0 ; len <= best.size() ; ++len) {
                    auto prefix = best;
                    prefix.order.resize(len);
                    prefix.witnesses.clear();
                    ASSERT_TRUE(verify(g, prefix).valid);
                    prefix.k = k + 1;
                    ASSERT_TRUE(verify(g, prefix).valid);
                }
            }
}

TEST(Verify, VariantChain)
{
    // a closed-count k-sequence stays legal with an open count or a closed candidate side
    for (const auto & g : oracle::random_graphs(50, 8, 1200)) {
        auto z = grundy_number(g, Variant::Z, 1, SolverConfig{ .allow_z_below_delta = true }).witness;
        for (Variant looser : { Variant::Plain, Variant::Total, Variant::L }) {
            auto s = z;
            s.variant = looser;
            s.witnesses.clear();
            EXPECT_TRUE(verify(g, s).valid) << to_graph6(g);
        }
        auto plain = grundy_number(g, Variant::Plain, 2).witness;
        plain.variant = Variant::L;
        plain.witnesses.clear();
        EXPECT_TRUE(verify(g, plain).valid);
    }
}

TEST(Greedy, Examples)
{
    for (int n = 2 ; n <= 7 ; ++n)
        for (int k = 1 ; k < n ; ++k)
            EXPECT_EQ(greedy_extend(generate(family::Complete{ n }), seq(Variant::Plain, k, {}), TieRule::MinId).size(), std::size_t(k));

    auto c6 = generate(family::Cycle{ 6 });
    auto optimum = grundy_number(c6, Variant::Plain, 2).value;
    EXPECT_EQ(optimum, 5);
    for (auto rule : { TieRule::MinId, TieRule::MaxNewCoverage }) {
        auto g = greedy_extend(c6, seq(Variant::Plain, 2, {}), rule);
        EXPECT_GE(g.size(), 4u);
        EXPECT_LE(static_cast<int>(g.size()), optimum);
        EXPECT_TRUE(verify(c6, g).valid);
        EXPECT_EQ(greedy_extend(c6, g, rule).order, g.order);
    }
}

TEST(Greedy, ResultIsMaximalAndValid)
{
    for (const auto & g : oracle::random_graphs(40, 9, 77))
        for (Variant variant : all_variants) {
            auto s = greedy_extend(g, seq(variant, 2, {}), TieRule::MaxNewCoverage);
            ASSERT_TRUE(verify(g, s).valid);
            for (Vertex v = 0 ; v < g.size() ; ++v)
                EXPECT_FALSE(oracle::can_append(g, variant, 2, s.order, v));
        }
    EXPECT_THROW(greedy_extend(generate(family::Complete{ 3 }), seq(Variant::Plain, 1, { 0, 1 }), TieRule::MinId), PreconditionError);
}

TEST(Variants, Names)
{
    for (Variant v : all_variants)
        EXPECT_EQ(parse_variant(to_string(v)), v);
    EXPECT_EQ(parse_variant("k"), Variant::Plain);
    EXPECT_EQ(parse_variant("t"), Variant::Total);
    EXPECT_THROW(parse_variant("q"), ParameterError);
}

TEST(Certificate, JsonAndTextForms)
{
    auto s = seq(Variant::L, 2, { 3, 1, 4 });
    s.witnesses = { 3, 0, 4 };
    auto j = to_json(s);
    auto back = sequence_from_json(j);
    EXPECT_EQ(back.order, s.order);
    EXPECT_EQ(back.witnesses, s.witnesses);
    EXPECT_EQ(back.variant, Variant::L);
    EXPECT_EQ(parse_certificate(j.dump()).order, s.order);

    auto text = parse_certificate("z 2\n0 1 2 3\n");
    EXPECT_EQ(text.variant, Variant::Z);
    EXPECT_EQ(text.k, 2);
    EXPECT_EQ(text.order, (std::vector<Vertex>{ 0, 1, 2, 3 }));
    auto with_w = parse_certificate("plain 1\n0 2\nwitnesses 0 2\n");
    EXPECT_EQ(with_w.witnesses, (std::vector<Vertex>{ 0, 2 }));

    EXPECT_THROW(parse_certificate(""), ParseError);
    EXPECT_THROW(parse_certificate("{\"variant\": \"l\""), ParseError);
    EXPECT_THROW(parse_certificate("l 2\n1 x\n"), ParseError);
}
