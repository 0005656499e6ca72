#include <kgrundy/certificate.hpp>
#include <kgrundy/family.hpp>
#include <kgrundy/forcing.hpp>
#include <kgrundy/solver.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace kgrundy;

namespace
{
    auto as_mask(const Graph & g, const std::vector<Vertex> & vs) -> std::vector<bool>
    {
        std::vector<bool> m(g.size(), false);
        for (Vertex v : vs)
            m[v] = true;
        return m;
    }
}

TEST(Closure, Examples)
{
    auto c5 = generate(family::Cycle{ 5 });
    EXPECT_EQ(closure(c5, 2, { 0 }).final_blue, (std::vector<Vertex>{ 0, 1, 2, 3, 4 }));

    auto p3 = generate(family::Path{ 3 });
    auto t = closure(p3, 1, { 1 });
    EXPECT_EQ(t.final_blue, (std::vector<Vertex>{ 1 }));
    EXPECT_TRUE(t.waves.empty());
    EXPECT_FALSE(t.complete(p3));

    for (const auto & g : oracle::catalog(6))
        EXPECT_TRUE(closure(g, std::max(1, g.max_degree()), { g.size() - 1 }).complete(g));
}

TEST(Closure, WavesAreLegalForces)
{
    for (const auto & g : oracle::random_graphs(60, 10, 20))
        for (int k = 1 ; k <= 3 ; ++k) {
            auto t = closure(g, k, { 0 });
            auto blue = as_mask(g, t.initial_blue);
            for (const auto & w : t.waves) {
                ASSERT_TRUE(blue[w.forcer]);
                std::vector<Vertex> white;
                for (Vertex u : g.neighbours(w.forcer))
                    if (! blue[u])
                        white.push_back(u);
                ASSERT_EQ(white, w.forced);
                ASSERT_GE(white.size(), 1u);
                ASSERT_LE(white.size(), std::size_t(k));
                for (Vertex u : white)
                    blue[u] = true;
            }
            EXPECT_EQ(blue, as_mask(g, t.final_blue));
        }
}

TEST(Closure, FixpointDoesNotDependOnFiringOrder)
{
    std::mt19937_64 rng(99);
    for (const auto & g : oracle::random_graphs(80, 10, 40))
        for (int k = 1 ; k <= 3 ; ++k) {
            std::vector<Vertex> start;
            for (Vertex v = 0 ; v < g.size() ; ++v)
                if (rng() % 3 == 0)
                    start.push_back(v);
            auto canonical = as_mask(g, closure(g, k, start).final_blue);
            for (int trial = 0 ; trial < 5 ; ++trial)
                EXPECT_EQ(oracle::random_closure(g, k, as_mask(g, start), rng), canonical);
        }
}

TEST(ForcingNumber, Examples)
{
    for (int n = 1 ; n <= 9 ; ++n)
        EXPECT_EQ(k_forcing_number(generate(family::Path{ n }), 1).forcing_number, 1);
    EXPECT_EQ(k_forcing_number(generate(family::Cycle{ 5 }), 2).forcing_number, 1);
    EXPECT_EQ(k_forcing_number(generate(family::Cycle{ 6 }), 1).forcing_number, 2);
    EXPECT_EQ(k_forcing_number(generate(family::Complete{ 3 }), 1).forcing_number, 2);
}

TEST(ForcingNumber, AgreesWithExhaustiveOracle)
{
    auto graphs = oracle::random_graphs(80, 9, 60);
    auto cat = oracle::catalog(5);
    graphs.insert(graphs.end(), cat.begin(), cat.end());
    for (const auto & g : graphs)
        for (int k = 1 ; k <= 3 ; ++k) {
            auto r = k_forcing_number(g, k);
            EXPECT_EQ(r.forcing_number, oracle::brute_forcing_number(g, k)) << to_graph6(g) << " k=" << k;
            EXPECT_EQ(static_cast<int>(r.witness_set.size()), r.forcing_number);
            EXPECT_TRUE(r.trace.complete(g));
        }
}

TEST(ForcingNumber, CapacityGuard)
{
    EXPECT_THROW(k_forcing_number(generate(family::Cycle{ 30 }), 1), CapacityError);
    // components are searched separately, so only the largest one counts
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int c = 0 ; c < 3 ; ++c)
        for (int i = 0 ; i < 10 ; ++i)
            edges.emplace_back(c * 10 + i, c * 10 + (i + 1) % 10);
    EXPECT_EQ(k_forcing_number(Graph(30, edges), 1).forcing_number, 6);
}

TEST(ZFromForcing, Examples)
{
    auto c5 = generate(family::Cycle{ 5 });
    auto z = z_sequence_from_forcing(c5, 2, closure(c5, 2, { 0 }));
    EXPECT_EQ(z.size(), 4u);
    EXPECT_TRUE(verify(c5, z).valid);

    auto all = closure(c5, 2, { 0, 1, 2, 3, 4 });
    EXPECT_TRUE(z_sequence_from_forcing(c5, 2, all).order.empty());

    auto k33 = generate(family::CompleteBipartite{ 3, 3 });
    auto f = k_forcing_number(k33, 3);
    auto s = z_sequence_from_forcing(k33, 3, f.trace);
    EXPECT_EQ(static_cast<int>(s.size()), 6 - f.forcing_number);
    EXPECT_TRUE(verify(k33, s).valid);

    auto p3 = generate(family::Path{ 3 });
    EXPECT_THROW(z_sequence_from_forcing(p3, 1, closure(p3, 1, { 1 })), PreconditionError);
}

TEST(ZFromForcing, LengthIsNMinusForcingNumber)
{
    for (const auto & g : oracle::catalog(6))
        for (int k = 1 ; k <= g.min_degree() ; ++k) {
            auto f = k_forcing_number(g, k);
            auto z = z_sequence_from_forcing(g, k, f.trace);
            ASSERT_TRUE(verify(g, z).valid) << to_graph6(g);
            EXPECT_EQ(static_cast<int>(z.size()), g.size() - f.forcing_number);
            EXPECT_GE(grundy_number(g, Variant::Z, k).value, g.size() - f.forcing_number);
        }
}

TEST(ForcingTrace, JsonRoundTrip)
{
    auto c6 = generate(family::Cycle{ 6 });
    auto t = k_forcing_number(c6, 1).trace;
    EXPECT_EQ(trace_from_json(to_json(t)), t);
}
