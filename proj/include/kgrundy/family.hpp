#pragma once

#include <kgrundy/errors.hpp>
#include <kgrundy/graph.hpp>

#include <charconv>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace kgrundy
{
    namespace family
    {
        struct Cycle { int n; };
        struct Path { int n; };
        struct Complete { int n; };
        struct CompleteBipartite { int m, n; };
        struct Hypercube { int d; };
        struct Grid { int m, n; };
        /// Two complete binary trees of height h whose leaves are joined in one alternating cycle.
        struct TreeCycleGadget { int h; };
        struct TriangularGrid { int rows, cols; };
        struct ErRandom { int n; double p; std::uint64_t seed; };
    }

    using FamilySpec = std::variant<family::Cycle, family::Path, family::Complete, family::CompleteBipartite,
          family::Hypercube, family::Grid, family::TreeCycleGadget, family::TriangularGrid, family::ErRandom>;

    namespace detail
    {
        inline auto require(bool condition, const std::string & message) -> void
        {
            if (! condition)
                throw ParameterError(message);
        }

        template <typename... Ts_>
        struct Overloaded : Ts_... { using Ts_::operator()...; };
        template <typename... Ts_>
        Overloaded(Ts_...) -> Overloaded<Ts_...>;

        using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

        inline auto path_edges(int n) -> EdgeList
        {
            EdgeList es;
            for (Vertex v = 0 ; v + 1 < n ; ++v)
                es.emplace_back(v, v + 1);
            return es;
        }
    }

    inline auto validate(const FamilySpec & spec) -> void
    {
        using detail::require;
        std::visit(detail::Overloaded{
            [] (const family::Cycle & f) { require(f.n >= 3, "cycle requires n >= 3"); },
            [] (const family::Path & f) { require(f.n >= 1, "path requires n >= 1"); },
            [] (const family::Complete & f) { require(f.n >= 1, "complete graph requires n >= 1"); },
            [] (const family::CompleteBipartite & f) { require(f.m >= 1 && f.n >= 1, "complete bipartite graph requires m, n >= 1"); },
            [] (const family::Hypercube & f) { require(f.d >= 1 && f.d <= 20, "hypercube requires 1 <= d <= 20"); },
            [] (const family::Grid & f) { require(f.m >= 1 && f.n >= 1, "grid requires m, n >= 1"); },
            [] (const family::TreeCycleGadget & f) { require(f.h >= 3 && f.h <= 16, "tree-cycle gadget requires 3 <= h <= 16"); },
            [] (const family::TriangularGrid & f) { require(f.rows >= 1 && f.cols >= 1, "triangular grid requires rows, cols >= 1"); },
            [] (const family::ErRandom & f) {
                require(f.n >= 1, "random graph requires n >= 1");
                require(f.p >= 0.0 && f.p <= 1.0, "random graph requires 0 <= p <= 1");
            }
        }, spec);
    }

    /// Cartesian product; vertex (u, v) gets id u * |V(h)| + v.
    inline auto cartesian_product(const Graph & g, const Graph & h) -> Graph
    {
        if (g.size() == 0 || h.size() == 0)
            throw ParameterError("cartesian product of an empty graph");
        const int hn = h.size();
        detail::EdgeList es;
        for (Vertex u = 0 ; u < g.size() ; ++u)
            for (Vertex v = 0 ; v < hn ; ++v) {
                for (Vertex y : h.neighbours(v))
                    if (v < y)
                        es.emplace_back(u * hn + v, u * hn + y);
                for (Vertex x : g.neighbours(u))
                    if (u < x)
                        es.emplace_back(u * hn + v, x * hn + v);
            }
        return Graph(g.size() * hn, es);
    }

    namespace gadget
    {
        /// Vertices per tree.
        inline auto tree_size(int h) -> int { return (1 << h) - 1; }

        /// Level of a heap-indexed tree node; the root is at level 1, leaves at level h.
        inline auto level(int heap_index) -> int
        {
            int l = 0;
            for (int i = heap_index + 1 ; i > 0 ; i >>= 1)
                ++l;
            return l;
        }

        /// Id of heap node i of the first (tree = 0) or second (tree = 1) tree.
        inline auto vertex(int h, int tree, int heap_index) -> Vertex
        {
            return tree * tree_size(h) + heap_index;
        }
    }

    /// Ids of the hypercube are the integers 0..2^d-1; bit d-1 is the first coordinate.
    inline auto generate(const FamilySpec & spec) -> Graph
    {
        validate(spec);
        using detail::EdgeList;
        return std::visit(detail::Overloaded{
            [] (const family::Cycle & f) {
                auto es = detail::path_edges(f.n);
                es.emplace_back(0, f.n - 1);
                return Graph(f.n, es);
            },
            [] (const family::Path & f) { return Graph(f.n, detail::path_edges(f.n)); },
            [] (const family::Complete & f) {
                EdgeList es;
                for (Vertex u = 0 ; u < f.n ; ++u)
                    for (Vertex v = u + 1 ; v < f.n ; ++v)
                        es.emplace_back(u, v);
                return Graph(f.n, es);
            },
            [] (const family::CompleteBipartite & f) {
                EdgeList es;
                for (Vertex u = 0 ; u < f.m ; ++u)
                    for (Vertex v = 0 ; v < f.n ; ++v)
                        es.emplace_back(u, f.m + v);
                return Graph(f.m + f.n, es);
            },
            [] (const family::Hypercube & f) {
                EdgeList es;
                const int n = 1 << f.d;
                for (Vertex v = 0 ; v < n ; ++v)
                    for (int b = 0 ; b < f.d ; ++b)
                        if (! (v & (1 << b)))
                            es.emplace_back(v, v | (1 << b));
                return Graph(n, es);
            },
            [] (const family::Grid & f) {
                EdgeList es;
                for (int r = 0 ; r < f.m ; ++r)
                    for (int c = 0 ; c < f.n ; ++c) {
                        if (c + 1 < f.n)
                            es.emplace_back(r * f.n + c, r * f.n + c + 1);
                        if (r + 1 < f.m)
                            es.emplace_back(r * f.n + c, (r + 1) * f.n + c);
                    }
                return Graph(f.m * f.n, es);
            },
            [] (const family::TreeCycleGadget & f) {
                EdgeList es;
                const int size = gadget::tree_size(f.h);
                for (int tree = 0 ; tree < 2 ; ++tree)
                    for (int i = 1 ; i < size ; ++i)
                        es.emplace_back(gadget::vertex(f.h, tree, (i - 1) / 2), gadget::vertex(f.h, tree, i));
                // leaves left to right, alternating a0 b0 a1 b1 ... back to a0
                const int first_leaf = (1 << (f.h - 1)) - 1, leaves = 1 << (f.h - 1);
                std::vector<Vertex> ring;
                for (int i = 0 ; i < leaves ; ++i) {
                    ring.push_back(gadget::vertex(f.h, 0, first_leaf + i));
                    ring.push_back(gadget::vertex(f.h, 1, first_leaf + i));
                }
                for (std::size_t i = 0 ; i < ring.size() ; ++i)
                    es.emplace_back(ring[i], ring[(i + 1) % ring.size()]);
                return Graph(2 * size, es);
            },
            [] (const family::TriangularGrid & f) {
                EdgeList es;
                auto id = [&] (int r, int c) { return r * f.cols + c; };
                for (int r = 0 ; r < f.rows ; ++r)
                    for (int c = 0 ; c < f.cols ; ++c) {
                        if (c + 1 < f.cols)
                            es.emplace_back(id(r, c), id(r, c + 1));
                        if (r + 1 < f.rows)
                            es.emplace_back(id(r, c), id(r + 1, c));
                        if (r + 1 < f.rows && c + 1 < f.cols)
                            es.emplace_back(id(r, c), id(r + 1, c + 1));
                    }
                return Graph(f.rows * f.cols, es);
            },
            [] (const family::ErRandom & f) {
                // mt19937_64 output is fixed by the standard; the real-valued draw
                // is done by hand so no library distribution is involved.
                std::mt19937_64 rng(f.seed);
                EdgeList es;
                for (Vertex u = 0 ; u < f.n ; ++u)
                    for (Vertex v = u + 1 ; v < f.n ; ++v) {
                        double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                        if (x < f.p)
                            es.emplace_back(u, v);
                    }
                return Graph(f.n, es);
            }
        }, spec);
    }

    /// Compact name:params form, e.g. "kbipartite:4,3". Inverse of parse_family.
    inline auto to_string(const FamilySpec & spec) -> std::string
    {
        return std::visit(detail::Overloaded{
            [] (const family::Cycle & f) { return "cycle:" + std::to_string(f.n); },
            [] (const family::Path & f) { return "path:" + std::to_string(f.n); },
            [] (const family::Complete & f) { return "complete:" + std::to_string(f.n); },
            [] (const family::CompleteBipartite & f) { return "kbipartite:" + std::to_string(f.m) + "," + std::to_string(f.n); },
            [] (const family::Hypercube & f) { return "hypercube:" + std::to_string(f.d); },
            [] (const family::Grid & f) { return "grid:" + std::to_string(f.m) + "," + std::to_string(f.n); },
            [] (const family::TreeCycleGadget & f) { return "gadget:" + std::to_string(f.h); },
            [] (const family::TriangularGrid & f) { return "trigrid:" + std::to_string(f.rows) + "," + std::to_string(f.cols); },
            [] (const family::ErRandom & f) {
                std::ostringstream s;
                s.precision(17);
                s << "random:" << f.n << "," << f.p << "," << f.seed;
                return s.str();
            }
        }, spec);
    }

    /// Parses "name:p1,p2,...". Names: cycle, path, complete, kbipartite, hypercube,
    /// grid, gadget, trigrid, random (n,p[,seed]; seed defaults to default_seed).
    inline auto parse_family(std::string_view text, std::uint64_t default_seed = 0) -> FamilySpec
    {
        auto colon = text.find(':');
        if (colon == std::string_view::npos)
            throw ParameterError("family spec '" + std::string(text) + "' must look like name:params");
        std::string name(text.substr(0, colon));
        std::vector<std::string> params;
        {
            std::string rest(text.substr(colon + 1));
            std::stringstream s(rest);
            std::string item;
            while (std::getline(s, item, ','))
                params.push_back(item);
        }

        auto integer = [&] (std::size_t i) -> long long {
            const auto & p = params.at(i);
            long long value = 0;
            auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), value);
            if (ec != std::errc() || ptr != p.data() + p.size())
                throw ParameterError("family parameter '" + p + "' is not an integer");
            return value;
        };
        auto expect = [&] (std::size_t lo, std::size_t hi) {
            if (params.size() < lo || params.size() > hi)
                throw ParameterError("family '" + name + "' takes " + std::to_string(lo)
                        + (lo == hi ? "" : ".." + std::to_string(hi)) + " parameters");
        };

        FamilySpec spec;
        if (name == "cycle") { expect(1, 1); spec = family::Cycle{ int(integer(0)) }; }
        else if (name == "path") { expect(1, 1); spec = family::Path{ int(integer(0)) }; }
        else if (name == "complete") { expect(1, 1); spec = family::Complete{ int(integer(0)) }; }
        else if (name == "kbipartite") { expect(2, 2); spec = family::CompleteBipartite{ int(integer(0)), int(integer(1)) }; }
        else if (name == "hypercube") { expect(1, 1); spec = family::Hypercube{ int(integer(0)) }; }
        else if (name == "grid") { expect(2, 2); spec = family::Grid{ int(integer(0)), int(integer(1)) }; }
        else if (name == "gadget") { expect(1, 1); spec = family::TreeCycleGadget{ int(integer(0)) }; }
        else if (name == "trigrid") { expect(2, 2); spec = family::TriangularGrid{ int(integer(0)), int(integer(1)) }; }
        else if (name == "random") {
            expect(2, 3);
            double p = 0;
            try {
                std::size_t used = 0;
                p = std::stod(params[1], &used);
                if (used != params[1].size())
                    throw std::invalid_argument("trailing");
            }
            catch (const std::logic_error &) {
                throw ParameterError("family parameter '" + params[1] + "' is not a probability");
            }
            std::uint64_t seed = params.size() == 3 ? static_cast<std::uint64_t>(integer(2)) : default_seed;
            spec = family::ErRandom{ int(integer(0)), p, seed };
        }
        else
            throw ParameterError("unknown family '" + name + "'");

        validate(spec);
        return spec;
    }
}
