#pragma once

#include <kgrundy/errors.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kgrundy
{
    using Vertex = int;

    /// Immutable simple undirected graph on vertices 0..n-1.
    ///
    /// Neighbour lists are kept sorted. Membership is answered from a dense
    /// adjacency bit matrix when n is small enough for it to be cheap, and
    /// by binary search otherwise.
    class Graph
    {
        public:
            static constexpr int dense_limit = 8192;

            Graph() = default;

            /// Builds a graph from an edge list. Self-loops, duplicate edges and
            /// out-of-range endpoints are rejected.
            Graph(int n, std::span<const std::pair<Vertex, Vertex>> edges) :
                _adj(n < 0 ? 0 : n)
            {
                if (n < 0)
                    throw ParameterError("negative vertex count");

                for (auto [u, v] : edges) {
                    if (u < 0 || v < 0 || u >= n || v >= n)
                        throw ParameterError("edge " + std::to_string(u) + " " + std::to_string(v) + " out of range for " + std::to_string(n) + " vertices");
                    if (u == v)
                        throw ParameterError("self-loop at vertex " + std::to_string(u));
                    _adj[u].push_back(v);
                    _adj[v].push_back(u);
                }

                for (auto & a : _adj) {
                    std::sort(a.begin(), a.end());
                    if (std::adjacent_find(a.begin(), a.end()) != a.end())
                        throw ParameterError("duplicate edge");
                }

                _edges = 0;
                for (auto & a : _adj)
                    _edges += a.size();
                _edges /= 2;

                if (n <= dense_limit) {
                    _matrix.assign(static_cast<std::size_t>(n) * n, false);
                    for (Vertex u = 0 ; u < n ; ++u)
                        for (Vertex v : _adj[u])
                            _matrix[static_cast<std::size_t>(u) * n + v] = true;
                }
            }

            Graph(int n, const std::vector<std::pair<Vertex, Vertex>> & edges) :
                Graph(n, std::span<const std::pair<Vertex, Vertex>>(edges))
            {
            }

            auto size() const -> int { return static_cast<int>(_adj.size()); }
            auto edge_count() const -> std::size_t { return _edges; }

            auto neighbours(Vertex v) const -> std::span<const Vertex> { return _adj[v]; }
            auto degree(Vertex v) const -> int { return static_cast<int>(_adj[v].size()); }

            auto adjacent(Vertex u, Vertex v) const -> bool
            {
                if (! _matrix.empty())
                    return _matrix[static_cast<std::size_t>(u) * size() + v];
                return std::binary_search(_adj[u].begin(), _adj[u].end(), v);
            }

            /// N[v], sorted.
            auto closed_neighbourhood(Vertex v) const -> std::vector<Vertex>
            {
                std::vector<Vertex> result(_adj[v].begin(), _adj[v].end());
                result.insert(std::upper_bound(result.begin(), result.end(), v), v);
                return result;
            }

            auto min_degree() const -> int
            {
                if (_adj.empty())
                    throw ParameterError("minimum degree of the empty graph");
                int result = degree(0);
                for (Vertex v = 1 ; v < size() ; ++v)
                    result = std::min(result, degree(v));
                return result;
            }

            auto max_degree() const -> int
            {
                int result = 0;
                for (Vertex v = 0 ; v < size() ; ++v)
                    result = std::max(result, degree(v));
                return result;
            }

            /// Every edge once, as (u, v) with u < v, in lexicographic order.
            auto edges() const -> std::vector<std::pair<Vertex, Vertex>>
            {
                std::vector<std::pair<Vertex, Vertex>> result;
                result.reserve(_edges);
                for (Vertex u = 0 ; u < size() ; ++u)
                    for (Vertex v : _adj[u])
                        if (u < v)
                            result.emplace_back(u, v);
                return result;
            }

            auto is_connected() const -> bool
            {
                return components().size() <= 1;
            }

            /// Connected components, each a sorted vertex list, ordered by least member.
            auto components() const -> std::vector<std::vector<Vertex>>
            {
                std::vector<std::vector<Vertex>> result;
                std::vector<bool> seen(size(), false);
                for (Vertex s = 0 ; s < size() ; ++s) {
                    if (seen[s])
                        continue;
                    std::vector<Vertex> comp{ s }, stack{ s };
                    seen[s] = true;
                    while (! stack.empty()) {
                        Vertex v = stack.back();
                        stack.pop_back();
                        for (Vertex w : _adj[v])
                            if (! seen[w]) {
                                seen[w] = true;
                                comp.push_back(w);
                                stack.push_back(w);
                            }
                    }
                    std::sort(comp.begin(), comp.end());
                    result.push_back(std::move(comp));
                }
                return result;
            }

            /// Subgraph induced by the given vertices, relabelled 0..|vs|-1 in the given order.
            auto induced(std::span<const Vertex> vs) const -> Graph
            {
                std::vector<int> index(size(), -1);
                for (std::size_t i = 0 ; i < vs.size() ; ++i)
                    index[vs[i]] = static_cast<int>(i);
                std::vector<std::pair<Vertex, Vertex>> es;
                for (std::size_t i = 0 ; i < vs.size() ; ++i)
                    for (Vertex w : _adj[vs[i]])
                        if (index[w] > static_cast<int>(i))
                            es.emplace_back(static_cast<Vertex>(i), index[w]);
                return Graph(static_cast<int>(vs.size()), es);
            }

            friend auto operator== (const Graph & a, const Graph & b) -> bool
            {
                return a._adj == b._adj;
            }

        private:
            std::vector<std::vector<Vertex>> _adj;
            std::vector<bool> _matrix;
            std::size_t _edges = 0;
    };

    inline auto min_degree(const Graph & g) -> int
    {
        return g.min_degree();
    }
}
