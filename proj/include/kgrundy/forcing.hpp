#pragma once

#include <kgrundy/errors.hpp>
#include <kgrundy/graph.hpp>
#include <kgrundy/sequence.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace kgrundy
{
    struct ForcingWave
    {
        Vertex forcer;
        /// The forcer's white neighbours at the moment it fired, ascending.
        std::vector<Vertex> forced;

        friend auto operator== (const ForcingWave &, const ForcingWave &) -> bool = default;
    };

    struct ForcingTrace
    {
        int k = 1;
        std::vector<Vertex> initial_blue;
        std::vector<ForcingWave> waves;
        std::vector<Vertex> final_blue;

        auto complete(const Graph & g) const -> bool { return static_cast<int>(final_blue.size()) == g.size(); }

        friend auto operator== (const ForcingTrace &, const ForcingTrace &) -> bool = default;
    };

    struct ForcingResult
    {
        int forcing_number = 0;
        std::vector<Vertex> witness_set;
        ForcingTrace trace;
    };

    /// Runs the k-forcing colour change rule to its fixpoint. One blue vertex
    /// fires per wave: the least-id blue vertex having between 1 and k white
    /// neighbours, which then colours all of them blue.
    inline auto closure(const Graph & g, int k, const std::vector<Vertex> & blue) -> ForcingTrace
    {
        if (k < 1)
            throw ParameterError("k must be positive");

        ForcingTrace trace;
        trace.k = k;
        std::vector<bool> is_blue(g.size(), false);
        for (Vertex v : blue) {
            if (v < 0 || v >= g.size())
                throw ParameterError("vertex " + std::to_string(v) + " out of range");
            is_blue[v] = true;
        }
        for (Vertex v = 0 ; v < g.size() ; ++v)
            if (is_blue[v])
                trace.initial_blue.push_back(v);

        std::vector<int> white(g.size(), 0);
        for (Vertex v = 0 ; v < g.size() ; ++v)
            for (Vertex w : g.neighbours(v))
                if (! is_blue[w])
                    ++white[v];

        Vertex scan = 0;
        while (scan < g.size()) {
            if (! is_blue[scan] || white[scan] == 0 || white[scan] > k) {
                ++scan;
                continue;
            }
            ForcingWave wave{ scan, {} };
            for (Vertex w : g.neighbours(scan))
                if (! is_blue[w])
                    wave.forced.push_back(w);
            Vertex restart = scan;
            for (Vertex w : wave.forced) {
                is_blue[w] = true;
                restart = std::min(restart, w);
                for (Vertex x : g.neighbours(w)) {
                    --white[x];
                    if (is_blue[x])
                        restart = std::min(restart, x);
                }
            }
            trace.waves.push_back(std::move(wave));
            scan = restart;
        }

        for (Vertex v = 0 ; v < g.size() ; ++v)
            if (is_blue[v])
                trace.final_blue.push_back(v);
        return trace;
    }

    namespace detail
    {
        /// Fixpoint of the colour change rule on a graph of at most 64 vertices.
        inline auto closure_mask(const std::vector<std::uint64_t> & nbrs, int k, std::uint64_t blue) -> std::uint64_t
        {
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::uint64_t b = blue ; b ; b &= b - 1) {
                    int v = std::countr_zero(b);
                    std::uint64_t white = nbrs[v] & ~blue;
                    int c = std::popcount(white);
                    if (c >= 1 && c <= k) {
                        blue |= white;
                        changed = true;
                    }
                }
            }
            return blue;
        }

        /// Least set of minimum size (lexicographically first among combinations)
        /// whose closure is everything, for a connected graph of at most 64 vertices.
        inline auto minimum_forcing_set_connected(const Graph & g, int k) -> std::vector<Vertex>
        {
            const int n = g.size();
            std::vector<std::uint64_t> nbrs(n, 0);
            for (Vertex v = 0 ; v < n ; ++v)
                for (Vertex w : g.neighbours(v))
                    nbrs[v] |= std::uint64_t(1) << w;
            const std::uint64_t all = n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;

            // The first force needs a blue vertex with at most k white neighbours,
            // so a forcing set other than V has at least delta - k + 1 members.
            int start = std::max(1, g.min_degree() - k + 1);
            for (int size = start ; size <= n ; ++size) {
                std::vector<int> idx(size);
                for (int i = 0 ; i < size ; ++i)
                    idx[i] = i;
                while (true) {
                    std::uint64_t blue = 0;
                    for (int i : idx)
                        blue |= std::uint64_t(1) << i;

                    bool can_start = blue == all;
                    for (int i : idx)
                        if (std::popcount(nbrs[i] & ~blue) <= k) {
                            can_start = true;
                            break;
                        }

                    if (can_start && closure_mask(nbrs, k, blue) == all)
                        return std::vector<Vertex>(idx.begin(), idx.end());

                    int i = size - 1;
                    while (i >= 0 && idx[i] == n - size + i)
                        --i;
                    if (i < 0)
                        break;
                    ++idx[i];
                    for (int j = i + 1 ; j < size ; ++j)
                        idx[j] = idx[j - 1] + 1;
                }
            }
            throw InternalError("no forcing set found, but V itself forces");
        }
    }

    /// Exact F_k(G) by increasing-size subset search, solved per connected component.
    inline auto k_forcing_number(const Graph & g, int k, int max_vertices = 24) -> ForcingResult
    {
        if (k < 1)
            throw ParameterError("k must be positive");
        ForcingResult result;
        for (const auto & comp : g.components()) {
            if (static_cast<int>(comp.size()) > std::min(max_vertices, 64))
                throw CapacityError("component of " + std::to_string(comp.size()) + " vertices exceeds the forcing search guard ("
                        + std::to_string(std::min(max_vertices, 64)) + ")");
            auto local = detail::minimum_forcing_set_connected(g.induced(comp), k);
            for (Vertex v : local)
                result.witness_set.push_back(comp[v]);
        }
        std::sort(result.witness_set.begin(), result.witness_set.end());
        result.forcing_number = static_cast<int>(result.witness_set.size());
        result.trace = closure(g, k, result.witness_set);
        if (! result.trace.complete(g))
            throw InternalError("minimum forcing set does not force the whole graph");
        return result;
    }

    /// The k-Z-sequence read off a complete forcing trace: forced sets in reverse
    /// wave order, ascending within a wave, each certified by its wave's forcer.
    inline auto z_sequence_from_forcing(const Graph & g, int k, const ForcingTrace & trace) -> GrundySequence
    {
        if (! trace.complete(g))
            throw PreconditionError("forcing trace does not colour every vertex (" + std::to_string(trace.final_blue.size())
                    + " of " + std::to_string(g.size()) + ")");
        GrundySequence seq;
        seq.variant = Variant::Z;
        seq.k = k;
        for (auto wave = trace.waves.rbegin() ; wave != trace.waves.rend() ; ++wave) {
            auto forced = wave->forced;
            std::sort(forced.begin(), forced.end());
            for (Vertex w : forced) {
                seq.order.push_back(w);
                seq.witnesses.push_back(wave->forcer);
            }
        }
        return seq;
    }
}
