#pragma once

#include <kgrundy/errors.hpp>
#include <kgrundy/graph.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgrundy
{
    /// Which neighbourhoods a sequence type uses. The candidate side is the
    /// neighbourhood of the appended vertex that must contain the witness; the
    /// count side is the neighbourhood type of earlier vertices that counts
    /// towards the witness's coverage.
    enum class Variant
    {
        Plain,  ///< closed / closed
        Total,  ///< open / open
        Z,      ///< open / closed
        L       ///< closed / open
    };

    inline constexpr std::array<Variant, 4> all_variants{ Variant::Plain, Variant::Total, Variant::Z, Variant::L };

    constexpr auto candidate_side_closed(Variant v) -> bool
    {
        return v == Variant::Plain || v == Variant::L;
    }

    constexpr auto count_side_closed(Variant v) -> bool
    {
        return v == Variant::Plain || v == Variant::Z;
    }

    inline auto to_string(Variant v) -> std::string
    {
        switch (v) {
            case Variant::Plain: return "plain";
            case Variant::Total: return "total";
            case Variant::Z:     return "z";
            case Variant::L:     return "l";
        }
        return "?";
    }

    inline auto parse_variant(std::string_view s) -> Variant
    {
        std::string lower(s);
        std::transform(lower.begin(), lower.end(), lower.begin(), [] (unsigned char c) { return std::tolower(c); });
        if (lower == "plain" || lower == "k")
            return Variant::Plain;
        if (lower == "total" || lower == "t")
            return Variant::Total;
        if (lower == "z")
            return Variant::Z;
        if (lower == "l")
            return Variant::L;
        throw ParameterError("unknown variant '" + std::string(s) + "' (expected plain, total, z or l)");
    }

    /// Coverage counters for a chosen vertex set. open_count(u) is the number of
    /// chosen vertices having u as a neighbour; the closed count adds one when u
    /// itself is chosen. Both depend only on the chosen set.
    class FootprintState
    {
        public:
            explicit FootprintState(const Graph & g) :
                _chosen(g.size(), false),
                _open(g.size(), 0)
            {
            }

            auto size() const -> int { return static_cast<int>(_open.size()); }
            auto chosen(Vertex v) const -> bool { return _chosen[v]; }
            auto chosen_count() const -> std::size_t { return _count; }
            auto open_count(Vertex u) const -> int { return _open[u]; }
            auto closed_count(Vertex u) const -> int { return _open[u] + (_chosen[u] ? 1 : 0); }

            auto count(Vertex u, Variant variant) const -> int
            {
                return count_side_closed(variant) ? closed_count(u) : open_count(u);
            }

            auto append(const Graph & g, Vertex v) -> void
            {
                check_vertex(v);
                if (_chosen[v])
                    throw ParameterError("vertex " + std::to_string(v) + " is already chosen");
                _chosen[v] = true;
                ++_count;
                for (Vertex u : g.neighbours(v))
                    ++_open[u];
            }

            auto check_vertex(Vertex v) const -> void
            {
                if (v < 0 || v >= size())
                    throw ParameterError("vertex " + std::to_string(v) + " out of range for " + std::to_string(size()) + " vertices");
            }

            friend auto operator== (const FootprintState &, const FootprintState &) -> bool = default;

        private:
            std::vector<bool> _chosen;
            std::vector<int> _open;
            std::size_t _count = 0;
    };

    inline auto new_state(const Graph & g) -> FootprintState
    {
        return FootprintState(g);
    }

    /// Value-returning append.
    inline auto append(FootprintState st, const Graph & g, Vertex v) -> FootprintState
    {
        st.append(g, v);
        return st;
    }

    /// Counts computed from scratch for the given set, in any order.
    inline auto state_of(const Graph & g, const std::vector<Vertex> & chosen) -> FootprintState
    {
        FootprintState st(g);
        for (Vertex v : chosen)
            st.append(g, v);
        return st;
    }

    /// Every u in the candidate-side neighbourhood of v whose count-side coverage is below k.
    inline auto legal_witnesses(const Graph & g, const FootprintState & st, Variant variant, int k, Vertex v) -> std::vector<Vertex>
    {
        st.check_vertex(v);
        if (k < 1)
            throw ParameterError("k must be positive");
        if (st.chosen(v))
            throw ParameterError("vertex " + std::to_string(v) + " is already chosen");

        std::vector<Vertex> result;
        auto consider = [&] (Vertex u) {
            if (st.count(u, variant) < k)
                result.push_back(u);
        };
        bool self_done = ! candidate_side_closed(variant);
        for (Vertex u : g.neighbours(v)) {
            if (! self_done && v < u) {
                consider(v);
                self_done = true;
            }
            consider(u);
        }
        if (! self_done)
            consider(v);
        return result;
    }

    struct GrundySequence
    {
        Variant variant = Variant::Plain;
        int k = 1;
        std::vector<Vertex> order;
        /// Optional; when non-empty, witnesses[i] certifies step i.
        std::vector<Vertex> witnesses;

        auto size() const -> std::size_t { return order.size(); }

        friend auto operator== (const GrundySequence &, const GrundySequence &) -> bool = default;
    };

    struct VerifyReport
    {
        bool valid = true;
        /// 1-based position of the first offending step, 0 when valid.
        std::size_t index = 0;
        std::string reason;
        /// Least-id legal witness for every accepted step.
        std::vector<Vertex> witnesses;
        std::vector<std::string> warnings;
    };

    inline auto verify(const Graph & g, const GrundySequence & seq) -> VerifyReport
    {
        if (seq.k < 1)
            throw ParameterError("k must be positive");
        if (! seq.witnesses.empty() && seq.witnesses.size() != seq.order.size())
            throw ParameterError("certificate has " + std::to_string(seq.witnesses.size()) + " witnesses for "
                    + std::to_string(seq.order.size()) + " steps");

        FootprintState st(g);
        for (Vertex v : seq.order)
            st.check_vertex(v);
        for (Vertex w : seq.witnesses)
            st.check_vertex(w);

        VerifyReport report;
        if (seq.variant == Variant::Z && g.size() > 0 && seq.k > g.min_degree())
            report.warnings.push_back("k = " + std::to_string(seq.k) + " exceeds minimum degree "
                    + std::to_string(g.min_degree()) + "; Z-sequences are normally considered only for k <= delta");

        for (std::size_t i = 0 ; i < seq.order.size() ; ++i) {
            Vertex v = seq.order[i];
            auto fail = [&] (const std::string & why) {
                report.valid = false;
                report.index = i + 1;
                report.reason = why;
                return report;
            };
            if (st.chosen(v))
                return fail("duplicate vertex " + std::to_string(v) + " at index " + std::to_string(i + 1));
            auto ws = legal_witnesses(g, st, seq.variant, seq.k, v);
            if (ws.empty())
                return fail("vertex " + std::to_string(v) + " at index " + std::to_string(i + 1) + " has no legal witness");
            if (! seq.witnesses.empty() && ! std::binary_search(ws.begin(), ws.end(), seq.witnesses[i]))
                return fail("claimed witness " + std::to_string(seq.witnesses[i]) + " at index " + std::to_string(i + 1)
                        + " is not a legal witness for vertex " + std::to_string(v));
            report.witnesses.push_back(ws.front());
            st.append(g, v);
        }
        return report;
    }

    enum class TieRule
    {
        MinId,
        /// The legal vertex with the most legal witnesses; ties to the least id.
        MaxNewCoverage
    };

    /// Extends a valid sequence until no vertex can be appended. Witnesses in the
    /// result are the least-id legal witness of each step.
    inline auto greedy_extend(const Graph & g, const GrundySequence & seq, TieRule rule) -> GrundySequence
    {
        auto report = verify(g, seq);
        if (! report.valid)
            throw PreconditionError("greedy_extend needs a valid seed sequence: " + report.reason);

        GrundySequence result = seq;
        result.witnesses = report.witnesses;
        auto st = state_of(g, seq.order);
        while (true) {
            std::optional<Vertex> best;
            std::size_t best_score = 0;
            Vertex best_witness = -1;
            for (Vertex v = 0 ; v < g.size() ; ++v) {
                if (st.chosen(v))
                    continue;
                auto ws = legal_witnesses(g, st, seq.variant, seq.k, v);
                if (ws.empty())
                    continue;
                if (! best || (rule == TieRule::MaxNewCoverage && ws.size() > best_score)) {
                    best = v;
                    best_score = ws.size();
                    best_witness = ws.front();
                    if (rule == TieRule::MinId)
                        break;
                }
            }
            if (! best)
                break;
            result.order.push_back(*best);
            result.witnesses.push_back(best_witness);
            st.append(g, *best);
        }
        return result;
    }
}
