#pragma once

#include <kgrundy/errors.hpp>
#include <kgrundy/family.hpp>
#include <kgrundy/graph.hpp>
#include <kgrundy/sequence.hpp>

#include <algorithm>
#include <bit>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace kgrundy
{
    /// n - delta + k for L and total sequences, one less for plain and Z.
    inline auto degree_upper_bound(const Graph & g, Variant variant, int k) -> int
    {
        if (k < 1)
            throw ParameterError("k must be positive");
        int bound = g.size() - g.min_degree() + k;
        return (variant == Variant::L || variant == Variant::Total) ? bound : bound - 1;
    }

    /// A value quoted from a closed-form theorem. For hypercubes only bounds are
    /// known in general; exact is set where the bounds provably meet.
    struct ClosedForm
    {
        FamilySpec family;
        Variant variant;
        int k;
        std::optional<int> exact;
        int lower;
        int upper;
        std::string source;
    };

    /// ceil(2^d - 2^(d-k-1)) for 1 <= k <= d.
    inline auto hypercube_formula(int d, int k) -> int
    {
        if (k >= d)
            return 1 << d;
        return (1 << d) - (1 << (d - k - 1));
    }

    inline auto closed_form_value(const FamilySpec & spec, Variant variant, int k) -> ClosedForm
    {
        validate(spec);
        if (k < 1)
            throw ParameterError("k must be positive");

        ClosedForm cf{ spec, variant, k, std::nullopt, 0, 0, "" };
        auto exact = [&] (int value, std::string source) {
            cf.exact = cf.lower = cf.upper = value;
            cf.source = std::move(source);
            return cf;
        };
        auto need = [] (bool ok, const char * constraint) {
            if (! ok)
                throw InapplicableError(constraint);
        };

        if (auto f = std::get_if<family::Cycle>(&spec)) {
            need(k == 2, "k = 2 for cycles");
            switch (variant) {
                case Variant::Plain: return exact(f->n - 1, "cycles, plain 2-sequences");
                case Variant::L:     return exact(f->n, "cycles, 2-L-sequences");
                case Variant::Z:     return exact(f->n - 1, "cycles, 2-Z-sequences");
                case Variant::Total: return exact(f->n, "cycles, 2-t-sequences");
            }
        }
        if (auto f = std::get_if<family::Complete>(&spec)) {
            need(k <= f->n - 1, "k <= n - 1 for complete graphs");
            bool plus_one = variant == Variant::L || variant == Variant::Total;
            return exact(plus_one ? k + 1 : k, "complete graphs");
        }
        if (auto f = std::get_if<family::CompleteBipartite>(&spec)) {
            need(f->m >= f->n, "m >= n for complete bipartite graphs");
            need(f->n >= k, "m, n >= k for complete bipartite graphs");
            switch (variant) {
                case Variant::Plain: return exact(f->m + k - 1, "complete bipartite graphs, plain");
                case Variant::L:     return exact(f->m + k, "complete bipartite graphs, L");
                case Variant::Total: return exact(2 * k, "complete bipartite graphs, total");
                case Variant::Z:     return exact(f->m > k ? 2 * k : 2 * k - 1, "complete bipartite graphs, Z");
            }
        }
        if (auto f = std::get_if<family::Grid>(&spec)) {
            need(k == 2, "k = 2 for grids");
            need(variant == Variant::Plain || variant == Variant::L, "plain or L variant for grids");
            need(f->m >= 2, "m >= 2 for grids");
            if (variant == Variant::Plain)
                return exact(f->m * f->n - 1, "grids, plain 2-sequences");
            need(f->m <= f->n, "m <= n for the L grid value");
            return exact(f->m * f->n, "grids, 2-L-sequences");
        }
        if (auto f = std::get_if<family::Hypercube>(&spec)) {
            need(variant == Variant::L, "L variant for hypercubes");
            need(f->d >= 2, "d >= 2 for hypercubes");
            need(k <= f->d, "1 <= k <= d for hypercubes");
            const int d = f->d;
            cf.lower = hypercube_formula(d, k);
            cf.upper = std::min((1 << d) - d + k, 1 << d);
            cf.source = "hypercubes, constructive lower bound and degree upper bound";
            if (k == d || (d > 2 && (k == d - 1 || k == d - 2)) || cf.lower == cf.upper) {
                cf.exact = cf.lower;
                cf.upper = cf.lower;
                cf.source = "hypercubes, exact for k in {d-2, d-1, d}";
            }
            return cf;
        }
        throw InapplicableError("a family with a known closed form (cycle, complete, kbipartite, grid, hypercube)");
    }

    /// family,params,variant,k,exact,lower,upper,source
    inline auto closed_form_csv(const std::vector<ClosedForm> & rows) -> std::string
    {
        std::ostringstream out;
        out << "family,params,variant,k,exact,lower,upper,source\n";
        for (const auto & r : rows) {
            auto name = to_string(r.family);
            auto colon = name.find(':');
            out << name.substr(0, colon) << ",\"" << name.substr(colon + 1) << "\"," << to_string(r.variant) << ',' << r.k << ','
                << (r.exact ? std::to_string(*r.exact) : std::string()) << ',' << r.lower << ',' << r.upper << ",\"" << r.source << "\"\n";
        }
        return out.str();
    }

    namespace detail
    {
        /// Fills in least-id witnesses, or throws if a construction produced an invalid sequence.
        inline auto certify(const Graph & g, GrundySequence seq, const char * what) -> GrundySequence
        {
            auto report = verify(g, seq);
            if (! report.valid)
                throw InternalError(std::string(what) + " produced an invalid sequence: " + report.reason);
            seq.witnesses = report.witnesses;
            return seq;
        }
    }

    /// Clockwise labels v_1..v_n are ids 0..n-1 of CYCLE(n); k is 2.
    inline auto cycle_witness(int n, Variant variant) -> GrundySequence
    {
        if (n < 3)
            throw ParameterError("cycle witness requires n >= 3");
        GrundySequence seq{ variant, 2, {}, {} };
        int length = (variant == Variant::Plain || variant == Variant::Z) ? n - 1 : n;
        for (Vertex v = 0 ; v < length ; ++v)
            seq.order.push_back(v);
        return detail::certify(generate(family::Cycle{ n }), std::move(seq), "cycle witness");
    }

    /// All Pattern A vertices of 3-cubes at even cube distance from the all-zero
    /// prefix and all Pattern B vertices of 3-cubes at odd distance. The last
    /// three coordinates are the low three bits; the prefix is the rest.
    inline auto standard_pattern(int d) -> std::vector<Vertex>
    {
        if (d < 3 || d > 20)
            throw ParameterError("standard pattern requires 3 <= d <= 20");
        std::vector<Vertex> result;
        for (Vertex v = 0 ; v < (1 << d) ; ++v) {
            int cube_distance = std::popcount(static_cast<unsigned>(v >> 3));
            bool pattern_a = std::popcount(static_cast<unsigned>(v & 7)) % 2 == 0;
            if (pattern_a == (cube_distance % 2 == 0))
                result.push_back(v);
        }
        return result;
    }

    struct HypercubeWitness
    {
        GrundySequence sequence;
        /// Number of vertices added in each phase: the pattern, then one per halving level.
        std::vector<std::size_t> phase_sizes;
    };

    /// A k-L-sequence on Q_d of length ceil(2^d - 2^(d-k-1)): the standard pattern,
    /// then for level i = 1, 2, ... the unchosen vertices whose first i-1
    /// coordinates are 1 and whose i-th coordinate is 0, and for k = d the one
    /// vertex left over. Coordinate i is bit d - i.
    inline auto hypercube_L_witness(int d, int k) -> HypercubeWitness
    {
        if (d < 2 || d > 20)
            throw ParameterError("hypercube witness requires 2 <= d <= 20");
        if (k < 1 || k > d)
            throw ParameterError("hypercube witness requires 1 <= k <= d");

        const Graph g = generate(family::Hypercube{ d });
        const int n = 1 << d;
        HypercubeWitness result;
        auto & seq = result.sequence;
        seq.variant = Variant::L;
        seq.k = k;

        // Q_2 = C_4 has no 3-cube blocks; its two even-weight vertices play the pattern's role.
        std::vector<Vertex> pattern = d >= 3 ? standard_pattern(d) : std::vector<Vertex>{ 0, 3 };
        seq.order = pattern;
        result.phase_sizes.push_back(pattern.size());

        FootprintState st(g);
        for (Vertex v : pattern)
            st.append(g, v);

        auto coordinate = [&] (Vertex v, int i) { return (v >> (d - i)) & 1; };
        for (int level = 1 ; level <= std::min(k, d - 1) ; ++level) {
            std::vector<Vertex> phase;
            for (Vertex v = 0 ; v < n ; ++v) {
                if (st.chosen(v) || coordinate(v, level) != 0)
                    continue;
                bool prefix_ones = true;
                for (int j = 1 ; j < level ; ++j)
                    prefix_ones = prefix_ones && coordinate(v, j) == 1;
                if (prefix_ones)
                    phase.push_back(v);
            }
            // each new vertex footprints its partner across coordinate `level`, which
            // must be chosen and covered exactly level - 1 times so far
            for (Vertex v : phase) {
                Vertex partner = v ^ (1 << (d - level));
                if (! st.chosen(partner) || st.open_count(partner) != level - 1)
                    throw InternalError("hypercube witness: partner of " + std::to_string(v) + " at level "
                            + std::to_string(level) + " is not a fresh chosen vertex");
            }
            for (Vertex v : phase) {
                st.append(g, v);
                seq.order.push_back(v);
            }
            result.phase_sizes.push_back(phase.size());
        }
        if (k == d) {
            std::vector<Vertex> rest;
            for (Vertex v = 0 ; v < n ; ++v)
                if (! st.chosen(v))
                    rest.push_back(v);
            if (rest.size() != 1)
                throw InternalError("hypercube witness: expected exactly one vertex left for k = d");
            seq.order.push_back(rest.front());
            result.phase_sizes.push_back(1);
        }

        if (static_cast<int>(seq.order.size()) != hypercube_formula(d, k))
            throw InternalError("hypercube witness has the wrong length");
        seq = detail::certify(g, std::move(seq), "hypercube witness");
        return result;
    }

    /// A 2-sequence of length mn - 1 on GRID(m, n): columns 1..n-1 in turn, each
    /// top to bottom, then the last column top to bottom without its bottom vertex.
    inline auto grid_witness(int m, int n) -> GrundySequence
    {
        if (m < 2 || n < 1)
            throw ParameterError("grid witness requires m >= 2 and n >= 1");
        GrundySequence seq{ Variant::Plain, 2, {}, {} };
        for (int c = 0 ; c + 1 < n ; ++c)
            for (int r = 0 ; r < m ; ++r)
                seq.order.push_back(r * n + c);
        for (int r = 0 ; r + 1 < m ; ++r)
            seq.order.push_back(r * n + n - 1);
        return detail::certify(generate(family::Grid{ m, n }), std::move(seq), "grid witness");
    }

    /// A 2-L-sequence through every vertex of TREE_CYCLE_GADGET(h): levels h down
    /// to 3, then both roots, then both roots' children.
    inline auto gadget_L2_witness(int h) -> GrundySequence
    {
        if (h < 3)
            throw ParameterError("gadget witness requires h >= 3");
        const Graph g = generate(family::TreeCycleGadget{ h });
        GrundySequence seq{ Variant::L, 2, {}, {} };
        auto add_level = [&] (int level) {
            for (int tree = 0 ; tree < 2 ; ++tree)
                for (int i = (1 << (level - 1)) - 1 ; i < (1 << level) - 1 ; ++i)
                    seq.order.push_back(gadget::vertex(h, tree, i));
        };
        for (int level = h ; level >= 3 ; --level)
            add_level(level);
        add_level(1);
        add_level(2);
        return detail::certify(g, std::move(seq), "gadget witness");
    }
}
