#pragma once

#include <kgrundy/constructions.hpp>
#include <kgrundy/errors.hpp>
#include <kgrundy/family.hpp>
#include <kgrundy/forcing.hpp>
#include <kgrundy/graph.hpp>
#include <kgrundy/sequence.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

namespace kgrundy
{
    struct SolverConfig
    {
        /// Most subsets the memo may hold. When 2^n fits, a dense bitmap is used.
        std::size_t memo_limit = std::size_t(1) << 28;
        /// Stop as soon as a sequence reaches the degree upper bound.
        bool use_degree_bound_pruning = true;
        bool allow_z_below_delta = false;
        int parallel_width = 1;
        /// Capacity guard on n; at most 64.
        int max_vertices = 24;
    };

    struct SolveStats
    {
        std::uint64_t states_visited = 0;
        std::uint64_t memo_hits = 0;
        std::uint64_t pruned = 0;
        double elapsed_seconds = 0.0;
        int upper_bound = 0;
        /// The search stopped because it met the upper bound rather than by exhaustion.
        bool reached_bound = false;
    };

    struct SolveResult
    {
        int value = 0;
        GrundySequence witness;
        SolveStats stats;
    };

    namespace detail
    {
        using Mask = std::uint64_t;

        inline auto bit(int v) -> Mask { return Mask(1) << v; }

        /// Set of explored chosen-sets. Inserts are idempotent and may be lost
        /// under contention or when full; either only causes re-exploration.
        class SubsetMemo
        {
            public:
                SubsetMemo(int n, std::size_t limit) :
                    _limit(limit)
                {
                    if (n <= 30 && (std::size_t(1) << n) <= limit) {
                        std::size_t words = ((std::size_t(1) << n) + 63) / 64;
                        _dense = std::make_unique<std::atomic<std::uint64_t>[]>(words);
                        for (std::size_t i = 0 ; i < words ; ++i)
                            _dense[i].store(0, std::memory_order_relaxed);
                    }
                }

                /// True if already present; otherwise records it.
                auto test_and_set(Mask m) -> bool
                {
                    if (_dense) {
                        auto b = std::uint64_t(1) << (m & 63);
                        return _dense[m >> 6].fetch_or(b, std::memory_order_relaxed) & b;
                    }
                    auto & shard = _shards[std::hash<Mask>{}(m * 0x9E3779B97F4A7C15ull) >> 58 & (shard_count - 1)];
                    std::lock_guard<std::mutex> lock(shard.mutex);
                    if (shard.set.count(m))
                        return true;
                    if (_stored.load(std::memory_order_relaxed) < _limit) {
                        shard.set.insert(m);
                        _stored.fetch_add(1, std::memory_order_relaxed);
                    }
                    return false;
                }

            private:
                static constexpr std::size_t shard_count = 64;
                struct Shard
                {
                    std::mutex mutex;
                    std::unordered_set<Mask> set;
                };

                std::size_t _limit;
                std::atomic<std::size_t> _stored{ 0 };
                std::unique_ptr<std::atomic<std::uint64_t>[]> _dense;
                Shard _shards[shard_count];
        };

        /// Read-only view of the instance shared by every worker.
        struct SearchProblem
        {
            int n;
            int k;
            Variant variant;
            std::vector<Mask> open_nbrs;
            std::vector<Mask> candidate;

            SearchProblem(const Graph & g, Variant var, int kk) :
                n(g.size()), k(kk), variant(var), open_nbrs(n, 0), candidate(n, 0)
            {
                for (Vertex v = 0 ; v < n ; ++v) {
                    for (Vertex w : g.neighbours(v))
                        open_nbrs[v] |= bit(w);
                    candidate[v] = open_nbrs[v] | (candidate_side_closed(var) ? bit(v) : 0);
                }
            }
        };

        /// Depth-first walk over chosen-sets reachable by legal appends. Coverage
        /// counts are maintained incrementally along the current path.
        class SubsetSearch
        {
            public:
                struct Shared
                {
                    SubsetMemo & memo;
                    std::atomic<int> & best;
                    std::atomic<bool> & stop;
                    int target;
                };

                SubsetSearch(const SearchProblem & p, Shared shared) :
                    _p(p), _shared(shared), _open(p.n, 0)
                {
                }

                auto run() -> void
                {
                    visit();
                }

                auto explore_child(Vertex v) -> void
                {
                    push(v);
                    visit();
                    pop(v);
                }

                /// Legal appends at the current state, fail-first order.
                auto ordered_moves() const -> std::vector<std::pair<int, Vertex>>
                {
                    Mask avail = available();
                    std::vector<std::pair<int, Vertex>> moves;
                    for (Vertex v = 0 ; v < _p.n ; ++v)
                        if (! (_chosen & bit(v))) {
                            int w = std::popcount(_p.candidate[v] & avail);
                            if (w > 0)
                                moves.emplace_back(w, v);
                        }
                    std::sort(moves.begin(), moves.end());
                    return moves;
                }

                auto best_path() const -> const std::vector<Vertex> & { return _best_path; }
                auto local_best() const -> int { return _local_best; }

                std::uint64_t visited = 0, memo_hits = 0, pruned = 0;

            private:
                auto push(Vertex v) -> void
                {
                    _chosen |= bit(v);
                    _path.push_back(v);
                    for (Mask m = _p.open_nbrs[v] ; m ; m &= m - 1)
                        ++_open[std::countr_zero(m)];
                }

                auto pop(Vertex v) -> void
                {
                    _chosen &= ~bit(v);
                    _path.pop_back();
                    for (Mask m = _p.open_nbrs[v] ; m ; m &= m - 1)
                        --_open[std::countr_zero(m)];
                }

                /// Vertices whose count-side coverage is still below k.
                auto available() const -> Mask
                {
                    const bool closed = count_side_closed(_p.variant);
                    Mask avail = 0;
                    for (int u = 0 ; u < _p.n ; ++u) {
                        int c = _open[u] + ((closed && (_chosen & bit(u))) ? 1 : 0);
                        if (c < _p.k)
                            avail |= bit(u);
                    }
                    return avail;
                }

                auto raise_best(int depth) -> bool
                {
                    int current = _shared.best.load(std::memory_order_relaxed);
                    while (depth > current)
                        if (_shared.best.compare_exchange_weak(current, depth, std::memory_order_relaxed))
                            return true;
                    return false;
                }

                auto visit() -> void
                {
                    if (_shared.stop.load(std::memory_order_relaxed))
                        return;
                    if (_shared.memo.test_and_set(_chosen)) {
                        ++memo_hits;
                        return;
                    }
                    ++visited;

                    const int depth = static_cast<int>(_path.size());
                    if (depth > _local_best) {
                        _local_best = depth;
                        _best_path = _path;
                    }
                    raise_best(depth);
                    if (depth >= _shared.target) {
                        _shared.stop.store(true, std::memory_order_relaxed);
                        return;
                    }

                    auto moves = ordered_moves();
                    // coverage only grows, so an illegal vertex never becomes legal again
                    if (depth + static_cast<int>(moves.size()) <= _shared.best.load(std::memory_order_relaxed)) {
                        ++pruned;
                        return;
                    }
                    for (auto [w, v] : moves) {
                        if (_shared.stop.load(std::memory_order_relaxed))
                            return;
                        explore_child(v);
                    }
                }

                const SearchProblem & _p;
                Shared _shared;
                std::vector<int> _open;
                Mask _chosen = 0;
                std::vector<Vertex> _path;
                std::vector<Vertex> _best_path;
                int _local_best = -1;
        };

        struct SearchOutcome
        {
            int value;
            std::vector<Vertex> path;
            bool reached_target;
        };

        /// Sequential search. Starting from initial_best prunes every branch that
        /// cannot beat it; the first path of maximum depth in fail-first order wins.
        inline auto sequential_search(const SearchProblem & p, const SolverConfig & cfg, int initial_best, int target,
                SolveStats & stats) -> SearchOutcome
        {
            SubsetMemo memo(p.n, cfg.memo_limit);
            std::atomic<int> best{ initial_best };
            std::atomic<bool> stop{ false };
            SubsetSearch search(p, { memo, best, stop, target });
            search.run();
            stats.states_visited += search.visited;
            stats.memo_hits += search.memo_hits;
            stats.pruned += search.pruned;
            return { search.local_best(), search.best_path(), stop.load() };
        }

        /// Value only: top-level branches are handed to workers, which share the memo and the best depth.
        inline auto parallel_value(const SearchProblem & p, const SolverConfig & cfg, int target, SolveStats & stats) -> std::pair<int, bool>
        {
            SubsetMemo memo(p.n, cfg.memo_limit);
            std::atomic<int> best{ 0 };
            std::atomic<bool> stop{ 0 >= target };
            memo.test_and_set(0);

            SubsetSearch root(p, { memo, best, stop, target });
            auto moves = root.ordered_moves();
            std::atomic<std::size_t> next{ 0 };
            std::mutex stats_mutex;

            auto worker = [&] {
                SubsetSearch search(p, { memo, best, stop, target });
                for (std::size_t i = next++ ; i < moves.size() ; i = next++)
                    search.explore_child(moves[i].second);
                std::lock_guard<std::mutex> lock(stats_mutex);
                stats.states_visited += search.visited;
                stats.memo_hits += search.memo_hits;
                stats.pruned += search.pruned;
            };

            std::vector<std::thread> threads;
            for (int t = 0 ; t < cfg.parallel_width ; ++t)
                threads.emplace_back(worker);
            for (auto & t : threads)
                t.join();
            return { best.load(), stop.load() };
        }
    }

    /// Exact maximum length of a k-sequence of the given variant, with a witness.
    ///
    /// Whether a vertex may be appended depends only on the set already chosen,
    /// never on its order, so every reachable set is explored once. The witness is
    /// the first maximum-length sequence met in fail-first depth-first order, so it
    /// does not depend on parallel_width.
    inline auto grundy_number(const Graph & g, Variant variant, int k, const SolverConfig & cfg = {}) -> SolveResult
    {
        auto started = std::chrono::steady_clock::now();
        if (k < 1)
            throw ParameterError("k must be positive");
        const int n = g.size();
        const int guard = std::min(cfg.max_vertices, 64);
        if (n > guard)
            throw CapacityError("n = " + std::to_string(n) + " exceeds the exhaustive-search guard of " + std::to_string(guard)
                    + " vertices; use bounds instead");
        if (variant == Variant::Z && n > 0 && k > g.min_degree() && ! cfg.allow_z_below_delta)
            throw PreconditionError("Z-sequences require k <= minimum degree (k = " + std::to_string(k) + ", delta = "
                    + std::to_string(g.min_degree()) + ")");

        SolveResult result;
        result.witness.variant = variant;
        result.witness.k = k;
        if (n == 0)
            return result;

        const int upper = std::min(n, degree_upper_bound(g, variant, k));
        result.stats.upper_bound = upper;
        const int target = cfg.use_degree_bound_pruning ? upper : n + 1;

        detail::SearchProblem problem(g, variant, k);
        detail::SearchOutcome outcome;
        if (cfg.parallel_width <= 1)
            outcome = detail::sequential_search(problem, cfg, -1, target, result.stats);
        else {
            auto [value, hit] = detail::parallel_value(problem, cfg, target, result.stats);
            SolveStats replay;
            outcome = detail::sequential_search(problem, cfg, value - 1, value, replay);
            outcome.reached_target = hit;
            if (outcome.value != value)
                throw InternalError("witness replay did not reach the parallel search value");
        }

        result.value = outcome.value;
        result.stats.reached_bound = outcome.reached_target && cfg.use_degree_bound_pruning;
        result.witness.order = outcome.path;
        auto report = verify(g, result.witness);
        if (! report.valid)
            throw InternalError("solver produced an invalid witness: " + report.reason);
        result.witness.witnesses = report.witnesses;
        result.stats.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return result;
    }

    struct GrundyBounds
    {
        int lower = 0;
        int upper = 0;
        GrundySequence lower_witness;
        std::string lower_source;
        std::string upper_source;
    };

    /// Bounds without exhaustive search. The lower bound is the longest of the
    /// greedy sequences, the family's constructive witness when the family is
    /// given, and for Z the forcing sequence of length n - F_k when the graph is
    /// within the forcing guard.
    inline auto grundy_bounds(const Graph & g, Variant variant, int k, const std::optional<FamilySpec> & family = std::nullopt,
            int forcing_guard = 24) -> GrundyBounds
    {
        if (k < 1)
            throw ParameterError("k must be positive");
        GrundyBounds b;
        b.lower_witness = GrundySequence{ variant, k, {}, {} };
        if (g.size() == 0)
            return b;

        b.upper = std::min(g.size(), degree_upper_bound(g, variant, k));
        b.upper_source = b.upper == g.size() ? "vertex count" : "minimum degree bound";

        auto offer = [&] (GrundySequence seq, const std::string & source) {
            if (seq.size() > b.lower_witness.size() || b.lower_source.empty()) {
                b.lower_witness = std::move(seq);
                b.lower_source = source;
            }
        };
        GrundySequence empty{ variant, k, {}, {} };
        offer(greedy_extend(g, empty, TieRule::MinId), "greedy (least id)");
        offer(greedy_extend(g, empty, TieRule::MaxNewCoverage), "greedy (most witnesses)");

        if (family) {
            auto extended = [&] (GrundySequence seq) {
                seq.variant = variant;
                seq.k = k;
                seq.witnesses.clear();
                return greedy_extend(g, seq, TieRule::MinId);
            };
            auto usable = [&] (const GrundySequence & seq) {
                GrundySequence as_variant = seq;
                as_variant.variant = variant;
                as_variant.k = k;
                as_variant.witnesses.clear();
                return verify(g, as_variant).valid;
            };
            if (auto f = std::get_if<family::Hypercube>(&*family); f && f->d >= 2 && variant == Variant::L && k <= f->d) {
                auto w = hypercube_L_witness(f->d, k).sequence;
                offer(extended(w), "hypercube pattern construction");
            }
            if (auto f = std::get_if<family::Cycle>(&*family); f && k >= 2) {
                auto w = cycle_witness(f->n, variant);
                if (usable(w))
                    offer(extended(w), "cycle construction");
            }
            if (auto f = std::get_if<family::Grid>(&*family); f && f->m >= 2 && k >= 2) {
                auto w = grid_witness(f->m, f->n);
                if (usable(w))
                    offer(extended(w), "grid column sweep");
            }
            if (auto f = std::get_if<family::TreeCycleGadget>(&*family); f && k >= 2) {
                auto w = gadget_L2_witness(f->h);
                if (usable(w))
                    offer(extended(w), "tree-cycle gadget construction");
            }
        }

        if (variant == Variant::Z && g.size() <= forcing_guard) {
            auto forcing = k_forcing_number(g, k, forcing_guard);
            auto z = z_sequence_from_forcing(g, k, forcing.trace);
            if (verify(g, z).valid)
                offer(z, "forcing construction (n - F_k)");
        }

        b.lower = static_cast<int>(b.lower_witness.size());
        return b;
    }
}
