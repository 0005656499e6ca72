#pragma once

#include <kgrundy/certificate.hpp>
#include <kgrundy/constructions.hpp>
#include <kgrundy/errors.hpp>
#include <kgrundy/family.hpp>
#include <kgrundy/forcing.hpp>
#include <kgrundy/graph.hpp>
#include <kgrundy/io.hpp>
#include <kgrundy/sequence.hpp>
#include <kgrundy/solver.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace kgrundy
{
    // ---------------------------------------------------------------- audits

    enum class CheckStatus
    {
        Pass,
        Fail,
        Skipped
    };

    inline auto to_string(CheckStatus s) -> std::string
    {
        switch (s) {
            case CheckStatus::Pass:    return "PASS";
            case CheckStatus::Fail:    return "FAIL";
            case CheckStatus::Skipped: return "SKIPPED";
        }
        return "?";
    }

    struct CheckOutcome
    {
        std::string name;
        int k;
        CheckStatus status;
        /// The inequality with numbers filled in, or the skip reason.
        std::string detail;
    };

    inline auto variant_index(Variant v) -> std::size_t
    {
        return static_cast<std::size_t>(v);
    }

    /// Exact values of the four numbers at one k; unset where not computed.
    struct KValues
    {
        int k = 1;
        std::array<std::optional<int>, 4> value;
        std::array<std::optional<GrundySequence>, 4> witness;

        auto operator[] (Variant v) const -> const std::optional<int> & { return value[variant_index(v)]; }
    };

    struct InstanceRecord
    {
        std::size_t index = 0;
        std::string descriptor;
        std::string graph6;
        int n = 0;
        int min_degree = 0;
        std::optional<std::string> skipped;
        bool respect_hypotheses = true;
        std::vector<KValues> values;
        std::vector<CheckOutcome> checks;
        /// The k for which the L-number equals n.
        std::vector<int> full_l;

        auto failed() const -> bool
        {
            return std::any_of(checks.begin(), checks.end(), [] (const CheckOutcome & c) { return c.status == CheckStatus::Fail; });
        }
    };

    struct AuditReport
    {
        std::string campaign;
        std::vector<InstanceRecord> instances;

        auto count(CheckStatus s) const -> std::size_t
        {
            std::size_t c = 0;
            for (const auto & i : instances)
                for (const auto & ch : i.checks)
                    c += ch.status == s;
            return c;
        }
    };

    struct NamedGraph
    {
        std::string descriptor;
        Graph graph;
    };

    struct AuditOptions
    {
        std::vector<int> ks{ 1, 2 };
        SolverConfig solver{};
        /// Skip inequalities whose theorem assumes delta >= k when it does not hold.
        bool respect_hypotheses = true;
        int jobs = 1;
    };

    /// Evaluates every inequality on already-computed values. `values` must be sorted by k.
    inline auto evaluate_checks(int n, int delta, const std::vector<KValues> & values, bool respect_hypotheses) -> std::vector<CheckOutcome>
    {
        std::vector<CheckOutcome> out;
        auto check = [&] (const std::string & name, int k, const std::optional<int> & lhs, const std::optional<int> & rhs,
                int rhs_offset, const std::string & relation_text) {
            if (! lhs || ! rhs) {
                out.push_back({ name, k, CheckStatus::Skipped, "Z not defined for k > delta" });
                return;
            }
            int right = *rhs + rhs_offset;
            std::ostringstream detail;
            detail << relation_text << ": " << *lhs << " <= " << right;
            if (*lhs == right)
                detail << " (tight)";
            out.push_back({ name, k, *lhs <= right ? CheckStatus::Pass : CheckStatus::Fail, detail.str() });
        };

        for (const auto & kv : values) {
            const int k = kv.k;
            const std::optional<int> bound_lt = n - delta + k, bound_pz = n - delta + k - 1;
            check("z_le_plain", k, kv[Variant::Z], kv[Variant::Plain], 0, "Z <= plain");
            if (respect_hypotheses && delta < k)
                out.push_back({ "plain_le_l_minus_1", k, CheckStatus::Skipped, "hypothesis delta >= k fails" });
            else
                check("plain_le_l_minus_1", k, kv[Variant::Plain], kv[Variant::L], -1, "plain <= L - 1");
            check("z_le_total", k, kv[Variant::Z], kv[Variant::Total], 0, "Z <= total");
            check("total_le_l", k, kv[Variant::Total], kv[Variant::L], 0, "total <= L");
            check("l_degree_bound", k, kv[Variant::L], bound_lt, 0, "L <= n - delta + k");
            check("total_degree_bound", k, kv[Variant::Total], bound_lt, 0, "total <= n - delta + k");
            check("plain_degree_bound", k, kv[Variant::Plain], bound_pz, 0, "plain <= n - delta + k - 1");
            check("z_degree_bound", k, kv[Variant::Z], bound_pz, 0, "Z <= n - delta + k - 1");
        }
        for (std::size_t i = 1 ; i < values.size() ; ++i)
            for (Variant v : all_variants) {
                const auto & lo = values[i - 1][v];
                const auto & hi = values[i][v];
                if (lo && hi)
                    check("monotone_k_" + to_string(v), values[i].k, lo, hi, 0,
                            to_string(v) + "(k=" + std::to_string(values[i - 1].k) + ") <= " + to_string(v) + "(k=" + std::to_string(values[i].k) + ")");
            }
        return out;
    }

    inline auto audit_instance(const NamedGraph & item, std::size_t index, const AuditOptions & options) -> InstanceRecord
    {
        InstanceRecord rec;
        rec.index = index;
        rec.descriptor = item.descriptor;
        rec.graph6 = to_graph6(item.graph);
        rec.n = item.graph.size();
        rec.respect_hypotheses = options.respect_hypotheses;
        const Graph & g = item.graph;
        if (rec.n == 0) {
            rec.skipped = "empty graph";
            return rec;
        }
        rec.min_degree = g.min_degree();
        if (rec.n > std::min(options.solver.max_vertices, 64)) {
            rec.skipped = "capacity: n = " + std::to_string(rec.n) + " exceeds the search guard";
            return rec;
        }

        // the early exit at the degree bound would hide a violation of that bound
        SolverConfig cfg = options.solver;
        cfg.use_degree_bound_pruning = false;
        cfg.allow_z_below_delta = false;
        cfg.parallel_width = 1;

        auto ks = options.ks;
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        for (int k : ks) {
            KValues kv;
            kv.k = k;
            for (Variant v : all_variants) {
                if (v == Variant::Z && k > rec.min_degree)
                    continue;
                auto r = grundy_number(g, v, k, cfg);
                kv.value[variant_index(v)] = r.value;
                kv.witness[variant_index(v)] = r.witness;
            }
            if (kv[Variant::L] == rec.n)
                rec.full_l.push_back(k);
            rec.values.push_back(std::move(kv));
        }
        rec.checks = evaluate_checks(rec.n, rec.min_degree, rec.values, options.respect_hypotheses);
        return rec;
    }

    /// Solves all four numbers for every graph and k and checks the comparison
    /// inequalities, the degree bounds and monotonicity in k. Records come back
    /// in stream order whatever the number of jobs.
    inline auto audit_bounds(const std::vector<NamedGraph> & stream, const AuditOptions & options, const std::string & campaign = "audit") -> AuditReport
    {
        AuditReport report;
        report.campaign = campaign;
        report.instances.resize(stream.size());
        std::atomic<std::size_t> next{ 0 };
        auto worker = [&] {
            for (std::size_t i = next++ ; i < stream.size() ; i = next++)
                report.instances[i] = audit_instance(stream[i], i, options);
        };
        int jobs = std::max(1, options.jobs);
        if (jobs == 1)
            worker();
        else {
            std::vector<std::thread> threads;
            for (int t = 0 ; t < jobs ; ++t)
                threads.emplace_back(worker);
            for (auto & t : threads)
                t.join();
        }
        return report;
    }

    inline auto to_json(const InstanceRecord & rec, const std::string & campaign) -> json
    {
        json j{ { "campaign", campaign }, { "index", rec.index }, { "instance", rec.descriptor }, { "graph6", rec.graph6 },
            { "n", rec.n }, { "delta", rec.min_degree } };
        if (rec.skipped) {
            j["skipped"] = *rec.skipped;
            return j;
        }
        json results = json::array();
        for (const auto & kv : rec.values) {
            json r{ { "k", kv.k } };
            for (Variant v : all_variants)
                r[to_string(v)] = kv[v] ? json(*kv[v]) : json(nullptr);
            results.push_back(r);
        }
        j["results"] = results;
        j["respect_hypotheses"] = rec.respect_hypotheses;
        json checks = json::array();
        for (const auto & c : rec.checks)
            checks.push_back(json{ { "check", c.name }, { "k", c.k }, { "status", to_string(c.status) }, { "detail", c.detail } });
        j["checks"] = checks;
        j["full_l"] = rec.full_l;
        if (rec.failed()) {
            json certs = json::object();
            for (const auto & kv : rec.values)
                for (Variant v : all_variants)
                    if (kv.witness[variant_index(v)])
                        certs[to_string(v) + "_k" + std::to_string(kv.k)] = to_json(*kv.witness[variant_index(v)]);
            j["counterexample"] = json{ { "graph6", rec.graph6 }, { "certificates", certs } };
        }
        return j;
    }

    /// One JSON object per line, in stream order.
    inline auto to_json_lines(const AuditReport & report, bool only_full_l = false) -> std::string
    {
        std::string out;
        for (const auto & rec : report.instances) {
            if (only_full_l && rec.full_l.empty())
                continue;
            out += to_json(rec, report.campaign).dump();
            out += '\n';
        }
        return out;
    }

    inline auto csv_summary(const AuditReport & report) -> std::string
    {
        std::size_t skipped_instances = 0, failed_instances = 0, full_l = 0;
        for (const auto & i : report.instances) {
            skipped_instances += i.skipped.has_value();
            failed_instances += i.failed();
            full_l += ! i.full_l.empty();
        }
        std::ostringstream out;
        out << "campaign,instances,skipped_instances,failed_instances,full_l_instances,checks_pass,checks_fail,checks_skipped\n";
        out << report.campaign << ',' << report.instances.size() << ',' << skipped_instances << ',' << failed_instances << ','
            << full_l << ',' << report.count(CheckStatus::Pass) << ',' << report.count(CheckStatus::Fail) << ','
            << report.count(CheckStatus::Skipped) << '\n';
        return out.str();
    }

    /// Re-derives a FAIL record from its own payload: every stored certificate must
    /// verify with its recorded length, and re-solving must reproduce a failure.
    inline auto replay_failure(const json & line, const SolverConfig & cfg = {}) -> bool
    {
        if (! line.contains("counterexample"))
            return false;
        Graph g = from_graph6(line.at("counterexample").at("graph6").get<std::string>());
        std::vector<KValues> values;
        for (const auto & r : line.at("results")) {
            KValues kv;
            kv.k = r.at("k").get<int>();
            for (Variant v : all_variants)
                if (! r.at(to_string(v)).is_null())
                    kv.value[variant_index(v)] = r.at(to_string(v)).get<int>();
            values.push_back(kv);
        }
        for (const auto & [key, cert] : line.at("counterexample").at("certificates").items()) {
            auto seq = sequence_from_json(cert);
            if (! verify(g, seq).valid)
                return false;
            for (const auto & kv : values)
                if (kv.k == seq.k && kv[seq.variant] != static_cast<int>(seq.size()))
                    return false;
        }

        SolverConfig solver = cfg;
        solver.use_degree_bound_pruning = false;
        solver.allow_z_below_delta = false;
        for (auto & kv : values)
            for (Variant v : all_variants)
                if (kv[v] && grundy_number(g, v, kv.k, solver).value != *kv[v])
                    return false;

        bool respect = line.value("respect_hypotheses", true);
        auto checks = evaluate_checks(g.size(), g.min_degree(), values, respect);
        return std::any_of(checks.begin(), checks.end(), [] (const CheckOutcome & c) { return c.status == CheckStatus::Fail; });
    }

    // ------------------------------------------------------ forcing conjecture

    struct ForcingConjectureResult
    {
        int n = 0;
        int k = 1;
        int zk = 0;
        int forcing_number = 0;
        int n_minus_fk = 0;
        bool equal = false;
        GrundySequence z_witness;
        std::vector<Vertex> forcing_set;
        GrundySequence forcing_sequence;
    };

    /// Computes both sides of gamma^{Z,k} = n - F_k exactly. The inequality
    /// gamma^{Z,k} >= n - F_k is a theorem, so its failure raises InternalError.
    inline auto check_forcing_conjecture(const Graph & g, int k, const SolverConfig & cfg = {}) -> ForcingConjectureResult
    {
        if (g.size() == 0)
            throw ParameterError("empty graph");
        if (k > g.min_degree())
            throw PreconditionError("forcing conjecture check requires k <= minimum degree");

        ForcingConjectureResult r;
        r.n = g.size();
        r.k = k;
        auto solved = grundy_number(g, Variant::Z, k, cfg);
        r.zk = solved.value;
        r.z_witness = solved.witness;
        auto forcing = k_forcing_number(g, k, std::min(cfg.max_vertices, 64));
        r.forcing_number = forcing.forcing_number;
        r.forcing_set = forcing.witness_set;
        r.n_minus_fk = r.n - r.forcing_number;
        r.forcing_sequence = z_sequence_from_forcing(g, k, forcing.trace);
        auto report = verify(g, r.forcing_sequence);
        if (! report.valid || static_cast<int>(r.forcing_sequence.size()) != r.n_minus_fk)
            throw InternalError("forcing construction did not yield a valid Z-sequence of length n - F_k: " + report.reason);
        if (r.zk < r.n_minus_fk)
            throw InternalError("solver reports gamma^{Z,k} = " + std::to_string(r.zk) + " below n - F_k = "
                    + std::to_string(r.n_minus_fk) + " although a sequence of that length was verified");
        r.equal = r.zk == r.n_minus_fk;
        return r;
    }

    inline auto to_json(const ForcingConjectureResult & r) -> json
    {
        return json{ { "n", r.n }, { "k", r.k }, { "zk", r.zk }, { "forcing_number", r.forcing_number }, { "n_minus_fk", r.n_minus_fk },
            { "equal", r.equal }, { "z_certificate", to_json(r.z_witness) }, { "forcing_set", r.forcing_set },
            { "forcing_certificate", to_json(r.forcing_sequence) } };
    }

    // --------------------------------------------------------- cube conjecture

    enum class CubeStatus
    {
        ConfirmedByExact,
        ConfirmedByPinch,
        UndecidedInterval,
        RefutedByExact
    };

    inline auto to_string(CubeStatus s) -> std::string
    {
        switch (s) {
            case CubeStatus::ConfirmedByExact:  return "CONFIRMED-BY-EXACT";
            case CubeStatus::ConfirmedByPinch:  return "CONFIRMED-BY-BOUND-PINCH";
            case CubeStatus::UndecidedInterval: return "UNDECIDED-INTERVAL";
            case CubeStatus::RefutedByExact:    return "REFUTED-BY-EXACT";
        }
        return "?";
    }

    struct CubeConjectureResult
    {
        int d = 0;
        int k = 0;
        int formula = 0;
        int lower = 0;
        int upper = 0;
        std::optional<int> exact;
        CubeStatus status = CubeStatus::UndecidedInterval;
        GrundySequence witness;
    };

    /// Compares gamma^{L,k}(Q_d) with ceil(2^d - 2^(d-k-1)): exactly for d <= exact_max_d,
    /// otherwise by the constructive lower bound against the degree upper bound.
    /// Bound evidence alone never refutes.
    inline auto check_cube_conjecture(int d, int k, int exact_max_d = 4, const SolverConfig & cfg = {}) -> CubeConjectureResult
    {
        if (d < 2)
            throw ParameterError("cube conjecture check requires d >= 2");
        if (k < 1 || k > d)
            throw ParameterError("cube conjecture check requires 1 <= k <= d");
        CubeConjectureResult r;
        r.d = d;
        r.k = k;
        r.formula = hypercube_formula(d, k);
        r.witness = hypercube_L_witness(d, k).sequence;
        r.lower = static_cast<int>(r.witness.size());
        r.upper = std::min((1 << d) - d + k, 1 << d);
        if (d <= exact_max_d) {
            auto solved = grundy_number(generate(family::Hypercube{ d }), Variant::L, k, cfg);
            r.exact = solved.value;
            r.witness = solved.witness;
            r.status = solved.value == r.formula ? CubeStatus::ConfirmedByExact : CubeStatus::RefutedByExact;
        }
        else
            r.status = (r.lower == r.upper && r.lower == r.formula) ? CubeStatus::ConfirmedByPinch : CubeStatus::UndecidedInterval;
        return r;
    }

    inline auto to_json(const CubeConjectureResult & r) -> json
    {
        json j{ { "d", r.d }, { "k", r.k }, { "formula", r.formula }, { "lower", r.lower }, { "upper", r.upper },
            { "status", to_string(r.status) } };
        j["exact"] = r.exact ? json(*r.exact) : json(nullptr);
        return j;
    }

    // --------------------------------------------------------- product question

    enum class Relation
    {
        Equal,
        LhsLess,
        LhsGreater,
        Undecided
    };

    inline auto to_string(Relation r) -> std::string
    {
        switch (r) {
            case Relation::Equal:      return "EQUAL";
            case Relation::LhsLess:    return "LHS<RHS";
            case Relation::LhsGreater: return "LHS>RHS";
            case Relation::Undecided:  return "UNDECIDED";
        }
        return "?";
    }

    struct Interval
    {
        int lower = 0;
        int upper = 0;
        auto exact() const -> bool { return lower == upper; }
    };

    struct ProductQuestionResult
    {
        int k = 1;
        Interval lhs;
        Interval left;
        Interval right;
        Interval rhs;
        Relation relation = Relation::Undecided;
        /// delta >= k on both factors.
        bool hypothesis_holds = false;
    };

    namespace detail
    {
        inline auto l_interval(const Graph & g, int k, const SolverConfig & cfg) -> Interval
        {
            if (g.size() <= std::min(cfg.max_vertices, 64)) {
                int v = grundy_number(g, Variant::L, k, cfg).value;
                return { v, v };
            }
            auto b = grundy_bounds(g, Variant::L, k);
            return { b.lower, b.upper };
        }
    }

    /// Compares gamma^{L,k}(G box H) with gamma^{L,k}(G) * gamma^{L,k}(H), exactly
    /// where the guard allows and as intervals otherwise.
    inline auto check_product_question(const Graph & g, const Graph & h, int k, const SolverConfig & cfg = {}) -> ProductQuestionResult
    {
        ProductQuestionResult r;
        r.k = k;
        r.hypothesis_holds = g.min_degree() >= k && h.min_degree() >= k;
        r.left = detail::l_interval(g, k, cfg);
        r.right = detail::l_interval(h, k, cfg);
        r.rhs = { r.left.lower * r.right.lower, r.left.upper * r.right.upper };
        r.lhs = detail::l_interval(cartesian_product(g, h), k, cfg);
        if (r.lhs.exact() && r.rhs.exact() && r.lhs.lower == r.rhs.lower)
            r.relation = Relation::Equal;
        else if (r.lhs.upper < r.rhs.lower)
            r.relation = Relation::LhsLess;
        else if (r.lhs.lower > r.rhs.upper)
            r.relation = Relation::LhsGreater;
        else
            r.relation = Relation::Undecided;
        return r;
    }

    inline auto to_json(const ProductQuestionResult & r) -> json
    {
        auto interval = [] (const Interval & i) { return json{ { "lower", i.lower }, { "upper", i.upper } }; };
        return json{ { "k", r.k }, { "lhs", interval(r.lhs) }, { "left", interval(r.left) }, { "right", interval(r.right) },
            { "rhs", interval(r.rhs) }, { "relation", to_string(r.relation) },
            { "status", r.hypothesis_holds ? "CHECKED" : "SKIPPED-HYPOTHESIS" } };
    }
}
