#pragma once

#include <kgrundy/kgrundy.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace kgrundy::cli
{
    // Exit statuses.
    inline constexpr int ok = 0;
    inline constexpr int verification_failure = 1;
    inline constexpr int usage_error = 2;

    inline constexpr const char * family_help =
        "family spec name:params, one of\n"
        "  cycle:N  path:N  complete:N  kbipartite:M,N  hypercube:D\n"
        "  grid:M,N  gadget:H  trigrid:R,C  random:N,P[,SEED]\n"
        "random graphs without a SEED use --seed";

    struct GraphSource
    {
        std::string family;
        std::string path;
        std::string graph_format = "auto";
    };

    struct SolverFlags
    {
        std::size_t memo_limit = SolverConfig{}.memo_limit;
        bool no_degree_pruning = false;
        bool allow_z_below_delta = false;
        int max_vertices = SolverConfig{}.max_vertices;
    };

    struct Common
    {
        GraphSource source;
        SolverFlags solver;
        std::string variant = "plain";
        int k = 1;
        std::string format = "human";
        int jobs = 1;
        std::uint64_t seed = 0;
    };

    inline auto read_all(const std::string & path, std::istream & in) -> std::string
    {
        if (path == "-")
            return std::string(std::istreambuf_iterator<char>(in), {});
        std::ifstream file(path, std::ios::binary);
        if (! file)
            throw ParameterError("cannot open '" + path + "' for reading");
        return std::string(std::istreambuf_iterator<char>(file), {});
    }

    inline auto detect_format(const std::string & path, const std::string & requested, const std::string & text) -> GraphFormat
    {
        if (requested == "g6")
            return GraphFormat::Graph6;
        if (requested == "edges")
            return GraphFormat::EdgeList;
        if (path.ends_with(".g6"))
            return GraphFormat::Graph6;
        if (path.ends_with(".edges") || path.ends_with(".txt"))
            return GraphFormat::EdgeList;
        // graph6 never contains a space, edge lists always do unless empty
        return text.find_first_of(" \t#") == std::string::npos && ! text.empty() ? GraphFormat::Graph6 : GraphFormat::EdgeList;
    }

    struct LoadedGraph
    {
        Graph graph;
        std::string descriptor;
        std::optional<FamilySpec> family;
    };

    inline auto load_graph(const Common & c, std::istream & in) -> LoadedGraph
    {
        const auto & s = c.source;
        if (s.family.empty() == s.path.empty())
            throw ParameterError("give exactly one graph source: --family SPEC or --graph FILE");
        if (! s.family.empty()) {
            auto spec = parse_family(s.family, c.seed);
            return { generate(spec), to_string(spec), spec };
        }
        auto text = read_all(s.path, in);
        auto format = detect_format(s.path, s.graph_format, text);
        if (format == GraphFormat::Graph6) {
            auto end = text.find_last_not_of("\r\n");
            text.resize(end == std::string::npos ? 0 : end + 1);
        }
        return { parse(text, format), s.path, std::nullopt };
    }

    inline auto solver_config(const Common & c) -> SolverConfig
    {
        SolverConfig cfg;
        cfg.memo_limit = c.solver.memo_limit;
        cfg.use_degree_bound_pruning = ! c.solver.no_degree_pruning;
        cfg.allow_z_below_delta = c.solver.allow_z_below_delta;
        cfg.parallel_width = c.jobs;
        cfg.max_vertices = c.solver.max_vertices;
        return cfg;
    }

    inline auto join(const std::vector<Vertex> & vs) -> std::string
    {
        std::string out;
        for (std::size_t i = 0 ; i < vs.size() ; ++i)
            out += (i ? " " : "") + std::to_string(vs[i]);
        return out;
    }

    inline auto add_source(CLI::App * app, Common & c) -> void
    {
        app->add_option("--family", c.source.family, family_help);
        app->add_option("--graph", c.source.path, "graph file, '-' for stdin");
        app->add_option("--graph-format", c.source.graph_format, "graph file format")
            ->check(CLI::IsMember({ "auto", "g6", "edges" }));
        app->add_option("--seed", c.seed, "seed for random families (default 0)");
    }

    inline auto add_variant(CLI::App * app, Common & c) -> void
    {
        app->add_option("--variant", c.variant, "plain, total, z or l")->required();
        app->add_option("--k", c.k, "footprint multiplicity")->required()->check(CLI::PositiveNumber);
    }

    inline auto add_solver(CLI::App * app, Common & c) -> void
    {
        app->add_option("--memo-limit", c.solver.memo_limit, "maximum number of remembered states");
        app->add_flag("--no-degree-pruning", c.solver.no_degree_pruning, "do not stop early at the minimum degree bound");
        app->add_flag("--allow-z-below-delta", c.solver.allow_z_below_delta, "solve Z-sequences even when k > minimum degree");
        app->add_option("--max-vertices", c.solver.max_vertices, "exhaustive-search guard")->check(CLI::Range(1, 64));
    }

    inline auto add_format(CLI::App * app, Common & c, std::vector<std::string> allowed = { "human", "json" }) -> void
    {
        app->add_option("--format", c.format, "output format")->check(CLI::IsMember(allowed));
    }

    // ------------------------------------------------------------------ solve

    inline auto cmd_solve(const Common & c, std::istream & in, std::ostream & out) -> int
    {
        auto loaded = load_graph(c, in);
        auto variant = parse_variant(c.variant);
        auto r = grundy_number(loaded.graph, variant, c.k, solver_config(c));
        if (c.format == "json") {
            json j{ { "graph", loaded.descriptor }, { "n", loaded.graph.size() }, { "variant", to_string(variant) }, { "k", c.k },
                { "value", r.value }, { "upper_bound", r.stats.upper_bound }, { "certificate", to_json(r.witness) } };
            out << j.dump() << '\n';
        }
        else {
            out << "graph: " << loaded.descriptor << " (n = " << loaded.graph.size() << ")\n";
            out << "variant: " << to_string(variant) << ", k = " << c.k << '\n';
            out << "value: " << r.value << '\n';
            out << "upper bound: " << r.stats.upper_bound << '\n';
            out << "sequence: " << join(r.witness.order) << '\n';
            out << "witnesses: " << join(r.witness.witnesses) << '\n';
        }
        return ok;
    }

    // ----------------------------------------------------------------- bounds

    inline auto cmd_bounds(const Common & c, std::istream & in, std::ostream & out) -> int
    {
        auto loaded = load_graph(c, in);
        auto variant = parse_variant(c.variant);
        auto b = grundy_bounds(loaded.graph, variant, c.k, loaded.family, std::min(c.solver.max_vertices, 64));
        std::optional<ClosedForm> cf;
        std::string inapplicable;
        if (loaded.family) {
            try {
                cf = closed_form_value(*loaded.family, variant, c.k);
            }
            catch (const InapplicableError & e) {
                inapplicable = e.what();
            }
        }
        if (cf) {
            b.lower = std::max(b.lower, cf->lower);
            b.upper = std::min(b.upper, cf->upper);
        }

        if (c.format == "csv") {
            if (! cf)
                throw InapplicableError("a family with a known closed form for CSV output");
            out << closed_form_csv({ *cf });
            return ok;
        }
        if (c.format == "json") {
            json j{ { "graph", loaded.descriptor }, { "n", loaded.graph.size() }, { "variant", to_string(variant) }, { "k", c.k },
                { "lower", b.lower }, { "upper", b.upper }, { "lower_source", b.lower_source }, { "upper_source", b.upper_source },
                { "certificate", to_json(b.lower_witness) } };
            if (cf)
                j["closed_form"] = json{ { "exact", cf->exact ? json(*cf->exact) : json(nullptr) }, { "lower", cf->lower },
                    { "upper", cf->upper }, { "source", cf->source } };
            else
                j["closed_form"] = nullptr;
            out << j.dump() << '\n';
            return ok;
        }
        out << "graph: " << loaded.descriptor << " (n = " << loaded.graph.size() << ")\n";
        out << "variant: " << to_string(variant) << ", k = " << c.k << '\n';
        out << "lower: " << b.lower << " (" << b.lower_source << ")\n";
        out << "upper: " << b.upper << " (" << b.upper_source << ")\n";
        if (cf)
            out << "closed form: " << (cf->exact ? std::to_string(*cf->exact) : "[" + std::to_string(cf->lower) + ", " + std::to_string(cf->upper) + "]")
                << " (" << cf->source << ")\n";
        else if (! inapplicable.empty())
            out << "closed form: " << inapplicable << '\n';
        out << "sequence: " << join(b.lower_witness.order) << '\n';
        return ok;
    }

    // ----------------------------------------------------------------- verify

    inline auto cmd_verify(const Common & c, const std::string & certificate, std::istream & in, std::ostream & out) -> int
    {
        if (certificate == "-" && c.source.path == "-")
            throw ParameterError("the graph and the certificate cannot both come from stdin");
        auto loaded = load_graph(c, in);
        auto text = read_all(certificate, in);
        GrundySequence seq;
        auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            json j;
            try {
                j = json::parse(text);
            }
            catch (const json::parse_error & e) {
                throw ParseError(std::string("certificate: ") + e.what(), e.byte);
            }
            // accept the whole output of `solve --format json` as well as a bare certificate
            seq = sequence_from_json(j.contains("certificate") ? j.at("certificate") : j);
        }
        else
            seq = parse_certificate(text);

        auto report = verify(loaded.graph, seq);
        if (c.format == "json") {
            json j{ { "valid", report.valid }, { "length", seq.size() }, { "variant", to_string(seq.variant) }, { "k", seq.k },
                { "warnings", report.warnings } };
            if (report.valid)
                j["witnesses"] = report.witnesses;
            else {
                j["index"] = report.index;
                j["reason"] = report.reason;
            }
            out << j.dump() << '\n';
        }
        else {
            for (const auto & w : report.warnings)
                out << "warning: " << w << '\n';
            if (report.valid)
                out << "valid " << to_string(seq.variant) << " " << seq.k << "-sequence of length " << seq.size() << '\n';
            else
                out << "invalid at index " << report.index << ": " << report.reason << '\n';
        }
        return report.valid ? ok : verification_failure;
    }

    // ---------------------------------------------------------------- witness

    struct WitnessArgs
    {
        std::string construction;
        int n = 0;
        int m = 0;
        int d = 0;
        int h = 0;
        bool verify = false;
    };

    inline auto cmd_witness(const Common & c, const WitnessArgs & w, std::ostream & out) -> int
    {
        GrundySequence seq;
        Graph g(0, std::vector<std::pair<Vertex, Vertex>>{});
        std::string descriptor;
        std::vector<std::size_t> phases;
        auto need = [] (int value, const char * flag) {
            if (value <= 0)
                throw ParameterError(std::string("construction needs ") + flag);
        };
        if (w.construction == "cycle") {
            need(w.n, "--n");
            seq = cycle_witness(w.n, parse_variant(c.variant));
            descriptor = to_string(FamilySpec{ family::Cycle{ w.n } });
        }
        else if (w.construction == "hypercube") {
            need(w.d, "--d");
            auto hw = hypercube_L_witness(w.d, c.k);
            seq = hw.sequence;
            phases = hw.phase_sizes;
            descriptor = to_string(FamilySpec{ family::Hypercube{ w.d } });
        }
        else if (w.construction == "grid") {
            need(w.m, "--m");
            need(w.n, "--n");
            seq = grid_witness(w.m, w.n);
            descriptor = to_string(FamilySpec{ family::Grid{ w.m, w.n } });
        }
        else if (w.construction == "gadget") {
            need(w.h, "--h");
            seq = gadget_L2_witness(w.h);
            descriptor = to_string(FamilySpec{ family::TreeCycleGadget{ w.h } });
        }
        else
            throw ParameterError("unknown construction '" + w.construction + "'");

        VerifyReport report;
        if (w.verify)
            report = verify(generate(parse_family(descriptor)), seq);

        if (c.format == "json") {
            json j{ { "graph", descriptor }, { "construction", w.construction }, { "length", seq.size() }, { "certificate", to_json(seq) } };
            if (! phases.empty())
                j["phase_sizes"] = phases;
            if (w.verify)
                j["valid"] = report.valid;
            out << j.dump() << '\n';
        }
        else {
            out << "graph: " << descriptor << '\n';
            out << "certificate: " << to_string(seq.variant) << ' ' << seq.k << ", length " << seq.size() << '\n';
            if (! phases.empty()) {
                out << "phases:";
                for (auto p : phases)
                    out << ' ' << p;
                out << '\n';
            }
            out << "sequence: " << join(seq.order) << '\n';
            out << "witnesses: " << join(seq.witnesses) << '\n';
            if (w.verify)
                out << (report.valid ? "verified" : "INVALID at index " + std::to_string(report.index) + ": " + report.reason) << '\n';
        }
        return ! w.verify || report.valid ? ok : verification_failure;
    }

    // ---------------------------------------------------------------- forcing

    inline auto cmd_forcing(const Common & c, const std::vector<Vertex> & initial, bool have_initial, std::istream & in, std::ostream & out) -> int
    {
        auto loaded = load_graph(c, in);
        const auto & g = loaded.graph;
        ForcingTrace trace;
        std::optional<int> number;
        if (have_initial)
            trace = closure(g, c.k, initial);
        else {
            auto r = k_forcing_number(g, c.k, std::min(c.solver.max_vertices, 64));
            number = r.forcing_number;
            trace = r.trace;
        }
        std::optional<GrundySequence> z;
        if (trace.complete(g))
            z = z_sequence_from_forcing(g, c.k, trace);

        if (c.format == "json") {
            json j{ { "graph", loaded.descriptor }, { "n", g.size() }, { "k", c.k }, { "trace", to_json(trace) },
                { "complete", trace.complete(g) } };
            j["forcing_number"] = number ? json(*number) : json(nullptr);
            j["z_certificate"] = z ? to_json(*z) : json(nullptr);
            out << j.dump() << '\n';
        }
        else {
            out << "graph: " << loaded.descriptor << " (n = " << g.size() << ")\n";
            if (number)
                out << "F_" << c.k << " = " << *number << '\n';
            out << "initial blue: " << join(trace.initial_blue) << '\n';
            for (const auto & w : trace.waves)
                out << "  " << w.forcer << " forces " << join(w.forced) << '\n';
            out << "final blue: " << trace.final_blue.size() << " of " << g.size() << '\n';
            if (z)
                out << "Z-sequence (length " << z->size() << "): " << join(z->order) << '\n';
        }
        return ok;
    }

    // ------------------------------------------------------------------ audit

    struct AuditArgs
    {
        std::string input;
        std::vector<std::string> families;
        std::string random;
        std::vector<int> ks{ 1, 2 };
        bool raw = false;
        bool full_l = false;
        std::string campaign = "audit";
    };

    inline auto parse_random_sweep(const std::string & text, std::uint64_t seed) -> std::vector<NamedGraph>
    {
        std::istringstream in(text);
        int count = 0, n = 0;
        double p = 0;
        char c1 = 0, c2 = 0;
        if (! (in >> count >> c1 >> n >> c2 >> p) || c1 != ',' || c2 != ',' || count < 0 || ! in.eof())
            throw ParameterError("--random expects COUNT,N,P");
        std::vector<NamedGraph> out;
        for (int i = 0 ; i < count ; ++i) {
            FamilySpec spec = family::ErRandom{ n, p, seed + static_cast<std::uint64_t>(i) };
            out.push_back({ to_string(spec), generate(spec) });
        }
        return out;
    }

    inline auto graph_stream(const Common & c, const AuditArgs & a, std::istream & in) -> std::vector<NamedGraph>
    {
        std::vector<NamedGraph> stream;
        if (! a.input.empty()) {
            std::istringstream lines(read_all(a.input, in));
            std::string line;
            std::size_t number = 0, offset = 0;
            while (std::getline(lines, line)) {
                ++number;
                if (! line.empty() && line.back() == '\r')
                    line.pop_back();
                if (! line.empty())
                    stream.push_back({ a.input + ":" + std::to_string(number), from_graph6(line, offset) });
                offset += line.size() + 1;
            }
        }
        for (const auto & f : a.families) {
            auto spec = parse_family(f, c.seed);
            stream.push_back({ to_string(spec), generate(spec) });
        }
        if (! a.random.empty()) {
            auto r = parse_random_sweep(a.random, c.seed);
            stream.insert(stream.end(), r.begin(), r.end());
        }
        if (a.input.empty() && a.families.empty() && a.random.empty())
            throw ParameterError("audit needs --input FILE, --family SPEC or --random COUNT,N,P");
        return stream;
    }

    inline auto cmd_audit(const Common & c, const AuditArgs & a, std::istream & in, std::ostream & out) -> int
    {
        AuditOptions options;
        options.ks = a.ks;
        options.solver = solver_config(c);
        options.solver.parallel_width = 1;
        options.respect_hypotheses = ! a.raw;
        options.jobs = c.jobs;
        auto report = audit_bounds(graph_stream(c, a, in), options, a.campaign);
        if (c.format == "json")
            out << to_json_lines(report, a.full_l);
        else if (c.format == "csv")
            out << csv_summary(report);
        else {
            for (const auto & rec : report.instances) {
                if (a.full_l && rec.full_l.empty())
                    continue;
                out << rec.descriptor << " [" << rec.graph6 << "]";
                if (rec.skipped) {
                    out << " skipped: " << *rec.skipped << '\n';
                    continue;
                }
                for (const auto & kv : rec.values) {
                    out << "  k=" << kv.k;
                    for (Variant v : all_variants)
                        out << ' ' << to_string(v) << '=' << (kv[v] ? std::to_string(*kv[v]) : "-");
                }
                out << (rec.failed() ? "  FAIL" : "  ok") << '\n';
                for (const auto & ch : rec.checks)
                    if (ch.status == CheckStatus::Fail)
                        out << "    FAIL " << ch.name << " (k=" << ch.k << "): " << ch.detail << '\n';
            }
            out << "instances " << report.instances.size() << ", checks pass " << report.count(CheckStatus::Pass) << ", fail "
                << report.count(CheckStatus::Fail) << ", skipped " << report.count(CheckStatus::Skipped) << '\n';
        }
        return report.count(CheckStatus::Fail) ? verification_failure : ok;
    }

    // ------------------------------------------------------------- conjecture

    struct ConjectureArgs
    {
        std::string which;
        std::string input;
        int d = 0;
        int exact_max_d = 4;
        std::string left;
        std::string right;
    };

    inline auto cmd_conjecture(const Common & c, const ConjectureArgs & a, std::istream & in, std::ostream & out) -> int
    {
        auto cfg = solver_config(c);
        if (a.which == "cube") {
            auto r = check_cube_conjecture(a.d, c.k, a.exact_max_d, cfg);
            if (c.format == "json")
                out << to_json(r).dump() << '\n';
            else
                out << "Q_" << r.d << ", k = " << r.k << ": formula " << r.formula << ", interval [" << r.lower << ", " << r.upper << "]"
                    << (r.exact ? ", exact " + std::to_string(*r.exact) : std::string()) << ": " << to_string(r.status) << '\n';
            return r.status == CubeStatus::RefutedByExact ? verification_failure : ok;
        }
        if (a.which == "product") {
            if (a.left.empty() || a.right.empty())
                throw ParameterError("product needs --left SPEC and --right SPEC");
            auto g = generate(parse_family(a.left, c.seed));
            auto h = generate(parse_family(a.right, c.seed));
            auto r = check_product_question(g, h, c.k, cfg);
            if (c.format == "json") {
                auto j = to_json(r);
                j["left_graph"] = a.left;
                j["right_graph"] = a.right;
                out << j.dump() << '\n';
            }
            else {
                auto show = [] (const Interval & i) {
                    return i.exact() ? std::to_string(i.lower) : "[" + std::to_string(i.lower) + ", " + std::to_string(i.upper) + "]";
                };
                out << "L(" << a.left << " x " << a.right << ") = " << show(r.lhs) << ", L(" << a.left << ") * L(" << a.right
                    << ") = " << show(r.left) << " * " << show(r.right) << " = " << show(r.rhs) << ": " << to_string(r.relation)
                    << (r.hypothesis_holds ? "" : " (SKIPPED-HYPOTHESIS: minimum degree below k)") << '\n';
            }
            return ok;
        }
        if (a.which != "forcing")
            throw ParameterError("unknown conjecture '" + a.which + "' (forcing, cube or product)");

        std::vector<NamedGraph> stream;
        if (! a.input.empty()) {
            AuditArgs aa;
            aa.input = a.input;
            stream = graph_stream(c, aa, in);
        }
        else {
            auto loaded = load_graph(c, in);
            stream.push_back({ loaded.descriptor, loaded.graph });
        }
        std::size_t equal = 0, different = 0, skipped = 0;
        for (const auto & item : stream) {
            json j{ { "instance", item.descriptor }, { "graph6", to_graph6(item.graph) }, { "k", c.k } };
            if (item.graph.size() == 0 || c.k > item.graph.min_degree()) {
                ++skipped;
                j["skipped"] = "hypothesis k <= minimum degree fails";
                if (c.format == "json")
                    out << j.dump() << '\n';
                continue;
            }
            auto r = check_forcing_conjecture(item.graph, c.k, cfg);
            (r.equal ? equal : different) += 1;
            if (c.format == "json") {
                j.update(to_json(r));
                out << j.dump() << '\n';
            }
            else if (stream.size() == 1 || ! r.equal)
                out << item.descriptor << ": zk = " << r.zk << ", n - F_k = " << r.n << " - " << r.forcing_number << " = "
                    << r.n_minus_fk << (r.equal ? ", equal" : ", DIFFERENT") << '\n';
        }
        if (c.format != "json" && stream.size() > 1)
            out << "equal " << equal << ", different " << different << ", skipped " << skipped << '\n';
        return different ? verification_failure : ok;
    }

    // ----------------------------------------------------------------- family

    inline auto cmd_family(const Common & c, const std::string & emit, std::istream & in, std::ostream & out) -> int
    {
        auto loaded = load_graph(c, in);
        const auto & g = loaded.graph;
        if (emit == "g6") {
            out << to_graph6(g) << '\n';
            return ok;
        }
        if (emit == "edges") {
            out << to_edge_list(g);
            return ok;
        }
        json j{ { "graph", loaded.descriptor }, { "n", g.size() }, { "edges", g.edge_count() }, { "graph6", to_graph6(g) },
            { "connected", g.is_connected() } };
        if (g.size() > 0) {
            j["min_degree"] = g.min_degree();
            j["max_degree"] = g.max_degree();
        }
        if (c.format == "json")
            out << j.dump() << '\n';
        else {
            out << "graph: " << loaded.descriptor << '\n';
            out << "vertices: " << g.size() << ", edges: " << g.edge_count() << '\n';
            if (g.size() > 0)
                out << "degree: min " << g.min_degree() << ", max " << g.max_degree() << '\n';
            out << "connected: " << (g.is_connected() ? "yes" : "no") << '\n';
            out << "graph6: " << to_graph6(g) << '\n';
        }
        return ok;
    }

    // ------------------------------------------------------------------- main

    inline auto run(const std::vector<std::string> & args, std::istream & in, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{ "k-Grundy domination: exact values, bounds, certificates and audits", "kgrundy" };
        app.require_subcommand(1);
        app.footer(std::string("\n") + family_help);

        Common c;
        auto solve = app.add_subcommand("solve", "exact k-Grundy domination number with a certificate");
        add_source(solve, c);
        add_variant(solve, c);
        add_solver(solve, c);
        add_format(solve, c);
        solve->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);

        auto bounds = app.add_subcommand("bounds", "lower and upper bounds without exhaustive search");
        add_source(bounds, c);
        add_variant(bounds, c);
        add_format(bounds, c, { "human", "json", "csv" });
        bounds->add_option("--max-vertices", c.solver.max_vertices, "forcing search guard for Z lower bounds")->check(CLI::Range(1, 64));

        std::string certificate;
        auto verify_cmd = app.add_subcommand("verify", "check a sequence certificate against a graph");
        add_source(verify_cmd, c);
        add_format(verify_cmd, c);
        verify_cmd->add_option("--certificate", certificate, "JSON or text certificate, '-' for stdin")->required();

        WitnessArgs w;
        auto witness = app.add_subcommand("witness", "constructive sequences for cycles, hypercubes, grids and the gadget");
        // --h is the gadget height here
        witness->set_help_flag("--help", "Print this help message and exit");
        witness->add_option("--construction", w.construction, "cycle, hypercube, grid or gadget")
            ->required()->check(CLI::IsMember({ "cycle", "hypercube", "grid", "gadget" }));
        witness->add_option("--n", w.n, "cycle length or grid columns");
        witness->add_option("--m", w.m, "grid rows");
        witness->add_option("--d", w.d, "hypercube dimension");
        witness->add_option("--h", w.h, "gadget tree height");
        witness->add_option("--variant", c.variant, "cycle variant");
        witness->add_option("--k", c.k, "hypercube k")->check(CLI::PositiveNumber);
        witness->add_flag("--verify", w.verify, "verify the certificate against the generated graph");
        add_format(witness, c);

        std::vector<Vertex> initial;
        auto forcing = app.add_subcommand("forcing", "k-forcing number, closure traces and the derived Z-sequence");
        add_source(forcing, c);
        add_format(forcing, c);
        forcing->add_option("--k", c.k, "forcing threshold")->required()->check(CLI::PositiveNumber);
        auto initial_opt = forcing->add_option("--initial", initial, "run the closure from these vertices instead")->delimiter(',');
        forcing->add_option("--max-vertices", c.solver.max_vertices, "forcing search guard per component")->check(CLI::Range(1, 64));

        std::string emit = "info";
        auto family_cmd = app.add_subcommand("family", "generate a graph and describe or serialise it");
        add_source(family_cmd, c);
        add_format(family_cmd, c);
        family_cmd->add_option("--emit", emit, "info, g6 or edges")->check(CLI::IsMember({ "info", "g6", "edges" }));

        AuditArgs a;
        auto audit = app.add_subcommand("audit", "solve all variants over a graph stream and check the inequalities between them");
        audit->add_option("--input", a.input, "graph6 file, one graph per line, '-' for stdin");
        audit->add_option("--family", a.families, "family spec (repeatable)");
        audit->add_option("--random", a.random, "COUNT,N,P random graphs seeded --seed, --seed + 1, ...");
        audit->add_option("--seed", c.seed, "base seed (default 0)");
        audit->add_option("--ks", a.ks, "values of k")->delimiter(',')->check(CLI::PositiveNumber);
        audit->add_flag("--raw", a.raw, "also check plain <= L - 1 when minimum degree < k");
        audit->add_flag("--full-l", a.full_l, "report only instances whose L-value equals n for some k");
        audit->add_option("--campaign", a.campaign, "campaign name recorded in every line");
        audit->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
        add_solver(audit, c);
        add_format(audit, c, { "human", "json", "csv" });

        ConjectureArgs conj;
        auto conjecture = app.add_subcommand("conjecture", "forcing, cube or product checks");
        conjecture->add_option("which", conj.which, "forcing, cube or product")->required()
            ->check(CLI::IsMember({ "forcing", "cube", "product" }));
        add_source(conjecture, c);
        conjecture->add_option("--input", conj.input, "graph6 stream for a forcing campaign");
        conjecture->add_option("--k", c.k, "k")->required()->check(CLI::PositiveNumber);
        conjecture->add_option("--d", conj.d, "hypercube dimension");
        conjecture->add_option("--exact-max-d", conj.exact_max_d, "largest dimension solved exactly");
        conjecture->add_option("--left", conj.left, "left factor family spec");
        conjecture->add_option("--right", conj.right, "right factor family spec");
        add_solver(conjecture, c);
        add_format(conjecture, c);

        std::vector<std::string> argv_rev(args.rbegin(), args.rend());
        try {
            app.parse(argv_rev);
        }
        catch (const CLI::CallForHelp &) {
            out << app.help();
            return ok;
        }
        catch (const CLI::CallForAllHelp &) {
            out << app.help("", CLI::AppFormatMode::All);
            return ok;
        }
        catch (const CLI::ParseError & e) {
            err << "kgrundy: " << e.what() << '\n';
            auto * sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
            err << "run 'kgrundy " << (sub == &app ? "" : sub->get_name() + " ") << "--help' for usage\n";
            return usage_error;
        }

        try {
            if (solve->parsed())
                return cmd_solve(c, in, out);
            if (bounds->parsed())
                return cmd_bounds(c, in, out);
            if (verify_cmd->parsed())
                return cmd_verify(c, certificate, in, out);
            if (witness->parsed())
                return cmd_witness(c, w, out);
            if (forcing->parsed())
                return cmd_forcing(c, initial, initial_opt->count() > 0, in, out);
            if (family_cmd->parsed())
                return cmd_family(c, emit, in, out);
            if (audit->parsed())
                return cmd_audit(c, a, in, out);
            if (conjecture->parsed())
                return cmd_conjecture(c, conj, in, out);
        }
        catch (const InternalError & e) {
            err << "kgrundy: internal check failed: " << e.what() << '\n';
            return verification_failure;
        }
        catch (const CapacityError & e) {
            err << "kgrundy: " << e.what() << " (try 'bounds', or raise --max-vertices)\n";
            return usage_error;
        }
        catch (const PreconditionError & e) {
            err << "kgrundy: " << e.what() << '\n';
            return usage_error;
        }
        catch (const Error & e) {
            err << "kgrundy: " << e.what() << '\n';
            return usage_error;
        }
        catch (const json::exception & e) {
            err << "kgrundy: malformed JSON: " << e.what() << '\n';
            return usage_error;
        }
        return usage_error;
    }
}
