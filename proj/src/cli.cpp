#include "vcbsp/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "vcbsp/algorithms/attribute_broadcast.hpp"
#include "vcbsp/algorithms/hashmin.hpp"
#include "vcbsp/algorithms/msf.hpp"
#include "vcbsp/algorithms/pagerank.hpp"
#include "vcbsp/algorithms/shiloach_vishkin.hpp"
#include "vcbsp/algorithms/sssp.hpp"
#include "vcbsp/generator.hpp"
#include "vcbsp/metrics.hpp"
#include "vcbsp/report.hpp"

namespace vcbsp::cli {

namespace {

struct CommonFlags {
    std::string graph;
    std::string id_type = "int";
    bool directed_flag = false;
    bool undirected_flag = false;
    bool weighted = false;
    int workers = 4;
    int threads = 1;
    std::string mirror = "off";
    std::string combiner = "on";
    std::string reqresp = "on";
    std::uint64_t seed = 0;
    int max_supersteps = 10000;
    std::string output = "results.txt";
    std::string report = "report.json";
    // algorithm specific
    std::string source = "0";
    double epsilon = 0.01;
    int iterations = 0;
};

bool parse_on_off(const std::string& v, const std::string& flag) {
    if (v == "on") return true;
    if (v == "off") return false;
    throw ParseError("--" + flag + " expects 'on' or 'off'");
}

struct AlgoTraits {
    bool directed = true;
    bool weighted = false;
    bool has_reqresp_variants = false;  // --reqresp meaningful
    bool needs_reqresp = false;
    bool broadcasts = true;  // eligible for `sweep`
};

AlgoTraits traits_for(const std::string& algo) {
    if (algo == "hashmin") return {false, false, false, false, true};
    if (algo == "sv") return {false, false, true, false, true};
    if (algo == "msf") return {false, true, false, true, false};
    if (algo == "pagerank") return {true, false, false, false, true};
    if (algo == "attrbcast") return {true, false, true, false, false};
    if (algo == "sssp") return {true, true, false, false, true};
    throw ParseError("unknown algorithm '" + algo +
                     "' (hashmin|sv|pagerank|sssp|attrbcast|msf)");
}

struct Prepared {
    Graph graph;
    AlgoOptions opts;
    ReportMeta meta;
    bool reqresp = true;
    AlgoTraits traits;
};

Prepared prepare(const std::string& algo, const CommonFlags& f, std::size_t reqresp_count) {
    Prepared p;
    p.traits = traits_for(algo);
    if (f.directed_flag && f.undirected_flag)
        throw ParseError("--directed and --undirected are mutually exclusive");

    LoadOptions lo;
    lo.directed = f.directed_flag ? true : (f.undirected_flag ? false : p.traits.directed);
    lo.weighted = p.traits.weighted || f.weighted;
    lo.pair_ids = (f.id_type == "pair");
    if (f.id_type != "int" && f.id_type != "pair")
        throw ParseError("--id-type expects 'int' or 'pair'");
    p.graph = load_edge_list(f.graph, lo);

    TauSpec tau = parse_tau(f.mirror);
    p.opts.workers = f.workers;
    p.opts.threads = f.threads;
    p.opts.combiner = parse_on_off(f.combiner, "combiner");
    p.opts.mirror_mode = tau.mode;
    p.opts.mirror_threshold = tau.value;
    p.opts.max_supersteps = f.max_supersteps;

    p.reqresp = parse_on_off(f.reqresp, "reqresp");
    if (reqresp_count > 0 && !p.traits.has_reqresp_variants && !p.traits.needs_reqresp)
        throw ParseError("--reqresp is not applicable to '" + algo + "'");
    if (p.traits.needs_reqresp && !p.reqresp)
        throw ParseError("'" + algo + "' requires --reqresp on");
    p.opts.reqresp = p.reqresp;

    p.meta.algorithm = algo;
    p.meta.graph = f.graph;
    p.meta.n = p.graph.vertex_count();
    p.meta.m = p.graph.edge_entries();
    p.meta.workers = f.workers;
    p.meta.threads = f.threads;
    p.meta.combiner = p.opts.combiner;
    if (p.traits.has_reqresp_variants || p.traits.needs_reqresp) p.meta.reqresp = p.reqresp;
    p.meta.seed = f.seed;
    return p;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write results: " + path);
    for (const auto& l : lines) out << l << '\n';
    if (!out) throw Error("write failed: " + path);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int do_run(const std::string& algo, const CommonFlags& f, std::size_t reqresp_count) {
    Prepared p = prepare(algo, f, reqresp_count);
    std::vector<std::string> lines;
    RunStats stats;
    int supersteps = 0;
    nlohmann::json info = nlohmann::json::object();

    if (algo == "hashmin") {
        auto r = run_hashmin(p.graph, p.opts);
        for (const auto& [id, min_id] : r.values) lines.push_back(id.str() + " " + min_id.str());
        stats = std::move(r.stats);
        supersteps = r.supersteps;
    } else if (algo == "sv") {
        auto r = run_sv(p.graph, p.opts);
        for (const auto& [id, d] : r.component) lines.push_back(id.str() + " " + d.str());
        stats = std::move(r.stats);
        supersteps = r.supersteps;
        info["rounds"] = r.rounds;
    } else if (algo == "pagerank") {
        PageRankOptions pr;
        pr.epsilon = f.epsilon;
        pr.iterations = f.iterations;
        auto r = run_pagerank(p.graph, p.opts, pr);
        for (const auto& [id, v] : r.values)
            lines.push_back(id.str() + " " + fmt_double(PageRankProgram::to_double(v)));
        stats = std::move(r.stats);
        supersteps = r.supersteps;
        info["epsilon"] = pr.epsilon;
        info["iterations"] = pr.iterations;
    } else if (algo == "sssp") {
        VertexId src = VertexId::parse(f.source, f.id_type == "pair");
        auto r = run_sssp(p.graph, src, p.opts);
        for (const auto& [id, v] : r.values)
            lines.push_back(id.str() + " " + (v.reached ? fmt_double(v.dist) : "inf"));
        stats = std::move(r.stats);
        supersteps = r.supersteps;
        info["source"] = src.str();
    } else if (algo == "attrbcast") {
        auto decorate = [&lines](const auto& values) {
            for (const auto& [id, v] : values) {
                std::string line = id.str();
                for (const auto& [u, a] : v.decorated) line += " " + u.str() + ":" + std::to_string(a);
                lines.push_back(std::move(line));
            }
        };
        if (p.reqresp) {
            auto r = run_attrbcast_req(p.graph, p.opts);
            decorate(r.values);
            stats = std::move(r.stats);
            supersteps = r.supersteps;
        } else {
            auto r = run_attrbcast_msg(p.graph, p.opts);
            decorate(r.values);
            stats = std::move(r.stats);
            supersteps = r.supersteps;
        }
    } else if (algo == "msf") {
        auto r = run_msf(p.graph, p.opts);
        lines.push_back("# msf edges: u v w");
        for (const auto& [u, v, w] : r.edges)
            lines.push_back(u.str() + " " + v.str() + " " + fmt_double(w));
        stats = std::move(r.stats);
        supersteps = r.supersteps;
        info["total_weight"] = r.total_weight;
        info["edges"] = r.edges.size();
    }

    write_lines(f.output, lines);
    write_json(f.report, make_report(p.meta, stats, supersteps, info));
    std::cout << algo << ": " << p.meta.n << " vertices, " << supersteps << " supersteps, results in "
              << f.output << ", report in " << f.report << "\n";
    return 0;
}

int do_sweep(const std::string& algo, const CommonFlags& f, const std::string& thresholds,
             const std::string& csv_path, std::size_t reqresp_count) {
    Prepared p = prepare(algo, f, reqresp_count);
    if (!p.traits.broadcasts)
        throw ParseError("sweep requires a broadcast-based algorithm (hashmin|sv|pagerank|sssp)");

    std::vector<TauSpec> taus;
    std::stringstream ss(thresholds);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) taus.push_back(parse_tau(tok));
    }
    if (taus.empty()) throw ParseError("--thresholds is empty");

    auto runner = [&](MirrorMode mode, double value) -> std::pair<RunStats, int> {
        AlgoOptions o = p.opts;
        o.mirror_mode = mode;
        o.mirror_threshold = value;
        if (algo == "hashmin") {
            auto r = run_hashmin(p.graph, o);
            return {std::move(r.stats), r.supersteps};
        }
        if (algo == "sv") {
            auto r = run_sv(p.graph, o);
            return {std::move(r.stats), r.supersteps};
        }
        if (algo == "sssp") {
            auto r = run_sssp(p.graph, VertexId::parse(f.source, f.id_type == "pair"), o);
            return {std::move(r.stats), r.supersteps};
        }
        PageRankOptions pr;
        pr.epsilon = f.epsilon;
        pr.iterations = f.iterations;
        auto r = run_pagerank(p.graph, o, pr);
        return {std::move(r.stats), r.supersteps};
    };

    auto rows = sweep_thresholds(taus, runner);
    write_sweep_csv(csv_path, rows);
    std::cout << "sweep " << algo << ": " << rows.size() << " thresholds, csv in " << csv_path << "\n";
    return 0;
}

int do_gen(const std::string& kind, std::uint64_t n, double deg_avg, double exponent,
           std::uint64_t min_deg, bool weighted, std::uint64_t seed, const std::string& out) {
    GenConfig cfg;
    cfg.kind = parse_graph_kind(kind);
    cfg.n = n;
    cfg.deg_avg = deg_avg;
    cfg.exponent = exponent;
    cfg.min_deg = min_deg;
    cfg.weighted = weighted;
    cfg.seed = seed;
    auto edges = generate(cfg);
    std::string header = "generated: kind=" + kind + " n=" + std::to_string(n) +
                         " seed=" + std::to_string(seed);
    write_edge_list(out, edges, weighted, header);
    std::cout << "gen " << kind << ": " << edges.size() << " edges in " << out << "\n";
    return 0;
}

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--graph", f.graph, "edge-list file")->required();
    cmd->add_option("--id-type", f.id_type, "vertex id kind: int|pair");
    cmd->add_flag("--directed", f.directed_flag, "force directed load");
    cmd->add_flag("--undirected", f.undirected_flag, "force undirected load");
    cmd->add_flag("--weighted", f.weighted, "parse edge weights");
    cmd->add_option("--workers", f.workers, "worker count M");
    cmd->add_option("--threads", f.threads, "OS threads to multiplex workers on (0 = auto)");
    cmd->add_option("--mirror-threshold", f.mirror, "degree threshold: number|auto|off");
    cmd->add_option("--combiner", f.combiner, "sender-side combining: on|off");
    cmd->add_option("--seed", f.seed, "seed recorded in the report");
    cmd->add_option("--max-supersteps", f.max_supersteps, "abort after this many supersteps");
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"vertex-centric BSP graph engine"};
    app.require_subcommand(1);

    CommonFlags rf, sf;
    std::string run_algo, sweep_algo;
    auto* run_cmd = app.add_subcommand("run", "run an algorithm");
    run_cmd->add_option("algorithm", run_algo, "hashmin|sv|pagerank|sssp|attrbcast|msf")->required();
    add_common(run_cmd, rf);
    auto* run_reqresp = run_cmd->add_option("--reqresp", rf.reqresp, "request-respond channel: on|off");
    run_cmd->add_option("--output", rf.output, "vertex results file");
    run_cmd->add_option("--report", rf.report, "JSON run report file");
    run_cmd->add_option("--source", rf.source, "sssp source vertex");
    run_cmd->add_option("--epsilon", rf.epsilon, "pagerank convergence threshold");
    run_cmd->add_option("--iterations", rf.iterations, "pagerank fixed superstep count (0 = epsilon mode)");

    std::string thresholds = "1,10,100,1000,inf,auto", csv_path = "sweep.csv";
    auto* sweep_cmd = app.add_subcommand("sweep", "run once per mirroring threshold, emit CSV");
    sweep_cmd->add_option("algorithm", sweep_algo, "hashmin|sv|pagerank|sssp")->required();
    add_common(sweep_cmd, sf);
    auto* sweep_reqresp = sweep_cmd->add_option("--reqresp", sf.reqresp, "request-respond channel: on|off");
    sweep_cmd->add_option("--thresholds", thresholds, "comma list: numbers, inf, auto");
    sweep_cmd->add_option("--csv", csv_path, "output CSV file");
    sweep_cmd->add_option("--source", sf.source, "sssp source vertex");
    sweep_cmd->add_option("--epsilon", sf.epsilon, "pagerank convergence threshold");
    sweep_cmd->add_option("--iterations", sf.iterations, "pagerank fixed superstep count");

    std::string gen_kind, gen_out = "graph.txt";
    std::uint64_t gen_n = 0, gen_min_deg = 2, gen_seed = 1;
    double gen_deg_avg = 8.0, gen_exponent = 2.0;
    bool gen_weighted = false;
    auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic graph");
    gen_cmd->add_option("kind", gen_kind, "random|powerlaw|star|path")->required();
    gen_cmd->add_option("--n", gen_n, "vertex count")->required();
    gen_cmd->add_option("--deg-avg", gen_deg_avg, "random: out-degree per vertex");
    gen_cmd->add_option("--exponent", gen_exponent, "powerlaw exponent (> 1)");
    gen_cmd->add_option("--min-deg", gen_min_deg, "powerlaw minimum degree");
    gen_cmd->add_flag("--weighted", gen_weighted, "attach uniform (0,1] weights");
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("--out", gen_out, "output edge-list file");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            app.exit(e);
            return 0;
        }
        app.exit(e);
        return 2;
    }

    try {
        if (run_cmd->parsed()) return do_run(run_algo, rf, run_reqresp->count());
        if (sweep_cmd->parsed()) return do_sweep(sweep_algo, sf, thresholds, csv_path, sweep_reqresp->count());
        if (gen_cmd->parsed())
            return do_gen(gen_kind, gen_n, gen_deg_avg, gen_exponent, gen_min_deg, gen_weighted,
                          gen_seed, gen_out);
    } catch (const ParseError& e) {
        std::cerr << "vcbsp: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "vcbsp: error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace vcbsp::cli
