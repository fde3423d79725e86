#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccnet/common.hpp"
#include "ccnet/generators.hpp"
#include "ccnet/ibgp.hpp"
#include "ccnet/instance.hpp"
#include "ccnet/metric.hpp"
#include "ccnet/primal_dual.hpp"
#include "ccnet/rational.hpp"
#include "ccnet/report.hpp"
#include "ccnet/topology.hpp"

namespace {

using namespace ccnet;
using nlohmann::json;

uint64_t env_seed() {
    const char* s = std::getenv("CCNET_SEED");
    if (!s) return 1;
    try {
        size_t used = 0;
        uint64_t v = std::stoull(s, &used);
        if (used != std::string(s).size()) throw std::invalid_argument("");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("CCNET_SEED must be an unsigned integer, got '" + std::string(s) + "'");
    }
}

Variant to_variant(const std::string& s) { return s == "degree" ? Variant::Degree : Variant::Sum; }

std::string base_name(const std::string& path) {
    size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
}

// "1,2;2,3" -> {{1,2},{2,3}}
std::vector<std::vector<int>> parse_int_groups(const std::string& s, const std::string& what) {
    std::vector<std::vector<int>> out;
    std::istringstream gs(s);
    std::string group;
    while (std::getline(gs, group, ';')) {
        std::vector<int> g;
        std::istringstream ms(group);
        std::string tok;
        while (std::getline(ms, tok, ',')) {
            try {
                g.push_back(std::stoi(tok));
            } catch (const std::logic_error&) {
                throw ParseError("bad " + what + " '" + s + "': '" + tok + "' is not an integer");
            }
        }
        if (g.empty()) throw ParseError("bad " + what + " '" + s + "': empty group");
        out.push_back(std::move(g));
    }
    if (out.empty()) throw ParseError(what + " must not be empty");
    return out;
}

// "0-1;2-3" -> {(0,1),(2,3)}
std::vector<std::pair<int, int>> parse_int_pairs(const std::string& s, const std::string& what) {
    std::vector<std::pair<int, int>> out;
    std::istringstream ps(s);
    std::string tok;
    while (std::getline(ps, tok, ';')) {
        size_t dash = tok.find('-');
        if (dash == std::string::npos)
            throw ParseError("bad " + what + " '" + tok + "': expected a-b");
        try {
            out.push_back({std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1))});
        } catch (const std::logic_error&) {
            throw ParseError("bad " + what + " '" + tok + "': expected integers");
        }
    }
    return out;
}

struct SolveArgs {
    std::string in, algo = "pd", variant = "sum", out, cert;
    int t = -1, retries = 5;
    uint64_t seed = 0;
    bool no_timing = false;
};

int cmd_solve(const SolveArgs& a) {
    SafeSetSystem sys = load_instance(a.in);
    SolveOutcome oc = solve_entry(sys, base_name(a.in), a.algo, to_variant(a.variant), a.t, a.seed,
                                  a.retries, !a.no_timing);
    if (!a.out.empty()) save_overlay(oc.overlay, a.out);
    if (!a.cert.empty()) {
        if (oc.certificate_json.empty())
            throw Error("--cert needs --algo pd (no certificate produced)");
        write_text_file(a.cert, oc.certificate_json);
    }
    const SolveReport& r = oc.report;
    std::cout << "value=" << r.value << " fraction=" << std::fixed << std::setprecision(6)
              << r.fraction << " verified=" << (r.verified ? "yes" : "no")
              << " attempts=" << oc.attempts << " runtime_ms=" << r.runtime_ms
              << " lower_bound=" << (r.lower_bound.empty() ? "-" : r.lower_bound)
              << " solver=" << r.solver << "\n";
    return r.verified ? 0 : 1;
}

struct VerifyArgs {
    std::string in, metric, overlay, mode = "static";
};

int cmd_verify(const VerifyArgs& a) {
    Overlay h = load_overlay(a.overlay);
    VerificationReport rep;
    if (a.mode == "static") {
        if (a.in.empty() && a.metric.empty())
            throw ParseError("verify --mode static needs --in or --metric");
        SafeSetSystem sys =
            a.in.empty() ? derive_ibgp_safe_sets(load_metric(a.metric)) : load_instance(a.in);
        for (auto [u, v] : h.edges)
            if (v >= sys.n)
                throw ParseError(a.overlay + ": overlay vertex " + std::to_string(v) +
                                 " out of range for n=" + std::to_string(sys.n));
        rep = verify_safe_paths(sys, h);
        for (const auto& [u, v] : rep.failures)
            std::cout << "unsatisfied demand (" << u << "," << v << ")\n";
    } else {
        if (a.metric.empty())
            throw ParseError("verify --mode " + a.mode + " needs --metric");
        StrictMetric m = load_metric(a.metric);
        for (auto [u, v] : h.edges)
            if (v >= m.n)
                throw ParseError(a.overlay + ": overlay vertex " + std::to_string(v) +
                                 " out of range for n=" + std::to_string(m.n));
        rep = check_hot_potato(m, h,
                               a.mode == "witness" ? HotPotatoMode::Witness
                                                   : HotPotatoMode::Exhaustive);
        for (const auto& f : rep.hot_failures) {
            std::cout << "router " << f.router << " expected egress " << f.expected << ", got "
                      << f.got << " for egress set {";
            for (size_t i = 0; i < f.egress_set.size(); ++i)
                std::cout << (i ? "," : "") << f.egress_set[i];
            std::cout << "}\n";
        }
    }
    std::cout << (rep.ok ? "ok" : "FAILED") << "\n";
    return rep.ok ? 0 : 1;
}

struct GenArgs {
    std::string family, out, variant = "sum";
    // gadget
    int elems = 0;
    std::string sets;
    int ell = 1, alpha = 1;
    std::string eps, big_m = "20";
    // minrep
    int nu = 0, nv = 0, d = 1;
    std::string mr_edges, u_groups, v_groups;
    // ug-gap
    int n_ug = 0, ug_d = 0, ug_k = 0;
    double ug_eps = 0.05;
    // laminar / random families
    int n = 0, edges = 0, branching = 3;
    uint64_t seed = 0;
};

int cmd_gen(const GenArgs& a) {
    Variant var = to_variant(a.variant);
    if (a.family == "gadget") {
        HittingSetInstance hs{a.elems, parse_int_groups(a.sets, "--sets")};
        GadgetParams p;
        p.ell = a.ell;
        p.alpha = a.alpha;
        p.big_m = parse_rational(a.big_m);
        if (!a.eps.empty()) p.eps = parse_rational(a.eps);
        GadgetInstance gi = gen_hitting_gadget(hs, p, var);
        save_topology(gi.graph, a.out + ".topology");
        save_metric(gi.metric, a.out + ".metric");
        json arr = json::array();
        for (const auto& ps : gi.predicted)
            arr.push_back({{"x", ps.x}, {"b", ps.b}, {"members", ps.members}});
        write_text_file(a.out + ".predicted.json", arr.dump(2) + "\n");
        std::cout << "gadget: " << gi.graph.n << " vertices, " << gi.graph.edges.size()
                  << " table distances -> " << a.out << ".{topology,metric,predicted.json}\n";
        return 0;
    }
    if (a.family == "minrep") {
        MinRepInstance mr;
        mr.n_u = a.nu;
        mr.n_v = a.nv;
        mr.d = a.d;
        mr.edges = parse_int_pairs(a.mr_edges, "--mr-edges");
        mr.u_groups = parse_int_groups(a.u_groups, "--u-groups");
        mr.v_groups = parse_int_groups(a.v_groups, "--v-groups");
        MinRepCc cc = gen_minrep_cc(mr, var);
        save_instance(cc.sys, a.out + ".instance.json");
        json side{{"variant", variant_name(var)}, {"m", cc.m},
                  {"d", cc.d},                    {"n_mr", cc.n_mr},
                  {"super_edges", cc.super_edges}, {"names", cc.names},
                  {"x_id", cc.x_id},              {"y_id", cc.y_id},
                  {"u_id", cc.u_id},              {"v_id", cc.v_id},
                  {"z_id", cc.z_id}};
        write_text_file(a.out + ".sidecar.json", side.dump(2) + "\n");
        std::cout << "minrep: " << cc.sys.n << " vertices, " << cc.sys.base_edges.size()
                  << " base edges, " << cc.sys.demands.size() << " demands -> " << a.out
                  << ".{instance.json,sidecar.json}\n";
        return 0;
    }
    if (a.family == "ug-gap") {
        UgGapCc gg = gen_unique_games_gap(a.n_ug, a.ug_eps, a.ug_d, a.ug_k, a.seed, var);
        save_instance(gg.sys, a.out + ".instance.json");
        json pairs = json::array();
        for (size_t e = 0; e < gg.ug.pairs.size(); ++e)
            pairs.push_back({{"u", gg.ug.pairs[e].first},
                             {"v", gg.ug.pairs[e].second},
                             {"pi", gg.ug.pi[e]}});
        json side{{"variant", variant_name(var)},
                  {"n_ug", gg.ug.n_ug},
                  {"k", gg.ug.k},
                  {"d", gg.d},
                  {"lp_upper_bound", gg.lp_upper_bound},
                  {"names", gg.names},
                  {"pairs", pairs}};
        write_text_file(a.out + ".sidecar.json", side.dump(2) + "\n");
        std::cout << "ug-gap: " << gg.sys.n << " vertices, k=" << gg.ug.k << ", d=" << gg.d
                  << ", lp_upper_bound=" << gg.lp_upper_bound << " -> " << a.out
                  << ".{instance.json,sidecar.json}\n";
        return 0;
    }
    if (a.family == "laminar") {
        LaminarCc lc = gen_laminar_hierarchical(a.n, a.seed, a.branching);
        save_instance(lc.sys, a.out + ".instance.json");
        json side{{"n", lc.family.n}, {"sets", lc.family.sets}};
        write_text_file(a.out + ".family.json", side.dump(2) + "\n");
        std::cout << "laminar: " << lc.sys.n << " vertices, " << lc.family.sets.size()
                  << " family sets -> " << a.out << ".{instance.json,family.json}\n";
        return 0;
    }
    if (a.family == "random-metric") {
        save_metric(gen_random_metric(a.n, a.seed), a.out + ".metric");
        std::cout << "random-metric: " << a.n << " points -> " << a.out << ".metric\n";
        return 0;
    }
    if (a.family == "random-topology" || a.family == "pop") {
        Topology t = a.family == "pop" ? gen_pop_topology(a.n, a.edges, a.seed)
                                       : gen_random_topology(a.n, a.edges, a.seed);
        save_topology(t, a.out + ".topology");
        std::cout << a.family << ": " << t.n << " nodes, " << t.edges.size() << " links -> "
                  << a.out << ".topology\n";
        return 0;
    }
    throw ParseError("unknown family '" + a.family + "'");
}

int run_cli(int argc, char** argv) {
    CLI::App app{"constrained connectivity and iBGP overlay toolkit"};
    app.require_subcommand(1);

    auto* c_dist = app.add_subcommand("distances", "shortest-path metric from a topology");
    std::string dist_in, dist_out;
    c_dist->add_option("--in", dist_in, "topology file")->required();
    c_dist->add_option("--out", dist_out, "metric output path")->required();

    auto* c_derive = app.add_subcommand("derive", "hot-potato safe-set instance from a metric");
    std::string derive_metric, derive_out;
    c_derive->add_option("--metric", derive_metric, "metric file")->required();
    c_derive->add_option("--out", derive_out, "instance output path")->required();

    auto* c_solve = app.add_subcommand("solve", "solve an instance");
    SolveArgs sa;
    c_solve->add_option("--in", sa.in, "instance file")->required();
    c_solve->add_option("--algo", sa.algo)
        ->check(CLI::IsMember({"pd", "pd-sample", "lp-round", "hier", "oracle"}));
    c_solve->add_option("--variant", sa.variant)->check(CLI::IsMember({"sum", "degree"}));
    c_solve->add_option("--t", sa.t, "safe-set size cutoff for pd (-1 = n)");
    auto* solve_seed = c_solve->add_option("--seed", sa.seed);
    c_solve->add_option("--retries", sa.retries)->check(CLI::PositiveNumber);
    c_solve->add_option("--out", sa.out, "overlay output path");
    c_solve->add_option("--cert", sa.cert, "dual certificate output path (pd)");
    c_solve->add_flag("--no-timing", sa.no_timing, "report runtime_ms as 0");

    auto* c_verify = app.add_subcommand("verify", "check an overlay");
    VerifyArgs va;
    c_verify->add_option("--in", va.in, "instance file (static mode)");
    c_verify->add_option("--metric", va.metric, "metric file");
    c_verify->add_option("--overlay", va.overlay, "overlay file")->required();
    c_verify->add_option("--mode", va.mode)
        ->check(CLI::IsMember({"static", "witness", "exhaustive"}));

    auto* c_gen = app.add_subcommand("gen", "generate benchmark families");
    GenArgs ga;
    c_gen->add_option("--family", ga.family)
        ->required()
        ->check(CLI::IsMember(
            {"gadget", "minrep", "ug-gap", "laminar", "random-metric", "random-topology", "pop"}));
    c_gen->add_option("--out", ga.out, "output path prefix")->required();
    c_gen->add_option("--variant", ga.variant)->check(CLI::IsMember({"sum", "degree"}));
    c_gen->add_option("--elems", ga.elems, "gadget: universe size");
    c_gen->add_option("--sets", ga.sets, "gadget: sets, e.g. \"1,2;2,3\"");
    c_gen->add_option("--ell", ga.ell, "gadget: x copies (sum)");
    c_gen->add_option("--alpha", ga.alpha, "gadget: gadget copies (degree)");
    c_gen->add_option("--eps", ga.eps, "gadget: tie-break step (rational)");
    c_gen->add_option("--big-m", ga.big_m, "gadget: scale M >= 20");
    c_gen->add_option("--nu", ga.nu, "minrep: left vertices");
    c_gen->add_option("--nv", ga.nv, "minrep: right vertices");
    c_gen->add_option("--mr-edges", ga.mr_edges, "minrep: edges, e.g. \"0-0;1-1\"");
    c_gen->add_option("--u-groups", ga.u_groups, "minrep: left groups, e.g. \"0,1;2\"");
    c_gen->add_option("--v-groups", ga.v_groups, "minrep: right groups");
    c_gen->add_option("--d", ga.d, "minrep: outer duplication");
    c_gen->add_option("--n-ug", ga.n_ug, "ug-gap: vertices");
    c_gen->add_option("--ug-eps", ga.ug_eps, "ug-gap: eps for default formulas");
    c_gen->add_option("--ug-d", ga.ug_d, "ug-gap: outer copies (0 = formula)");
    c_gen->add_option("--ug-k", ga.ug_k, "ug-gap: alphabet (0 = formula)");
    c_gen->add_option("--n", ga.n, "laminar/random families: vertices");
    c_gen->add_option("--edges", ga.edges, "random-topology/pop: links");
    c_gen->add_option("--branching", ga.branching, "laminar: max parts per split");
    auto* gen_seed = c_gen->add_option("--seed", ga.seed);

    auto* c_report = app.add_subcommand("report", "batch-solve a manifest");
    std::string rep_manifest, rep_format = "text", rep_out;
    bool rep_no_timing = false;
    uint64_t rep_seed = 0;
    c_report->add_option("--manifest", rep_manifest)->required();
    c_report->add_option("--format", rep_format)->check(CLI::IsMember({"text", "csv", "json"}));
    c_report->add_option("--out", rep_out, "write the document here instead of stdout");
    c_report->add_flag("--no-timing", rep_no_timing, "zero runtime for byte-identical output");
    auto* report_seed = c_report->add_option("--seed", rep_seed);

    auto* c_convert = app.add_subcommand("convert", "convert published adjacency text");
    std::string conv_in, conv_out;
    c_convert->add_option("--rocketfuel", conv_in, "\"a -> b w\" adjacency file")->required();
    c_convert->add_option("--out", conv_out, "topology output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (app.got_subcommand(c_dist)) {
        save_metric(all_pairs_distances(load_topology(dist_in)), dist_out);
        std::cout << "wrote " << dist_out << "\n";
        return 0;
    }
    if (app.got_subcommand(c_derive)) {
        StrictMetric m = load_metric(derive_metric);
        save_instance(derive_ibgp_safe_sets(m), derive_out);
        std::cout << "wrote " << derive_out << "\n";
        return 0;
    }
    if (app.got_subcommand(c_solve)) {
        if (!*solve_seed) sa.seed = env_seed();
        return cmd_solve(sa);
    }
    if (app.got_subcommand(c_verify)) return cmd_verify(va);
    if (app.got_subcommand(c_gen)) {
        if (!*gen_seed) ga.seed = env_seed();
        return cmd_gen(ga);
    }
    if (app.got_subcommand(c_report)) {
        if (!*report_seed) rep_seed = env_seed();
        std::vector<SolveReport> reports = run_manifest(rep_manifest, rep_seed, !rep_no_timing);
        std::string doc = write_report(
            reports, rep_format == "csv"    ? ReportFormat::Csv
                     : rep_format == "json" ? ReportFormat::Json
                                            : ReportFormat::Text);
        if (rep_out.empty())
            std::cout << doc;
        else
            write_text_file(rep_out, doc);
        for (const auto& r : reports)
            if (!r.verified) return 1;
        return 0;
    }
    if (app.got_subcommand(c_convert)) {
        save_topology(load_rocketfuel(conv_in), conv_out);
        std::cout << "wrote " << conv_out << "\n";
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
