#include "ccnet/report.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ccnet/hierarchical.hpp"
#include "ccnet/ibgp.hpp"
#include "ccnet/lp.hpp"
#include "ccnet/metric.hpp"
#include "ccnet/oracle.hpp"
#include "ccnet/primal_dual.hpp"
#include "ccnet/rational.hpp"
#include "ccnet/topology.hpp"

namespace ccnet {

using nlohmann::json;

namespace {

const char* kCsvHeader = "instance,n,full_mesh,solver,value,fraction,verified,runtime_ms,lower_bound";

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string fraction_csv(double f) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << f;
    return os.str();
}

std::string fraction_pct(double f) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << f * 100.0 << '%';
    return os.str();
}

std::vector<std::string> report_row(const SolveReport& r, bool pct) {
    return {r.instance,
            std::to_string(r.n),
            std::to_string(r.full_mesh),
            r.solver,
            std::to_string(r.value),
            pct ? fraction_pct(r.fraction) : fraction_csv(r.fraction),
            r.verified ? "yes" : "no",
            std::to_string(r.runtime_ms),
            r.lower_bound};
}

// Splits one CSV record, honoring double-quoted fields.
std::vector<std::string> split_csv(const std::string& line, int lineno) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw ParseError("<report>", lineno, "unterminated quoted field");
    out.push_back(std::move(cur));
    return out;
}

}  // namespace

std::string write_report(const std::vector<SolveReport>& reports, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        std::ostringstream os;
        os << kCsvHeader << '\n';
        for (const auto& r : reports) {
            auto row = report_row(r, false);
            for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
            os << '\n';
        }
        return os.str();
    }
    if (format == ReportFormat::Json) {
        json arr = json::array();
        for (const auto& r : reports) {
            json j;
            j["instance"] = r.instance;
            j["n"] = r.n;
            j["full_mesh"] = r.full_mesh;
            j["solver"] = r.solver;
            j["value"] = r.value;
            j["fraction"] = r.fraction;
            j["verified"] = r.verified;
            j["runtime_ms"] = r.runtime_ms;
            j["lower_bound"] = r.lower_bound;
            arr.push_back(std::move(j));
        }
        return arr.dump(2) + "\n";
    }

    static const char* kHeads[] = {"instance", "n",        "full_mesh",  "solver",     "value",
                                   "fraction", "verified", "runtime_ms", "lower_bound"};
    const size_t cols = 9;
    std::vector<std::vector<std::string>> rows;
    rows.emplace_back(kHeads, kHeads + cols);
    for (const auto& r : reports) rows.push_back(report_row(r, true));
    std::vector<size_t> width(cols, 0);
    for (const auto& row : rows)
        for (size_t i = 0; i < cols; ++i) width[i] = std::max(width[i], row[i].size());
    // instance and solver stay left-aligned, numeric columns right-aligned
    std::ostringstream os;
    for (const auto& row : rows) {
        std::ostringstream ls;
        for (size_t i = 0; i < cols; ++i) {
            bool left = i == 0 || i == 3 || i == 8;
            if (i) ls << "  ";
            ls << (left ? std::left : std::right) << std::setw(static_cast<int>(width[i]))
               << row[i];
        }
        std::string line = ls.str();
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << '\n';
    }
    return os.str();
}

std::vector<SolveReport> parse_report_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<SolveReport> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1) {
            if (line != kCsvHeader)
                throw ParseError("<report>", 1, "unexpected header: " + line);
            continue;
        }
        if (line.empty()) continue;
        auto f = split_csv(line, lineno);
        if (f.size() != 9)
            throw ParseError("<report>", lineno, "expected 9 fields, got " + std::to_string(f.size()));
        SolveReport r;
        try {
            r.instance = f[0];
            r.n = std::stoi(f[1]);
            r.full_mesh = std::stol(f[2]);
            r.solver = f[3];
            r.value = std::stol(f[4]);
            r.fraction = std::stod(f[5]);
            if (f[6] != "yes" && f[6] != "no")
                throw ParseError("<report>", lineno, "verified must be yes or no");
            r.verified = f[6] == "yes";
            r.runtime_ms = std::stol(f[7]);
            r.lower_bound = f[8];
        } catch (const std::logic_error&) {
            throw ParseError("<report>", lineno, "bad numeric field");
        }
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

std::string dir_of(const std::string& path) {
    size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string() : path.substr(0, slash + 1);
}

std::string join_path(const std::string& dir, const std::string& rel) {
    if (rel.empty() || rel.front() == '/' || dir.empty()) return rel;
    return dir + rel;
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(const std::string& text, const std::string& filename) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(filename + ": " + e.what());
    }
    std::vector<ManifestEntry> out;
    std::string dir = dir_of(filename);
    try {
        if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
            throw ParseError(filename + ": manifest needs an \"entries\" array");
        for (const auto& e : j["entries"]) {
            ManifestEntry m;
            if (!e.contains("name")) throw ParseError(filename + ": entry without a name");
            m.name = e["name"].get<std::string>();
            int inputs = 0;
            if (e.contains("topology")) {
                m.topology = join_path(dir, e["topology"].get<std::string>());
                ++inputs;
            }
            if (e.contains("metric")) {
                m.metric = join_path(dir, e["metric"].get<std::string>());
                ++inputs;
            }
            if (e.contains("instance")) {
                m.instance = join_path(dir, e["instance"].get<std::string>());
                ++inputs;
            }
            if (inputs != 1)
                throw ParseError(filename + ": entry '" + m.name +
                                 "' needs exactly one of topology/metric/instance");
            if (e.contains("algo")) m.algo = e["algo"].get<std::string>();
            if (e.contains("variant")) {
                std::string v = e["variant"].get<std::string>();
                if (v != "sum" && v != "degree")
                    throw ParseError(filename + ": bad variant '" + v + "'");
                m.variant = v == "sum" ? Variant::Sum : Variant::Degree;
            }
            if (e.contains("t")) m.t = e["t"].get<int>();
            if (e.contains("seed")) {
                m.seed = e["seed"].get<uint64_t>();
                m.seed_set = true;
            }
            if (e.contains("retries")) m.retries = e["retries"].get<int>();
            out.push_back(std::move(m));
        }
    } catch (const json::exception& e) {
        throw ParseError(filename + ": " + e.what());
    }
    return out;
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open manifest file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str(), path);
}

SolveOutcome solve_entry(const SafeSetSystem& sys, const std::string& instance_name,
                         const std::string& algo, Variant variant, int t, uint64_t seed,
                         int retries, bool timing) {
    require(retries >= 1, "retries must be positive");
    SolveOutcome out;
    out.report.instance = instance_name;
    out.report.n = sys.n;
    out.report.full_mesh = 1L * sys.n * (sys.n - 1) / 2;

    auto verifies = [&sys](const Overlay& h) { return verify_safe_paths(sys, h).ok; };
    auto start = std::chrono::steady_clock::now();

    if (algo == "pd") {
        int tt = t < 0 ? sys.n : t;
        auto [h, cert] = primal_dual_solve(sys, tt);
        out.overlay = std::move(h);
        out.report.lower_bound = rational_str(dual_lower_bound(cert));
        out.certificate_json = certificate_to_json(cert);
    } else if (algo == "pd-sample") {
        for (int a = 0; a < retries; ++a) {
            out.attempts = a + 1;
            out.overlay = pd_with_sampling(sys, seed + static_cast<uint64_t>(a));
            if (verifies(out.overlay)) break;
        }
    } else if (algo == "lp-round") {
        LpProgram lp = build_flow_lp(sys, variant);
        FractionalSolution frac = solve_lp(lp);
        std::ostringstream bound;
        bound << std::fixed << std::setprecision(6) << frac.objective;
        out.report.lower_bound = bound.str();
        for (int a = 0; a < retries; ++a) {
            out.attempts = a + 1;
            out.overlay = round_and_sample(sys, frac, variant, seed + static_cast<uint64_t>(a));
            if (verifies(out.overlay)) break;
        }
    } else if (algo == "hier") {
        out.overlay = hierarchical_greedy(sys);
    } else if (algo == "oracle") {
        out.overlay = oracle_min(sys, variant);
    } else {
        throw Error("unknown algorithm '" + algo +
                    "' (expected pd, pd-sample, lp-round, hier, or oracle)");
    }

    auto stop = std::chrono::steady_clock::now();
    if (timing)
        out.report.runtime_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();

    out.report.solver = out.overlay.provenance;
    if (variant == Variant::Sum) {
        out.report.value = static_cast<long>(out.overlay.edges.size());
    } else {
        std::vector<int> deg(sys.n, 0);
        for (auto [u, v] : out.overlay.edges) {
            ++deg[u];
            ++deg[v];
        }
        out.report.value = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    }
    // exact algorithms are their own lower bound
    if (algo == "hier" || algo == "oracle") out.report.lower_bound = std::to_string(out.report.value);
    out.report.fraction =
        out.report.full_mesh == 0
            ? 0.0
            : static_cast<double>(out.report.value) / static_cast<double>(out.report.full_mesh);
    out.report.verified = verifies(out.overlay);
    return out;
}

Topology parse_rocketfuel(std::istream& in, const std::string& filename) {
    std::vector<std::string> names;
    std::map<std::string, int> ids;
    std::map<Edge, Rat> weights;
    auto id_of = [&](const std::string& name) {
        auto [it, fresh] = ids.try_emplace(name, static_cast<int>(names.size()));
        if (fresh) names.push_back(name);
        return it->second;
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string a, arrow, b, w;
        if (!(ls >> a)) continue;
        if (!(ls >> arrow >> b >> w) || arrow != "->")
            throw ParseError(filename, lineno, "expected '<node> -> <node> <weight>'");
        std::string extra;
        if (ls >> extra) throw ParseError(filename, lineno, "trailing tokens after weight");
        int ia = id_of(a), ib = id_of(b);
        if (ia == ib) throw ParseError(filename, lineno, "link from a node to itself");
        Rat wt;
        try {
            wt = parse_rational(w);
        } catch (const Error& e) {
            throw ParseError(filename, lineno, e.what());
        }
        if (wt <= 0) throw ParseError(filename, lineno, "weight must be positive");
        auto [it, fresh] = weights.try_emplace(make_edge(ia, ib), wt);
        if (!fresh && it->second != wt)
            throw ParseError(filename, lineno,
                             "conflicting weight for link " + a + " <-> " + b);
    }
    if (names.empty()) throw ParseError(filename, lineno, "no links found");
    Topology t;
    t.n = static_cast<int>(names.size());
    t.names = std::move(names);
    for (auto& [e, wt] : weights) t.edges.push_back({e.first, e.second, std::move(wt)});
    check_topology(t);
    return t;
}

Topology load_rocketfuel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    return parse_rocketfuel(in, path);
}

std::vector<SolveReport> run_manifest(const std::string& path, uint64_t default_seed, bool timing) {
    std::vector<SolveReport> out;
    for (const ManifestEntry& e : load_manifest(path)) {
        SafeSetSystem sys;
        if (!e.instance.empty()) {
            sys = load_instance(e.instance);
        } else if (!e.metric.empty()) {
            sys = derive_ibgp_safe_sets(load_metric(e.metric));
        } else {
            sys = derive_ibgp_safe_sets(all_pairs_distances(load_topology(e.topology)));
        }
        uint64_t seed = e.seed_set ? e.seed : default_seed;
        out.push_back(
            solve_entry(sys, e.name, e.algo, e.variant, e.t, seed, e.retries, timing).report);
    }
    return out;
}

}  // namespace ccnet
