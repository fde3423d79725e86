#include "ccnet/lp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ccnet/rng.hpp"
#include "ccnet/sampling.hpp"

namespace ccnet {

namespace {

std::string vid(const std::string& prefix, int a, int b) {
    return prefix + "_" + std::to_string(a) + "_" + std::to_string(b);
}

}  // namespace

LpProgram build_flow_lp(const SafeSetSystem& sys, Variant variant) {
    ValidationReport val = validate_instance(sys);
    if (!val.feasible) {
        auto [u, v] = val.failures.front();
        throw InfeasibleError("demand (" + std::to_string(u) + "," + std::to_string(v) +
                              ") cannot be satisfied inside its safe set");
    }

    LpProgram lp;
    lp.has_flow_layout = true;
    FlowLayout& fl = lp.flow;
    fl.n = sys.n;
    fl.variant = variant;
    fl.edges = sys.base_edges;
    fl.demands = sys.demands;

    double cap_obj = variant == Variant::Sum ? 1.0 : 0.0;
    fl.edge_var.reserve(fl.edges.size());
    for (const auto& [u, v] : fl.edges) {
        fl.edge_var.push_back(static_cast<int>(lp.vars.size()));
        lp.vars.push_back({vid("c", u, v), 0.0, 1.0, cap_obj});
    }
    if (variant == Variant::Degree) {
        fl.lambda_var = static_cast<int>(lp.vars.size());
        lp.vars.push_back({"lam", 0.0, kLpInf, 1.0});
    }

    fl.arcs.resize(fl.demands.size());
    fl.arc_var.resize(fl.demands.size());
    for (size_t d = 0; d < fl.demands.size(); ++d) {
        auto [x, y] = fl.demands[d];
        const Bitset& mask = sys.safe_mask(static_cast<int>(d));
        std::string tag = "f_" + std::to_string(x) + "_" + std::to_string(y);
        for (const auto& [u, v] : sys.base_edges) {
            if (!mask.test(u) || !mask.test(v)) continue;
            for (Arc arc : {Arc{u, v}, Arc{v, u}}) {
                fl.arcs[d].push_back(arc);
                fl.arc_var[d].push_back(static_cast<int>(lp.vars.size()));
                lp.vars.push_back(
                    {tag + "_" + std::to_string(arc.first) + "_" + std::to_string(arc.second),
                     0.0, 1.0, 0.0});
            }
        }
    }

    for (size_t d = 0; d < fl.demands.size(); ++d) {
        auto [x, y] = fl.demands[d];
        std::string dtag = std::to_string(x) + "_" + std::to_string(y);
        // Net outflow per safe vertex; the row at y is the negated sum of the
        // others and stays implicit.
        const auto& members = sys.safe[d];
        for (int w : members) {
            if (w == y) continue;
            LpRow row;
            row.sense = w == x ? RowSense::GreaterEq : RowSense::Equal;
            row.rhs = w == x ? 1.0 : 0.0;
            row.name = (w == x ? "src_" : "bal_") + dtag + (w == x ? "" : "_" + std::to_string(w));
            for (size_t a = 0; a < fl.arcs[d].size(); ++a) {
                if (fl.arcs[d][a].first == w) row.terms.push_back({fl.arc_var[d][a], 1.0});
                if (fl.arcs[d][a].second == w) row.terms.push_back({fl.arc_var[d][a], -1.0});
            }
            lp.rows.push_back(std::move(row));
        }
        // Both directions of an edge share that edge's capacity.
        for (size_t a = 0; a < fl.arcs[d].size(); a += 2) {
            auto [u, v] = fl.arcs[d][a];
            LpRow row;
            row.sense = RowSense::LessEq;
            row.rhs = 0.0;
            row.name = "cap_" + dtag + "_" + std::to_string(u) + "_" + std::to_string(v);
            row.terms.push_back({fl.arc_var[d][a], 1.0});
            row.terms.push_back({fl.arc_var[d][a + 1], 1.0});
            row.terms.push_back({fl.edge_var[sys.edge_id(u, v)], -1.0});
            lp.rows.push_back(std::move(row));
        }
    }

    if (variant == Variant::Degree) {
        for (Vertex u = 0; u < sys.n; ++u) {
            LpRow row;
            row.sense = RowSense::LessEq;
            row.rhs = 0.0;
            row.name = "deg_" + std::to_string(u);
            for (size_t e = 0; e < fl.edges.size(); ++e)
                if (fl.edges[e].first == u || fl.edges[e].second == u)
                    row.terms.push_back({fl.edge_var[e], 1.0});
            if (row.terms.empty()) continue;
            row.terms.push_back({fl.lambda_var, -1.0});
            lp.rows.push_back(std::move(row));
        }
    }
    return lp;
}

double FractionalSolution::capacity_of(Vertex u, Vertex v) const {
    Edge e = make_edge(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    require(it != edges.end() && *it == e, "no capacity for edge " + std::to_string(u) + "-" +
                                               std::to_string(v));
    return capacities[it - edges.begin()];
}

namespace {

// Max flow with real capacities on a small graph; the phase count is bounded
// by the vertex count, so doubles are safe here.
struct Dinic {
    struct E {
        int to;
        double cap;
        int rev;
    };
    static constexpr double kEps = 1e-12;
    std::vector<std::vector<E>> g;
    std::vector<int> level, it;

    explicit Dinic(int n) : g(n), level(n), it(n) {}

    int add_edge(int u, int v, double cap) {
        g[u].push_back({v, cap, static_cast<int>(g[v].size())});
        g[v].push_back({u, 0.0, static_cast<int>(g[u].size()) - 1});
        return static_cast<int>(g[u].size()) - 1;
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::vector<int> queue{s};
        level[s] = 0;
        for (size_t h = 0; h < queue.size(); ++h) {
            int u = queue[h];
            for (const E& e : g[u])
                if (e.cap > kEps && level[e.to] < 0) {
                    level[e.to] = level[u] + 1;
                    queue.push_back(e.to);
                }
        }
        return level[t] >= 0;
    }

    double dfs(int u, int t, double f) {
        if (u == t) return f;
        for (int& i = it[u]; i < static_cast<int>(g[u].size()); ++i) {
            E& e = g[u][i];
            if (e.cap <= kEps || level[e.to] != level[u] + 1) continue;
            double got = dfs(e.to, t, std::min(f, e.cap));
            if (got > kEps) {
                e.cap -= got;
                g[e.to][e.rev].cap += got;
                return got;
            }
        }
        return 0.0;
    }

    // Pushes at most `limit` units from s to t.
    double run(int s, int t, double limit) {
        double flow = 0.0;
        while (flow < limit - kEps && bfs(s, t)) {
            std::fill(it.begin(), it.end(), 0);
            double got;
            while (flow < limit - kEps && (got = dfs(s, t, limit - flow)) > kEps) flow += got;
        }
        return flow;
    }

    // Source side of a minimum cut; meaningful when run() stopped short of
    // its limit.
    std::vector<char> cut_side(int s) {
        std::vector<char> seen(g.size(), 0);
        std::vector<int> queue{s};
        seen[s] = 1;
        for (size_t h = 0; h < queue.size(); ++h)
            for (const E& e : g[queue[h]])
                if (e.cap > kEps && !seen[e.to]) {
                    seen[e.to] = 1;
                    queue.push_back(e.to);
                }
        return seen;
    }
};

// Per-demand view used by the cut loop: compact vertex ids plus the safe
// edges as (local u, local v, base edge index).
struct DemandNet {
    int nodes = 0;
    int src = -1, dst = -1;
    std::vector<std::array<int, 3>> edges;
};

DemandNet demand_net(const FlowLayout& fl, size_t d) {
    std::vector<int> local(fl.n, -1);
    DemandNet net;
    auto id_of = [&](int v) {
        if (local[v] < 0) local[v] = net.nodes++;
        return local[v];
    };
    net.src = id_of(fl.demands[d].first);
    net.dst = id_of(fl.demands[d].second);
    for (size_t a = 0; a < fl.arcs[d].size(); a += 2) {
        auto [u, v] = fl.arcs[d][a];
        Edge e = make_edge(u, v);
        auto it = std::lower_bound(fl.edges.begin(), fl.edges.end(), e);
        net.edges.push_back({id_of(u), id_of(v), static_cast<int>(it - fl.edges.begin())});
    }
    return net;
}

constexpr double kCutTol = 1e-9;

// Optimizes the capacities (and lambda) against lazily generated cut rows:
// every safe-side cut separating a demand must carry total capacity one.
// Equivalent to the compact program by max-flow/min-cut, but the working
// programs stay small. Flows are rebuilt afterwards demand by demand.
std::vector<double> solve_flow_by_cuts(const LpProgram& lp, LpSolveInfo* info) {
    const FlowLayout& fl = lp.flow;
    const size_t ne = fl.edges.size();

    LpProgram master;
    for (size_t e = 0; e < ne; ++e) master.vars.push_back(lp.vars[fl.edge_var[e]]);
    if (fl.lambda_var >= 0) {
        master.vars.push_back(lp.vars[fl.lambda_var]);
        for (Vertex u = 0; u < fl.n; ++u) {
            LpRow row;
            row.sense = RowSense::LessEq;
            row.rhs = 0.0;
            row.name = "deg_" + std::to_string(u);
            for (size_t e = 0; e < ne; ++e)
                if (fl.edges[e].first == u || fl.edges[e].second == u)
                    row.terms.push_back({static_cast<int>(e), 1.0});
            if (row.terms.empty()) continue;
            row.terms.push_back({static_cast<int>(ne), -1.0});
            master.rows.push_back(std::move(row));
        }
    }

    std::vector<DemandNet> nets;
    nets.reserve(fl.demands.size());
    for (size_t d = 0; d < fl.demands.size(); ++d) nets.push_back(demand_net(fl, d));

    long iterations = 0;
    std::vector<double> cap;
    for (int round = 0;; ++round) {
        require(round < 10000, "cut generation failed to converge");
        LpSolveInfo minfo;
        cap = solve_lp_raw(master, &minfo);
        iterations += minfo.iterations;

        bool violated = false;
        for (size_t d = 0; d < fl.demands.size(); ++d) {
            const DemandNet& net = nets[d];
            Dinic flow(net.nodes);
            for (const auto& [u, v, e] : net.edges) {
                flow.add_edge(u, v, cap[e]);
                flow.add_edge(v, u, cap[e]);
            }
            if (flow.run(net.src, net.dst, 1.0) >= 1.0 - kCutTol) continue;
            violated = true;
            std::vector<char> side = flow.cut_side(net.src);
            LpRow row;
            row.sense = RowSense::GreaterEq;
            row.rhs = 1.0;
            row.name = "cut_" + std::to_string(fl.demands[d].first) + "_" +
                       std::to_string(fl.demands[d].second) + "_r" + std::to_string(round);
            for (const auto& [u, v, e] : net.edges)
                if (side[u] != side[v]) row.terms.push_back({e, 1.0});
            master.rows.push_back(std::move(row));
        }
        if (!violated) break;
    }

    // Rebuild the flows on the final capacities.
    std::vector<double> x(lp.vars.size(), 0.0);
    for (size_t e = 0; e < ne; ++e) x[fl.edge_var[e]] = cap[e];
    if (fl.lambda_var >= 0) x[fl.lambda_var] = cap[ne];
    for (size_t d = 0; d < fl.demands.size(); ++d) {
        const DemandNet& net = nets[d];
        Dinic flow(net.nodes);
        std::vector<std::pair<int, int>> fwd;  // arc indices u->v and v->u
        fwd.reserve(net.edges.size());
        for (const auto& [u, v, e] : net.edges)
            fwd.push_back({flow.add_edge(u, v, cap[e]), flow.add_edge(v, u, cap[e])});
        flow.run(net.src, net.dst, 1.0);
        for (size_t k = 0; k < net.edges.size(); ++k) {
            auto [u, v, e] = net.edges[k];
            double used_uv = cap[e] - flow.g[u][fwd[k].first].cap;
            double used_vu = cap[e] - flow.g[v][fwd[k].second].cap;
            // Cancel the opposite directions so together they fit under c_e.
            double net_uv = used_uv - used_vu;
            x[fl.arc_var[d][2 * k]] = std::max(net_uv, 0.0);
            x[fl.arc_var[d][2 * k + 1]] = std::max(-net_uv, 0.0);
        }
    }

    if (info) {
        info->iterations = iterations;
        info->max_residual = lp_residual(lp, x);
    }
    return x;
}

FractionalSolution extract_solution(const LpProgram& lp, const std::vector<double>& x) {
    FractionalSolution sol;
    const FlowLayout& fl = lp.flow;
    sol.edges = fl.edges;
    sol.capacities.reserve(fl.edges.size());
    for (size_t e = 0; e < fl.edges.size(); ++e) sol.capacities.push_back(x[fl.edge_var[e]]);
    if (fl.lambda_var >= 0) {
        sol.has_lambda = true;
        sol.lambda = x[fl.lambda_var];
    }
    sol.flows.resize(fl.demands.size());
    for (size_t d = 0; d < fl.demands.size(); ++d)
        for (size_t a = 0; a < fl.arcs[d].size(); ++a)
            if (x[fl.arc_var[d][a]] > 1e-12)
                sol.flows[d].push_back({fl.arcs[d][a], x[fl.arc_var[d][a]]});
    sol.objective = 0.0;
    for (size_t j = 0; j < lp.vars.size(); ++j) sol.objective += lp.vars[j].obj * x[j];
    return sol;
}

}  // namespace

FractionalSolution solve_lp(const LpProgram& lp, LpSolveInfo* info, LpMethod method) {
    require(lp.has_flow_layout, "solve_lp needs a program built by build_flow_lp");
    if (method == LpMethod::Auto)
        method = lp.rows.size() > 500 ? LpMethod::Cuts : LpMethod::Direct;
    std::vector<double> x =
        method == LpMethod::Cuts ? solve_flow_by_cuts(lp, info) : solve_lp_raw(lp, info);
    return extract_solution(lp, x);
}

double lp_residual(const LpProgram& lp, const std::vector<double>& x) {
    require(x.size() == lp.vars.size(), "solution size mismatch");
    double worst = 0.0;
    for (size_t j = 0; j < lp.vars.size(); ++j) {
        worst = std::max(worst, lp.vars[j].lo - x[j]);
        worst = std::max(worst, x[j] - lp.vars[j].hi);
    }
    for (const auto& row : lp.rows) {
        double lhs = 0.0;
        for (const auto& t : row.terms) lhs += t.coef * x[t.var];
        switch (row.sense) {
            case RowSense::LessEq: worst = std::max(worst, lhs - row.rhs); break;
            case RowSense::GreaterEq: worst = std::max(worst, row.rhs - lhs); break;
            case RowSense::Equal: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
        }
    }
    return worst;
}

namespace {

void write_terms(std::ostream& out, const LpProgram& lp, const std::vector<LpTerm>& terms) {
    bool first = true;
    for (const auto& t : terms) {
        double c = t.coef;
        if (first) {
            if (c < 0) out << "- ";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        double a = std::abs(c);
        if (a != 1.0) out << a << ' ';
        out << lp.vars[t.var].name;
    }
}

}  // namespace

void write_lp_file(const LpProgram& lp, std::ostream& out) {
    out << "Minimize\n obj: ";
    std::vector<LpTerm> obj;
    for (size_t j = 0; j < lp.vars.size(); ++j)
        if (lp.vars[j].obj != 0.0) obj.push_back({static_cast<int>(j), lp.vars[j].obj});
    write_terms(out, lp, obj);
    out << "\nSubject To\n";
    for (const auto& row : lp.rows) {
        out << ' ' << row.name << ": ";
        write_terms(out, lp, row.terms);
        switch (row.sense) {
            case RowSense::LessEq: out << " <= "; break;
            case RowSense::GreaterEq: out << " >= "; break;
            case RowSense::Equal: out << " = "; break;
        }
        out << row.rhs << '\n';
    }
    out << "Bounds\n";
    for (const auto& v : lp.vars) {
        if (v.hi == kLpInf)
            out << ' ' << v.lo << " <= " << v.name << '\n';
        else
            out << ' ' << v.lo << " <= " << v.name << " <= " << v.hi << '\n';
    }
    out << "End\n";
}

void save_lp_file(const LpProgram& lp, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    write_lp_file(lp, out);
}

std::vector<double> read_lp_solution(const LpProgram& lp, std::istream& in) {
    std::vector<double> x(lp.vars.size(), 0.0);
    std::string name;
    double value;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '#') continue;
        std::istringstream ls(line);
        if (!(ls >> name)) continue;
        if (!(ls >> value))
            throw ParseError("<solution>", lineno, "expected 'name value', got '" + line + "'");
        bool found = false;
        for (size_t j = 0; j < lp.vars.size(); ++j)
            if (lp.vars[j].name == name) {
                x[j] = value;
                found = true;
                break;
            }
        if (!found && name != "obj")
            throw ParseError("<solution>", lineno, "unknown variable '" + name + "'");
    }
    return x;
}

FractionalSolution load_lp_solution(const LpProgram& lp, const std::string& path) {
    require(lp.has_flow_layout, "load_lp_solution needs a flow program");
    std::ifstream in(path);
    if (!in) throw Error("cannot open solution file: " + path);
    std::vector<double> x = read_lp_solution(lp, in);
    double res = lp_residual(lp, x);
    if (res > 1e-6)
        throw Error("solution file violates the program (residual " + std::to_string(res) + ")");
    return extract_solution(lp, x);
}

Overlay round_and_sample(const SafeSetSystem& sys, const FractionalSolution& frac,
                         Variant variant, uint64_t seed, const RoundingOptions& opt) {
    const int n = sys.n;
    require(frac.edges == sys.base_edges, "fractional solution does not match the instance");

    std::vector<Edge> picked;
    double scale =
        n >= 2 ? opt.inflation * std::sqrt(static_cast<double>(n)) * std::log(static_cast<double>(n))
               : 1.0;
    Rng rng = substream(seed, 0x726f756e64);  // "round"
    for (size_t e = 0; e < sys.base_edges.size(); ++e) {
        double p = std::min(frac.capacities[e] * scale, 1.0);
        if (rng.bernoulli(p)) picked.push_back(sys.base_edges[e]);
    }

    double s = std::sqrt(static_cast<double>(n));
    std::vector<Edge> net = variant == Variant::Sum
                                ? star_sample(n, s, mix64(seed, 0x6e6574))
                                : edge_sample(n, s, opt.eps, mix64(seed, 0x6e6574));
    for (const auto& [u, v] : net)
        if (sys.has_edge(u, v)) picked.push_back({u, v});

    return Overlay::of(std::move(picked),
                       "lp-round " + variant_name(variant) + " seed=" + std::to_string(seed));
}

}  // namespace ccnet
