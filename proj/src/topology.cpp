#include "ccnet/topology.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ccnet {

void check_topology(const Topology& t) {
    require(t.n >= 1, "topology has no vertices");
    require(static_cast<int>(t.names.size()) == t.n, "topology name list size mismatch");
    std::set<Edge> seen;
    for (const auto& e : t.edges) {
        require(e.u >= 0 && e.u < t.n && e.v >= 0 && e.v < t.n,
                "edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
        require(e.u != e.v, "self loop at vertex " + std::to_string(e.u));
        require(e.u < e.v, "edge endpoints not normalized: " + std::to_string(e.u) + " " +
                               std::to_string(e.v));
        require(e.weight > 0, "nonpositive weight on edge " + std::to_string(e.u) + "-" +
                                  std::to_string(e.v));
        require(seen.insert({e.u, e.v}).second, "duplicate edge " + std::to_string(e.u) + "-" +
                                                    std::to_string(e.v));
    }
}

Topology parse_topology(std::istream& in, const std::string& filename) {
    Topology t;
    std::vector<std::pair<int, std::string>> nodes;
    std::vector<WeightedEdge> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "node") {
            int id;
            if (!(ls >> id)) throw ParseError(filename, lineno, "node line needs an id");
            std::string name;
            ls >> name;  // optional
            nodes.emplace_back(id, name);
        } else if (kind == "edge") {
            int u, v;
            std::string w;
            if (!(ls >> u >> v >> w))
                throw ParseError(filename, lineno, "edge line needs <u> <v> <weight>");
            Rat weight;
            try {
                weight = parse_rational(w);
            } catch (const Error& err) {
                throw ParseError(filename, lineno, err.what());
            }
            if (u == v) throw ParseError(filename, lineno, "self loop at vertex " + std::to_string(u));
            if (u > v) std::swap(u, v);
            edges.push_back({u, v, weight});
        } else {
            throw ParseError(filename, lineno, "unknown directive '" + kind + "'");
        }
    }
    if (nodes.empty()) throw ParseError(filename, lineno, "no node lines");
    t.n = static_cast<int>(nodes.size());
    t.names.assign(t.n, "");
    std::vector<bool> declared(t.n, false);
    for (const auto& [id, name] : nodes) {
        if (id < 0 || id >= t.n)
            throw ParseError(filename, 0,
                             "node ids must be consecutive 0.." + std::to_string(t.n - 1) +
                                 ", got " + std::to_string(id));
        if (declared[id]) throw ParseError(filename, 0, "node " + std::to_string(id) + " declared twice");
        declared[id] = true;
        t.names[id] = name;
    }
    t.edges = std::move(edges);
    try {
        check_topology(t);
    } catch (const Error& err) {
        throw ParseError(filename, 0, err.what());
    }
    return t;
}

Topology load_topology(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open topology file: " + path);
    return parse_topology(in, path);
}

void write_topology(const Topology& t, std::ostream& out) {
    for (int v = 0; v < t.n; ++v) {
        out << "node " << v;
        if (!t.names[v].empty()) out << ' ' << t.names[v];
        out << '\n';
    }
    for (const auto& e : t.edges)
        out << "edge " << e.u << ' ' << e.v << ' ' << rational_str(e.weight) << '\n';
}

void save_topology(const Topology& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    write_topology(t, out);
}

}  // namespace ccnet
