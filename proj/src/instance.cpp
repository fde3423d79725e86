#include "ccnet/instance.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

#include <json.hpp>

namespace ccnet {

using nlohmann::json;

std::vector<Edge> SafeSetSystem::complete_edges(int n) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
    return edges;
}

std::vector<Arc> SafeSetSystem::all_ordered_pairs(int n) {
    std::vector<Arc> out;
    out.reserve(static_cast<size_t>(n) * (n - 1));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v) out.push_back({u, v});
    return out;
}

SafeSetSystem SafeSetSystem::make(int n, std::vector<Edge> base_edges, std::vector<Arc> demands,
                                  std::vector<std::vector<int>> safe, bool allow_empty_demands) {
    require(n >= 1, "instance needs at least one vertex");
    require(demands.size() == safe.size(), "demand and safe set counts differ");
    require(allow_empty_demands || n == 1 || !demands.empty(), "instance has no demands");

    SafeSetSystem sys;
    sys.n = n;

    std::sort(base_edges.begin(), base_edges.end());
    sys.edge_index_.assign(static_cast<size_t>(n) * n, -1);
    sys.adj_.assign(n, {});
    for (size_t i = 0; i < base_edges.size(); ++i) {
        auto [u, v] = base_edges[i];
        require(u >= 0 && u < n && v >= 0 && v < n, "base edge endpoint out of range");
        require(u < v, "base edge not normalized");
        require(sys.edge_index_[u * n + v] == -1, "duplicate base edge");
        sys.edge_index_[u * n + v] = static_cast<int>(i);
        sys.adj_[u].push_back(v);
        sys.adj_[v].push_back(u);
    }
    sys.base_edges = std::move(base_edges);

    sys.demand_index_.assign(static_cast<size_t>(n) * n, -1);
    for (size_t i = 0; i < demands.size(); ++i) {
        auto [u, v] = demands[i];
        require(u >= 0 && u < n && v >= 0 && v < n && u != v,
                "demand pair out of range: " + std::to_string(u) + "," + std::to_string(v));
        require(sys.demand_index_[u * n + v] == -1,
                "duplicate demand " + std::to_string(u) + "," + std::to_string(v));
        sys.demand_index_[u * n + v] = static_cast<int>(i);

        auto& s = safe[i];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        bool has_u = false, has_v = false;
        for (int w : s) {
            require(w >= 0 && w < n, "safe set member out of range");
            has_u |= w == u;
            has_v |= w == v;
        }
        require(has_u && has_v, "safe set of (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") is missing a demand endpoint");
        Bitset mask(n);
        for (int w : s) mask.set(w);
        sys.safe_mask_.push_back(std::move(mask));
    }
    sys.demands = std::move(demands);
    sys.safe = std::move(safe);
    return sys;
}

const std::vector<int>& SafeSetSystem::safe_of(Vertex u, Vertex v) const {
    int id = demand_id(u, v);
    require(id >= 0, "no demand (" + std::to_string(u) + "," + std::to_string(v) + ")");
    return safe[id];
}

Overlay Overlay::of(std::vector<Edge> edges, std::string provenance) {
    for (auto& e : edges) e = make_edge(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Overlay{std::move(edges), std::move(provenance)};
}

bool Overlay::contains(Vertex u, Vertex v) const {
    return std::binary_search(edges.begin(), edges.end(), make_edge(u, v));
}

ValidationReport validate_instance(const SafeSetSystem& sys) {
    ValidationReport rep;
    std::vector<int> dist(sys.n);
    for (size_t i = 0; i < sys.demands.size(); ++i) {
        auto [u, v] = sys.demands[i];
        const Bitset& allowed = sys.safe_mask(static_cast<int>(i));
        // BFS from u inside the safe set using all base edges.
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<int> q;
        q.push(u);
        dist[u] = 0;
        bool found = false;
        while (!q.empty() && !found) {
            int w = q.front();
            q.pop();
            for (int z : sys.base_adj(w)) {
                if (!allowed.test(z) || dist[z] >= 0) continue;
                dist[z] = dist[w] + 1;
                if (z == v) {
                    found = true;
                    break;
                }
                q.push(z);
            }
        }
        if (!found) {
            rep.feasible = false;
            rep.failures.push_back({u, v});
        }
    }
    return rep;
}

SafeSetSystem parse_instance_json(const std::string& text, const std::string& filename) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(filename + ": " + e.what());
    }
    try {
        int n = j.at("n").get<int>();
        std::vector<Edge> base;
        for (const auto& e : j.at("base_edges")) {
            if (!e.is_array() || e.size() != 2) throw ParseError(filename + ": bad base edge");
            base.push_back(make_edge(e[0].get<int>(), e[1].get<int>()));
        }
        std::vector<Arc> demands;
        for (const auto& d : j.at("demands")) {
            if (!d.is_array() || d.size() != 2) throw ParseError(filename + ": bad demand");
            demands.push_back({d[0].get<int>(), d[1].get<int>()});
        }
        const auto& safe_obj = j.at("safe");
        std::vector<std::vector<int>> safe(demands.size());
        std::vector<bool> seen(demands.size(), false);
        // Keys are "u,v" matching a demand.
        for (auto it = safe_obj.begin(); it != safe_obj.end(); ++it) {
            std::istringstream key(it.key());
            int u, v;
            char comma;
            if (!(key >> u >> comma >> v) || comma != ',')
                throw ParseError(filename + ": bad safe set key '" + it.key() + "'");
            int idx = -1;
            for (size_t k = 0; k < demands.size(); ++k)
                if (demands[k] == Arc{u, v}) idx = static_cast<int>(k);
            if (idx < 0)
                throw ParseError(filename + ": safe set for unknown demand '" + it.key() + "'");
            safe[idx] = it.value().get<std::vector<int>>();
            seen[idx] = true;
        }
        for (size_t k = 0; k < demands.size(); ++k)
            if (!seen[k])
                throw ParseError(filename + ": missing safe set for demand " +
                                 std::to_string(demands[k].first) + "," +
                                 std::to_string(demands[k].second));
        return SafeSetSystem::make(n, std::move(base), std::move(demands), std::move(safe));
    } catch (const json::exception& e) {
        throw ParseError(filename + ": " + e.what());
    }
}

SafeSetSystem load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open instance file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance_json(buf.str(), path);
}

std::string instance_to_json(const SafeSetSystem& sys) {
    json j;
    j["n"] = sys.n;
    json base = json::array();
    for (const auto& [u, v] : sys.base_edges) base.push_back({u, v});
    j["base_edges"] = std::move(base);
    json demands = json::array();
    json safe = json::object();
    for (size_t i = 0; i < sys.demands.size(); ++i) {
        auto [u, v] = sys.demands[i];
        demands.push_back({u, v});
        safe[std::to_string(u) + "," + std::to_string(v)] = sys.safe[i];
    }
    j["demands"] = std::move(demands);
    j["safe"] = std::move(safe);
    return j.dump(2);
}

void save_instance(const SafeSetSystem& sys, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << instance_to_json(sys) << '\n';
}

Overlay parse_overlay(std::istream& in, const std::string& filename) {
    std::string line, provenance;
    std::vector<Edge> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '#') {
            auto p = line.find("provenance:");
            if (p != std::string::npos) {
                provenance = line.substr(p + 11);
                size_t b = provenance.find_first_not_of(' ');
                provenance = b == std::string::npos ? "" : provenance.substr(b);
            }
            continue;
        }
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;  // blank
            throw ParseError(filename, lineno, "overlay line needs two vertex ids");
        }
        if (!(ls >> v)) throw ParseError(filename, lineno, "overlay line needs two vertex ids");
        if (u < 0 || v < 0) throw ParseError(filename, lineno, "vertex ids must be nonnegative");
        if (u == v) throw ParseError(filename, lineno, "self loop in overlay");
        edges.push_back(make_edge(u, v));
    }
    return Overlay::of(std::move(edges), std::move(provenance));
}

Overlay load_overlay(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open overlay file: " + path);
    return parse_overlay(in, path);
}

void write_overlay(const Overlay& h, std::ostream& out) {
    if (!h.provenance.empty()) out << "# provenance: " << h.provenance << '\n';
    for (const auto& [u, v] : h.edges) out << u << ' ' << v << '\n';
}

void save_overlay(const Overlay& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    write_overlay(h, out);
}

}  // namespace ccnet
