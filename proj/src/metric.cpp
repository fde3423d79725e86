#include "ccnet/metric.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ccnet {

namespace {

// Sort key of the strict order: distance, then sorted endpoints, then the
// ordered pair. build_ranks assumes dist is already a valid metric.
void build_ranks(StrictMetric& m) {
    struct Item {
        Vertex u, v;
    };
    std::vector<Item> items;
    items.reserve(static_cast<size_t>(m.n) * (m.n - 1));
    for (Vertex u = 0; u < m.n; ++u)
        for (Vertex v = 0; v < m.n; ++v)
            if (u != v) items.push_back({u, v});
    std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
        int c = cmp(m.d(a.u, a.v), m.d(b.u, b.v));
        if (c != 0) return c < 0;
        Vertex alo = std::min(a.u, a.v), ahi = std::max(a.u, a.v);
        Vertex blo = std::min(b.u, b.v), bhi = std::max(b.u, b.v);
        if (alo != blo) return alo < blo;
        if (ahi != bhi) return ahi < bhi;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    m.rank.assign(static_cast<size_t>(m.n) * m.n, -1);
    for (size_t i = 0; i < items.size(); ++i)
        m.rank[items[i].u * m.n + items[i].v] = static_cast<int32_t>(i);
}

}  // namespace

StrictMetric all_pairs_distances(const Topology& t) {
    check_topology(t);
    const int n = t.n;
    StrictMetric m;
    m.n = n;
    // -1 denominator is not representable; use a reachability flag instead of
    // an infinity sentinel so all arithmetic stays exact.
    std::vector<char> reach(static_cast<size_t>(n) * n, 0);
    m.dist.assign(static_cast<size_t>(n) * n, Rat(0));
    for (int v = 0; v < n; ++v) reach[v * n + v] = 1;
    for (const auto& e : t.edges) {
        size_t a = static_cast<size_t>(e.u) * n + e.v;
        size_t b = static_cast<size_t>(e.v) * n + e.u;
        if (!reach[a] || e.weight < m.dist[a]) {
            m.dist[a] = e.weight;
            m.dist[b] = e.weight;
            reach[a] = reach[b] = 1;
        }
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!reach[i * n + k]) continue;
            const Rat& dik = m.dist[i * n + k];
            for (int j = 0; j < n; ++j) {
                if (!reach[k * n + j]) continue;
                Rat through = dik + m.dist[k * n + j];
                size_t ij = static_cast<size_t>(i) * n + j;
                if (!reach[ij] || through < m.dist[ij]) {
                    m.dist[ij] = through;
                    reach[ij] = 1;
                }
            }
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!reach[i * n + j])
                throw InfeasibleError("topology is disconnected: no path between " +
                                      std::to_string(i) + " and " + std::to_string(j));
    build_ranks(m);
    return m;
}

StrictMetric make_strict_metric(int n, std::vector<Rat> dist) {
    require(n >= 1, "metric needs at least one point");
    require(static_cast<int>(dist.size()) == n * n, "distance matrix size mismatch");
    StrictMetric m;
    m.n = n;
    m.dist = std::move(dist);
    for (int i = 0; i < n; ++i) {
        require(m.d(i, i) == 0, "nonzero diagonal at " + std::to_string(i));
        for (int j = i + 1; j < n; ++j) {
            require(m.d(i, j) == m.d(j, i), "asymmetric distances for " + std::to_string(i) +
                                                "," + std::to_string(j));
            require(m.d(i, j) > 0, "nonpositive distance for " + std::to_string(i) + "," +
                                       std::to_string(j));
        }
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (m.d(i, j) > m.d(i, k) + m.d(k, j))
                    throw Error("triangle inequality fails: d(" + std::to_string(i) + "," +
                                std::to_string(j) + ") > d(" + std::to_string(i) + "," +
                                std::to_string(k) + ") + d(" + std::to_string(k) + "," +
                                std::to_string(j) + ")");
    build_ranks(m);
    return m;
}

StrictMetric parse_metric(std::istream& in, const std::string& filename) {
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<Rat> dist;
    std::vector<char> seen;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "metric") {
            if (n != -1) throw ParseError(filename, lineno, "duplicate metric header");
            if (!(ls >> n) || n < 1) throw ParseError(filename, lineno, "bad metric size");
            dist.assign(static_cast<size_t>(n) * n, Rat(0));
            seen.assign(static_cast<size_t>(n) * n, 0);
        } else if (kind == "d") {
            if (n == -1) throw ParseError(filename, lineno, "distance before metric header");
            int u, v;
            std::string val;
            if (!(ls >> u >> v >> val))
                throw ParseError(filename, lineno, "distance line needs <u> <v> <value>");
            if (u < 0 || v < 0 || u >= n || v >= n || u == v)
                throw ParseError(filename, lineno, "bad pair in distance line");
            Rat q;
            try {
                q = parse_rational(val);
            } catch (const Error& err) {
                throw ParseError(filename, lineno, err.what());
            }
            if (seen[u * n + v])
                throw ParseError(filename, lineno, "duplicate distance for pair");
            dist[u * n + v] = q;
            dist[v * n + u] = q;
            seen[u * n + v] = seen[v * n + u] = 1;
        } else {
            throw ParseError(filename, lineno, "unknown directive '" + kind + "'");
        }
    }
    if (n == -1) throw ParseError(filename, lineno, "missing metric header");
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!seen[u * n + v])
                throw ParseError(filename, 0, "missing distance for pair " + std::to_string(u) +
                                                  "," + std::to_string(v));
    try {
        return make_strict_metric(n, std::move(dist));
    } catch (const Error& err) {
        throw ParseError(filename, 0, err.what());
    }
}

StrictMetric load_metric(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open metric file: " + path);
    return parse_metric(in, path);
}

void write_metric(const StrictMetric& m, std::ostream& out) {
    out << "metric " << m.n << '\n';
    for (int u = 0; u < m.n; ++u)
        for (int v = u + 1; v < m.n; ++v)
            out << "d " << u << ' ' << v << ' ' << rational_str(m.d(u, v)) << '\n';
}

void save_metric(const StrictMetric& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    write_metric(m, out);
}

}  // namespace ccnet
