#include "ccnet/ibgp.hpp"

#include <algorithm>
#include <queue>

namespace ccnet {

std::vector<Vertex> egress_ball_complement(const StrictMetric& m, Vertex x, Vertex y) {
    std::vector<Vertex> out;
    int32_t ref = m.r(x, y);
    for (Vertex w = 0; w < m.n; ++w)
        if (m.r(x, w) > ref) out.push_back(w);
    return out;
}

std::vector<Vertex> ibgp_safe_set(const StrictMetric& m, Vertex x, Vertex y) {
    std::vector<Vertex> d = egress_ball_complement(m, x, y);
    std::vector<Vertex> s;
    if (d.empty()) {
        // Nothing can outrank y anywhere, so every router is safe.
        s.resize(m.n);
        for (Vertex w = 0; w < m.n; ++w) s[w] = w;
        return s;
    }
    for (Vertex w = 0; w < m.n; ++w) {
        if (w == y) {
            s.push_back(w);
            continue;
        }
        int32_t to_y = m.r(w, y);
        bool safe = true;
        for (Vertex u : d) {
            // r(w,w) is -1, so members of D(x,y) exclude themselves here.
            if (m.r(w, u) <= to_y) {
                safe = false;
                break;
            }
        }
        if (safe) s.push_back(w);
    }
    return s;
}

SafeSetSystem derive_ibgp_safe_sets(const StrictMetric& m) {
    const int n = m.n;
    std::vector<Arc> demands = SafeSetSystem::all_ordered_pairs(n);
    std::vector<std::vector<int>> safe;
    safe.reserve(demands.size());
    for (const auto& [x, y] : demands) {
        auto s = ibgp_safe_set(m, x, y);
        // x prefers y to everything it ranks behind y, by construction.
        require(std::binary_search(s.begin(), s.end(), x),
                "internal error: demand source fell outside its own safe set");
        safe.push_back(std::move(s));
    }
    return SafeSetSystem::make(n, SafeSetSystem::complete_edges(n), std::move(demands),
                               std::move(safe));
}

VerificationReport verify_safe_paths(const SafeSetSystem& sys, const Overlay& h) {
    VerificationReport rep;
    std::vector<std::vector<int>> adj(sys.n);
    for (const auto& [u, v] : h.edges) {
        require(u >= 0 && v < sys.n, "overlay vertex out of range");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> parent(sys.n);
    for (size_t i = 0; i < sys.demands.size(); ++i) {
        auto [u, v] = sys.demands[i];
        const Bitset& allowed = sys.safe_mask(static_cast<int>(i));
        std::fill(parent.begin(), parent.end(), -2);
        std::queue<int> q;
        q.push(u);
        parent[u] = -1;
        while (!q.empty() && parent[v] == -2) {
            int w = q.front();
            q.pop();
            for (int z : adj[w]) {
                if (!allowed.test(z) || parent[z] != -2) continue;
                parent[z] = w;
                if (z == v) break;
                q.push(z);
            }
        }
        if (parent[v] == -2) {
            rep.ok = false;
            rep.failures.push_back({u, v});
        } else {
            std::vector<Vertex> path;
            for (int w = v; w != -1; w = parent[w]) path.push_back(w);
            std::reverse(path.begin(), path.end());
            rep.witness_paths.emplace(Arc{u, v}, std::move(path));
        }
    }
    return rep;
}

RouteAssignment simulate_ibgp(const StrictMetric& m, const Overlay& h,
                              const std::vector<Vertex>& egress_set) {
    require(!egress_set.empty(), "egress set is empty");
    RouteAssignment out;
    out.egress_set = egress_set;
    std::sort(out.egress_set.begin(), out.egress_set.end());
    out.egress_set.erase(std::unique(out.egress_set.begin(), out.egress_set.end()),
                         out.egress_set.end());
    require(out.egress_set.front() >= 0 && out.egress_set.back() < m.n,
            "egress id out of range");

    std::vector<std::vector<int>> adj(m.n);
    for (const auto& [u, v] : h.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }

    std::vector<int> chosen(m.n, -1);
    for (Vertex e : out.egress_set) chosen[e] = e;  // own route, distance zero

    // Passes use the previous pass's announcements (a snapshot), so the
    // result does not depend on the order routers are visited in.
    std::vector<int> snapshot;
    bool changed = true;
    while (changed) {
        changed = false;
        ++out.passes;
        snapshot = chosen;
        for (Vertex r = 0; r < m.n; ++r) {
            int best = snapshot[r];
            for (int q : adj[r]) {
                int cand = snapshot[q];
                if (cand < 0) continue;
                // rank(r,r) = -1 keeps an egress router on its own route.
                if (best < 0 || m.r(r, cand) < m.r(r, best)) best = cand;
            }
            if (best != chosen[r]) {
                chosen[r] = best;
                changed = true;
            }
        }
    }
    out.chosen = std::move(chosen);
    return out;
}

namespace {

void check_one_egress_set(const StrictMetric& m, const Overlay& h,
                          const std::vector<Vertex>& egress_set, VerificationReport& rep) {
    RouteAssignment ra = simulate_ibgp(m, h, egress_set);
    for (Vertex r = 0; r < m.n; ++r) {
        Vertex closest = egress_set[0];
        for (Vertex e : egress_set)
            if (m.r(r, e) < m.r(r, closest)) closest = e;
        if (ra.chosen[r] != closest) {
            rep.ok = false;
            rep.hot_failures.push_back({r, egress_set, closest, ra.chosen[r]});
        }
    }
}

}  // namespace

VerificationReport check_hot_potato(const StrictMetric& m, const Overlay& h, HotPotatoMode mode) {
    VerificationReport rep;
    if (mode == HotPotatoMode::Witness) {
        for (Vertex x = 0; x < m.n; ++x)
            for (Vertex y = 0; y < m.n; ++y) {
                if (x == y) continue;
                std::vector<Vertex> xf = egress_ball_complement(m, x, y);
                xf.push_back(y);
                std::sort(xf.begin(), xf.end());
                check_one_egress_set(m, h, xf, rep);
            }
    } else {
        require(m.n <= 16, "exhaustive egress set enumeration is limited to 16 routers");
        for (uint32_t mask = 1; mask < (uint32_t{1} << m.n); ++mask) {
            std::vector<Vertex> xf;
            for (Vertex v = 0; v < m.n; ++v)
                if (mask & (uint32_t{1} << v)) xf.push_back(v);
            check_one_egress_set(m, h, xf, rep);
        }
    }
    return rep;
}

}  // namespace ccnet
