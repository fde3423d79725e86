#include "ccnet/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ccnet/hierarchical.hpp"
#include "ccnet/rng.hpp"

namespace ccnet {

namespace {

std::string num(long long v) { return std::to_string(v); }

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Safe set of a pair that is only allowed to route through hub vertices.
std::vector<int> through_hubs(Vertex p, Vertex q, const std::vector<int>& hubs) {
    std::vector<int> s = hubs;
    s.push_back(p);
    s.push_back(q);
    return sorted_unique(std::move(s));
}

std::vector<int> everything(int n) {
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) s[i] = i;
    return s;
}

void validate_hitting_set(const HittingSetInstance& hs) {
    require(hs.n_elems >= 1, "hitting set needs at least one element");
    require(!hs.sets.empty(), "hitting set needs at least one set");
    for (const auto& t : hs.sets) {
        require(!t.empty(), "hitting set contains an empty set");
        for (int e : t)
            require(e >= 1 && e <= hs.n_elems,
                    "hitting set element " + num(e) + " out of range 1.." + num(hs.n_elems));
    }
}

}  // namespace

GadgetInstance gen_hitting_gadget(const HittingSetInstance& hs, const GadgetParams& params,
                                  Variant variant) {
    validate_hitting_set(hs);
    const int n = hs.n_elems;
    const int m = static_cast<int>(hs.sets.size());
    const int ell = variant == Variant::Sum ? params.ell : 1;
    const int alpha = variant == Variant::Degree ? params.alpha : 1;
    require(params.ell >= 1 && params.alpha >= 1, "copy counts must be positive");

    const Rat& big_m = params.big_m;
    require(big_m >= 20, "gadget scale M must be at least 20");
    Rat eps = params.eps;
    if (eps <= 0) eps = Rat(1, 100 * (n + m + ell + alpha));
    // Tie-break terms never add up to a shortcut as long as the largest
    // index sum stays well under the smallest table gap (0.1).
    require(eps * (n + m) < Rat(1, 10), "tie-break step eps too large for the element table");
    if (ell >= 2)
        require(eps * (ell + m) < Rat(1, 10), "tie-break step eps too large for the x copies");

    // Vertex layout: x copies first, then per gadget copy z, y, u, h,
    // elements a_1..a_n, sets b_1..b_m.
    Topology g;
    g.n = ell + alpha * (4 + n + m);
    g.names.assign(g.n, "");
    std::vector<int> x_ids(ell);
    for (int i = 0; i < ell; ++i) {
        x_ids[i] = i;
        g.names[i] = ell == 1 ? "x" : "x" + num(i + 1);
    }
    std::vector<int> z_id(alpha), y_id(alpha), u_id(alpha), h_id(alpha);
    std::vector<std::vector<int>> a_id(alpha, std::vector<int>(n));
    std::vector<std::vector<int>> b_id(alpha, std::vector<int>(m));
    for (int c = 0; c < alpha; ++c) {
        int base = ell + c * (4 + n + m);
        std::string tag = alpha == 1 ? "" : num(c + 1) + "_";
        z_id[c] = base + 0;
        y_id[c] = base + 1;
        u_id[c] = base + 2;
        h_id[c] = base + 3;
        g.names[z_id[c]] = alpha == 1 ? "z" : "z" + num(c + 1);
        g.names[y_id[c]] = alpha == 1 ? "y" : "y" + num(c + 1);
        g.names[u_id[c]] = alpha == 1 ? "u" : "u" + num(c + 1);
        g.names[h_id[c]] = alpha == 1 ? "h" : "h" + num(c + 1);
        for (int i = 0; i < n; ++i) {
            a_id[c][i] = base + 4 + i;
            g.names[a_id[c][i]] = "a" + tag + num(i + 1);
        }
        for (int j = 0; j < m; ++j) {
            b_id[c][j] = base + 4 + n + j;
            g.names[b_id[c][j]] = "b" + tag + num(j + 1);
        }
    }

    auto add = [&g](Vertex u, Vertex v, Rat w) {
        Edge e = make_edge(u, v);
        g.edges.push_back({e.first, e.second, std::move(w)});
    };
    for (int c = 0; c < alpha; ++c) {
        add(z_id[c], y_id[c], Rat(3, 2));
        add(z_id[c], u_id[c], Rat(2));
        for (int i = 1; i <= n; ++i) {
            add(z_id[c], a_id[c][i - 1], Rat(1) + i * eps);
            add(a_id[c][i - 1], u_id[c], Rat(11, 10));
        }
        for (int j = 1; j <= m; ++j) {
            add(b_id[c][j - 1], h_id[c], Rat(1) + j * eps);
            for (int i : hs.sets[j - 1])
                add(a_id[c][i - 1], b_id[c][j - 1], Rat(1) + (i + j) * eps);
        }
        for (int xi = 1; xi <= ell; ++xi) {
            add(x_ids[xi - 1], z_id[c], ell >= 2 ? big_m + xi * eps : big_m);
            for (int j = 1; j <= m; ++j)
                add(x_ids[xi - 1], b_id[c][j - 1],
                    big_m + Rat(7, 5) + (ell >= 2 ? xi + j : j) * eps);
        }
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return std::make_pair(a.u, a.v) < std::make_pair(b.u, b.v);
    });
    check_topology(g);

    GadgetInstance out;
    out.metric = all_pairs_distances(g);
    // If eps or M were out of range some multi-hop path would undercut a
    // table entry; reject rather than hand back a metric with the wrong
    // safe-set structure.
    for (const auto& e : g.edges)
        require(out.metric.d(e.u, e.v) == e.weight,
                "gadget parameters break the distance table between " + g.names[e.u] + " and " +
                    g.names[e.v]);
    out.graph = std::move(g);

    for (int xi = 0; xi < ell; ++xi)
        for (int c = 0; c < alpha; ++c)
            for (int j = 0; j < m; ++j) {
                PredictedSafeSet p;
                p.x = x_ids[xi];
                p.b = b_id[c][j];
                std::vector<int> mem{p.x, p.b};
                for (int i : hs.sets[j]) mem.push_back(a_id[c][i - 1]);
                p.members = sorted_unique(std::move(mem));
                out.predicted.push_back(std::move(p));
            }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct MinRepChecked {
    int m;
    std::vector<int> gu, gv;                 // vertex -> group index
    std::vector<std::pair<int, int>> super;  // group pairs with an edge, sorted
};

MinRepChecked validate_minrep(const MinRepInstance& mr) {
    require(mr.n_u >= 1 && mr.n_v >= 1, "matching-label instance needs vertices on both sides");
    require(mr.d >= 1, "duplication factor d must be positive");
    require(!mr.u_groups.empty(), "matching-label instance needs at least one group");
    require(mr.u_groups.size() == mr.v_groups.size(),
            "both sides must have the same number of groups");
    MinRepChecked c;
    c.m = static_cast<int>(mr.u_groups.size());
    c.gu.assign(mr.n_u, -1);
    c.gv.assign(mr.n_v, -1);
    for (int j = 0; j < c.m; ++j) {
        for (int u : mr.u_groups[j]) {
            require(u >= 0 && u < mr.n_u, "left group member out of range");
            require(c.gu[u] < 0, "left vertex " + num(u) + " appears in two groups");
            c.gu[u] = j;
        }
        for (int v : mr.v_groups[j]) {
            require(v >= 0 && v < mr.n_v, "right group member out of range");
            require(c.gv[v] < 0, "right vertex " + num(v) + " appears in two groups");
            c.gv[v] = j;
        }
    }
    for (int u = 0; u < mr.n_u; ++u)
        require(c.gu[u] >= 0, "left vertex " + num(u) + " is in no group");
    for (int v = 0; v < mr.n_v; ++v)
        require(c.gv[v] >= 0, "right vertex " + num(v) + " is in no group");
    std::set<std::pair<int, int>> seen, super;
    for (auto [u, v] : mr.edges) {
        require(u >= 0 && u < mr.n_u && v >= 0 && v < mr.n_v, "edge endpoint out of range");
        require(seen.insert({u, v}).second, "duplicate edge in matching-label instance");
        super.insert({c.gu[u], c.gv[v]});
    }
    c.super.assign(super.begin(), super.end());
    return c;
}

}  // namespace

MinRepCc gen_minrep_cc(const MinRepInstance& mr, Variant variant) {
    MinRepChecked chk = validate_minrep(mr);
    const int m = chk.m, d = mr.d;

    MinRepCc out;
    out.variant = variant;
    out.m = m;
    out.d = d;
    out.n_mr = mr.n_u + mr.n_v;
    out.super_edges = static_cast<int>(chk.super.size());

    if (variant == Variant::Sum) {
        const int nn = 2 * m * d + out.n_mr + 1;
        out.names.assign(nn, "");
        out.x_id.resize(m * d);
        out.y_id.resize(m * d);
        out.u_id.resize(mr.n_u);
        out.v_id.resize(mr.n_v);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < d; ++i) {
                out.x_id[j * d + i] = j * d + i;
                out.y_id[j * d + i] = m * d + j * d + i;
                out.names[out.x_id[j * d + i]] = "x" + num(j + 1) + "_" + num(i + 1);
                out.names[out.y_id[j * d + i]] = "y" + num(j + 1) + "_" + num(i + 1);
            }
        for (int u = 0; u < mr.n_u; ++u) {
            out.u_id[u] = 2 * m * d + u;
            out.names[out.u_id[u]] = "u" + num(u + 1);
        }
        for (int v = 0; v < mr.n_v; ++v) {
            out.v_id[v] = 2 * m * d + mr.n_u + v;
            out.names[out.v_id[v]] = "v" + num(v + 1);
        }
        const int z = nn - 1;
        out.z_id = {z};
        out.names[z] = "z";

        std::vector<Edge> base;
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < d; ++i) {
                for (int u : mr.u_groups[j]) base.push_back(make_edge(out.x_id[j * d + i], out.u_id[u]));
                for (int v : mr.v_groups[j]) base.push_back(make_edge(out.y_id[j * d + i], out.v_id[v]));
            }
        for (auto [u, v] : mr.edges) base.push_back(make_edge(out.u_id[u], out.v_id[v]));
        for (int w = 0; w < z; ++w) base.push_back(make_edge(w, z));
        std::sort(base.begin(), base.end());

        std::vector<Arc> demands;
        std::vector<std::vector<int>> safe;
        auto demand_slot = [nn](Vertex p, Vertex q) { return p * (nn - 1) + (q > p ? q - 1 : q); };
        for (int p = 0; p < nn; ++p)
            for (int q = 0; q < nn; ++q)
                if (p != q) {
                    demands.push_back({p, q});
                    safe.push_back(through_hubs(p, q, out.z_id));
                }
        for (auto [ga, gb] : chk.super) {
            std::vector<int> hubs;
            for (int u : mr.u_groups[ga]) hubs.push_back(out.u_id[u]);
            for (int v : mr.v_groups[gb]) hubs.push_back(out.v_id[v]);
            for (int i = 0; i < d; ++i) {
                Vertex px = out.x_id[ga * d + i], py = out.y_id[gb * d + i];
                safe[demand_slot(px, py)] = through_hubs(px, py, hubs);
                safe[demand_slot(py, px)] = through_hubs(py, px, hubs);
            }
        }
        out.sys = SafeSetSystem::make(nn, std::move(base), std::move(demands), std::move(safe));
        return out;
    }

    // Degree variant: d^2 inner copies. Copy (i,k) holds its own group
    // vertices and hub z; outer copy x_j^i sits in copies (i,*), y_j^i in
    // copies (*,i). Pairs sharing no copy may route anywhere.
    const int dd = d * d;
    const int nn = 2 * m * d + out.n_mr * dd + dd;
    out.names.assign(nn, "");
    out.x_id.resize(m * d);
    out.y_id.resize(m * d);
    out.u_id.resize(mr.n_u * dd);
    out.v_id.resize(mr.n_v * dd);
    out.z_id.resize(dd);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < d; ++i) {
            out.x_id[j * d + i] = j * d + i;
            out.y_id[j * d + i] = m * d + j * d + i;
            out.names[out.x_id[j * d + i]] = "x" + num(j + 1) + "_" + num(i + 1);
            out.names[out.y_id[j * d + i]] = "y" + num(j + 1) + "_" + num(i + 1);
        }
    auto copy_tag = [d](int c) { return num(c / d + 1) + "_" + num(c % d + 1); };
    for (int u = 0; u < mr.n_u; ++u)
        for (int c = 0; c < dd; ++c) {
            out.u_id[u * dd + c] = 2 * m * d + u * dd + c;
            out.names[out.u_id[u * dd + c]] = "u" + num(u + 1) + "_" + copy_tag(c);
        }
    for (int v = 0; v < mr.n_v; ++v)
        for (int c = 0; c < dd; ++c) {
            out.v_id[v * dd + c] = 2 * m * d + mr.n_u * dd + v * dd + c;
            out.names[out.v_id[v * dd + c]] = "v" + num(v + 1) + "_" + copy_tag(c);
        }
    for (int c = 0; c < dd; ++c) {
        out.z_id[c] = 2 * m * d + out.n_mr * dd + c;
        out.names[out.z_id[c]] = "z" + copy_tag(c);
    }

    std::vector<Edge> base;
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                for (int u : mr.u_groups[j])
                    base.push_back(make_edge(out.x_id[j * d + i], out.u_id[u * dd + i * d + k]));
                for (int v : mr.v_groups[j])
                    base.push_back(make_edge(out.y_id[j * d + i], out.v_id[v * dd + k * d + i]));
                base.push_back(make_edge(out.x_id[j * d + i], out.z_id[i * d + k]));
                base.push_back(make_edge(out.y_id[j * d + i], out.z_id[k * d + i]));
            }
    std::set<Edge> dedupe(base.begin(), base.end());
    for (int c = 0; c < dd; ++c) {
        for (auto [u, v] : mr.edges)
            dedupe.insert(make_edge(out.u_id[u * dd + c], out.v_id[v * dd + c]));
        for (int u = 0; u < mr.n_u; ++u) dedupe.insert(make_edge(out.u_id[u * dd + c], out.z_id[c]));
        for (int v = 0; v < mr.n_v; ++v) dedupe.insert(make_edge(out.v_id[v * dd + c], out.z_id[c]));
    }

    // copies[w] = sorted inner copy ids w belongs to
    std::vector<std::vector<int>> copies(nn);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                copies[out.x_id[j * d + i]].push_back(i * d + k);
                copies[out.y_id[j * d + i]].push_back(k * d + i);
            }
    for (int u = 0; u < mr.n_u; ++u)
        for (int c = 0; c < dd; ++c) copies[out.u_id[u * dd + c]].push_back(c);
    for (int v = 0; v < mr.n_v; ++v)
        for (int c = 0; c < dd; ++c) copies[out.v_id[v * dd + c]].push_back(c);
    for (int c = 0; c < dd; ++c) copies[out.z_id[c]].push_back(c);
    for (auto& v : copies) v = sorted_unique(std::move(v));

    std::vector<Arc> demands;
    std::vector<std::vector<int>> safe;
    auto demand_slot = [nn](Vertex p, Vertex q) { return p * (nn - 1) + (q > p ? q - 1 : q); };
    for (int p = 0; p < nn; ++p)
        for (int q = 0; q < nn; ++q) {
            if (p == q) continue;
            demands.push_back({p, q});
            std::vector<int> common;
            std::set_intersection(copies[p].begin(), copies[p].end(), copies[q].begin(),
                                  copies[q].end(), std::back_inserter(common));
            if (common.empty()) {
                safe.push_back(everything(nn));
            } else {
                std::vector<int> hubs;
                for (int c : common) hubs.push_back(out.z_id[c]);
                safe.push_back(through_hubs(p, q, hubs));
            }
        }
    for (auto [ga, gb] : chk.super)
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                Vertex px = out.x_id[ga * d + i], py = out.y_id[gb * d + k];
                std::vector<int> hubs;
                for (int u : mr.u_groups[ga]) hubs.push_back(out.u_id[u * dd + i * d + k]);
                for (int v : mr.v_groups[gb]) hubs.push_back(out.v_id[v * dd + i * d + k]);
                safe[demand_slot(px, py)] = through_hubs(px, py, hubs);
                safe[demand_slot(py, px)] = through_hubs(py, px, hubs);
            }
    out.sys = SafeSetSystem::make(nn, std::vector<Edge>(dedupe.begin(), dedupe.end()),
                                  std::move(demands), std::move(safe));
    return out;
}

Overlay minrep_forward_solution(const MinRepCc& cc, const MinRepInstance& mr,
                                const std::vector<int>& reps_u,
                                const std::vector<int>& reps_v) {
    require(cc.variant == Variant::Sum, "forward solution is defined for the edge-count variant");
    MinRepChecked chk = validate_minrep(mr);
    std::set<int> ru(reps_u.begin(), reps_u.end()), rv(reps_v.begin(), reps_v.end());
    for (int u : ru) require(u >= 0 && u < mr.n_u, "left representative out of range");
    for (int v : rv) require(v >= 0 && v < mr.n_v, "right representative out of range");

    std::set<Edge> es;
    const int z = cc.z_id[0];
    for (int w = 0; w < z; ++w) es.insert(make_edge(w, z));
    for (int u : ru)
        for (int i = 0; i < cc.d; ++i) es.insert(make_edge(cc.x_id[chk.gu[u] * cc.d + i], cc.u_id[u]));
    for (int v : rv)
        for (int i = 0; i < cc.d; ++i) es.insert(make_edge(cc.y_id[chk.gv[v] * cc.d + i], cc.v_id[v]));

    std::vector<std::pair<int, int>> edges = mr.edges;
    std::sort(edges.begin(), edges.end());
    for (auto [ga, gb] : chk.super) {
        bool covered = false;
        for (auto [u, v] : edges)
            if (chk.gu[u] == ga && chk.gv[v] == gb && ru.count(u) && rv.count(v)) {
                es.insert(make_edge(cc.u_id[u], cc.v_id[v]));
                covered = true;
                break;
            }
        if (!covered)
            throw Error("representatives do not cover group pair (" + num(ga + 1) + "," +
                        num(gb + 1) + ")");
    }
    return Overlay::of(std::vector<Edge>(es.begin(), es.end()), "minrep-forward");
}

// ---------------------------------------------------------------------------

UniqueGamesInstance sample_unique_games(int n_ug, int k, bool bipartite, uint64_t seed) {
    require(n_ug >= 2, "permutation-constraint instance needs at least two vertices");
    require(k >= 1, "alphabet must be nonempty");
    UniqueGamesInstance ug;
    ug.n_ug = n_ug;
    ug.k = k;
    ug.bipartite = bipartite;
    if (bipartite) {
        int left = (n_ug + 1) / 2;
        for (int u = 0; u < left; ++u)
            for (int v = left; v < n_ug; ++v) ug.pairs.push_back({u, v});
    } else {
        for (int u = 0; u < n_ug; ++u)
            for (int v = u + 1; v < n_ug; ++v) ug.pairs.push_back({u, v});
    }
    for (size_t e = 0; e < ug.pairs.size(); ++e) {
        std::vector<int> perm(k);
        for (int a = 0; a < k; ++a) perm[a] = a;
        Rng rng = substream(seed, 0x75670000ULL, e);
        rng.shuffle(perm);
        ug.pi.push_back(std::move(perm));
    }
    return ug;
}

int min_labels_exhaustive(const UniqueGamesInstance& ug) {
    const int bits = ug.n_ug * ug.k;
    require(bits <= 20, "exhaustive label search out of range");
    int best = -1;
    for (uint32_t asn = 0; asn < (1u << bits); ++asn) {
        int cost = __builtin_popcount(asn);
        if (best >= 0 && cost >= best) continue;
        bool ok = true;
        for (size_t e = 0; e < ug.pairs.size() && ok; ++e) {
            auto [u, v] = ug.pairs[e];
            bool sat = false;
            for (int a = 0; a < ug.k && !sat; ++a)
                if ((asn >> (u * ug.k + a)) & 1u)
                    sat = (asn >> (v * ug.k + ug.pi[e][a])) & 1u;
            ok = sat;
        }
        if (ok) best = cost;
    }
    require(best >= 0, "internal error: full labeling should satisfy every pair");
    return best;
}

UgGapCc gen_unique_games_gap(int n_ug, double eps, int d, int k, uint64_t seed, Variant variant) {
    require(n_ug >= 2, "gap instance needs at least two vertices");
    long long kk = k, dd = d;
    if (kk <= 0) {
        require(eps > 0.0 && eps < 1.0 / 3.0,
                "eps must lie in (0, 1/3) to use the default parameter formulas");
        double kv = std::pow(static_cast<double>(n_ug), 2.0 * (1.0 + eps) / (1.0 - 3.0 * eps));
        if (kv > 1e15) {
            std::ostringstream msg;
            msg << "computed alphabet size k=" << kv << " is unbuildable; pass explicit k and d";
            throw Error(msg.str());
        }
        kk = std::max(std::llround(kv), 2LL);
    }
    require(kk >= 2, "alphabet needs at least two labels");
    if (dd <= 0) dd = variant == Variant::Sum ? 1LL * n_ug * n_ug : kk;
    // Demands cover all ordered vertex pairs, so the buildable sizes are
    // modest; anything larger reports the computed parameters instead.
    const double est = variant == Variant::Sum
                           ? static_cast<double>(n_ug) * dd + static_cast<double>(n_ug) * kk + 1
                           : static_cast<double>(n_ug) * dd +
                                 static_cast<double>(n_ug) * kk * dd * dd +
                                 static_cast<double>(dd) * dd;
    const double cap = variant == Variant::Sum ? 1000 : 240;
    if (est > cap) {
        std::ostringstream msg;
        msg << "gap instance with k=" << kk << ", d=" << dd << " needs about " << est
            << " vertices (limit " << cap << "); pass smaller explicit k and d";
        throw Error(msg.str());
    }
    const long long total = variant == Variant::Sum
                                ? n_ug * dd + n_ug * kk + 1
                                : n_ug * dd + n_ug * kk * dd * dd + dd * dd;

    UgGapCc out;
    out.variant = variant;
    out.d = static_cast<int>(dd);
    out.ug = sample_unique_games(n_ug, static_cast<int>(kk), variant == Variant::Degree, seed);
    const int n = n_ug, K = static_cast<int>(kk), D = static_cast<int>(dd);
    const int nn = static_cast<int>(total);
    out.names.assign(nn, "");

    if (variant == Variant::Sum) {
        out.outer_id.resize(n * D);
        out.label_id.resize(n * K);
        for (int x = 0; x < n; ++x) {
            for (int i = 0; i < D; ++i) {
                out.outer_id[x * D + i] = x * D + i;
                out.names[x * D + i] = "o" + num(x + 1) + "_" + num(i + 1);
            }
            for (int a = 0; a < K; ++a) {
                out.label_id[x * K + a] = n * D + x * K + a;
                out.names[n * D + x * K + a] = "l" + num(x + 1) + "_" + num(a + 1);
            }
        }
        const int z = nn - 1;
        out.z_id = {z};
        out.names[z] = "z";

        std::vector<Edge> base;
        for (int x = 0; x < n; ++x)
            for (int i = 0; i < D; ++i)
                for (int a = 0; a < K; ++a)
                    base.push_back(make_edge(out.outer_id[x * D + i], out.label_id[x * K + a]));
        for (size_t e = 0; e < out.ug.pairs.size(); ++e) {
            auto [x, y] = out.ug.pairs[e];
            for (int a = 0; a < K; ++a)
                base.push_back(
                    make_edge(out.label_id[x * K + a], out.label_id[y * K + out.ug.pi[e][a]]));
        }
        for (int w = 0; w < z; ++w) base.push_back(make_edge(w, z));
        std::sort(base.begin(), base.end());

        std::vector<Arc> demands;
        std::vector<std::vector<int>> safe;
        auto demand_slot = [nn](Vertex p, Vertex q) { return p * (nn - 1) + (q > p ? q - 1 : q); };
        for (int p = 0; p < nn; ++p)
            for (int q = 0; q < nn; ++q)
                if (p != q) {
                    demands.push_back({p, q});
                    safe.push_back(through_hubs(p, q, out.z_id));
                }
        for (auto [x, y] : out.ug.pairs) {
            std::vector<int> hubs;
            for (int a = 0; a < K; ++a) {
                hubs.push_back(out.label_id[x * K + a]);
                hubs.push_back(out.label_id[y * K + a]);
            }
            for (int i = 0; i < D; ++i) {
                Vertex px = out.outer_id[x * D + i], py = out.outer_id[y * D + i];
                safe[demand_slot(px, py)] = through_hubs(px, py, hubs);
                safe[demand_slot(py, px)] = through_hubs(py, px, hubs);
            }
        }
        out.sys = SafeSetSystem::make(nn, std::move(base), std::move(demands), std::move(safe));
        // Fractional witness: z edges at 1, outer-label and label-label
        // edges at 1/k; every demand routes 1/k of its flow through each of
        // the k matched label paths.
        out.lp_upper_bound = 2LL * D * n + 1LL * K * n + 1LL * n * (n - 1) / 2;
        return out;
    }

    // Degree variant: complete bipartite constraints and d^2 inner copies,
    // wired like the matching-label degree construction.
    const int DD = D * D;
    out.outer_id.resize(n * D);
    out.label_id.resize(static_cast<size_t>(n) * K * DD);
    out.z_id.resize(DD);
    const int left = (n + 1) / 2;
    for (int x = 0; x < n; ++x)
        for (int i = 0; i < D; ++i) {
            out.outer_id[x * D + i] = x * D + i;
            out.names[x * D + i] = "o" + num(x + 1) + "_" + num(i + 1);
        }
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < K; ++a)
            for (int c = 0; c < DD; ++c) {
                int id = n * D + (x * K + a) * DD + c;
                out.label_id[(x * K + a) * DD + c] = id;
                out.names[id] = "l" + num(x + 1) + "_" + num(a + 1) + "_" + num(c / D + 1) + "_" +
                                num(c % D + 1);
            }
    for (int c = 0; c < DD; ++c) {
        out.z_id[c] = n * D + n * K * DD + c;
        out.names[out.z_id[c]] = "z" + num(c / D + 1) + "_" + num(c % D + 1);
    }

    std::set<Edge> base;
    std::vector<std::vector<int>> copies(nn);
    for (int x = 0; x < n; ++x)
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) {
                int c = x < left ? i * D + j : j * D + i;
                copies[out.outer_id[x * D + i]].push_back(c);
                base.insert(make_edge(out.outer_id[x * D + i], out.z_id[c]));
                for (int a = 0; a < K; ++a)
                    base.insert(make_edge(out.outer_id[x * D + i], out.label_id[(x * K + a) * DD + c]));
            }
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < K; ++a)
            for (int c = 0; c < DD; ++c) {
                copies[out.label_id[(x * K + a) * DD + c]].push_back(c);
                base.insert(make_edge(out.label_id[(x * K + a) * DD + c], out.z_id[c]));
            }
    for (int c = 0; c < DD; ++c) copies[out.z_id[c]].push_back(c);
    for (size_t e = 0; e < out.ug.pairs.size(); ++e) {
        auto [x, y] = out.ug.pairs[e];
        for (int a = 0; a < K; ++a)
            for (int c = 0; c < DD; ++c)
                base.insert(make_edge(out.label_id[(x * K + a) * DD + c],
                                      out.label_id[(y * K + out.ug.pi[e][a]) * DD + c]));
    }
    for (auto& v : copies) v = sorted_unique(std::move(v));

    std::vector<Arc> demands;
    std::vector<std::vector<int>> safe;
    auto demand_slot = [nn](Vertex p, Vertex q) { return p * (nn - 1) + (q > p ? q - 1 : q); };
    for (int p = 0; p < nn; ++p)
        for (int q = 0; q < nn; ++q) {
            if (p == q) continue;
            demands.push_back({p, q});
            std::vector<int> common;
            std::set_intersection(copies[p].begin(), copies[p].end(), copies[q].begin(),
                                  copies[q].end(), std::back_inserter(common));
            if (common.empty()) {
                safe.push_back(everything(nn));
            } else {
                std::vector<int> hubs;
                for (int c : common) hubs.push_back(out.z_id[c]);
                safe.push_back(through_hubs(p, q, hubs));
            }
        }
    for (auto [x, y] : out.ug.pairs)
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) {
                Vertex px = out.outer_id[x * D + i], py = out.outer_id[y * D + j];
                std::vector<int> hubs;
                for (int a = 0; a < K; ++a) {
                    hubs.push_back(out.label_id[(x * K + a) * DD + i * D + j]);
                    hubs.push_back(out.label_id[(y * K + a) * DD + i * D + j]);
                }
                safe[demand_slot(px, py)] = through_hubs(px, py, hubs);
                safe[demand_slot(py, px)] = through_hubs(py, px, hubs);
            }
    out.sys = SafeSetSystem::make(nn, std::vector<Edge>(base.begin(), base.end()),
                                  std::move(demands), std::move(safe));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void split_recursive(std::vector<int> members, int branching, int depth, Rng& rng,
                     std::vector<std::vector<int>>& sets) {
    const int sz = static_cast<int>(members.size());
    if (sz < 2) return;
    if (depth > 0 && rng.uniform01() < 0.25) return;
    int parts = rng.uniform_int(2, std::min(branching, sz));
    rng.shuffle(members);
    // parts-1 distinct cut positions in 1..sz-1
    std::vector<int> cuts(sz - 1);
    for (int i = 0; i < sz - 1; ++i) cuts[i] = i + 1;
    rng.shuffle(cuts);
    cuts.resize(parts - 1);
    cuts.push_back(0);
    cuts.push_back(sz);
    std::sort(cuts.begin(), cuts.end());
    for (size_t p = 0; p + 1 < cuts.size(); ++p) {
        std::vector<int> part(members.begin() + cuts[p], members.begin() + cuts[p + 1]);
        if (part.size() < 2) continue;
        std::sort(part.begin(), part.end());
        sets.push_back(part);
        split_recursive(std::move(part), branching, depth + 1, rng, sets);
    }
}

}  // namespace

LaminarCc gen_laminar_hierarchical(int n, uint64_t seed, int branching) {
    require(n >= 2, "laminar instance needs at least two vertices");
    LaminarCc out;
    out.family.n = n;
    std::vector<std::vector<int>>& sets = out.family.sets;
    sets.push_back(everything(n));
    if (branching >= 2) {
        Rng rng = substream(seed, 0x6c616d00ULL);
        split_recursive(sets.front(), branching, 0, rng, sets);
    }
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });

    // Every family set gets its own random spanning tree plus a few extras,
    // so each safe set induces a connected subgraph of the base graph.
    std::set<Edge> es;
    Rng rng = substream(seed, 0x6c616d01ULL);
    for (const auto& s : sets) {
        std::vector<int> order = s;
        rng.shuffle(order);
        for (size_t i = 1; i < order.size(); ++i)
            es.insert(make_edge(order[i], order[rng.uniform_int(0, static_cast<int>(i) - 1)]));
        for (size_t t = 0; t < s.size() / 2; ++t) {
            int a = s[rng.uniform_int(0, static_cast<int>(s.size()) - 1)];
            int b = s[rng.uniform_int(0, static_cast<int>(s.size()) - 1)];
            if (a != b) es.insert(make_edge(a, b));
        }
    }

    std::vector<Bitset> masks;
    masks.reserve(sets.size());
    for (const auto& s : sets) masks.push_back(Bitset::of(n, s));
    std::vector<Arc> demands;
    std::vector<std::vector<int>> safe;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            demands.push_back({u, v});
            for (size_t i = 0; i < sets.size(); ++i)
                if (masks[i].test(u) && masks[i].test(v)) {
                    safe.push_back(sets[i]);
                    break;
                }
        }
    out.sys = SafeSetSystem::make(n, std::vector<Edge>(es.begin(), es.end()), std::move(demands),
                                  std::move(safe));
    require(check_symmetric_hierarchical(out.sys).empty(),
            "internal error: laminar construction must be symmetric hierarchical");
    return out;
}

StrictMetric gen_random_metric(int n, uint64_t seed) {
    require(n >= 1, "metric needs at least one point");
    Rng rng = substream(seed, 0x6d657400ULL);
    std::vector<Rat> dist(static_cast<size_t>(n) * n, Rat(0));
    // All values sit in [1, 2], so the triangle inequality holds outright.
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            Rat val = make_rat(1000 + rng.uniform_int(0, 1000), 1000);
            dist[u * n + v] = val;
            dist[v * n + u] = val;
        }
    return make_strict_metric(n, std::move(dist));
}

Topology gen_random_topology(int n, int m, uint64_t seed) {
    require(n >= 2, "topology needs at least two nodes");
    const long long cap = 1LL * n * (n - 1) / 2;
    require(m >= n - 1 && m <= cap, "edge count must fit a connected simple graph");
    Rng rng = substream(seed, 0x746f7000ULL);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    std::set<Edge> es;
    for (int i = 1; i < n; ++i) es.insert(make_edge(order[i], order[rng.uniform_int(0, i - 1)]));
    while (static_cast<long long>(es.size()) < m) {
        int u = rng.uniform_int(0, n - 1), v = rng.uniform_int(0, n - 1);
        if (u != v) es.insert(make_edge(u, v));
    }
    Topology t;
    t.n = n;
    t.names.assign(n, "");
    for (auto [u, v] : es)
        t.edges.push_back({u, v, make_rat(1000 + rng.uniform_int(0, 1000), 1000)});
    check_topology(t);
    return t;
}

Topology gen_pop_topology(int n, int m, uint64_t seed) {
    require(n >= 2, "topology needs at least two nodes");
    const long long cap = 1LL * n * (n - 1) / 2;
    require(m >= n - 1 && m <= cap, "edge count must fit a connected simple graph");
    Rng rng = substream(seed, 0x706f7000ULL);
    std::vector<std::pair<int, int>> pts;
    std::set<std::pair<int, int>> used;
    while (static_cast<int>(pts.size()) < n) {
        std::pair<int, int> p{rng.uniform_int(0, 4095), rng.uniform_int(0, 4095)};
        if (used.insert(p).second) pts.push_back(p);
    }
    auto l1 = [&pts](int a, int b) {
        return std::abs(pts[a].first - pts[b].first) + std::abs(pts[a].second - pts[b].second);
    };
    std::set<Edge> es;
    for (int i = 1; i < n; ++i) {
        int best = 0;
        for (int j = 1; j < i; ++j)
            if (l1(i, j) < l1(i, best)) best = j;
        es.insert(make_edge(i, best));
    }
    std::vector<std::pair<long, Edge>> cand;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) cand.push_back({l1(u, v), {u, v}});
    std::sort(cand.begin(), cand.end());
    for (const auto& [w, e] : cand) {
        if (static_cast<long long>(es.size()) >= m) break;
        es.insert(e);
    }
    Topology t;
    t.n = n;
    t.names.resize(n);
    for (int i = 0; i < n; ++i) t.names[i] = "p" + num(i + 1);
    for (auto [u, v] : es) t.edges.push_back({u, v, Rat(l1(u, v))});
    check_topology(t);
    return t;
}

}  // namespace ccnet
