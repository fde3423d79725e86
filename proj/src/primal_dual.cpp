#include "ccnet/primal_dual.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "ccnet/sampling.hpp"

namespace ccnet {

namespace {

std::string demand_str(Arc d) {
    return "(" + std::to_string(d.first) + "," + std::to_string(d.second) + ")";
}

// Connected component of `start` in the picked edges restricted to the mask.
Bitset component_of(int n, Vertex start, const Bitset& mask,
                    const std::vector<std::vector<Vertex>>& adj) {
    Bitset comp(n);
    comp.set(start);
    std::vector<Vertex> queue{start};
    for (size_t h = 0; h < queue.size(); ++h)
        for (Vertex w : adj[queue[h]])
            if (mask.test(w) && !comp.test(w)) {
                comp.set(w);
                queue.push_back(w);
            }
    return comp;
}

struct Engine {
    const SafeSetSystem& sys;
    int t;
    std::vector<int> dset;  // demand ids with |S| <= t

    // Per covered demand: base edges with both endpoints in the safe set.
    std::vector<std::vector<int>> safe_edges;
    // Per covered demand: the active moat, if any.
    struct Active {
        bool on = false;
        Bitset cut;
        Rat birth;
        size_t hist = 0;
    };
    std::vector<Active> moat;

    std::vector<int> load;   // active moats crossing each base edge
    std::vector<Rat> paid;   // accumulated growth charged to each base edge
    std::vector<char> in_h;
    std::vector<std::vector<Vertex>> h_adj;

    DualCertificate cert;
    Rat now;

    Engine(const SafeSetSystem& s, int cap) : sys(s), t(cap), h_adj(s.n) {
        cert.t = t;
        for (size_t d = 0; d < sys.demands.size(); ++d)
            if (static_cast<int>(sys.safe[d].size()) <= t) {
                dset.push_back(static_cast<int>(d));
                cert.demands.push_back(sys.demands[d]);
            }
        safe_edges.resize(dset.size());
        for (size_t k = 0; k < dset.size(); ++k) {
            const Bitset& mask = sys.safe_mask(dset[k]);
            for (size_t e = 0; e < sys.base_edges.size(); ++e) {
                auto [u, v] = sys.base_edges[e];
                if (mask.test(u) && mask.test(v)) safe_edges[k].push_back(static_cast<int>(e));
            }
        }
        moat.resize(dset.size());
        load.assign(sys.base_edges.size(), 0);
        paid.assign(sys.base_edges.size(), Rat(0));
    }

    void shift_load(size_t k, const Bitset& cut, int delta) {
        for (int e : safe_edges[k]) {
            auto [u, v] = sys.base_edges[e];
            if (cut.test(u) != cut.test(v)) load[e] += delta;
        }
    }

    void activate(size_t k, Bitset cut) {
        Active& a = moat[k];
        a.on = true;
        a.birth = now;
        a.hist = cert.moats.size();
        cert.moats.push_back({sys.demands[dset[k]], cut.to_vector(), Rat(0), true});
        shift_load(k, cut, +1);
        a.cut = std::move(cut);
    }

    void deactivate(size_t k) {
        Active& a = moat[k];
        a.on = false;
        shift_load(k, a.cut, -1);
        cert.moats[a.hist].value = now - a.birth;
        cert.moats[a.hist].active = false;
    }

    void add_edge(int e) {
        auto [u, v] = sys.base_edges[e];
        in_h[e] = 1;
        h_adj[u].push_back(v);
        h_adj[v].push_back(u);
        cert.tight_edges.push_back({sys.base_edges[e], now});
        for (size_t k = 0; k < dset.size(); ++k) {
            Active& a = moat[k];
            if (!a.on) continue;
            const Bitset& mask = sys.safe_mask(dset[k]);
            if (!mask.test(u) || !mask.test(v)) continue;
            if (a.cut.test(u) == a.cut.test(v)) continue;
            deactivate(k);
            auto [x, y] = sys.demands[dset[k]];
            Bitset merged = component_of(sys.n, x, mask, h_adj);
            if (!merged.test(y)) activate(k, std::move(merged));
        }
    }

    Overlay run() {
        in_h.assign(sys.base_edges.size(), 0);
        for (size_t k = 0; k < dset.size(); ++k) {
            Bitset seed(sys.n);
            seed.set(sys.demands[dset[k]].first);
            activate(k, std::move(seed));
        }

        int active_count = static_cast<int>(dset.size());
        for (;;) {
            // Absorb every fully paid crossed edge before advancing time,
            // in lexicographic edge order.
            for (;;) {
                int tight = -1;
                for (size_t e = 0; e < sys.base_edges.size(); ++e)
                    if (load[e] > 0 && !in_h[e] && paid[e] == 1) {
                        tight = static_cast<int>(e);
                        break;
                    }
                if (tight < 0) break;
                add_edge(tight);
            }

            active_count = 0;
            for (const Active& a : moat) active_count += a.on;
            if (active_count == 0) break;

            bool first = true;
            Rat step;
            for (size_t e = 0; e < sys.base_edges.size(); ++e) {
                if (load[e] == 0) continue;
                Rat room = (Rat(1) - paid[e]) / load[e];
                if (first || room < step) {
                    step = room;
                    first = false;
                }
            }
            require(!first && step > 0, "internal error: stalled moat growth");
            now += step;
            for (size_t e = 0; e < sys.base_edges.size(); ++e)
                if (load[e] > 0) paid[e] += step * load[e];
        }

        cert.dual_objective = 0;
        for (const Moat& mo : cert.moats) cert.dual_objective += mo.value;

        std::vector<Edge> picked;
        for (size_t e = 0; e < sys.base_edges.size(); ++e)
            if (in_h[e]) picked.push_back(sys.base_edges[e]);
        return Overlay::of(std::move(picked), "pd t=" + std::to_string(t));
    }
};

}  // namespace

std::pair<Overlay, DualCertificate> primal_dual_solve(const SafeSetSystem& sys, int t,
                                                      const PdOptions& opt) {
    require(t >= 0, "safe-set cap must be nonnegative");
    SafeSetSystem covered = sys.restrict_demands(
        [&](int d) { return static_cast<int>(sys.safe[d].size()) <= t; });
    ValidationReport val = validate_instance(covered);
    if (!val.feasible)
        throw InfeasibleError("demand " + demand_str(val.failures.front()) +
                              " cannot be connected inside its safe set");

    Engine eng(sys, t);
    Overlay h = eng.run();

    require(Rat(static_cast<long>(h.edges.size())) <=
                Rat(static_cast<long>(t)) * t * eng.cert.dual_objective ||
            h.edges.empty(),
            "internal error: output exceeds the t^2 dual bound");
    if (opt.audit) audit_certificate(sys, eng.cert);
    return {std::move(h), std::move(eng.cert)};
}

Overlay pd_with_sampling(const SafeSetSystem& sys, uint64_t seed, const PdOptions& opt) {
    int n = sys.n;
    int t = n >= 2 ? static_cast<int>(std::ceil(std::cbrt(n * std::log(static_cast<double>(n)))))
                   : 1;
    auto [h, cert] = primal_dual_solve(sys, t, opt);

    std::vector<Edge> picked = h.edges;
    for (const auto& [u, v] : star_sample(n, static_cast<double>(t), seed))
        if (sys.has_edge(u, v)) picked.push_back({u, v});
    return Overlay::of(std::move(picked),
                       "pd-sample t=" + std::to_string(t) + " seed=" + std::to_string(seed));
}

Rat dual_lower_bound(const DualCertificate& cert) {
    Rat total = 0;
    for (const Moat& mo : cert.moats) total += mo.value;
    return total;
}

void audit_certificate(const SafeSetSystem& sys, const DualCertificate& cert) {
    std::vector<Rat> charge(sys.base_edges.size(), Rat(0));
    for (const Moat& mo : cert.moats) {
        require(!mo.active, "certificate still has active moats");
        int d = sys.demand_id(mo.demand.first, mo.demand.second);
        require(d >= 0, "certificate moat for unknown demand " + demand_str(mo.demand));
        require(mo.value >= 0, "negative moat value");
        const Bitset& mask = sys.safe_mask(d);
        Bitset cut(sys.n);
        for (Vertex w : mo.cut) {
            require(mask.test(w), "moat cut leaves the safe set of " + demand_str(mo.demand));
            cut.set(w);
        }
        require(cut.test(mo.demand.first) && !cut.test(mo.demand.second),
                "moat cut does not separate " + demand_str(mo.demand));
        if (mo.value == 0) continue;
        for (size_t e = 0; e < sys.base_edges.size(); ++e) {
            auto [u, v] = sys.base_edges[e];
            if (mask.test(u) && mask.test(v) && cut.test(u) != cut.test(v))
                charge[e] += mo.value;
        }
    }
    for (size_t e = 0; e < sys.base_edges.size(); ++e)
        require(charge[e] <= 1, "dual infeasible: edge " +
                                    std::to_string(sys.base_edges[e].first) + "-" +
                                    std::to_string(sys.base_edges[e].second) + " overpaid");
    for (const auto& [edge, when] : cert.tight_edges) {
        int e = sys.edge_id(edge.first, edge.second);
        require(e >= 0, "tight edge missing from the base graph");
        require(charge[e] == 1, "tight edge " + std::to_string(edge.first) + "-" +
                                    std::to_string(edge.second) + " is not exactly paid for");
        require(when >= 0, "negative tight time");
    }
}

std::string certificate_to_json(const DualCertificate& cert) {
    nlohmann::json j;
    j["t"] = cert.t;
    j["dual_objective"] = rational_str(cert.dual_objective);
    j["demands"] = nlohmann::json::array();
    for (const auto& [u, v] : cert.demands) j["demands"].push_back({u, v});
    j["moats"] = nlohmann::json::array();
    for (const Moat& mo : cert.moats)
        j["moats"].push_back({{"demand", {mo.demand.first, mo.demand.second}},
                              {"cut", mo.cut},
                              {"value", rational_str(mo.value)}});
    j["tight_edges"] = nlohmann::json::array();
    for (const auto& [e, when] : cert.tight_edges)
        j["tight_edges"].push_back({{"edge", {e.first, e.second}}, {"time", rational_str(when)}});
    return j.dump(2);
}

void save_certificate(const DualCertificate& cert, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << certificate_to_json(cert) << '\n';
}

}  // namespace ccnet
