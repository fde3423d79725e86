#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ccnet/bitset.hpp"
#include "ccnet/common.hpp"

namespace ccnet {

// A constrained connectivity instance: base graph, ordered demand pairs, and
// one safe vertex set per demand. A solution is a subset H of the base edges
// such that every demand (u,v) has a u-v path using only vertices of S(u,v).
class SafeSetSystem {
public:
    int n = 0;
    std::vector<Edge> base_edges;         // normalized u < v, sorted
    std::vector<Arc> demands;             // ordered pairs, no duplicates
    std::vector<std::vector<int>> safe;   // sorted id list per demand

    // Validates invariants (ids in range, endpoints inside their safe set,
    // no duplicate demands) and builds the lookup structures below. Pass
    // allow_empty_demands only for internal demand-subset restrictions.
    static SafeSetSystem make(int n, std::vector<Edge> base_edges, std::vector<Arc> demands,
                              std::vector<std::vector<int>> safe,
                              bool allow_empty_demands = false);

    // Base graph on all vertex pairs.
    static std::vector<Edge> complete_edges(int n);
    static std::vector<Arc> all_ordered_pairs(int n);

    bool has_edge(Vertex u, Vertex v) const { return edge_id(u, v) >= 0; }
    int edge_id(Vertex u, Vertex v) const {
        Edge e = make_edge(u, v);
        return edge_index_[e.first * n + e.second] ;
    }
    int demand_id(Vertex u, Vertex v) const { return demand_index_[u * n + v]; }
    const std::vector<int>& safe_of(Vertex u, Vertex v) const;
    const Bitset& safe_mask(int demand) const { return safe_mask_[demand]; }
    const std::vector<int>& base_adj(Vertex v) const { return adj_[v]; }

    // Keeps only demands accepted by the predicate; base graph unchanged.
    template <typename Pred>
    SafeSetSystem restrict_demands(Pred keep) const {
        std::vector<Arc> ds;
        std::vector<std::vector<int>> ss;
        for (size_t i = 0; i < demands.size(); ++i)
            if (keep(static_cast<int>(i))) {
                ds.push_back(demands[i]);
                ss.push_back(safe[i]);
            }
        return make(n, base_edges, std::move(ds), std::move(ss), true);
    }

private:
    std::vector<int> edge_index_;    // n*n -> index into base_edges or -1
    std::vector<int> demand_index_;  // n*n -> index into demands or -1
    std::vector<std::vector<int>> adj_;
    std::vector<Bitset> safe_mask_;
};

// A candidate solution: subset of the base edges, tagged with how it was
// produced (solver name, seed, parameters).
struct Overlay {
    std::vector<Edge> edges;  // normalized u < v, sorted, unique
    std::string provenance;

    static Overlay of(std::vector<Edge> edges, std::string provenance);
    bool contains(Vertex u, Vertex v) const;
};

struct ValidationReport {
    bool feasible = true;
    // Demands whose endpoints cannot be connected inside the safe set even
    // using every base edge.
    std::vector<Arc> failures;
};

// Feasibility check: is any solution possible at all?
ValidationReport validate_instance(const SafeSetSystem& sys);

// JSON object {n, base_edges, demands, safe:{"u,v":[ids]}}.
SafeSetSystem parse_instance_json(const std::string& text, const std::string& filename = "<instance>");
SafeSetSystem load_instance(const std::string& path);
std::string instance_to_json(const SafeSetSystem& sys);
void save_instance(const SafeSetSystem& sys, const std::string& path);

// Overlay text file: optional "# provenance: ..." header, then one "u v"
// line per edge.
Overlay parse_overlay(std::istream& in, const std::string& filename = "<overlay>");
Overlay load_overlay(const std::string& path);
void write_overlay(const Overlay& h, std::ostream& out);
void save_overlay(const Overlay& h, const std::string& path);

}  // namespace ccnet
