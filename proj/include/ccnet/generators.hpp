#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccnet/instance.hpp"
#include "ccnet/metric.hpp"
#include "ccnet/topology.hpp"

namespace ccnet {

// ---------------------------------------------------------------------------
// Hitting-set gadget metrics

struct HittingSetInstance {
    int n_elems = 0;
    std::vector<std::vector<int>> sets;  // elements are 1..n_elems, sets nonempty
};

struct GadgetParams {
    Rat big_m = 20;  // base distance scale between x and the rest
    Rat eps = 0;     // tie-break step; nonpositive picks a safe default
    int ell = 1;     // x copies (edge-count variant)
    int alpha = 1;   // whole-gadget copies sharing x (degree variant)
};

// Closed-form prediction: deriving safe sets from the gadget metric must
// give S(x, b) = {x, b} union {a_i : i in the b set}, for every x copy and
// every set vertex b of every gadget copy.
struct PredictedSafeSet {
    Vertex x;
    Vertex b;
    std::vector<Vertex> members;
};

struct GadgetInstance {
    Topology graph;        // exactly the table-specified distances
    StrictMetric metric;   // shortest-path closure of the table
    std::vector<PredictedSafeSet> predicted;
};

// Metric gadget encoding a hitting-set instance: element vertices a_i, set
// vertices b_T, and shaping vertices z, y, u, h around one or more x
// vertices. Any correct overlay must connect each x copy to a hitting set's
// worth of a/b vertices. The edge-count variant duplicates x `ell` times
// (with eps tie-breaks); the degree variant keeps one x and duplicates the
// rest of the gadget `alpha` times, with cross-copy routes through x.
// Rejects parameter choices that would let a multi-hop path undercut a
// table distance.
GadgetInstance gen_hitting_gadget(const HittingSetInstance& hs, const GadgetParams& params,
                                  Variant variant);

// ---------------------------------------------------------------------------
// Matching-label reduction (two-sided grouped bipartite cover -> CC)

struct MinRepInstance {
    int n_u = 0, n_v = 0;                     // left ids 0..n_u-1, right ids 0..n_v-1
    std::vector<std::pair<int, int>> edges;   // bipartite (left, right)
    std::vector<std::vector<int>> u_groups;   // partition of the left side
    std::vector<std::vector<int>> v_groups;   // partition of the right side, same count
    int d = 1;                                // outer duplication
};

struct MinRepCc {
    SafeSetSystem sys;
    std::vector<std::string> names;
    Variant variant = Variant::Sum;
    int m = 0;            // groups per side
    int d = 1;
    int n_mr = 0;         // n_u + n_v
    int super_edges = 0;  // group pairs joined by at least one edge

    // Vertex id lookups. Sum variant: x_id[j*d+i], y_id[j*d+i] for group j
    // and copy i; u_id[u], v_id[v]; z_id[0]. Degree variant: u_id and v_id
    // are indexed [(orig*d + i)*d + k] for inner copy (i,k), z_id[i*d+k].
    std::vector<int> x_id, y_id, u_id, v_id, z_id;
};

// Builds the connectivity instance whose optimum tracks the smallest
// representative set: super-edge demands may only travel through the group
// members, everything else is forced through z. With a representative set
// of size K the optimum is K*d + super_edges + 2*m*d + n_mr (edge-count
// variant). The degree variant clones the inner layer d^2 times so the
// representative edges dominate one vertex's degree.
MinRepCc gen_minrep_cc(const MinRepInstance& mr, Variant variant);

// The explicit feasible overlay for a representative set (edge-count
// variant): the z star, one edge per (x or y copy, representative), and one
// group-member edge per super-edge. Throws if the representatives do not
// cover some super-edge.
Overlay minrep_forward_solution(const MinRepCc& cc, const MinRepInstance& mr,
                                const std::vector<int>& reps_u,
                                const std::vector<int>& reps_v);

// ---------------------------------------------------------------------------
// Permutation-constraint gap instances

struct UniqueGamesInstance {
    int n_ug = 0;
    int k = 0;            // alphabet size
    bool bipartite = false;
    std::vector<Edge> pairs;             // constrained vertex pairs (u < v)
    std::vector<std::vector<int>> pi;    // per pair: label a at u matches pi[e][a] at v
};

// Uniform random permutation per pair; complete graph, or complete
// bipartite between low and high ids when bipartite is set.
UniqueGamesInstance sample_unique_games(int n_ug, int k, bool bipartite, uint64_t seed);

// Exhaustive minimum label count (sum over vertices of assigned labels)
// such that every constrained pair has some matched label pair. Exponential
// in n_ug*k; guarded for use on tiny instances only.
int min_labels_exhaustive(const UniqueGamesInstance& ug);

struct UgGapCc {
    SafeSetSystem sys;
    std::vector<std::string> names;
    UniqueGamesInstance ug;
    Variant variant = Variant::Sum;
    int d = 0;
    // Certified bound on the fractional optimum (edge-count variant):
    // 2*d*n_ug + k*n_ug + C(n_ug,2), from spreading each demand's flow
    // uniformly over the label edges. -1 for the degree variant, where the
    // desk-scale value is dominated by the forced z stars instead.
    long lp_upper_bound = -1;

    // Sum variant: outer_id[x*d+i], label_id[x*k+a], z_id[0]. Degree
    // variant: label_id[((x*k+a)*d+i)*d+j] for inner copy (i,j), z_id[i*d+j].
    std::vector<int> outer_id, label_id, z_id;
};

// Reduction from the label-matching instance: copies x_i must reach y_i
// through one matched label edge, every other pair is forced through z.
// Fractional solutions can split a demand across all k label edges, so the
// fractional optimum stays near the graph size while the integral optimum
// pays d times the minimum label count. Passing d <= 0 or k <= 0 picks the
// formula defaults k = n^(2(1+eps)/(1-3eps)) and d = n^2 (edge-count) or
// d = k (degree); an error reports computed values too large to build.
UgGapCc gen_unique_games_gap(int n_ug, double eps, int d, int k, uint64_t seed, Variant variant);

// ---------------------------------------------------------------------------
// Random families

struct LaminarFamily {
    int n = 0;
    std::vector<std::vector<int>> sets;  // sorted members, sorted by size, includes [n]
};

struct LaminarCc {
    SafeSetSystem sys;
    LaminarFamily family;
};

// Random recursive partition of [n]; S(x,y) is the smallest family set
// containing both, so the system is symmetric and hierarchical by
// construction. Base graph: a random spanning tree inside every family set
// plus a few random in-set extras. branching <= 1 keeps the family at the
// single root set (all S = V).
LaminarCc gen_laminar_hierarchical(int n, uint64_t seed, int branching = 3);

// Distances 1 + j/1000 with j uniform in [0,1000]: any such table satisfies
// the triangle inequality outright.
StrictMetric gen_random_metric(int n, uint64_t seed);

// Connected graph: random spanning tree plus random extra edges, weights
// 1 + j/1000.
Topology gen_random_topology(int n, int m, uint64_t seed);

// Point-of-presence style topology: random grid points, each joined to its
// nearest placed neighbor, then the globally shortest remaining pairs until
// m edges; weights are exact L1 distances.
Topology gen_pop_topology(int n, int m, uint64_t seed);

}  // namespace ccnet
