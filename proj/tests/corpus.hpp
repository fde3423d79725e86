#pragma once

// Reference implementations the test suite checks the library against.
// Everything here is written straight from the definitions and shares no
// code with src/, so the same mistake has to be made twice to slip through.

#include <cstdint>
#include <vector>

#include "ccnet/generators.hpp"
#include "ccnet/instance.hpp"
#include "ccnet/metric.hpp"
#include "ccnet/primal_dual.hpp"
#include "ccnet/topology.hpp"

namespace corpus {

// All-pairs distances by plain Bellman-Ford relaxation, row-major n*n.
std::vector<ccnet::Rat> bellman_ford(const ccnet::Topology& t);

// The strict pair order rebuilt with std::sort on (distance, sorted pair,
// ordered pair) keys. rank[u*n+v] holds the pair's position, -1 on the
// diagonal.
std::vector<int32_t> rank_by_sort(int n, const std::vector<ccnet::Rat>& dist);

// D(x,y): vertices strictly farther from x than y is, under the rank order.
std::vector<int> farther_set(int n, const std::vector<int32_t>& rank, int x, int y);

// S(x,y): vertices strictly closer to y than to every member of D(x,y),
// plus y itself; the whole vertex set when D(x,y) is empty.
std::vector<int> safe_set(int n, const std::vector<int32_t>& rank, int x, int y);

// Is there a u-v path over `edges` that stays inside `allowed`? Plain
// recursive DFS.
bool connected_within(int n, const std::vector<ccnet::Edge>& edges,
                      const std::vector<int>& allowed, int u, int v);

// True when every vertex of `members` can reach every other one over the
// edges whose endpoints both lie in `members`.
bool induced_connected(int n, const std::vector<ccnet::Edge>& edges,
                       const std::vector<int>& members);

// Route propagation that visits routers one at a time in `order`, repeating
// sweeps until nothing changes. The library simulator updates everyone from
// a snapshot instead. Both endpoints are stable, but they can differ: a
// router revisited late in a sweep may upgrade past a route its neighbors
// never get to see (route hiding), so the sequential fixpoint depends on
// the visit order. Kept to document that divergence.
std::vector<int> sequential_routes(const ccnet::StrictMetric& m, const ccnet::Overlay& h,
                                   const std::vector<ccnet::Vertex>& egress_set,
                                   const std::vector<int>& order);

// Smallest representative set covering every group pair that carries an
// edge, by exhaustive subset search.
int min_rep_exhaustive(const ccnet::MinRepInstance& mr);

// Minimum total label count satisfying every permutation constraint, by
// recursive search over per-vertex label sets.
int ug_min_labels(const ccnet::UniqueGamesInstance& ug);

// Recomputes every dual constraint of a finished certificate from scratch
// in exact rationals: each base edge's crossing moats sum to at most 1, and
// each recorded tight edge is paid for exactly. Throws on any violation.
void recheck_certificate(const ccnet::SafeSetSystem& sys, const ccnet::DualCertificate& cert);

// Minimum total capacity on K_3 with all six ordered demands and S = V,
// scanned over the grid {0, 1/steps, ..., 1}^3. Feasibility of (a,b,c) uses
// the 3-vertex max-flow form: the flow x can push to y is the direct
// capacity plus the bottleneck of the two-hop route.
double k3_lp_grid_min(int steps);

// Shared tiny instances.
ccnet::SafeSetSystem k3_all_pairs();  // complete base, all S = V
ccnet::SafeSetSystem path3();         // path 0-1-2, demand (0,2) with S = V
// Full derivation pipeline on a random metric.
ccnet::SafeSetSystem random_ibgp(int n, uint64_t seed);

}  // namespace corpus
