#pragma once

#include "ccnet/common.hpp"
#include "ccnet/instance.hpp"

namespace ccnet {

// Caps for the brute-force search. Exceeding any of them raises BudgetError
// ("oracle out of range ..."), never a wrong answer.
struct OracleBudget {
    int max_useful_edges = 24;
    int max_subset_size = 12;
    long max_millis = 60000;
};

// Exact optimum by subset enumeration, for ground truth on tiny instances.
//
// Only useful edges are considered: an edge both of whose endpoints lie in
// some demand's safe set. Edges useless for every demand lie on no safe
// path, so pruning them is lossless. Demands whose safe set is exactly the
// two endpoints force their direct edge into every solution; those are
// fixed up front and the search runs over the rest.
//
// Edge-count variant: iterative deepening over subset size, scanning
// k-subsets in lexicographic edge order, so the answer is the
// lexicographically least among the minimum-size solutions. Degree variant:
// binary search on the max degree, feasibility decided by the same
// enumeration restricted to subsets within the degree cap; the returned
// overlay attains the optimal max degree (and is the lexicographically
// least smallest subset that does).
Overlay oracle_min(const SafeSetSystem& sys, Variant variant, const OracleBudget& budget = {});

}  // namespace ccnet
