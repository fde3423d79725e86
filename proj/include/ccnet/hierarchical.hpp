#pragma once

#include <string>
#include <vector>

#include "ccnet/instance.hpp"

namespace ccnet {

struct PropertyViolation {
    Vertex x = -1, y = -1, z = -1;  // z is -1 for symmetry violations
    std::string detail;
};

// A safe-set system is symmetric when S(x,y) = S(y,x) wherever both
// orientations are present, and hierarchical when z in S(x,y) implies
// S(x,z) and S(z,y) are contained in S(x,y). Pairs without a stored demand
// impose no constraint. Returns every violation found.
std::vector<PropertyViolation> check_symmetric_hierarchical(const SafeSetSystem& sys);

struct PairClassification {
    // Hard pairs (as unordered pairs) in processing order: nondecreasing
    // safe-set size, ties by (min id, max id).
    std::vector<Edge> order;
    std::vector<Edge> easy;
};

// A pair {x,y} is easy when some z in S(x,y) has both S(x,z) and S(y,z)
// strictly contained in S(x,y); connectivity for easy pairs then follows
// from the strictly smaller pairs. Throws if the system is not symmetric
// and hierarchical.
PairClassification classify_pairs(const SafeSetSystem& sys);

// Exact solver for symmetric hierarchical systems: walk the hard pairs in
// classification order and, for each, join the connected components of the
// current edge set restricted to S(x,y), picking base edges inside S(x,y)
// in lexicographic order. The result is optimal for the edge-count
// objective. Errors if some hard pair's safe set is disconnected in the
// base graph.
Overlay hierarchical_greedy(const SafeSetSystem& sys);

}  // namespace ccnet
