#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ccnet/common.hpp"
#include "ccnet/rational.hpp"
#include "ccnet/topology.hpp"

namespace ccnet {

// Exact metric plus a strict total order on ordered vertex pairs.
//
// Distance comparisons throughout the toolkit go through the order, never
// through raw values: equal distances are resolved lexicographically by the
// sorted endpoint pair, then by the ordered pair itself. This makes every
// "closer than" question answerable with no ties, so derived structures are
// bit-reproducible.
struct StrictMetric {
    int n = 0;
    std::vector<Rat> dist;      // row-major n*n, symmetric, zero diagonal
    std::vector<int32_t> rank;  // position of each ordered pair in the strict
                                // order; -1 on the diagonal (below everything)

    const Rat& d(Vertex u, Vertex v) const { return dist[u * n + v]; }
    int32_t r(Vertex u, Vertex v) const { return rank[u * n + v]; }

    // True if d(a.first, a.second) precedes d(b.first, b.second) in the
    // strict order.
    bool closer(const Arc& a, const Arc& b) const {
        return r(a.first, a.second) < r(b.first, b.second);
    }
};

// Exact shortest path distances over the topology (Floyd-Warshall on
// rationals). Disconnected input is an error naming an unreachable pair.
StrictMetric all_pairs_distances(const Topology& t);

// Builds the strict order for an explicit distance matrix. Validates
// symmetry, zero diagonal, positivity off the diagonal, and the triangle
// inequality; any violation is an error.
StrictMetric make_strict_metric(int n, std::vector<Rat> dist);

// Line format: "metric <n>" then "d <u> <v> <value>" for each u < v.
StrictMetric parse_metric(std::istream& in, const std::string& filename = "<metric>");
StrictMetric load_metric(const std::string& path);
void write_metric(const StrictMetric& m, std::ostream& out);
void save_metric(const StrictMetric& m, const std::string& path);

}  // namespace ccnet
