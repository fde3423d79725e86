#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ccnet/common.hpp"
#include "ccnet/rational.hpp"

namespace ccnet {

struct WeightedEdge {
    Vertex u, v;
    Rat weight;
};

// Undirected graph with exact positive edge weights. Vertex ids are
// consecutive 0..n-1; names are optional labels kept for reporting.
struct Topology {
    int n = 0;
    std::vector<std::string> names;     // size n, may hold empty strings
    std::vector<WeightedEdge> edges;    // u < v, no duplicates, weight > 0

    bool has_name(Vertex v) const { return !names[v].empty(); }
};

// Text format, one directive per line, '#' starts a comment:
//   node <id> [name]
//   edge <u> <v> <weight>
// Ids must be 0..n-1 with every id declared once. Weights are positive
// rationals ("3", "7/5", or decimal "1.4").
Topology parse_topology(std::istream& in, const std::string& filename = "<topology>");
Topology load_topology(const std::string& path);
void write_topology(const Topology& t, std::ostream& out);
void save_topology(const Topology& t, const std::string& path);

// Checks id range, self loops, duplicate edges, weight positivity.
// parse_topology runs this; programmatically built topologies can call it
// directly. Throws Error on the first violation.
void check_topology(const Topology& t);

}  // namespace ccnet
