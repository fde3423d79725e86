#pragma once

#include <cstdint>
#include <vector>

#include "ccnet/common.hpp"

namespace ccnet {

// Description of one randomized structure draw. Exposed so tests can assert
// the derived probabilities and round counts without running the draw.
struct SamplePlan {
    enum class Kind { Star, Edge };
    Kind kind;
    int n = 0;
    double s = 0;       // target safe set size the guarantee is aimed at
    double p = 0;       // per-vertex (star) or per-pair per-round (edge) probability
    int rounds = 1;     // edge sampling unions this many independent draws
    uint64_t seed = 0;
};

// Each vertex independently becomes a hub with probability min(3 ln n / s, 1);
// a hub contributes a spanning star. Connects every demand whose safe set has
// at least s vertices with high probability.
SamplePlan star_plan(int n, double s, uint64_t seed);
std::vector<Vertex> star_centers(const SamplePlan& plan);
std::vector<Edge> star_sample(int n, double s, uint64_t seed);

// Union of ceil(3 log2 n) independent uniform random graphs, each with edge
// probability min((1 + eps) ln s / s, 1). Makes the subgraph induced by any
// fixed set of at least s vertices connected with high probability.
SamplePlan edge_plan(int n, double s, double eps, uint64_t seed);
std::vector<Edge> edge_sample_round(const SamplePlan& plan, int round);
std::vector<Edge> edge_sample(int n, double s, double eps, uint64_t seed);

std::vector<Edge> run_sample(const SamplePlan& plan);

}  // namespace ccnet
