#include "ccnet/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "ccnet/rng.hpp"

namespace ccnet {

namespace {
constexpr uint64_t kStarTag = 0x73746172;  // "star"
constexpr uint64_t kEdgeTag = 0x65646765;  // "edge"
}  // namespace

SamplePlan star_plan(int n, double s, uint64_t seed) {
    require(n >= 0, "negative vertex count");
    require(s > 0, "star sampling needs s > 0");
    SamplePlan plan;
    plan.kind = SamplePlan::Kind::Star;
    plan.n = n;
    plan.s = s;
    plan.p = n >= 2 ? std::min(3.0 * std::log(static_cast<double>(n)) / s, 1.0) : 0.0;
    plan.rounds = 1;
    plan.seed = seed;
    return plan;
}

std::vector<Vertex> star_centers(const SamplePlan& plan) {
    Rng rng = substream(plan.seed, kStarTag);
    std::vector<Vertex> centers;
    for (Vertex v = 0; v < plan.n; ++v)
        if (rng.bernoulli(plan.p)) centers.push_back(v);
    return centers;
}

std::vector<Edge> star_sample(int n, double s, uint64_t seed) {
    return run_sample(star_plan(n, s, seed));
}

SamplePlan edge_plan(int n, double s, double eps, uint64_t seed) {
    require(n >= 0, "negative vertex count");
    require(s >= 1, "edge sampling needs s >= 1");
    require(eps >= 0, "edge sampling needs eps >= 0");
    SamplePlan plan;
    plan.kind = SamplePlan::Kind::Edge;
    plan.n = n;
    plan.s = s;
    plan.p = std::min((1.0 + eps) * std::log(s) / s, 1.0);
    plan.rounds =
        n >= 2 ? static_cast<int>(std::ceil(3.0 * std::log2(static_cast<double>(n)))) : 0;
    plan.seed = seed;
    return plan;
}

std::vector<Edge> edge_sample_round(const SamplePlan& plan, int round) {
    Rng rng = substream(plan.seed, kEdgeTag, static_cast<uint64_t>(round));
    std::vector<Edge> edges;
    for (Vertex u = 0; u < plan.n; ++u)
        for (Vertex v = u + 1; v < plan.n; ++v)
            if (rng.bernoulli(plan.p)) edges.push_back({u, v});
    return edges;
}

std::vector<Edge> edge_sample(int n, double s, double eps, uint64_t seed) {
    return run_sample(edge_plan(n, s, eps, seed));
}

std::vector<Edge> run_sample(const SamplePlan& plan) {
    std::vector<Edge> edges;
    if (plan.kind == SamplePlan::Kind::Star) {
        for (Vertex c : star_centers(plan))
            for (Vertex v = 0; v < plan.n; ++v)
                if (v != c) edges.push_back(make_edge(c, v));
    } else {
        for (int r = 0; r < plan.rounds; ++r) {
            auto round_edges = edge_sample_round(plan, r);
            edges.insert(edges.end(), round_edges.begin(), round_edges.end());
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

}  // namespace ccnet
