#include <doctest.h>

#include <cmath>

#include "ccnet/sampling.hpp"

using namespace ccnet;

TEST_CASE("star plan derives the documented probability") {
    SamplePlan p = star_plan(100, 30, 7);
    CHECK(p.kind == SamplePlan::Kind::Star);
    CHECK(p.n == 100);
    CHECK(p.p == doctest::Approx(3.0 * std::log(100.0) / 30.0));
    CHECK(p.rounds == 1);

    // 3 ln n / s above 1 is capped.
    CHECK(star_plan(100, 10, 7).p == 1.0);
}

TEST_CASE("star sample output is a union of spanning stars") {
    SamplePlan plan = star_plan(40, 25, 3);
    std::vector<Vertex> centers = star_centers(plan);
    std::vector<Edge> edges = star_sample(40, 25, 3);
    REQUIRE(!centers.empty());
    for (Vertex c : centers) {
        int deg = 0;
        for (const auto& [u, v] : edges)
            if (u == c || v == c) ++deg;
        CHECK(deg == 39);
    }
    // Every edge touches a center.
    for (const auto& [u, v] : edges) {
        bool touches = false;
        for (Vertex c : centers)
            if (u == c || v == c) touches = true;
        CHECK(touches);
    }
}

TEST_CASE("single vertex yields no edges") {
    CHECK(star_sample(1, 1, 5).empty());
}

TEST_CASE("capped probability makes every vertex a center") {
    // s <= 3 ln n forces p = 1, so the output contains a spanning star from
    // every vertex: the complete graph.
    std::vector<Edge> edges = star_sample(12, 2, 9);
    CHECK(edges.size() == 12 * 11 / 2);
}

TEST_CASE("edge plan derives probability and round count") {
    SamplePlan p = edge_plan(64, 8, 0.5, 1);
    CHECK(p.kind == SamplePlan::Kind::Edge);
    CHECK(p.rounds == static_cast<int>(std::ceil(3.0 * std::log2(64.0))));
    CHECK(p.p == doctest::Approx(1.5 * std::log(8.0) / 8.0));

    // (1+eps) ln s / s above 1 is capped: at s = 2 that needs
    // (1+eps) >= 2/ln 2, so eps = 3 crosses it.
    CHECK(edge_plan(16, 2, 3.0, 1).p == 1.0);
}

TEST_CASE("edge sample is the union of its rounds") {
    SamplePlan plan = edge_plan(20, 6, 0.5, 11);
    std::vector<Edge> whole = edge_sample(20, 6, 0.5, 11);
    std::vector<Edge> merged;
    for (int r = 0; r < plan.rounds; ++r) {
        std::vector<Edge> round = edge_sample_round(plan, r);
        merged.insert(merged.end(), round.begin(), round.end());
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    CHECK(whole == merged);
}

TEST_CASE("sampling is deterministic in the seed") {
    CHECK(star_sample(30, 10, 42) == star_sample(30, 10, 42));
    CHECK(edge_sample(30, 10, 0.5, 42) == edge_sample(30, 10, 0.5, 42));
    // At s = 15 the hub probability 3 ln(30)/15 is 0.68, far from the cap,
    // so different seeds draw different hub sets. (At s = 10 it caps at 1
    // and every seed returns the complete graph.)
    CHECK(star_sample(30, 15, 42) != star_sample(30, 15, 43));

    SamplePlan plan = edge_plan(30, 10, 0.5, 42);
    CHECK(edge_sample_round(plan, 2) == edge_sample_round(plan, 2));
    CHECK(edge_sample_round(plan, 2) != edge_sample_round(plan, 3));
}

TEST_CASE("run_sample dispatches on the plan kind") {
    CHECK(run_sample(star_plan(25, 8, 5)) == star_sample(25, 8, 5));
    CHECK(run_sample(edge_plan(25, 8, 0.5, 5)) == edge_sample(25, 8, 0.5, 5));
}

TEST_CASE("per-round edge count concentrates around its binomial mean") {
    // 100 seeded first rounds at n=30, s=8: the average count must land
    // within three standard errors of C(30,2) * p.
    const int n = 30;
    SamplePlan probe = edge_plan(n, 8, 0.5, 0);
    const double pairs = n * (n - 1) / 2.0;
    const double mean = pairs * probe.p;
    const double sigma = std::sqrt(pairs * probe.p * (1.0 - probe.p));
    double total = 0;
    const int trials = 100;
    for (uint64_t seed = 1; seed <= trials; ++seed) {
        SamplePlan plan = edge_plan(n, 8, 0.5, seed);
        total += static_cast<double>(edge_sample_round(plan, 0).size());
    }
    double avg = total / trials;
    CHECK(std::abs(avg - mean) <= 3.0 * sigma / std::sqrt(double(trials)));
}
