#include <doctest.h>

#include <sstream>

#include "ccnet/generators.hpp"
#include "ccnet/metric.hpp"
#include "ccnet/topology.hpp"
#include "corpus.hpp"

using namespace ccnet;

TEST_CASE("all-pairs distances match Bellman-Ford exactly") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        int n = 2 + static_cast<int>(seed % 9);
        int cap = n * (n - 1) / 2;
        int m = std::min(cap, n - 1 + static_cast<int>(seed % 4));
        Topology t = gen_random_topology(n, m, seed);
        StrictMetric got = all_pairs_distances(t);
        std::vector<Rat> want = corpus::bellman_ford(t);
        REQUIRE(got.n == n);
        for (int i = 0; i < n * n; ++i) CHECK(got.dist[i] == want[i]);
    }
}

TEST_CASE("strict order matches an independent sort of the pairs") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        StrictMetric m = gen_random_metric(4 + static_cast<int>(seed % 4), seed);
        std::vector<int32_t> want = corpus::rank_by_sort(m.n, m.dist);
        CHECK(m.rank == want);
    }
}

TEST_CASE("rank order refines the numeric order") {
    StrictMetric m = gen_random_metric(6, 42);
    for (int a = 0; a < m.n; ++a)
        for (int b = 0; b < m.n; ++b)
            for (int c = 0; c < m.n; ++c)
                for (int d = 0; d < m.n; ++d) {
                    if (a == b || c == d) continue;
                    if (m.d(a, b) < m.d(c, d)) CHECK(m.closer({a, b}, {c, d}));
                }
}

TEST_CASE("equal distances break ties by endpoint pair") {
    // d(0,1) = d(1,2) = 1: the sorted pair (0,1) precedes (1,2), and within
    // one unordered pair (0,1) precedes (1,0).
    std::vector<Rat> d = {0, 1, 1, 1, 0, 1, 1, 1, 0};
    StrictMetric m = make_strict_metric(3, d);
    CHECK(m.closer({0, 1}, {1, 2}));
    CHECK(m.closer({0, 1}, {1, 0}));
    CHECK(m.closer({1, 0}, {0, 2}));
    CHECK(m.r(0, 0) == -1);
}

TEST_CASE("metric validation rejects bad matrices") {
    std::vector<Rat> asym = {0, 1, 2, 0};
    CHECK_THROWS_AS(make_strict_metric(2, asym), Error);

    std::vector<Rat> diag = {1, 1, 1, 0};
    CHECK_THROWS_AS(make_strict_metric(2, diag), Error);

    std::vector<Rat> nonpos = {0, 0, 0, 0};
    CHECK_THROWS_AS(make_strict_metric(2, nonpos), Error);

    // d(0,2) = 5 > 1 + 1 breaks the triangle inequality.
    std::vector<Rat> tri = {0, 1, 5, 1, 0, 1, 5, 1, 0};
    CHECK_THROWS_AS(make_strict_metric(3, tri), Error);
}

TEST_CASE("disconnected topology is rejected with the unreachable pair") {
    Topology t;
    t.n = 4;
    t.names.resize(4);
    t.edges = {{0, 1, Rat(1)}, {2, 3, Rat(1)}};
    CHECK_THROWS_WITH_AS(all_pairs_distances(t), doctest::Contains("0"), Error);
}

TEST_CASE("metric file round-trip preserves distances and order") {
    StrictMetric m = gen_random_metric(7, 99);
    std::ostringstream out;
    write_metric(m, out);
    std::istringstream in(out.str());
    StrictMetric back = parse_metric(in);
    CHECK(back.n == m.n);
    CHECK(back.dist == m.dist);
    CHECK(back.rank == m.rank);
}

TEST_CASE("metric parser reports the offending line") {
    std::istringstream in("metric 2\nd 0 5 1\n");
    CHECK_THROWS_AS(parse_metric(in, "bad.metric"), ParseError);
    std::istringstream missing("metric 3\nd 0 1 1\n");
    CHECK_THROWS_AS(parse_metric(missing, "bad.metric"), Error);
}

TEST_CASE("topology file round-trip") {
    Topology t = gen_pop_topology(6, 9, 5);
    std::ostringstream out;
    write_topology(t, out);
    std::istringstream in(out.str());
    Topology back = parse_topology(in);
    CHECK(back.n == t.n);
    CHECK(back.names == t.names);
    REQUIRE(back.edges.size() == t.edges.size());
    for (size_t i = 0; i < t.edges.size(); ++i) {
        CHECK(back.edges[i].u == t.edges[i].u);
        CHECK(back.edges[i].v == t.edges[i].v);
        CHECK(back.edges[i].weight == t.edges[i].weight);
    }
}

TEST_CASE("rational parsing accepts fractions and exact decimals") {
    CHECK(parse_rational("7/5") == Rat(7, 5));
    CHECK(parse_rational("1.4") == Rat(7, 5));
    CHECK(parse_rational("3") == Rat(3));
    CHECK(parse_rational("-2/9") == Rat(-2, 9));
    CHECK(parse_rational("0.25") == Rat(1, 4));
    CHECK(rational_str(Rat(7, 5)) == "7/5");
    CHECK(rational_str(Rat(3)) == "3");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
}
