#include <doctest.h>

#include "ccnet/generators.hpp"
#include "ccnet/hierarchical.hpp"
#include "ccnet/ibgp.hpp"
#include "ccnet/lp.hpp"
#include "corpus.hpp"

using namespace ccnet;

TEST_CASE("gadget metrics keep every table distance after closure") {
    HittingSetInstance hs;
    hs.n_elems = 3;
    hs.sets = {{1, 3}, {2}, {1, 2, 3}};
    for (Variant variant : {Variant::Sum, Variant::Degree}) {
        GadgetParams params;
        params.ell = variant == Variant::Sum ? 2 : 1;
        params.alpha = variant == Variant::Degree ? 2 : 1;
        GadgetInstance g = gen_hitting_gadget(hs, params, variant);
        CHECK(g.metric.n == g.graph.n);
        for (const WeightedEdge& e : g.graph.edges)
            CHECK(g.metric.d(e.u, e.v) == e.weight);
        // One prediction per x copy, gadget copy, and set.
        CHECK(g.predicted.size() == static_cast<size_t>(params.ell) * params.alpha *
                                        hs.sets.size());
    }
}

TEST_CASE("predicted safe sets match an independent derivation") {
    HittingSetInstance hs;
    hs.n_elems = 2;
    hs.sets = {{1}, {1, 2}};
    GadgetInstance g = gen_hitting_gadget(hs, {}, Variant::Sum);
    std::vector<int32_t> rank = corpus::rank_by_sort(g.metric.n, g.metric.dist);
    for (const PredictedSafeSet& p : g.predicted) {
        CHECK(corpus::safe_set(g.metric.n, rank, p.x, p.b) == p.members);
        // The members are the two endpoints plus element vertices only.
        CHECK(p.members.size() >= 3);
        CHECK(std::find(p.members.begin(), p.members.end(), p.x) != p.members.end());
        CHECK(std::find(p.members.begin(), p.members.end(), p.b) != p.members.end());
    }
}

TEST_CASE("gadget parameter validation") {
    HittingSetInstance hs;
    hs.n_elems = 2;
    hs.sets = {{1, 2}};

    GadgetParams small_m;
    small_m.big_m = 10;
    CHECK_THROWS_AS(gen_hitting_gadget(hs, small_m, Variant::Sum), Error);

    GadgetParams big_eps;
    big_eps.eps = Rat(1, 2);
    CHECK_THROWS_AS(gen_hitting_gadget(hs, big_eps, Variant::Sum), Error);

    HittingSetInstance empty_set;
    empty_set.n_elems = 2;
    empty_set.sets = {{}};
    CHECK_THROWS_AS(gen_hitting_gadget(empty_set, {}, Variant::Sum), Error);

    HittingSetInstance out_of_range;
    out_of_range.n_elems = 2;
    out_of_range.sets = {{3}};
    CHECK_THROWS_AS(gen_hitting_gadget(out_of_range, {}, Variant::Sum), Error);
}

TEST_CASE("matching-label reduction builds the documented shape") {
    MinRepInstance mr;
    mr.n_u = 2;
    mr.n_v = 2;
    mr.edges = {{0, 0}, {1, 1}};
    mr.u_groups = {{0, 1}};
    mr.v_groups = {{0, 1}};
    mr.d = 2;

    MinRepCc cc = gen_minrep_cc(mr, Variant::Sum);
    int nn = 2 * 1 * 2 + 4 + 1;  // x/y copies, originals, z
    CHECK(cc.sys.n == nn);
    CHECK(cc.m == 1);
    CHECK(cc.n_mr == 4);
    CHECK(cc.super_edges == 1);
    CHECK(cc.sys.demands == SafeSetSystem::all_ordered_pairs(nn));
    CHECK(cc.names.size() == static_cast<size_t>(nn));

    // Every pair through z by default: its safe set is {p, q, z}.
    int z = cc.z_id[0];
    int d01 = cc.sys.demand_id(cc.u_id[0], cc.v_id[1]);
    REQUIRE(d01 >= 0);
    CHECK(cc.sys.safe[d01] == std::vector<int>{cc.u_id[0], cc.v_id[1], z});

    // Super-edge demands open up the two groups instead.
    int ds = cc.sys.demand_id(cc.x_id[0], cc.y_id[0]);
    REQUIRE(ds >= 0);
    std::vector<int> super = {cc.x_id[0], cc.y_id[0], cc.u_id[0], cc.u_id[1],
                              cc.v_id[0], cc.v_id[1]};
    std::sort(super.begin(), super.end());
    CHECK(cc.sys.safe[ds] == super);
}

TEST_CASE("forward solutions verify and missing coverage throws") {
    MinRepInstance mr;
    mr.n_u = 2;
    mr.n_v = 2;
    mr.edges = {{0, 0}};
    mr.u_groups = {{0, 1}};
    mr.v_groups = {{0, 1}};

    MinRepCc cc = gen_minrep_cc(mr, Variant::Sum);
    Overlay h = minrep_forward_solution(cc, mr, {0}, {0});
    CHECK(verify_safe_paths(cc.sys, h).ok);
    // z star + one rep edge per side + one covered matching edge.
    CHECK(h.edges.size() == static_cast<size_t>(cc.sys.n - 1) + 2 + 1);

    // Representatives {1} x {1} cover no edge of the only group pair.
    CHECK_THROWS_WITH_AS(minrep_forward_solution(cc, mr, {1}, {1}),
                         doctest::Contains("cover"), Error);
}

TEST_CASE("matching-label input validation") {
    MinRepInstance bad;
    bad.n_u = 2;
    bad.n_v = 1;
    bad.edges = {{0, 0}};
    bad.u_groups = {{0}};  // vertex 1 in no group
    bad.v_groups = {{0}};
    CHECK_THROWS_AS(gen_minrep_cc(bad, Variant::Sum), Error);

    MinRepInstance dup;
    dup.n_u = 1;
    dup.n_v = 1;
    dup.edges = {{0, 0}, {0, 0}};
    dup.u_groups = {{0}};
    dup.v_groups = {{0}};
    CHECK_THROWS_AS(gen_minrep_cc(dup, Variant::Sum), Error);
}

TEST_CASE("degree variant clones the middle layer") {
    MinRepInstance mr;
    mr.n_u = 1;
    mr.n_v = 1;
    mr.edges = {{0, 0}};
    mr.u_groups = {{0}};
    mr.v_groups = {{0}};
    mr.d = 2;
    MinRepCc cc = gen_minrep_cc(mr, Variant::Degree);
    // u and v get d^2 copies each, z gets d^2 copies.
    CHECK(cc.u_id.size() == 4);
    CHECK(cc.v_id.size() == 4);
    CHECK(cc.z_id.size() == 4);
    ValidationReport rep = validate_instance(cc.sys);
    CHECK(rep.feasible);
}

TEST_CASE("random permutation constraints are bijections") {
    UniqueGamesInstance ug = sample_unique_games(4, 3, false, 9);
    CHECK(ug.pairs.size() == 6);
    REQUIRE(ug.pi.size() == ug.pairs.size());
    for (const auto& perm : ug.pi) {
        std::vector<int> seen(3, 0);
        for (int img : perm) {
            REQUIRE(img >= 0);
            REQUIRE(img < 3);
            ++seen[img];
        }
        for (int c : seen) CHECK(c == 1);
    }

    UniqueGamesInstance bi = sample_unique_games(5, 2, true, 9);
    // Bipartite: low ids against high ids only.
    CHECK(bi.pairs.size() == 3u * 2u);
    for (const auto& [u, v] : bi.pairs) {
        CHECK(u < 3);
        CHECK(v >= 3);
    }

    CHECK(sample_unique_games(4, 3, false, 9).pi == ug.pi);
}

TEST_CASE("exhaustive label minimum matches an independent search") {
    for (uint64_t seed = 1; seed <= 8; ++seed) {
        UniqueGamesInstance ug = sample_unique_games(3 + static_cast<int>(seed % 2), 2,
                                                     seed % 3 == 0, seed);
        CHECK(min_labels_exhaustive(ug) == corpus::ug_min_labels(ug));
    }
}

TEST_CASE("gap instances expose a fractional witness bound") {
    UgGapCc gap = gen_unique_games_gap(2, 0.1, 1, 2, 3, Variant::Sum);
    CHECK(gap.sys.n == 2 * 1 + 2 * 2 + 1);
    CHECK(gap.lp_upper_bound == 2 * 1 * 2 + 2 * 2 + 1);
    CHECK(gap.d == 1);
    CHECK(gap.ug.k == 2);

    LpProgram lp = build_flow_lp(gap.sys, Variant::Sum);
    FractionalSolution sol = solve_lp(lp);
    CHECK(sol.objective <= static_cast<double>(gap.lp_upper_bound) + 1e-6);

    UgGapCc deg = gen_unique_games_gap(2, 0.1, 2, 2, 3, Variant::Degree);
    CHECK(deg.lp_upper_bound == -1);
    CHECK(validate_instance(deg.sys).feasible);
}

TEST_CASE("gap parameter policing") {
    // eps only matters on the formula path (no explicit k), where it must
    // keep the exponent 2(1+eps)/(1-3eps) positive and finite.
    CHECK_THROWS_WITH_AS(gen_unique_games_gap(4, 0.4, 0, 0, 1, Variant::Sum),
                         doctest::Contains("(0, 1/3)"), Error);
    CHECK_NOTHROW(gen_unique_games_gap(4, 0.4, 2, 2, 1, Variant::Sum));
    // Default k at eps = 0.32 explodes past any buildable size and the
    // error reports the computed value.
    CHECK_THROWS_WITH_AS(gen_unique_games_gap(40, 0.32, -1, -1, 1, Variant::Sum),
                         doctest::Contains("k="), Error);
    // Explicit sizes that pass the formula but overflow the vertex cap.
    CHECK_THROWS_WITH_AS(gen_unique_games_gap(12, 0.1, 50, 40, 1, Variant::Sum),
                         doctest::Contains("needs about"), Error);
}

TEST_CASE("laminar families are laminar, rooted, and hierarchical") {
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        LaminarCc lam = gen_laminar_hierarchical(7, seed);
        const auto& sets = lam.family.sets;
        REQUIRE(!sets.empty());
        CHECK(sets.back().size() == 7);  // root is the whole ground set
        for (size_t i = 0; i < sets.size(); ++i)
            for (size_t j = i + 1; j < sets.size(); ++j) {
                // Any two sets nest or are disjoint.
                std::vector<int> inter;
                std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(),
                                      sets[j].end(), std::back_inserter(inter));
                bool disjoint = inter.empty();
                bool nested = inter == sets[i] || inter == sets[j];
                CHECK((disjoint || nested));
            }
        CHECK(check_symmetric_hierarchical(lam.sys).empty());
        CHECK(validate_instance(lam.sys).feasible);

        // Every demand's safe set is the smallest family set containing it.
        for (size_t d = 0; d < lam.sys.demands.size(); ++d) {
            auto [u, v] = lam.sys.demands[d];
            const std::vector<int>* smallest = nullptr;
            for (const auto& s : sets)
                if (std::binary_search(s.begin(), s.end(), u) &&
                    std::binary_search(s.begin(), s.end(), v)) {
                    if (!smallest || s.size() < smallest->size()) smallest = &s;
                }
            REQUIRE(smallest != nullptr);
            CHECK(lam.sys.safe[d] == *smallest);
        }
    }
}

TEST_CASE("branching 1 keeps a single root set") {
    LaminarCc lam = gen_laminar_hierarchical(5, 3, 1);
    CHECK(lam.family.sets.size() == 1);
    for (const auto& s : lam.sys.safe) CHECK(s.size() == 5);
}

TEST_CASE("random metrics stay inside the unit-offset band") {
    StrictMetric m = gen_random_metric(8, 5);
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) {
            CHECK(m.d(u, v) >= 1);
            CHECK(m.d(u, v) <= 2);
        }
    CHECK(gen_random_metric(8, 5).dist == m.dist);
}

TEST_CASE("random topologies are connected with the requested edge count") {
    Topology t = gen_random_topology(9, 14, 8);
    CHECK(t.n == 9);
    CHECK(t.edges.size() == 14);
    CHECK_NOTHROW(all_pairs_distances(t));
    CHECK_THROWS_AS(gen_random_topology(9, 7, 8), Error);   // below a tree
    CHECK_THROWS_AS(gen_random_topology(9, 37, 8), Error);  // above complete
}

TEST_CASE("pop topologies look like metro networks") {
    Topology t = gen_pop_topology(10, 20, 6);
    CHECK(t.n == 10);
    CHECK(t.edges.size() == 20);
    CHECK(t.names[0] == "p1");
    CHECK(t.names[9] == "p10");
    for (const WeightedEdge& e : t.edges) CHECK(e.weight > 0);
    CHECK_NOTHROW(all_pairs_distances(t));
    // Deterministic in the seed.
    Topology again = gen_pop_topology(10, 20, 6);
    CHECK(again.edges.size() == t.edges.size());
    for (size_t i = 0; i < t.edges.size(); ++i)
        CHECK(again.edges[i].weight == t.edges[i].weight);
}
