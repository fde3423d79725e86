#include <doctest.h>

#include "ccnet/generators.hpp"
#include "ccnet/hierarchical.hpp"
#include "ccnet/ibgp.hpp"
#include "ccnet/oracle.hpp"
#include "corpus.hpp"

using namespace ccnet;

namespace {

// Per-definition easy test, independent of classify_pairs: some z inside
// S(x,y) shrinks both sides strictly.
bool ref_easy(const SafeSetSystem& sys, Vertex x, Vertex y) {
    const std::vector<int>& s = sys.safe_of(x, y);
    auto subset_strict = [&](const std::vector<int>& a) {
        return a.size() < s.size() && std::includes(s.begin(), s.end(), a.begin(), a.end());
    };
    for (int z : s) {
        if (z == x || z == y) continue;
        int dxz = sys.demand_id(x, z) >= 0 ? sys.demand_id(x, z) : sys.demand_id(z, x);
        int dyz = sys.demand_id(y, z) >= 0 ? sys.demand_id(y, z) : sys.demand_id(z, y);
        if (dxz < 0 || dyz < 0) continue;
        if (subset_strict(sys.safe[dxz]) && subset_strict(sys.safe[dyz])) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("laminar instances and all-V instances pass the property check") {
    LaminarCc lam = gen_laminar_hierarchical(6, 4);
    CHECK(check_symmetric_hierarchical(lam.sys).empty());
    CHECK(check_symmetric_hierarchical(corpus::k3_all_pairs()).empty());
}

TEST_CASE("derived gadget instances are not hierarchical") {
    HittingSetInstance hs;
    hs.n_elems = 2;
    hs.sets = {{1}, {1, 2}};
    GadgetInstance g = gen_hitting_gadget(hs, {}, Variant::Sum);
    SafeSetSystem sys = derive_ibgp_safe_sets(g.metric);
    CHECK_FALSE(check_symmetric_hierarchical(sys).empty());
}

TEST_CASE("violations name the offending triple") {
    // S(0,1) != S(1,0): a symmetry violation with z = -1.
    SafeSetSystem asym =
        SafeSetSystem::make(3, SafeSetSystem::complete_edges(3), {{0, 1}, {1, 0}},
                            {{0, 1}, {0, 1, 2}});
    auto v1 = check_symmetric_hierarchical(asym);
    REQUIRE(!v1.empty());
    CHECK(v1.front().z == -1);

    // 2 is inside S(0,1) but S(0,2) reaches outside it.
    SafeSetSystem nested = SafeSetSystem::make(
        4, SafeSetSystem::complete_edges(4), {{0, 1}, {1, 0}, {0, 2}, {2, 0}},
        {{0, 1, 2}, {0, 1, 2}, {0, 1, 2, 3}, {0, 1, 2, 3}});
    auto v2 = check_symmetric_hierarchical(nested);
    REQUIRE(!v2.empty());
    CHECK(v2.front().z != -1);
}

TEST_CASE("size-2 pairs are always hard and chains need both strict containments") {
    // Family {a,b} inside {a,b,c}: for pair {a,c} the middle vertex shrinks
    // only one side, so the pair stays hard.
    SafeSetSystem sys = SafeSetSystem::make(
        3, SafeSetSystem::complete_edges(3),
        {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}},
        {{0, 1}, {0, 1}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
    PairClassification cls = classify_pairs(sys);
    CHECK(cls.easy.empty());
    REQUIRE(cls.order.size() == 3);
    CHECK(cls.order[0] == Edge{0, 1});  // smallest safe set first
    CHECK(ref_easy(sys, 0, 2) == false);
    CHECK(ref_easy(sys, 1, 2) == false);

    Overlay h = hierarchical_greedy(sys);
    CHECK(h.edges.size() == 2);
    CHECK(verify_safe_paths(sys, h).ok);
    CHECK(h.edges.size() == oracle_min(sys, Variant::Sum).edges.size());
}

TEST_CASE("classification agrees with the per-definition scan on laminar instances") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        LaminarCc lam = gen_laminar_hierarchical(5 + static_cast<int>(seed % 2), seed);
        PairClassification cls = classify_pairs(lam.sys);
        for (const Edge& e : cls.easy) CHECK(ref_easy(lam.sys, e.first, e.second));
        for (const Edge& e : cls.order) CHECK_FALSE(ref_easy(lam.sys, e.first, e.second));
        // Processing order is nondecreasing in safe-set size.
        for (size_t i = 0; i + 1 < cls.order.size(); ++i) {
            size_t a = lam.sys.safe_of(cls.order[i].first, cls.order[i].second).size();
            size_t b = lam.sys.safe_of(cls.order[i + 1].first, cls.order[i + 1].second).size();
            CHECK(a <= b);
        }
    }
}

TEST_CASE("all-V systems get a spanning tree") {
    SafeSetSystem sys = corpus::k3_all_pairs();
    Overlay h = hierarchical_greedy(sys);
    CHECK(h.edges.size() == 2);
    CHECK(verify_safe_paths(sys, h).ok);
}

TEST_CASE("greedy matches the oracle on random laminar instances") {
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        int n = 4 + static_cast<int>(seed % 3);
        LaminarCc lam = gen_laminar_hierarchical(n, seed * 7 + 1);
        Overlay h = hierarchical_greedy(lam.sys);
        REQUIRE(verify_safe_paths(lam.sys, h).ok);
        Overlay best = oracle_min(lam.sys, Variant::Sum);
        CHECK(h.edges.size() == best.edges.size());
    }
}

TEST_CASE("rerunning on its own output changes nothing") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        LaminarCc lam = gen_laminar_hierarchical(6, seed * 11);
        Overlay h = hierarchical_greedy(lam.sys);
        SafeSetSystem again = SafeSetSystem::make(lam.sys.n, h.edges, lam.sys.demands,
                                                  lam.sys.safe);
        CHECK(hierarchical_greedy(again).edges == h.edges);
    }
}

TEST_CASE("non-hierarchical systems are rejected by the solvers") {
    SafeSetSystem asym =
        SafeSetSystem::make(3, SafeSetSystem::complete_edges(3), {{0, 1}, {1, 0}},
                            {{0, 1}, {0, 1, 2}});
    CHECK_THROWS_AS(classify_pairs(asym), Error);
    CHECK_THROWS_AS(hierarchical_greedy(asym), Error);
}

TEST_CASE("a hard pair with a disconnected safe set is reported") {
    // S(0,2) = {0,2} but the base graph has no edge between them.
    SafeSetSystem sys =
        SafeSetSystem::make(3, {{0, 1}, {1, 2}}, {{0, 2}, {2, 0}}, {{0, 2}, {0, 2}});
    CHECK_THROWS_AS(hierarchical_greedy(sys), Error);
}
