#include <doctest.h>

#include <sstream>

#include "ccnet/instance.hpp"
#include "corpus.hpp"

using namespace ccnet;

TEST_CASE("make validates ids, endpoints, and duplicate demands") {
    // Endpoint missing from its own safe set.
    CHECK_THROWS_AS(SafeSetSystem::make(3, {{0, 1}}, {{0, 1}}, {{1, 2}}), Error);
    // Safe vertex out of range.
    CHECK_THROWS_AS(SafeSetSystem::make(3, {{0, 1}}, {{0, 1}}, {{0, 1, 7}}), Error);
    // Duplicate demand.
    CHECK_THROWS_AS(
        SafeSetSystem::make(3, {{0, 1}}, {{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}), Error);
    // Self-loop demand.
    CHECK_THROWS_AS(SafeSetSystem::make(3, {{0, 1}}, {{1, 1}}, {{1}}), Error);
    // Duplicate base edge.
    CHECK_THROWS_AS(SafeSetSystem::make(3, {{0, 1}, {1, 0}}, {{0, 1}}, {{0, 1}}), Error);
}

TEST_CASE("complete_edges and all_ordered_pairs") {
    CHECK(SafeSetSystem::complete_edges(4).size() == 6);
    CHECK(SafeSetSystem::all_ordered_pairs(4).size() == 12);
    CHECK(SafeSetSystem::complete_edges(1).empty());
    auto pairs = SafeSetSystem::all_ordered_pairs(3);
    CHECK(std::is_sorted(pairs.begin(), pairs.end()));
}

TEST_CASE("lookup tables agree with the stored lists") {
    SafeSetSystem sys = corpus::k3_all_pairs();
    CHECK(sys.edge_id(0, 1) >= 0);
    CHECK(sys.edge_id(1, 0) == sys.edge_id(0, 1));
    CHECK(sys.has_edge(2, 1));
    CHECK(sys.demand_id(2, 0) >= 0);
    CHECK(sys.demands[sys.demand_id(2, 0)] == Arc{2, 0});
    CHECK(sys.safe_of(1, 2) == std::vector<int>{0, 1, 2});
    CHECK(sys.safe_mask(sys.demand_id(1, 2)).count() == 3);
    CHECK(sys.base_adj(0).size() == 2);

    SafeSetSystem p = corpus::path3();
    CHECK_FALSE(p.has_edge(0, 2));
    CHECK(p.demand_id(2, 0) == -1);
}

TEST_CASE("restrict_demands keeps the base graph") {
    SafeSetSystem sys = corpus::k3_all_pairs();
    SafeSetSystem small = sys.restrict_demands([](int d) { return d == 0; });
    CHECK(small.demands.size() == 1);
    CHECK(small.base_edges == sys.base_edges);
}

TEST_CASE("validate_instance finds unsatisfiable demands") {
    CHECK(validate_instance(corpus::path3()).feasible);

    // Demand (0,2) with S = {0,2} but no direct base edge: infeasible.
    SafeSetSystem sys = SafeSetSystem::make(3, {{0, 1}, {1, 2}}, {{0, 2}}, {{0, 2}});
    ValidationReport rep = validate_instance(sys);
    CHECK_FALSE(rep.feasible);
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0] == Arc{0, 2});
}

TEST_CASE("instance JSON round-trip") {
    SafeSetSystem sys = corpus::random_ibgp(5, 7);
    SafeSetSystem back = parse_instance_json(instance_to_json(sys));
    CHECK(back.n == sys.n);
    CHECK(back.base_edges == sys.base_edges);
    CHECK(back.demands == sys.demands);
    CHECK(back.safe == sys.safe);
}

TEST_CASE("instance JSON parser rejects malformed documents") {
    CHECK_THROWS_AS(parse_instance_json("{"), ParseError);
    CHECK_THROWS_AS(parse_instance_json("{\"n\": 2}"), ParseError);
}

TEST_CASE("overlay normalizes edges and keeps provenance") {
    Overlay h = Overlay::of({{2, 1}, {0, 1}, {1, 2}}, "test");
    CHECK(h.edges == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(h.provenance == "test");
    CHECK(h.contains(2, 1));
    CHECK_FALSE(h.contains(0, 2));
}

TEST_CASE("overlay file round-trip") {
    Overlay h = Overlay::of({{0, 1}, {1, 2}}, "pd t=3 seed=1");
    std::ostringstream out;
    write_overlay(h, out);
    std::istringstream in(out.str());
    Overlay back = parse_overlay(in);
    CHECK(back.edges == h.edges);
    CHECK(back.provenance == h.provenance);
}

TEST_CASE("overlay parser reports bad lines") {
    std::istringstream in("0 1\nbroken\n");
    CHECK_THROWS_AS(parse_overlay(in, "h.txt"), ParseError);
}
