#include <doctest.h>

#include "ccnet/ibgp.hpp"
#include "ccnet/oracle.hpp"
#include "ccnet/primal_dual.hpp"
#include "corpus.hpp"

using namespace ccnet;

TEST_CASE("a single two-vertex demand buys its edge with dual value 1") {
    SafeSetSystem sys = SafeSetSystem::make(2, {{0, 1}}, {{0, 1}}, {{0, 1}});
    auto [h, cert] = primal_dual_solve(sys, 2);
    CHECK(h.edges == std::vector<Edge>{{0, 1}});
    CHECK(dual_lower_bound(cert) == Rat(1));
    CHECK(cert.demands == std::vector<Arc>{{0, 1}});
    corpus::recheck_certificate(sys, cert);
}

TEST_CASE("complete 3-vertex instance: dual bounded by the optimum of 2") {
    SafeSetSystem sys = corpus::k3_all_pairs();
    auto [h, cert] = primal_dual_solve(sys, 3);
    Rat dual = dual_lower_bound(cert);
    CHECK(dual <= 2);
    CHECK(h.edges.size() >= 2);
    CHECK(Rat(static_cast<long>(h.edges.size())) <= Rat(9) * dual);  // t^2 = 9
    CHECK(verify_safe_paths(sys, h).ok);
    corpus::recheck_certificate(sys, cert);
}

TEST_CASE("demands above the size cap are not covered") {
    // Safe sets of size 3 with t = 2: nothing to do, empty run.
    SafeSetSystem sys = corpus::path3();
    auto [h, cert] = primal_dual_solve(sys, 2);
    CHECK(h.edges.empty());
    CHECK(cert.demands.empty());
    CHECK(dual_lower_bound(cert) == 0);

    auto [h3, cert3] = primal_dual_solve(sys, 3);
    CHECK(h3.edges.size() == 2);
    CHECK(verify_safe_paths(sys, h3).ok);
}

TEST_CASE("infeasible covered demand names itself") {
    SafeSetSystem sys = SafeSetSystem::make(3, {{0, 1}, {1, 2}}, {{0, 2}}, {{0, 2}});
    CHECK_THROWS_WITH_AS(primal_dual_solve(sys, 2), doctest::Contains("(0,2)"),
                         InfeasibleError);
}

TEST_CASE("dual never exceeds the optimum and the primal never beats it") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        int n = 4 + static_cast<int>(seed % 3);
        SafeSetSystem sys = corpus::random_ibgp(n, seed * 3 + 1);
        auto [h, cert] = primal_dual_solve(sys, n);
        corpus::recheck_certificate(sys, cert);
        REQUIRE(verify_safe_paths(sys, h).ok);

        Overlay best = oracle_min(sys, Variant::Sum);
        Rat dual = dual_lower_bound(cert);
        CHECK(dual <= Rat(static_cast<long>(best.edges.size())));
        CHECK(h.edges.size() >= best.edges.size());
        CHECK(Rat(static_cast<long>(h.edges.size())) <= Rat(1L * n * n) * dual);
    }
}

TEST_CASE("runs are deterministic") {
    SafeSetSystem sys = corpus::random_ibgp(6, 17);
    auto [h1, c1] = primal_dual_solve(sys, 6);
    auto [h2, c2] = primal_dual_solve(sys, 6);
    CHECK(h1.edges == h2.edges);
    CHECK(certificate_to_json(c1) == certificate_to_json(c2));
}

TEST_CASE("tampered certificates fail both audits") {
    SafeSetSystem sys = corpus::k3_all_pairs();
    auto [h, cert] = primal_dual_solve(sys, 3);

    DualCertificate bad = cert;
    REQUIRE(!bad.moats.empty());
    bad.moats.front().value += 5;
    CHECK_THROWS_AS(audit_certificate(sys, bad), Error);
    CHECK_THROWS_AS(corpus::recheck_certificate(sys, bad), Error);

    DualCertificate leak = cert;
    leak.moats.front().cut.push_back(leak.moats.front().demand.second);
    CHECK_THROWS_AS(audit_certificate(sys, leak), Error);
    CHECK_THROWS_AS(corpus::recheck_certificate(sys, leak), Error);
}

TEST_CASE("certificate JSON carries the full moat history") {
    SafeSetSystem sys = corpus::k3_all_pairs();
    auto [h, cert] = primal_dual_solve(sys, 3);
    std::string json = certificate_to_json(cert);
    CHECK(json.find("\"t\": 3") != std::string::npos);
    CHECK(json.find("dual_objective") != std::string::npos);
    CHECK(json.find("moats") != std::string::npos);
    CHECK(json.find("tight_edges") != std::string::npos);
}

TEST_CASE("sampled variant covers small safe sets exactly like the plain run") {
    SafeSetSystem sys = corpus::random_ibgp(6, 33);
    Overlay h = pd_with_sampling(sys, 5);
    // The cube-root cap for n=6 is t = ceil((6 ln 6)^(1/3)) = 3.
    CHECK(h.provenance == "pd-sample t=3 seed=5");
    auto [plain, cert] = primal_dual_solve(sys, 3);
    for (const Edge& e : plain.edges) CHECK(h.contains(e.first, e.second));
    // Stars only ever add base edges.
    for (const Edge& e : h.edges) CHECK(sys.has_edge(e.first, e.second));
}

TEST_CASE("moat cuts stay inside their demand's safe set") {
    SafeSetSystem sys = corpus::random_ibgp(5, 2);
    auto [h, cert] = primal_dual_solve(sys, 5);
    for (const Moat& mo : cert.moats) {
        CHECK_FALSE(mo.active);
        const std::vector<int>& safe = sys.safe_of(mo.demand.first, mo.demand.second);
        for (Vertex w : mo.cut)
            CHECK(std::find(safe.begin(), safe.end(), w) != safe.end());
        CHECK(std::find(mo.cut.begin(), mo.cut.end(), mo.demand.first) != mo.cut.end());
        CHECK(std::find(mo.cut.begin(), mo.cut.end(), mo.demand.second) == mo.cut.end());
    }
}
