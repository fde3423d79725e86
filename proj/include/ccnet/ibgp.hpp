#pragma once

#include <map>
#include <vector>

#include "ccnet/instance.hpp"
#include "ccnet/metric.hpp"

namespace ccnet {

// Routers farther from x than y is, under the strict order: the set D(x,y).
// When y is x's egress, these are exactly the routers whose own route would
// look worse to x, so they must not be able to "capture" the announcement.
std::vector<Vertex> egress_ball_complement(const StrictMetric& m, Vertex x, Vertex y);

// Safe set S(x,y): routers strictly closer to y than to everything in
// D(x,y), plus y itself. Empty D means S(x,y) is all of V.
std::vector<Vertex> ibgp_safe_set(const StrictMetric& m, Vertex x, Vertex y);

// Full instance for a metric: base graph K_n (any iBGP session is allowed),
// one demand per ordered pair, safe sets as above.
SafeSetSystem derive_ibgp_safe_sets(const StrictMetric& m);

struct HotPotatoFailure {
    Vertex router;
    std::vector<Vertex> egress_set;
    Vertex expected;  // strictly closest egress to the router
    int got;          // chosen egress, or -1 if the router learned nothing
};

struct VerificationReport {
    bool ok = true;
    std::vector<Arc> failures;  // demands with no safe path
    // For each satisfied demand, one path inside the safe set.
    std::map<Arc, std::vector<Vertex>> witness_paths;
    std::vector<HotPotatoFailure> hot_failures;
};

// Static check: BFS per demand, restricted to the safe set, over overlay
// edges. ok iff every demand has a path.
VerificationReport verify_safe_paths(const SafeSetSystem& sys, const Overlay& h);

struct RouteAssignment {
    std::vector<Vertex> egress_set;
    std::vector<int> chosen;  // per router: egress id, or -1
    int passes = 0;
};

// Deterministic route propagation fixpoint. Every egress starts by
// announcing its own route (distance zero). Each pass, every router looks at
// the routes its overlay neighbors announced at the end of the previous pass
// and adopts the one with the strictly closest egress, keeping its current
// route otherwise. A router never gives a route up for a worse one, so
// chosen distances only decrease and the loop terminates.
RouteAssignment simulate_ibgp(const StrictMetric& m, const Overlay& h,
                              const std::vector<Vertex>& egress_set);

enum class HotPotatoMode {
    Witness,     // the n(n-1) sets D(x,y) + {y}
    Exhaustive,  // every nonempty vertex subset; requires n <= 16
};

// Dynamic check: runs simulate_ibgp over a family of egress sets and flags
// every router that does not end up with its strictly closest egress.
VerificationReport check_hot_potato(const StrictMetric& m, const Overlay& h, HotPotatoMode mode);

}  // namespace ccnet
