#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccnet/instance.hpp"
#include "ccnet/rational.hpp"

namespace ccnet {

// One dual variable of the moat-growing solver: a vertex set containing the
// demand's source but not its target, inside the demand's safe set. Its
// boundary counts only base edges with both endpoints in the safe set.
struct Moat {
    Arc demand;
    std::vector<Vertex> cut;
    Rat value;    // accumulated growth
    bool active;  // false once merged away or retired
};

struct DualCertificate {
    int t = 0;                // safe-set size cap used for the run
    std::vector<Arc> demands;  // the demands with |S| <= t the run covered
    std::vector<Moat> moats;   // full history in activation order
    std::vector<std::pair<Edge, Rat>> tight_edges;  // additions with tight times
    Rat dual_objective;       // sum of all moat values
};

struct PdOptions {
    // Exact dual-feasibility audit of the finished certificate. Costs a pass
    // over moat history x edges; disable for large batch runs.
    bool audit = true;
};

// Moat growing for the edge-count objective over the demands whose safe set
// has at most t vertices. All active moats grow at unit rate; when a base
// edge becomes exactly paid for it joins H, and every moat it crosses is
// replaced by the merged component (or retired once its demand connects).
// All arithmetic on growth amounts is exact rational, so tie handling and
// the feasibility audit are deterministic.
//
// The output satisfies |H| <= t^2 * dual_lower_bound(cert), and the dual
// objective never exceeds the optimum edge count for the covered demands.
std::pair<Overlay, DualCertificate> primal_dual_solve(const SafeSetSystem& sys, int t,
                                                      const PdOptions& opt = {});

// Moat growing at t = ceil((n ln n)^(1/3)) plus sampled spanning stars at
// target size s = t, intersected with the base graph. The caller is expected
// to verify the result and may retry with a fresh seed.
Overlay pd_with_sampling(const SafeSetSystem& sys, uint64_t seed, const PdOptions& opt = {});

// Sum of all moat values: a lower bound on the optimum edge count of any
// solution covering the certificate's demands.
Rat dual_lower_bound(const DualCertificate& cert);

// Exact recheck against the instance: every base edge carries total crossing
// moat value <= 1, every tight edge is paid for exactly, and every moat cut
// is a legal source/target separator. Throws on violation.
void audit_certificate(const SafeSetSystem& sys, const DualCertificate& cert);

std::string certificate_to_json(const DualCertificate& cert);
void save_certificate(const DualCertificate& cert, const std::string& path);

}  // namespace ccnet
