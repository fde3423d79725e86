#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ccnet/common.hpp"
#include "ccnet/instance.hpp"
#include "ccnet/topology.hpp"

namespace ccnet {

// One benchmark row. The fields are exactly the CSV columns, in order, so
// CSV output round-trips losslessly.
struct SolveReport {
    std::string instance;
    int n = 0;
    long full_mesh = 0;       // n(n-1)/2 sessions in the everyone-talks baseline
    std::string solver;       // provenance string; includes t and seed when used
    long value = 0;           // edge count (sum) or max degree (degree)
    double fraction = 0.0;    // value / full_mesh
    bool verified = false;    // from verify_safe_paths, never the solver's own claim
    long runtime_ms = 0;      // 0 when timing is suppressed
    std::string lower_bound;  // exact rational or decimal; empty when unavailable
};

enum class ReportFormat { Text, Csv, Json };

// Empty input produces a header-only document. Identical inputs produce
// byte-identical output.
std::string write_report(const std::vector<SolveReport>& reports, ReportFormat format);

// Inverse of write_report(..., Csv); rejects any other header.
std::vector<SolveReport> parse_report_csv(const std::string& text);

// One benchmark job. Exactly one of topology / metric / instance is set;
// topology and metric inputs go through the full derivation pipeline before
// solving. Relative paths are resolved against the manifest's directory.
struct ManifestEntry {
    std::string name;
    std::string topology, metric, instance;
    std::string algo = "pd";
    Variant variant = Variant::Sum;
    int t = -1;  // -1 means n
    uint64_t seed = 0;
    bool seed_set = false;
    int retries = 5;
};

// JSON: {"entries":[{"name":..., "topology":..., "algo":..., "variant":...,
// "t":..., "seed":..., "retries":...}]}
std::vector<ManifestEntry> parse_manifest(const std::string& text, const std::string& filename);
std::vector<ManifestEntry> load_manifest(const std::string& path);

struct SolveOutcome {
    Overlay overlay;
    SolveReport report;
    int attempts = 1;              // randomized solvers retry with fresh seeds
    std::string certificate_json;  // moat certificate, pd algorithm only
};

// Shared solver dispatch: algo in {pd, pd-sample, lp-round, hier, oracle}.
// Randomized algorithms verify each attempt and retry with seed+1, seed+2,
// ... up to `retries` total attempts; the last attempt is reported either
// way. Pass timing=false to zero runtime_ms for reproducible documents.
SolveOutcome solve_entry(const SafeSetSystem& sys, const std::string& instance_name,
                         const std::string& algo, Variant variant, int t, uint64_t seed,
                         int retries, bool timing);

// Runs every manifest entry in order. default_seed applies to entries
// without their own seed.
std::vector<SolveReport> run_manifest(const std::string& path, uint64_t default_seed, bool timing);

// Adjacency text of published PoP weight files: one "<node> -> <node>
// <weight>" line per directed link. Names become ids in first-appearance
// order; a link seen in both directions must carry the same weight.
Topology parse_rocketfuel(std::istream& in, const std::string& filename = "<rocketfuel>");
Topology load_rocketfuel(const std::string& path);

}  // namespace ccnet
