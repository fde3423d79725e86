#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "ccnet/instance.hpp"

namespace ccnet {

constexpr double kLpInf = std::numeric_limits<double>::infinity();

enum class RowSense { LessEq, GreaterEq, Equal };

struct LpVar {
    std::string name;
    double lo = 0.0;
    double hi = kLpInf;
    double obj = 0.0;
};

struct LpTerm {
    int var;
    double coef;
};

struct LpRow {
    std::string name;
    RowSense sense;
    double rhs;
    std::vector<LpTerm> terms;
};

// Indices tying LP variables back to the instance, filled by build_flow_lp.
struct FlowLayout {
    int n = 0;
    Variant variant = Variant::Sum;
    std::vector<Edge> edges;                // == sys.base_edges
    std::vector<int> edge_var;              // capacity variable per edge
    std::vector<Arc> demands;               // == sys.demands
    std::vector<std::vector<Arc>> arcs;     // per demand, directed arcs inside the safe set
    std::vector<std::vector<int>> arc_var;  // parallel to arcs
    int lambda_var = -1;                    // degree variant only
};

struct LpProgram {
    std::vector<LpVar> vars;
    std::vector<LpRow> rows;
    bool has_flow_layout = false;
    FlowLayout flow;
};

// Compact flow relaxation. One capacity variable per base edge in [0,1]. For
// every demand (x,y), directed flow variables on the arcs of base edges whose
// endpoints both lie in S(x,y); one unit must leave x, flow is conserved at
// the other safe vertices (the row at y is implied and omitted), and per
// demand the two directions of an edge together fit under its capacity. The
// sum variant minimizes total capacity; the degree variant minimizes a bound
// lambda on every vertex's incident capacity.
//
// Instances where some demand cannot be satisfied at all are rejected before
// any rows are emitted.
LpProgram build_flow_lp(const SafeSetSystem& sys, Variant variant);

struct FractionalSolution {
    double objective = 0.0;
    std::vector<Edge> edges;
    std::vector<double> capacities;  // parallel to edges
    bool has_lambda = false;
    double lambda = 0.0;
    // Per demand: (arc, flow) for every nonzero flow variable.
    std::vector<std::vector<std::pair<Arc, double>>> flows;

    double capacity_of(Vertex u, Vertex v) const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpInfeasibleError : Error {
    using Error::Error;
};
struct LpUnboundedError : Error {
    using Error::Error;
};

struct LpSolveInfo {
    long iterations = 0;
    double max_residual = 0.0;
};

// Built-in solver: bounded-variable two-phase revised simplex over doubles,
// deterministic, residuals kept under 1e-9. Infeasible and unbounded
// programs raise the two distinct error types above.
std::vector<double> solve_lp_raw(const LpProgram& lp, LpSolveInfo* info = nullptr);

// Direct feeds the whole program to the simplex. Cuts only works on flow
// programs: it optimizes the capacities against lazily separated safe-side
// cut constraints (min cut per demand), then rebuilds per-demand flows with
// max flow runs; by max-flow/min-cut both give the same optimum. Auto picks
// Cuts once the compact program gets large.
enum class LpMethod { Auto, Direct, Cuts };

// Solves and maps the solution back through the flow layout.
FractionalSolution solve_lp(const LpProgram& lp, LpSolveInfo* info = nullptr,
                            LpMethod method = LpMethod::Auto);

// Largest violation of any row or variable bound at the given point.
double lp_residual(const LpProgram& lp, const std::vector<double>& x);

// LP text format (objective, Subject To, Bounds, End) so external solvers
// can be swapped in; read_lp_solution accepts "name value" lines as produced
// by most solvers' solution writers.
void write_lp_file(const LpProgram& lp, std::ostream& out);
void save_lp_file(const LpProgram& lp, const std::string& path);
std::vector<double> read_lp_solution(const LpProgram& lp, std::istream& in);
FractionalSolution load_lp_solution(const LpProgram& lp, const std::string& path);

struct RoundingOptions {
    // Inflation applied to capacities in the independent-rounding phase.
    double inflation = 12.0;
    // Slack in the edge-sampling probability (degree variant phase 2).
    double eps = 0.5;
};

// Randomized rounding: keep each base edge independently with probability
// min(inflation * c_e * sqrt(n) * ln n, 1), then union a safety net for the
// large safe sets: spanning stars (sum) or sampled sparse graphs (degree) at
// target size sqrt(n), intersected with the base graph.
Overlay round_and_sample(const SafeSetSystem& sys, const FractionalSolution& frac,
                         Variant variant, uint64_t seed, const RoundingOptions& opt = {});

}  // namespace ccnet
