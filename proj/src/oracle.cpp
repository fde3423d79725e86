#include "ccnet/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccnet/bitset.hpp"
#include "ccnet/ibgp.hpp"

namespace ccnet {

namespace {

using Clock = std::chrono::steady_clock;

struct Search {
    const SafeSetSystem& sys;
    std::vector<int> free_edges;  // useful, non-forced edge ids, ascending
    std::vector<int> forced;      // edge ids every solution must contain
    OracleBudget budget;
    Clock::time_point deadline;

    long checked = 0;
    std::vector<int> chosen;
    std::vector<int> result;

    bool connects_all(const std::vector<int>& ids) {
        if (((++checked) & 1023) == 0 && Clock::now() > deadline)
            throw BudgetError("oracle out of range: time limit exceeded");
        const int n = sys.n;
        std::vector<std::vector<int>> adj(n);
        for (int id : ids) {
            auto [u, v] = sys.base_edges[id];
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        std::vector<char> seen(n);
        std::vector<int> stack;
        for (size_t di = 0; di < sys.demands.size(); ++di) {
            auto [s, t] = sys.demands[di];
            const Bitset& mask = sys.safe_mask(static_cast<int>(di));
            std::fill(seen.begin(), seen.end(), 0);
            stack.assign(1, s);
            seen[s] = 1;
            bool hit = s == t;
            while (!stack.empty() && !hit) {
                int x = stack.back();
                stack.pop_back();
                for (int y : adj[x]) {
                    if (seen[y] || !mask.test(y)) continue;
                    if (y == t) {
                        hit = true;
                        break;
                    }
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
            if (!hit) return false;
        }
        return true;
    }

    bool try_k(size_t pos, int remaining, std::vector<int>& deg, int cap) {
        if (remaining == 0) {
            std::vector<int> cand;
            std::merge(forced.begin(), forced.end(), chosen.begin(), chosen.end(),
                       std::back_inserter(cand));
            if (!connects_all(cand)) return false;
            result = std::move(cand);
            return true;
        }
        for (size_t i = pos; i + remaining <= free_edges.size(); ++i) {
            auto [u, v] = sys.base_edges[free_edges[i]];
            if (cap >= 0 && (deg[u] + 1 > cap || deg[v] + 1 > cap)) continue;
            ++deg[u];
            ++deg[v];
            chosen.push_back(free_edges[i]);
            if (try_k(i + 1, remaining - 1, deg, cap)) return true;
            chosen.pop_back();
            --deg[u];
            --deg[v];
        }
        return false;
    }

    // Lexicographically least smallest verifying subset containing the
    // forced edges and respecting the degree cap (cap < 0 = none). Empty
    // optional means a complete search proved there is none.
    std::optional<std::vector<int>> enumerate(int cap) {
        std::vector<int> deg(sys.n, 0);
        for (int id : forced) {
            auto [u, v] = sys.base_edges[id];
            ++deg[u];
            ++deg[v];
        }
        if (cap >= 0)
            for (int v = 0; v < sys.n; ++v)
                if (deg[v] > cap) return std::nullopt;

        const int budget_free = budget.max_subset_size - static_cast<int>(forced.size());
        if (budget_free < 0)
            throw BudgetError("oracle out of range: " + std::to_string(forced.size()) +
                              " forced edges exceed the subset size budget");
        const int top = std::min(static_cast<int>(free_edges.size()), budget_free);
        for (int kf = 0; kf <= top; ++kf) {
            chosen.clear();
            if (try_k(0, kf, deg, cap)) return result;
        }
        if (top < static_cast<int>(free_edges.size()))
            throw BudgetError("oracle out of range: subset size budget exhausted");
        return std::nullopt;
    }
};

}  // namespace

Overlay oracle_min(const SafeSetSystem& sys, Variant variant, const OracleBudget& budget) {
    require(budget.max_useful_edges > 0 && budget.max_subset_size > 0 && budget.max_millis > 0,
            "oracle budget fields must be positive");
    const std::string provenance = std::string("oracle ") + variant_name(variant);
    if (sys.demands.empty()) return Overlay::of({}, provenance);

    Search s{sys, {}, {}, budget, Clock::now() + std::chrono::milliseconds(budget.max_millis)};

    std::vector<int> useful;
    for (size_t e = 0; e < sys.base_edges.size(); ++e) {
        auto [u, v] = sys.base_edges[e];
        for (size_t d = 0; d < sys.demands.size(); ++d)
            if (sys.safe_mask(static_cast<int>(d)).test(u) &&
                sys.safe_mask(static_cast<int>(d)).test(v)) {
                useful.push_back(static_cast<int>(e));
                break;
            }
    }
    if (static_cast<int>(useful.size()) > budget.max_useful_edges)
        throw BudgetError("oracle out of range: " + std::to_string(useful.size()) +
                          " useful edges exceed the budget of " +
                          std::to_string(budget.max_useful_edges));
    if (!s.connects_all(useful)) {
        ValidationReport rep = validate_instance(sys);
        Arc bad = rep.failures.empty() ? sys.demands.front() : rep.failures.front();
        throw InfeasibleError("demand (" + std::to_string(bad.first) + "," +
                              std::to_string(bad.second) +
                              ") cannot be connected inside its safe set");
    }

    // A demand whose safe set is exactly its endpoints can only use the
    // direct edge.
    for (size_t d = 0; d < sys.demands.size(); ++d)
        if (sys.safe[d].size() == 2) {
            auto [u, v] = sys.demands[d];
            s.forced.push_back(sys.edge_id(u, v));  // exists, or the check above failed
        }
    std::sort(s.forced.begin(), s.forced.end());
    s.forced.erase(std::unique(s.forced.begin(), s.forced.end()), s.forced.end());
    for (int e : useful)
        if (!std::binary_search(s.forced.begin(), s.forced.end(), e)) s.free_edges.push_back(e);

    std::vector<int> answer;
    if (variant == Variant::Sum) {
        auto res = s.enumerate(-1);
        require(res.has_value(), "internal error: feasible instance but exhaustive search failed");
        answer = std::move(*res);
    } else {
        std::vector<int> deg(sys.n, 0);
        for (int e : useful) {
            auto [u, v] = sys.base_edges[e];
            ++deg[u];
            ++deg[v];
        }
        int lo = 1, hi = *std::max_element(deg.begin(), deg.end());
        std::optional<std::vector<int>> witness;
        while (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            auto res = s.enumerate(mid);
            if (res.has_value()) {
                witness = std::move(res);
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        if (!witness.has_value()) {
            witness = s.enumerate(lo);
            require(witness.has_value(),
                    "internal error: feasible instance but exhaustive search failed");
        }
        answer = std::move(*witness);
    }

    std::vector<Edge> edges;
    for (int id : answer) edges.push_back(sys.base_edges[id]);
    Overlay out = Overlay::of(std::move(edges), provenance);
    VerificationReport rep = verify_safe_paths(sys, out);
    require(rep.ok, "internal error: oracle output fails verification");
    return out;
}

}  // namespace ccnet
