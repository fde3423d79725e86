#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ccnet/lp.hpp"

namespace ccnet {

namespace {

constexpr double kDjTol = 1e-9;    // reduced cost significance
constexpr double kPivTol = 1e-9;   // smallest usable ratio-test pivot
constexpr double kFeasTol = 1e-7;  // phase 1 leftover treated as infeasible

enum : int8_t { kBasic = 0, kAtLo = 1, kAtHi = 2 };

// Bounded-variable two-phase revised simplex with a dense basis inverse.
// Reduced costs are maintained incrementally from the pivot row and
// refreshed periodically; every answer is audited against the original rows
// before it is returned. Deterministic: Dantzig pricing with smallest-index
// tie break, Bland's rule after a degenerate stretch.
struct Simplex {
    const LpProgram& lp;
    int m;             // rows
    int nstruct;       // structural variables
    int ncols = 0;     // structural + slack + artificial
    int first_art = 0;

    std::vector<std::vector<std::pair<int, double>>> col;
    std::vector<double> lo, hi, cost, x, b, d, binv;
    std::vector<int8_t> state;
    std::vector<int> basis;
    long iters = 0;
    int degen_streak = 0;
    bool bland = false;

    explicit Simplex(const LpProgram& prog)
        : lp(prog), m(static_cast<int>(prog.rows.size())),
          nstruct(static_cast<int>(prog.vars.size())) {}

    int add_col(double l, double h, std::vector<std::pair<int, double>> entries) {
        col.push_back(std::move(entries));
        lo.push_back(l);
        hi.push_back(h);
        cost.push_back(0.0);
        x.push_back(0.0);
        state.push_back(kAtLo);
        d.push_back(0.0);
        return ncols++;
    }

    void build() {
        b.resize(m);
        std::vector<std::vector<std::pair<int, double>>> by_var(nstruct);
        for (int i = 0; i < m; ++i) {
            const LpRow& row = lp.rows[i];
            b[i] = row.rhs;
            for (const auto& t : row.terms) {
                require(t.var >= 0 && t.var < nstruct, "row references unknown variable");
                by_var[t.var].push_back({i, t.coef});
            }
        }
        for (int j = 0; j < nstruct; ++j) {
            const LpVar& v = lp.vars[j];
            require(v.lo > -kLpInf || v.hi < kLpInf, "free variables are not supported");
            require(v.lo <= v.hi, "variable with lo > hi: " + v.name);
            add_col(v.lo, v.hi, std::move(by_var[j]));
            if (v.lo > -kLpInf) {
                x[j] = v.lo;
            } else {
                x[j] = v.hi;
                state[j] = kAtHi;
            }
        }
        for (int i = 0; i < m; ++i) {
            double slo = 0.0, shi = 0.0;
            switch (lp.rows[i].sense) {
                case RowSense::LessEq: shi = kLpInf; break;
                case RowSense::GreaterEq: slo = -kLpInf; break;
                case RowSense::Equal: break;
            }
            add_col(slo, shi, {{i, 1.0}});
        }
        first_art = ncols;

        // All-slack start; rows whose slack cannot absorb the initial
        // activity get a basic artificial instead.
        std::vector<double> act(m, 0.0);
        for (int j = 0; j < nstruct; ++j)
            if (x[j] != 0.0)
                for (const auto& [r, a] : col[j]) act[r] += a * x[j];
        basis.assign(m, -1);
        binv.assign(static_cast<size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i) {
            int s = nstruct + i;
            double want = b[i] - act[i];
            if (want >= lo[s] - kPivTol && want <= hi[s] + kPivTol) {
                x[s] = std::clamp(want, lo[s], hi[s]);
                state[s] = kBasic;
                basis[i] = s;
                binv[static_cast<size_t>(i) * m + i] = 1.0;
            } else {
                double bound = want < lo[s] ? lo[s] : hi[s];
                x[s] = bound;
                state[s] = bound == lo[s] ? kAtLo : kAtHi;
                double sigma = want - bound > 0 ? 1.0 : -1.0;
                int a = add_col(0.0, kLpInf, {{i, sigma}});
                x[a] = std::abs(want - bound);
                state[a] = kBasic;
                basis[i] = a;
                binv[static_cast<size_t>(i) * m + i] = sigma;
            }
        }
    }

    void ftran(int q, std::vector<double>& w) const {
        std::fill(w.begin(), w.end(), 0.0);
        for (const auto& [r, a] : col[q])
            for (int i = 0; i < m; ++i) w[i] += a * binv[static_cast<size_t>(i) * m + r];
    }

    void refresh_d() {
        std::vector<double> y(m, 0.0);
        for (int i = 0; i < m; ++i) {
            double c = cost[basis[i]];
            if (c == 0.0) continue;
            const double* row = binv.data() + static_cast<size_t>(i) * m;
            for (int k = 0; k < m; ++k) y[k] += c * row[k];
        }
        for (int j = 0; j < ncols; ++j) {
            if (state[j] == kBasic) {
                d[j] = 0.0;
                continue;
            }
            double v = cost[j];
            for (const auto& [r, a] : col[j]) v -= y[r] * a;
            d[j] = v;
        }
    }

    void recompute_basics() {
        std::vector<double> v = b;
        for (int j = 0; j < ncols; ++j)
            if (state[j] != kBasic && x[j] != 0.0)
                for (const auto& [r, a] : col[j]) v[r] -= a * x[j];
        for (int i = 0; i < m; ++i) {
            const double* row = binv.data() + static_cast<size_t>(i) * m;
            double s = 0.0;
            for (int k = 0; k < m; ++k) s += row[k] * v[k];
            x[basis[i]] = s;
        }
    }

    // Rebuilds binv from the basis columns by Gauss-Jordan elimination.
    void refactor() {
        std::vector<double> mat(static_cast<size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i)
            for (const auto& [r, a] : col[basis[i]]) mat[static_cast<size_t>(r) * m + i] = a;
        std::vector<double>& inv = binv;
        std::fill(inv.begin(), inv.end(), 0.0);
        for (int i = 0; i < m; ++i) inv[static_cast<size_t>(i) * m + i] = 1.0;
        for (int c = 0; c < m; ++c) {
            int p = c;
            for (int r = c + 1; r < m; ++r)
                if (std::abs(mat[static_cast<size_t>(r) * m + c]) >
                    std::abs(mat[static_cast<size_t>(p) * m + c]))
                    p = r;
            require(std::abs(mat[static_cast<size_t>(p) * m + c]) > 1e-12,
                    "singular basis during refactorization");
            if (p != c) {
                for (int k = 0; k < m; ++k) {
                    std::swap(mat[static_cast<size_t>(p) * m + k],
                              mat[static_cast<size_t>(c) * m + k]);
                    std::swap(inv[static_cast<size_t>(p) * m + k],
                              inv[static_cast<size_t>(c) * m + k]);
                }
            }
            double piv = mat[static_cast<size_t>(c) * m + c];
            for (int k = 0; k < m; ++k) {
                mat[static_cast<size_t>(c) * m + k] /= piv;
                inv[static_cast<size_t>(c) * m + k] /= piv;
            }
            for (int r = 0; r < m; ++r) {
                if (r == c) continue;
                double f = mat[static_cast<size_t>(r) * m + c];
                if (f == 0.0) continue;
                for (int k = 0; k < m; ++k) {
                    mat[static_cast<size_t>(r) * m + k] -= f * mat[static_cast<size_t>(c) * m + k];
                    inv[static_cast<size_t>(r) * m + k] -= f * inv[static_cast<size_t>(c) * m + k];
                }
            }
        }
    }

    int pick_entering() const {
        int best = -1;
        double bestv = kDjTol;
        for (int j = 0; j < ncols; ++j) {
            if (state[j] == kBasic || lo[j] == hi[j]) continue;
            double v = state[j] == kAtLo ? -d[j] : d[j];
            if (v <= (bland ? kDjTol : bestv)) continue;
            if (bland) return j;
            bestv = v;
            best = j;
        }
        return best;
    }

    void optimize(bool phase1) {
        const long limit = 50000 + 200L * m;
        refresh_d();
        int since_refresh = 0, since_recompute = 0;
        std::vector<double> w(m), rho(m);
        for (;;) {
            int q = pick_entering();
            if (q < 0) return;
            ftran(q, w);

            // Guard against stale incremental reduced costs.
            double dq = cost[q];
            for (int i = 0; i < m; ++i)
                if (w[i] != 0.0) dq -= cost[basis[i]] * w[i];
            if ((state[q] == kAtLo && dq > -kDjTol) || (state[q] == kAtHi && dq < kDjTol)) {
                refresh_d();
                since_refresh = 0;
                if (pick_entering() == q) d[q] = 0.0;  // numerically stuck, drop it
                continue;
            }
            d[q] = dq;

            double dir = state[q] == kAtLo ? 1.0 : -1.0;
            double theta = hi[q] - lo[q];  // may be inf
            int blocking = -1;
            for (int i = 0; i < m; ++i) {
                double delta = dir * w[i];
                if (std::abs(delta) <= kPivTol) continue;
                int bc = basis[i];
                double t;
                if (delta > 0) {
                    if (lo[bc] == -kLpInf) continue;
                    t = (x[bc] - lo[bc]) / delta;
                } else {
                    if (hi[bc] == kLpInf) continue;
                    t = (x[bc] - hi[bc]) / delta;
                }
                if (t < 0) t = 0;
                if (t < theta - 1e-12 ||
                    (blocking >= 0 && t < theta + 1e-12 &&
                     std::abs(w[i]) > std::abs(w[blocking]))) {
                    theta = t;
                    blocking = i;
                }
            }
            if (blocking < 0 && theta == kLpInf) {
                if (phase1) throw Error("internal error: unbounded feasibility phase");
                throw LpUnboundedError("objective is unbounded below");
            }

            for (int i = 0; i < m; ++i)
                if (w[i] != 0.0) x[basis[i]] -= theta * dir * w[i];
            if (blocking < 0) {
                x[q] = state[q] == kAtLo ? hi[q] : lo[q];
                state[q] = state[q] == kAtLo ? kAtHi : kAtLo;
            } else {
                int l = basis[blocking];
                double piv = w[blocking];
                x[q] += dir * theta;
                state[q] = kBasic;
                x[l] = dir * piv > 0 ? lo[l] : hi[l];
                state[l] = dir * piv > 0 ? kAtLo : kAtHi;
                basis[blocking] = q;

                std::copy(binv.begin() + static_cast<size_t>(blocking) * m,
                          binv.begin() + static_cast<size_t>(blocking + 1) * m, rho.begin());
                double* prow = binv.data() + static_cast<size_t>(blocking) * m;
                for (int k = 0; k < m; ++k) prow[k] /= piv;
                for (int i = 0; i < m; ++i) {
                    if (i == blocking) continue;
                    double f = w[i];
                    if (f == 0.0) continue;
                    double* row = binv.data() + static_cast<size_t>(i) * m;
                    for (int k = 0; k < m; ++k) row[k] -= f * prow[k];
                }

                double ratio = dq / piv;
                for (int j = 0; j < ncols; ++j) {
                    if (state[j] == kBasic) continue;
                    double alpha = 0.0;
                    for (const auto& [r, a] : col[j]) alpha += rho[r] * a;
                    if (alpha != 0.0) d[j] -= ratio * alpha;
                }
                d[q] = 0.0;
            }

            ++iters;
            require(iters < limit, "simplex iteration limit exceeded");
            if (theta <= kPivTol) {
                if (++degen_streak > 60 && !bland) {
                    bland = true;
                    refresh_d();
                    since_refresh = 0;
                }
            } else {
                degen_streak = 0;
                bland = false;
            }
            if (++since_recompute >= 256) {
                recompute_basics();
                since_recompute = 0;
            }
            if (++since_refresh >= 128) {
                refresh_d();
                since_refresh = 0;
            }
        }
    }

    std::vector<double> solve(LpSolveInfo* info) {
        build();
        if (ncols > first_art) {
            for (int j = first_art; j < ncols; ++j) cost[j] = 1.0;
            optimize(true);
            recompute_basics();
            double infeas = 0.0;
            for (int j = first_art; j < ncols; ++j) infeas += std::abs(x[j]);
            if (infeas > kFeasTol)
                throw LpInfeasibleError("no feasible point (infeasibility " +
                                        std::to_string(infeas) + ")");
            for (int j = first_art; j < ncols; ++j) {
                cost[j] = 0.0;
                lo[j] = hi[j] = 0.0;
                if (state[j] != kBasic) x[j] = 0.0;
            }
        }
        for (int j = 0; j < nstruct; ++j) cost[j] = lp.vars[j].obj;

        std::vector<double> result;
        for (int attempt = 0;; ++attempt) {
            optimize(false);
            recompute_basics();
            result.assign(x.begin(), x.begin() + nstruct);
            double res = lp_residual(lp, result);
            if (info) {
                info->iterations = iters;
                info->max_residual = res;
            }
            if (res <= 1e-9) return result;
            require(attempt < 2, "simplex lost precision (residual " + std::to_string(res) + ")");
            refactor();
            recompute_basics();
        }
    }
};

}  // namespace

std::vector<double> solve_lp_raw(const LpProgram& lp, LpSolveInfo* info) {
    Simplex s(lp);
    return s.solve(info);
}

}  // namespace ccnet
