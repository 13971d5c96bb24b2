#include "latdist/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace latdist {

namespace {

constexpr double kCostTol = 1e-11;
constexpr double kPivotTol = 1e-10;

}  // namespace

LpResult simplex_max(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c) {
    const int m = (int)a.size();
    const int n = (int)c.size();
    if ((int)b.size() != m) throw std::invalid_argument("simplex_max: rhs length mismatch");
    for (int i = 0; i < m; ++i) {
        if ((int)a[i].size() != n)
            throw std::invalid_argument("simplex_max: row length mismatch");
        if (b[i] < 0.0)
            throw std::invalid_argument("simplex_max: negative rhs, x = 0 must be feasible");
    }

    // Free x is split as x = xp - xm; columns are [xp | xm | slacks].
    const int ncols = 2 * n + m;
    std::vector<std::vector<double>> tab(m, std::vector<double>(ncols, 0.0));
    std::vector<double> rhs = b;
    std::vector<double> cost(ncols, 0.0);
    std::vector<int> basis(m);

    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            tab[i][j] = a[i][j];
            tab[i][n + j] = -a[i][j];
        }
        tab[i][2 * n + i] = 1.0;
        basis[i] = 2 * n + i;
    }
    for (int j = 0; j < n; ++j) {
        cost[j] = c[j];
        cost[n + j] = -c[j];
    }

    const int dantzig_limit = 20 * (m + ncols) + 200;
    const int hard_limit = 200 * (m + ncols) + 2000;

    LpResult out;
    for (int iter = 0; iter < hard_limit; ++iter) {
        // Dantzig pricing first; Bland's rule once the pivot count suggests
        // the sequence might be cycling.
        const bool bland = iter >= dantzig_limit;
        int enter = -1;
        double best = kCostTol;
        for (int j = 0; j < ncols; ++j) {
            if (cost[j] > best) {
                enter = j;
                if (bland) break;
                best = cost[j];
            }
        }
        if (enter < 0) {
            out.status = LpResult::Status::Optimal;
            break;
        }

        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            const double entry = tab[i][enter];
            if (entry <= kPivotTol) continue;
            const double ratio = rhs[i] / entry;
            if (ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && (leave < 0 || basis[i] < basis[leave]))) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave < 0) {
            out.status = LpResult::Status::Unbounded;
            return out;
        }

        auto& pivot_row = tab[leave];
        const double pivot = pivot_row[enter];
        for (double& v : pivot_row) v /= pivot;
        rhs[leave] /= pivot;
        for (int i = 0; i < m; ++i) {
            if (i == leave) continue;
            const double factor = tab[i][enter];
            if (factor == 0.0) continue;
            for (int j = 0; j < ncols; ++j) tab[i][j] -= factor * pivot_row[j];
            rhs[i] -= factor * rhs[leave];
            if (rhs[i] < 0.0 && rhs[i] > -1e-11) rhs[i] = 0.0;
        }
        const double cfactor = cost[enter];
        if (cfactor != 0.0)
            for (int j = 0; j < ncols; ++j) cost[j] -= cfactor * pivot_row[j];
        basis[leave] = enter;
    }

    std::vector<double> y(ncols, 0.0);
    for (int i = 0; i < m; ++i) y[basis[i]] = rhs[i];
    out.x.assign(n, 0.0);
    out.objective = 0.0;
    for (int j = 0; j < n; ++j) {
        out.x[j] = y[j] - y[n + j];
        out.objective += c[j] * out.x[j];
    }
    return out;
}

}  // namespace latdist
