#include "latdist/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "latdist/eig.hpp"
#include "latdist/lp.hpp"

namespace latdist {

namespace {

double spacing_at(const LinkField& omega, int k) { return 1.0 / std::abs(omega.values[k]); }

// One subgradient evaluation of g(f) = ||[D, f]||: the value plus a row
// gamma with gamma . h <= g(h) for every h and gamma . f = g(f).
struct OracleResult {
    double g = 0.0;
    std::vector<double> cut;
};

OracleResult dm_oracle(const LinkField& omega, const LatticeSpec& spec, const SiteFunction& f) {
    OracleResult out;
    out.cut.assign(f.size(), 0.0);
    int worst_link = -1;
    double worst = -1.0;
    for (int k = 0; k < spec.sites; ++k) {
        if (!spec.link_used(k)) continue;
        const double slope = std::abs(omega.values[k]) * std::abs(f[spec.shift_target(k)] - f[k]);
        if (slope > worst) {
            worst = slope;
            worst_link = k;
        }
    }
    const int t = spec.shift_target(worst_link);
    const double amp = std::abs(omega.values[worst_link]);
    const double sign = f[t] - f[worst_link] >= 0.0 ? 1.0 : -1.0;
    out.cut[t] += sign * amp;
    out.cut[worst_link] -= sign * amp;
    out.g = worst;
    return out;
}

OracleResult generic_oracle(const DiracOperator& d, const SiteFunction& f) {
    const int n = d.sites();
    OracleResult out;
    out.cut.assign(f.size(), 0.0);
    const CMatrix c = commutator(d, f);
    if (c.max_abs() == 0.0) return out;

    const EigenSystem es = hermitian_eigensystem(c.adjoint() * c, true);
    const double top = std::max(0.0, es.values.back());
    const double sigma = std::sqrt(top);
    out.g = sigma;
    if (sigma == 0.0) return out;

    std::vector<cplx> v(2 * n);
    for (int r = 0; r < 2 * n; ++r) v[r] = es.vectors(r, 2 * n - 1);
    std::vector<cplx> u = c * v;
    for (auto& x : u) x /= sigma;

    // gamma(m) = Re(u^dag [D, E_m] v) with E_m the indicator of site m on
    // both components; expands into two matvecs plus O(N) bookkeeping.
    const std::vector<cplx> du = d.matrix * u;
    const std::vector<cplx> dv = d.matrix * v;
    for (int m = 0; m < n; ++m) {
        const cplx a = v[m] * std::conj(du[m]) + v[n + m] * std::conj(du[n + m]);
        const cplx b = std::conj(u[m]) * dv[m] + std::conj(u[n + m]) * dv[n + m];
        out.cut[m] = (a - b).real();
    }
    return out;
}

OracleResult constraint_oracle(const DiracOperator& d, const SiteFunction& f,
                               const OptimizerConfig& cfg) {
    if (cfg.closed_form_constraint && d.family == DiracFamily::DMGeneralized)
        return dm_oracle(d.link, d.spec, f);
    return generic_oracle(d, f);
}

int site_of(int index, int n) { return index < n ? index : index - n; }

// Loose but valid bound on |f(m) - f(i)| for any feasible f: every nonzero
// coupling D(a,b) between distinct sites forces |f(s(b)) - f(s(a))| to stay
// below 1/|D(a,b)|, so twice the sum of the best such bounds over all coupled
// site pairs dominates any single path. Also detects a disconnected pair,
// for which the sup is unbounded.
double box_radius(const DiracOperator& d, int i, int j) {
    const int n = d.sites();
    std::vector<std::vector<double>> strength(n, std::vector<double>(n, 0.0));
    const double floor = 1e-14 * std::max(1.0, d.matrix.max_abs());
    for (int a = 0; a < 2 * n; ++a)
        for (int b = 0; b < 2 * n; ++b) {
            const double mag = std::abs(d.matrix(a, b));
            if (mag <= floor) continue;
            const int sa = site_of(a, n);
            const int sb = site_of(b, n);
            if (sa == sb) continue;
            strength[sa][sb] = std::max(strength[sa][sb], mag);
        }

    double total = 0.0;
    std::vector<char> reachable(n, 0);
    std::queue<int> frontier;
    frontier.push(i);
    reachable[i] = 1;
    while (!frontier.empty()) {
        const int s = frontier.front();
        frontier.pop();
        for (int t = 0; t < n; ++t) {
            if (strength[s][t] <= 0.0 || reachable[t]) continue;
            reachable[t] = 1;
            frontier.push(t);
        }
    }
    if (!reachable[j])
        throw std::runtime_error("numerical_distance: operator does not couple sites " +
                                 std::to_string(i) + " and " + std::to_string(j) +
                                 "; the distance is unbounded");
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t) {
            const double m = std::max(strength[s][t], strength[t][s]);
            if (m > 0.0) total += 1.0 / m;
        }
    return 2.0 * total + 1.0;
}

NumericalDistance make_zero_result(int n) {
    NumericalDistance out;
    out.converged = true;
    out.certificate.assign(n, 0.0);
    return out;
}

// Exact greedy solution on a truncated-line window: every slope clamps at
// its bound, so the profile climbing away from min(i,j) is optimal and the
// value is the plain ordered path sum, independent of window_pad.
NumericalDistance truncated_dm_greedy(const DiracOperator& d, int i, int j) {
    const int n = d.sites();
    const int lo = std::min(i, j);
    NumericalDistance out;
    out.certificate.assign(n, 0.0);
    for (int m = lo + 1; m < n; ++m)
        out.certificate[m] = out.certificate[m - 1] + spacing_at(d.link, m - 1);
    for (int m = lo - 1; m >= 0; --m)
        out.certificate[m] = out.certificate[m + 1] - spacing_at(d.link, m);
    out.value = out.certificate[std::max(i, j)];
    out.upper_bound = out.value;
    out.gap = 0.0;
    out.converged = true;
    out.constraint_value = dm_commutator_norm(d.link, d.spec, out.certificate);
    return out;
}

NumericalDistance kelley_optimize(const DiracOperator& d, int i, int j,
                                  const OptimizerConfig& cfg) {
    const int n = d.sites();
    const double radius = box_radius(d, i, j);

    // Gauge-fix f(i) = 0 (constants commute with everything) and optimise
    // over the remaining N-1 coordinates.
    const int dim = n - 1;
    auto project = [&](int site) { return site < i ? site : site - 1; };

    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (int m = 0; m < n; ++m) {
        if (m == i) continue;
        std::vector<double> up(dim, 0.0), down(dim, 0.0);
        up[project(m)] = 1.0;
        down[project(m)] = -1.0;
        rows.push_back(up);
        rhs.push_back(radius);
        rows.push_back(down);
        rhs.push_back(radius);
    }
    std::vector<double> objective(dim, 0.0);
    objective[project(j)] = 1.0;

    NumericalDistance out;
    out.certificate.assign(n, 0.0);
    double lb = 0.0;
    double ub = radius;
    SiteFunction best(n, 0.0);
    int cuts = 0;
    int since_progress = 0;

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        const LpResult lp = simplex_max(rows, rhs, objective);
        if (lp.status == LpResult::Status::Unbounded)
            throw std::runtime_error("numerical_distance: relaxation unbounded");

        SiteFunction f(n, 0.0);
        for (int m = 0; m < n; ++m)
            if (m != i) f[m] = lp.x[project(m)];

        const double prev_lb = lb;
        const double prev_ub = ub;
        ub = std::min(ub, lp.objective);
        const OracleResult oracle = constraint_oracle(d, f, cfg);
        out.iterations = iter + 1;

        if (oracle.g <= 1.0 + 1e-12) {
            // Feasible optimum of the outer relaxation: the sup is attained.
            if (lp.objective > lb) {
                lb = lp.objective;
                best = f;
            }
            ub = std::min(ub, std::max(lb, lp.objective));
            break;
        }

        const double scaled = lp.objective / oracle.g;
        if (scaled > lb) {
            lb = scaled;
            best = f;
            for (auto& x : best) x /= oracle.g;
        }
        if (ub - lb <= cfg.tol * std::max(lb, 1e-15)) break;

        since_progress = (lb > prev_lb || ub < prev_ub) ? 0 : since_progress + 1;
        if (since_progress >= cfg.stall_window) break;
        if (cuts + 2 > cfg.max_cuts) break;

        std::vector<double> cut_row(dim, 0.0), mirror(dim, 0.0);
        for (int m = 0; m < n; ++m) {
            if (m == i) continue;
            cut_row[project(m)] = oracle.cut[m];
            mirror[project(m)] = -oracle.cut[m];
        }
        rows.push_back(cut_row);
        rhs.push_back(1.0);
        rows.push_back(mirror);
        rhs.push_back(1.0);
        cuts += 2;
    }

    // Re-verify the certificate and rescale if accumulated roundoff pushed
    // it past the constraint.
    double gbest = constraint_oracle(d, best, cfg).g;
    if (gbest > 1.0 + 1e-10) {
        for (auto& x : best) x /= gbest;
        lb = best[j] - best[i];
        gbest = constraint_oracle(d, best, cfg).g;
    }

    out.value = lb;
    out.upper_bound = std::max(ub, lb);
    out.gap = (out.upper_bound - lb) / std::max(lb, 1e-15);
    out.converged = out.gap <= cfg.tol;
    out.certificate = best;
    out.constraint_value = gbest;
    return out;
}

}  // namespace

double directed_path_length(const LinkField& omega, const LatticeSpec& spec, int i, int j) {
    validate_link_field(omega, spec);
    spec.require_site(i);
    spec.require_site(j);
    if (i == j) return 0.0;
    double total = 0.0;
    if (spec.open_like()) {
        for (int k = std::min(i, j); k < std::max(i, j); ++k) total += spacing_at(omega, k);
        return total;
    }
    for (int k = i; k != j; k = spec.shift_target(k)) total += spacing_at(omega, k);
    return total;
}

double closed_form_distance(const LinkField& omega, const LatticeSpec& spec, int i, int j) {
    if (spec.open_like()) return directed_path_length(omega, spec, i, j);
    return std::min(directed_path_length(omega, spec, i, j),
                    directed_path_length(omega, spec, j, i));
}

SiteFunction saturating_function(const LinkField& omega, const LatticeSpec& spec, int i, int j) {
    validate_link_field(omega, spec);
    spec.require_site(i);
    spec.require_site(j);
    SiteFunction f(spec.sites, 0.0);
    if (spec.open_like()) {
        // One global profile saturates every pair on an open chain.
        for (int k = 1; k < spec.sites; ++k) f[k] = f[k - 1] + spacing_at(omega, k - 1);
        return f;
    }
    if (i == j)
        throw std::invalid_argument("saturating_function: cyclic construction needs i != j");

    int start = i, end = j;
    double l_short = directed_path_length(omega, spec, i, j);
    double l_long = directed_path_length(omega, spec, j, i);
    if (l_short > l_long) {
        std::swap(start, end);
        std::swap(l_short, l_long);
    }
    const double ratio = l_short / l_long;
    int k = start;
    while (k != end) {
        const int t = spec.shift_target(k);
        f[t] = f[k] + spacing_at(omega, k);
        k = t;
    }
    while (spec.shift_target(k) != start) {
        const int t = spec.shift_target(k);
        f[t] = f[k] - spacing_at(omega, k) * ratio;
        k = t;
    }
    return f;
}

NumericalDistance numerical_distance(const DiracOperator& d, int i, int j,
                                     const OptimizerConfig& cfg) {
    d.spec.validate();
    d.spec.require_site(i);
    d.spec.require_site(j);
    if (d.matrix.hermiticity_defect() > 1e-12 * std::max(1.0, d.matrix.max_abs()))
        throw std::invalid_argument("numerical_distance: operator is not self-adjoint");
    if (i == j) return make_zero_result(d.sites());

    if (d.spec.topology == Topology::TruncatedLine) {
        if (d.family == DiracFamily::DMGeneralized) return truncated_dm_greedy(d, i, j);

        // Comparison families have no path-locality guarantee; solve on the
        // pad window and report the (window-dependent) value.
        const int lo = std::max(0, std::min(i, j) - d.spec.window_pad);
        const int hi = std::min(d.spec.sites - 1, std::max(i, j) + d.spec.window_pad);
        const LatticeSpec window{Topology::Open, hi - lo + 1, 0};
        const DiracOperator sub = d.family == DiracFamily::Naive
                                      ? build_dirac_naive(window)
                                      : build_dirac_wilson(window, d.wilson_r);
        NumericalDistance res = kelley_optimize(sub, i - lo, j - lo, cfg);
        SiteFunction full(d.sites(), 0.0);
        for (int m = 0; m < d.sites(); ++m) full[m] = res.certificate[std::clamp(m, lo, hi) - lo];
        res.certificate = std::move(full);
        res.constraint_value = spectral_norm(commutator(d, res.certificate));
        return res;
    }

    return kelley_optimize(d, i, j, cfg);
}

namespace {

DistanceMatrix table_impl(const DiracOperator* op, const LinkField* omega,
                          const LatticeSpec& spec, DistanceMethod method,
                          const OptimizerConfig& cfg) {
    const int n = spec.sites;
    DistanceMatrix out;
    out.method = method;
    out.values.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double v = 0.0;
            try {
                switch (method) {
                    case DistanceMethod::ClosedForm:
                        v = closed_form_distance(*omega, spec, i, j);
                        break;
                    case DistanceMethod::Saturating: {
                        const SiteFunction f = saturating_function(*omega, spec, i, j);
                        v = std::abs(f[j] - f[i]);
                        break;
                    }
                    case DistanceMethod::Numerical:
                        v = numerical_distance(*op, i, j, cfg).value;
                        break;
                }
            } catch (const std::exception& e) {
                throw std::runtime_error("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                         "): " + e.what());
            }
            out.values[i][j] = v;
            out.values[j][i] = v;
        }
    }
    // Optimiser values are certified lower bounds, so triads can miss the
    // triangle inequality by up to twice the convergence gap.
    validate_metric(out, method == DistanceMethod::Numerical ? 1e-7 : 1e-9);
    return out;
}

}  // namespace

DistanceMatrix distance_table(const LinkField& omega, const LatticeSpec& spec,
                              DistanceMethod method, const OptimizerConfig& cfg) {
    validate_link_field(omega, spec);
    if (method == DistanceMethod::Numerical) {
        const DiracOperator d = build_dirac_dm(omega, spec);
        return table_impl(&d, &omega, spec, method, cfg);
    }
    return table_impl(nullptr, &omega, spec, method, cfg);
}

DistanceMatrix distance_table(const DiracOperator& d, DistanceMethod method,
                              const OptimizerConfig& cfg) {
    if (d.family == DiracFamily::DMGeneralized)
        return distance_table(d.link, d.spec, method, cfg);
    if (method != DistanceMethod::Numerical)
        throw std::invalid_argument(
            "distance_table: only the numerical method applies to comparison families");
    return table_impl(&d, nullptr, d.spec, method, cfg);
}

void validate_metric(const DistanceMatrix& m, double tol) {
    const int n = m.sites();
    for (int i = 0; i < n; ++i) {
        if ((int)m.values[i].size() != n)
            throw std::invalid_argument("distance matrix is not square");
        if (m.values[i][i] != 0.0)
            throw std::runtime_error("metric violation: nonzero diagonal at site " +
                                     std::to_string(i));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (m.values[i][j] < 0.0)
                throw std::runtime_error("metric violation: negative distance at (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");
            if (std::abs(m.values[i][j] - m.values[j][i]) > tol)
                throw std::runtime_error("metric violation: asymmetry at (" + std::to_string(i) +
                                         "," + std::to_string(j) + ")");
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double lhs = m.values[i][k];
                const double rhs = m.values[i][j] + m.values[j][k];
                if (lhs - rhs > tol * std::max(1.0, lhs))
                    throw std::runtime_error("metric violation: triangle inequality fails for (" +
                                             std::to_string(i) + "," + std::to_string(j) + "," +
                                             std::to_string(k) + ")");
            }
}

TriangleConditionReport triangle_condition_check(const LinkField& omega, const LatticeSpec& spec) {
    if (spec.topology != Topology::Cyclic)
        throw std::invalid_argument("triangle_condition_check: requires a cyclic lattice");
    validate_link_field(omega, spec);
    double total = 0.0;
    for (int k = 0; k < spec.sites; ++k) total += spacing_at(omega, k);

    TriangleConditionReport out;
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < spec.sites; ++k) {
        const double margin = total - 2.0 * spacing_at(omega, k);
        if (margin < out.worst_margin) {
            out.worst_margin = margin;
            out.worst_link = k;
        }
    }
    out.holds = out.worst_margin >= 0.0;
    const double a = spacing_at(omega, out.worst_link);
    out.actual_neighbor_distance = std::min(a, total - a);
    return out;
}

}  // namespace latdist
