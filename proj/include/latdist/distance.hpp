#pragma once

#include <vector>

#include "latdist/algebra.hpp"
#include "latdist/lattice.hpp"
#include "latdist/spectral.hpp"

namespace latdist {

enum class DistanceMethod {
    ClosedForm,  // directed path sums of the spacings 1/|omega|
    Numerical,   // sup of f(j)-f(i) over the commutator-norm unit ball
    Saturating,  // explicit extremal test function, evaluated at the pair
};

struct OptimizerConfig {
    double tol = 1e-8;     // relative certified gap accepted as converged
    int max_iters = 50000; // cutting-plane iteration cap
    int max_cuts = 512;    // LP size guard
    int stall_window = 100;
    // DM family only: evaluate the constraint by its max-slope form instead
    // of the dense eigensolver. The two routes agree (the unit tests pin
    // this); the max-slope form is O(N) per evaluation.
    bool closed_form_constraint = true;
};

// Result of the numerical sup. `value` is always a valid lower bound
// attained by `certificate`, which satisfies the norm constraint to 1e-10;
// `upper_bound` comes from the outer relaxation, so value <= sup <= upper_bound
// up to roundoff. Non-convergence is reported, not thrown: the best feasible
// value is still meaningful.
struct NumericalDistance {
    double value = 0.0;
    double upper_bound = 0.0;
    double gap = 0.0;
    int iterations = 0;
    bool converged = false;
    SiteFunction certificate;
    double constraint_value = 0.0;
};

// Directed arc length l(i,j): the sum of inverse link amplitudes walking
// from i forward to j. On open-like chains the walk runs from min(i,j) up to
// max(i,j); on a cycle it wraps.
double directed_path_length(const LinkField& omega, const LatticeSpec& spec, int i, int j);

// Open/TruncatedLine: the path sum between the two sites.
// Cyclic: min of the two directed arc lengths.
// Always d(i,i) = 0 and d(i, i+1) = 1/|omega(i)|.
double closed_form_distance(const LinkField& omega, const LatticeSpec& spec, int i, int j);

// Extremal test function for the pair. Its commutator norm is <= 1 (up to
// a few ulp) and |f(j) - f(i)| reproduces the closed-form distance. On a
// cycle the function climbs the shorter arc at full slope and descends the
// longer arc at slope scaled by l_short/l_long; the tie uses scale 1.
SiteFunction saturating_function(const LinkField& omega, const LatticeSpec& spec, int i, int j);

// Numerical evaluation of the sup by cutting planes: an outer LP relaxation
// is tightened with subgradient cuts taken from the top singular pair of the
// commutator (or from the maximising link, for the DM fast path), while
// radial scaling of each LP iterate yields feasible inner certificates. The
// pair of bounds gives a certified gap.
//
// On a TruncatedLine lattice the DM family takes the exact greedy route
// (clamping every slope at its bound, which is optimal on any open chain),
// so the result cannot depend on window_pad; other families are solved on
// the window [min(i,j)-pad, max(i,j)+pad] and are window-dependent.
NumericalDistance numerical_distance(const DiracOperator& d, int i, int j,
                                     const OptimizerConfig& cfg = {});

struct DistanceMatrix {
    std::vector<std::vector<double>> values;
    DistanceMethod method = DistanceMethod::ClosedForm;

    int sites() const { return (int)values.size(); }
};

// All-pairs table for the DM operator of the given link field. Validates
// the metric axioms before returning. Per-pair failures are rethrown with
// the pair attached.
DistanceMatrix distance_table(const LinkField& omega, const LatticeSpec& spec,
                              DistanceMethod method, const OptimizerConfig& cfg = {});

// All-pairs table for an arbitrary operator; only the numerical method is
// available for the comparison families.
DistanceMatrix distance_table(const DiracOperator& d, DistanceMethod method,
                              const OptimizerConfig& cfg = {});

// Zero diagonal, symmetry, nonnegativity and every triangle inequality.
// Throws with the offending pair/triple when violated beyond tol.
void validate_metric(const DistanceMatrix& m, double tol = 1e-9);

// Checks |omega(k)|^-1 <= sum of all other inverse amplitudes for every link
// of a cycle. When it holds, every nearest-neighbour distance equals its own
// inverse amplitude; when it fails, the reported link's neighbour distance
// is the complementary path sum instead.
struct TriangleConditionReport {
    bool holds = false;
    double worst_margin = 0.0;
    int worst_link = -1;
    double actual_neighbor_distance = 0.0;
};

TriangleConditionReport triangle_condition_check(const LinkField& omega, const LatticeSpec& spec);

}  // namespace latdist
