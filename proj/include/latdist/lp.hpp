#pragma once

#include <vector>

#include "latdist/complexmat.hpp"

namespace latdist {

// Outcome of a linear program solve.
struct LpResult {
    enum class Status { Optimal, Unbounded, IterationLimit };
    Status status = Status::IterationLimit;
    double objective = 0.0;
    std::vector<double> x;
};

// Maximises c.x subject to A x <= b over free x, with every b >= 0 so that
// x = 0 is feasible and no phase-1 is needed. Dense tableau simplex with
// Dantzig pricing and a Bland fallback against cycling; sized for the few
// hundred rows and columns the distance optimiser produces.
LpResult simplex_max(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c);

}  // namespace latdist
