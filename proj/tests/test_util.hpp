#pragma once

#include <cmath>

#include "latdist/complexmat.hpp"

namespace latdist::testutil {

inline bool matrices_close(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return a.max_abs_diff(b) <= tol;
}

inline double rel_dev(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-15});
}

}  // namespace latdist::testutil
