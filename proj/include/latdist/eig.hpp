#pragma once

#include <vector>

#include "latdist/complexmat.hpp"

namespace latdist {

// Eigendecomposition of a Hermitian matrix. `values` are ascending;
// column k of `vectors` is the eigenvector for values[k].
struct EigenSystem {
    std::vector<double> values;
    CMatrix vectors;
};

// Cyclic-by-rows complex Jacobi diagonalisation. Convergence is declared
// when the off-diagonal Frobenius mass drops below 1e-13 relative to the
// Frobenius norm of the input. Dense O(n^3) per sweep, which is irrelevant
// at the 2N <= 64 sizes this project works at.
EigenSystem hermitian_eigensystem(const CMatrix& a, bool with_vectors = true);

// Largest eigenvalue of a Hermitian matrix.
double max_eigenvalue(const CMatrix& a);

}  // namespace latdist
