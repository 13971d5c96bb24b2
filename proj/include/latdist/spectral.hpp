#pragma once

#include <vector>

#include "latdist/algebra.hpp"
#include "latdist/complexmat.hpp"
#include "latdist/lattice.hpp"

namespace latdist {

// Pauli matrices and the ladder combinations sigma+- = (sigma1 +- i sigma2)/2.
// Block convention throughout: a spinor is stored as (upper block, lower
// block), so sigma+ maps the lower component into the upper one.
CMatrix sigma1();
CMatrix sigma2();
CMatrix sigma3();
CMatrix sigma_plus();
CMatrix sigma_minus();

enum class DiracFamily {
    DMGeneralized,  // omega T sigma+ + T^dagger conj(omega) sigma-
    Naive,          // symmetric difference, for non-Euclidean comparisons only
    Wilson,         // naive plus second-difference term with parameter r
};

// Self-adjoint 2N x 2N operator on the spinor space, together with the data
// it was built from. The link field is retained for the DM family so that
// closed-form constraint evaluations do not have to dig it back out of the
// matrix.
struct DiracOperator {
    CMatrix matrix;
    DiracFamily family = DiracFamily::DMGeneralized;
    LatticeSpec spec;
    LinkField link;        // DMGeneralized only
    double wilson_r = 1.0;  // Wilson only

    int sites() const { return spec.sites; }
};

// D(omega): upper-right block diag(omega) T, lower-left block the adjoint.
// Setting omega identically 1 recovers the free operator T sigma+ + T^dag sigma-.
DiracOperator build_dirac_dm(const LinkField& omega, const LatticeSpec& spec);

// Symmetric-difference operator i(T - T^dagger)/2 placed on both off-diagonal
// blocks. The i makes the whole operator self-adjoint. Comparison family; no
// closed-form distance is claimed for it.
DiracOperator build_dirac_naive(const LatticeSpec& spec);

// Naive operator plus (r/2)(2 - T - T^dagger) on both diagonal blocks.
DiracOperator build_dirac_wilson(const LatticeSpec& spec, double r = 1.0);

// diag(f) acting identically on both spinor components.
CMatrix site_diagonal(const SiteFunction& f);
CMatrix site_diagonal(const std::vector<cplx>& f);

// [D, f] with f acting diagonally on both components.
CMatrix commutator(const DiracOperator& d, const SiteFunction& f);
// Complex test functions are only used by the optimality spot checks.
CMatrix commutator(const DiracOperator& d, const std::vector<cplx>& f);

// The f-Hamiltonian [D,f]^dagger [D,f]: Hermitian, positive semidefinite,
// and block-diagonal for the DM family.
struct FHamiltonian {
    CMatrix matrix;
};

FHamiltonian f_hamiltonian(const DiracOperator& d, const SiteFunction& f);

// Operator (largest singular value) norm of a square complex matrix,
// computed from the top eigenvalue of M^dagger M.
double spectral_norm(const CMatrix& m);

// Closed-form commutator norm for the DM family:
// max over used links of |omega(k)| * |f(sigma(k)) - f(k)|.
// Equals spectral_norm(commutator(D(omega), f)); the equality is exercised
// by the test suite as a cross-check between the two routes.
double dm_commutator_norm(const LinkField& omega, const LatticeSpec& spec,
                          const SiteFunction& f);

// D psi as a spinor, and the quadratic form (psi, D psi).
SpinorField apply(const DiracOperator& d, const SpinorField& psi);
cplx quadratic_form(const DiracOperator& d, const SpinorField& psi);

}  // namespace latdist
