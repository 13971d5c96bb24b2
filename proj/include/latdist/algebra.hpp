#pragma once

#include <vector>

#include "latdist/complexmat.hpp"
#include "latdist/lattice.hpp"

namespace latdist {

// One complex scalar per site, attached to the link leaving that site in the
// shift direction. Carries units of inverse length: 1/|omega(k)| is the local
// spacing between sites k and k+1, arg(omega) the integrated U(1) potential.
// Need not be unitary; it must be non-singular (nonzero) on every used link.
struct LinkField {
    std::vector<cplx> values;

    int size() const { return static_cast<int>(values.size()); }
};

// Throws with the offending index if any used link vanishes (or any entry is
// non-finite). The last entry of an open chain is not a used link.
void validate_link_field(const LinkField& omega, const LatticeSpec& spec);

// omega(k) = spacing(k)^-1 * exp(i * spacing(k) * phase_potential(k)).
// spacing is the lattice spacing function a_+ (length units), phase_potential
// the U(1) potential A (inverse length). A is fixed to the branch with
// spacing * A in (-pi, pi]; it is only defined modulo 2*pi/spacing.
struct PolarizedLink {
    std::vector<double> spacing;
    std::vector<double> phase_potential;
};

PolarizedLink polar_decompose(const LinkField& omega, const LatticeSpec& spec);

// Inverse of polar_decompose. Entries with spacing == 0 (the unused slot of
// an open chain when the input link vanished there) map back to 0.
LinkField reconstruct(const PolarizedLink& polar);

// Two-component spinor: one (upper, lower) pair of complex scalars per site.
struct SpinorField {
    std::vector<cplx> upper;
    std::vector<cplx> lower;

    int sites() const { return static_cast<int>(upper.size()); }
};

// Unitary element of the site algebra, |u(k)| = 1 everywhere.
struct GaugeTransform {
    std::vector<cplx> u;

    int size() const { return static_cast<int>(u.size()); }
};

void validate_gauge(const GaugeTransform& g);

// omega'(k) = u(k) * omega(k) * conj(u(sigma(k))). Cyclic lattices use the
// wrapped neighbour; open chains leave the unused last entry untouched.
// Amplitudes are pointwise invariant, and on a cycle the Wilson loop of the
// phases is invariant.
LinkField gauge_transform_link(const LinkField& omega, const GaugeTransform& g,
                               const LatticeSpec& spec);

// psi -> u psi, both components multiplied pointwise. Norm preserving.
SpinorField gauge_transform_spinor(const SpinorField& psi, const GaugeTransform& g);

// Algebra-valued hermitian pairing <psi, phi>(k), one complex value per site.
std::vector<cplx> local_pairing(const SpinorField& psi, const SpinorField& phi);

// Scalar inner product (psi, phi): the local pairing summed over sites.
cplx inner_product(const SpinorField& psi, const SpinorField& phi);

// Product of the link phases omega(k)/|omega(k)| around the cycle.
cplx wilson_loop(const LinkField& omega, const LatticeSpec& spec);

struct IsometryReport {
    bool isometric = false;
    double deviation = 0.0;
};

// Checks that the phase-only transport U = diag(omega/|omega|) T satisfies
// U^dagger U = T^dagger T, i.e. transports spinors isometrically. Only the
// phase of the link enters, so this holds for any non-singular amplitude.
IsometryReport transport_isometry_check(const LinkField& omega, const LatticeSpec& spec);

}  // namespace latdist
