#include "latdist/algebra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace latdist {

namespace {

constexpr double kUnitTol = 1e-10;

void require_sites(const LatticeSpec& spec, int n, const char* what) {
    if (n != spec.sites)
        throw std::invalid_argument(std::string(what) + ": has " + std::to_string(n) +
                                    " entries, lattice has " + std::to_string(spec.sites));
}

}  // namespace

void validate_link_field(const LinkField& omega, const LatticeSpec& spec) {
    spec.validate();
    require_sites(spec, omega.size(), "link field");
    for (int k = 0; k < omega.size(); ++k) {
        const cplx w = omega.values[k];
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
            throw std::invalid_argument("link field: non-finite value at link " +
                                        std::to_string(k));
        if (spec.link_used(k) && std::abs(w) == 0.0)
            throw std::invalid_argument("link field: singular link at index " +
                                        std::to_string(k));
    }
}

PolarizedLink polar_decompose(const LinkField& omega, const LatticeSpec& spec) {
    validate_link_field(omega, spec);
    PolarizedLink out;
    out.spacing.resize(omega.values.size(), 0.0);
    out.phase_potential.resize(omega.values.size(), 0.0);
    for (std::size_t k = 0; k < omega.values.size(); ++k) {
        const cplx w = omega.values[k];
        const double amp = std::abs(w);
        if (amp == 0.0) continue;  // unused open-chain slot stays (0, 0)
        double arg = std::arg(w);
        if (arg <= -std::numbers::pi) arg += 2.0 * std::numbers::pi;
        out.spacing[k] = 1.0 / amp;
        // spacing * A = arg(omega), so A = arg(omega) * |omega|
        out.phase_potential[k] = arg * amp;
    }
    return out;
}

LinkField reconstruct(const PolarizedLink& polar) {
    if (polar.spacing.size() != polar.phase_potential.size())
        throw std::invalid_argument("reconstruct: spacing/phase length mismatch");
    LinkField out;
    out.values.resize(polar.spacing.size(), cplx(0.0, 0.0));
    for (std::size_t k = 0; k < polar.spacing.size(); ++k) {
        const double a = polar.spacing[k];
        if (a == 0.0) continue;
        if (!(a > 0.0))
            throw std::invalid_argument("reconstruct: spacing must be positive at link " +
                                        std::to_string(k));
        out.values[k] = std::polar(1.0 / a, a * polar.phase_potential[k]);
    }
    return out;
}

void validate_gauge(const GaugeTransform& g) {
    for (int k = 0; k < g.size(); ++k) {
        if (!(std::abs(std::abs(g.u[k]) - 1.0) <= kUnitTol))
            throw std::invalid_argument("gauge transform: |u| != 1 at site " + std::to_string(k));
    }
}

LinkField gauge_transform_link(const LinkField& omega, const GaugeTransform& g,
                               const LatticeSpec& spec) {
    validate_link_field(omega, spec);
    validate_gauge(g);
    require_sites(spec, g.size(), "gauge transform");
    LinkField out = omega;
    for (int k = 0; k < spec.sites; ++k) {
        if (!spec.link_used(k)) continue;
        const int target = spec.shift_target(k);
        out.values[k] = g.u[k] * omega.values[k] * std::conj(g.u[target]);
    }
    return out;
}

SpinorField gauge_transform_spinor(const SpinorField& psi, const GaugeTransform& g) {
    validate_gauge(g);
    if (psi.upper.size() != psi.lower.size())
        throw std::invalid_argument("spinor: component length mismatch");
    if (psi.sites() != g.size())
        throw std::invalid_argument("gauge transform: spinor has " + std::to_string(psi.sites()) +
                                    " sites, u has " + std::to_string(g.size()));
    SpinorField out = psi;
    for (std::size_t k = 0; k < psi.upper.size(); ++k) {
        out.upper[k] *= g.u[k];
        out.lower[k] *= g.u[k];
    }
    return out;
}

std::vector<cplx> local_pairing(const SpinorField& psi, const SpinorField& phi) {
    if (psi.sites() != phi.sites() || psi.upper.size() != psi.lower.size() ||
        phi.upper.size() != phi.lower.size())
        throw std::invalid_argument("local_pairing: size mismatch");
    std::vector<cplx> out(psi.upper.size(), cplx(0.0, 0.0));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = std::conj(psi.upper[k]) * phi.upper[k] + std::conj(psi.lower[k]) * phi.lower[k];
    return out;
}

cplx inner_product(const SpinorField& psi, const SpinorField& phi) {
    cplx s(0.0, 0.0);
    for (const cplx& v : local_pairing(psi, phi)) s += v;
    return s;
}

cplx wilson_loop(const LinkField& omega, const LatticeSpec& spec) {
    if (spec.topology != Topology::Cyclic)
        throw std::invalid_argument("wilson_loop: only defined on a cyclic lattice");
    validate_link_field(omega, spec);
    cplx loop(1.0, 0.0);
    for (int k = 0; k < spec.sites; ++k) {
        const cplx w = omega.values[k];
        loop *= w / std::abs(w);
    }
    return loop;
}

IsometryReport transport_isometry_check(const LinkField& omega, const LatticeSpec& spec) {
    validate_link_field(omega, spec);
    const CMatrix t = build_shift(spec).matrix;
    std::vector<cplx> phases(omega.values.size(), cplx(1.0, 0.0));
    for (int k = 0; k < spec.sites; ++k) {
        if (!spec.link_used(k)) continue;  // multiplies a zero row of T anyway
        phases[k] = omega.values[k] / std::abs(omega.values[k]);
    }
    const CMatrix u = diag_matrix(phases) * t;
    const double deviation = (u.adjoint() * u).max_abs_diff(t.adjoint() * t);
    return IsometryReport{deviation <= 1e-12, deviation};
}

}  // namespace latdist
