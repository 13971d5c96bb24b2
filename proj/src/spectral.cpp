#include "latdist/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "latdist/eig.hpp"

namespace latdist {

CMatrix sigma1() {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

CMatrix sigma2() {
    CMatrix m(2, 2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

CMatrix sigma3() {
    CMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

CMatrix sigma_plus() {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;
    return m;
}

CMatrix sigma_minus() {
    CMatrix m(2, 2);
    m(1, 0) = 1.0;
    return m;
}

DiracOperator build_dirac_dm(const LinkField& omega, const LatticeSpec& spec) {
    validate_link_field(omega, spec);
    const int n = spec.sites;
    CMatrix d(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        if (!spec.link_used(k)) continue;
        const int target = spec.shift_target(k);
        const cplx w = omega.values[k];
        d(k, n + target) = w;             // diag(omega) T on the upper-right block
        d(n + target, k) = std::conj(w);  // its adjoint on the lower-left block
    }
    return DiracOperator{std::move(d), DiracFamily::DMGeneralized, spec, omega, 1.0};
}

DiracOperator build_dirac_naive(const LatticeSpec& spec) {
    spec.validate();
    const int n = spec.sites;
    CMatrix d(2 * n, 2 * n);
    const cplx half_i(0.0, 0.5);
    for (int k = 0; k < n; ++k) {
        const int target = spec.shift_target(k);
        if (target < 0) continue;
        // i(T - T^dagger)/2 on both off-diagonal blocks; the i keeps the
        // whole operator self-adjoint.
        d(k, n + target) += half_i;
        d(target, n + k) -= half_i;
        d(n + k, target) += half_i;
        d(n + target, k) -= half_i;
    }
    return DiracOperator{std::move(d), DiracFamily::Naive, spec, LinkField{}, 1.0};
}

DiracOperator build_dirac_wilson(const LatticeSpec& spec, double r) {
    DiracOperator op = build_dirac_naive(spec);
    const int n = spec.sites;
    // (r/2)(2 - T - T^dagger) on both diagonal blocks.
    for (int k = 0; k < n; ++k) {
        op.matrix(k, k) += r;
        op.matrix(n + k, n + k) += r;
        const int target = spec.shift_target(k);
        if (target < 0) continue;
        op.matrix(k, target) -= 0.5 * r;
        op.matrix(target, k) -= 0.5 * r;
        op.matrix(n + k, n + target) -= 0.5 * r;
        op.matrix(n + target, n + k) -= 0.5 * r;
    }
    op.family = DiracFamily::Wilson;
    op.wilson_r = r;
    return op;
}

namespace {

template <typename Scalar>
CMatrix site_diagonal_impl(const std::vector<Scalar>& f) {
    const int n = (int)f.size();
    CMatrix m(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        m(k, k) = f[k];
        m(n + k, n + k) = f[k];
    }
    return m;
}

void require_matching_sites(const DiracOperator& d, std::size_t f_size) {
    if ((int)f_size != d.sites())
        throw std::invalid_argument("site function has " + std::to_string(f_size) +
                                    " entries, operator lattice has " +
                                    std::to_string(d.sites()));
}

}  // namespace

CMatrix site_diagonal(const SiteFunction& f) { return site_diagonal_impl(f); }
CMatrix site_diagonal(const std::vector<cplx>& f) { return site_diagonal_impl(f); }

CMatrix commutator(const DiracOperator& d, const SiteFunction& f) {
    require_matching_sites(d, f.size());
    const CMatrix fm = site_diagonal(f);
    return d.matrix * fm - fm * d.matrix;
}

CMatrix commutator(const DiracOperator& d, const std::vector<cplx>& f) {
    require_matching_sites(d, f.size());
    const CMatrix fm = site_diagonal(f);
    return d.matrix * fm - fm * d.matrix;
}

FHamiltonian f_hamiltonian(const DiracOperator& d, const SiteFunction& f) {
    const CMatrix c = commutator(d, f);
    return FHamiltonian{c.adjoint() * c};
}

double spectral_norm(const CMatrix& m) {
    if (!m.square()) throw std::invalid_argument("spectral_norm: matrix not square");
    if (!m.all_finite()) throw std::invalid_argument("spectral_norm: non-finite entries");
    if (m.rows() == 0 || m.max_abs() == 0.0) return 0.0;
    const double top = max_eigenvalue(m.adjoint() * m);
    return std::sqrt(std::max(0.0, top));
}

double dm_commutator_norm(const LinkField& omega, const LatticeSpec& spec,
                          const SiteFunction& f) {
    validate_link_field(omega, spec);
    if ((int)f.size() != spec.sites)
        throw std::invalid_argument("dm_commutator_norm: size mismatch");
    double worst = 0.0;
    for (int k = 0; k < spec.sites; ++k) {
        if (!spec.link_used(k)) continue;
        const int target = spec.shift_target(k);
        worst = std::max(worst, std::abs(omega.values[k]) * std::abs(f[target] - f[k]));
    }
    return worst;
}

SpinorField apply(const DiracOperator& d, const SpinorField& psi) {
    if (psi.sites() != d.sites())
        throw std::invalid_argument("apply: spinor/operator size mismatch");
    const int n = d.sites();
    std::vector<cplx> flat(2 * n);
    for (int k = 0; k < n; ++k) {
        flat[k] = psi.upper[k];
        flat[n + k] = psi.lower[k];
    }
    const std::vector<cplx> out = d.matrix * flat;
    SpinorField result;
    result.upper.assign(out.begin(), out.begin() + n);
    result.lower.assign(out.begin() + n, out.end());
    return result;
}

cplx quadratic_form(const DiracOperator& d, const SpinorField& psi) {
    return inner_product(psi, apply(d, psi));
}

}  // namespace latdist
