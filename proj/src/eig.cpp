#include "latdist/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace latdist {

namespace {

double offdiagonal_mass(const CMatrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.rows(); ++p)
        for (int q = 0; q < a.cols(); ++q)
            if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eigensystem(const CMatrix& input, bool with_vectors) {
    if (!input.square()) throw std::invalid_argument("hermitian_eigensystem: matrix not square");
    if (!input.all_finite()) throw std::invalid_argument("hermitian_eigensystem: non-finite entries");
    const int n = input.rows();
    const double scale = std::max(1.0, input.frobenius_norm());
    if (input.hermiticity_defect() > 1e-10 * scale)
        throw std::invalid_argument("hermitian_eigensystem: matrix not Hermitian");

    // Work on the exactly Hermitian average (A + A^dagger)/2 so roundoff in
    // the caller's assembly cannot leak into the rotations.
    CMatrix a(n, n);
    for (int p = 0; p < n; ++p) {
        a(p, p) = cplx(input(p, p).real(), 0.0);
        for (int q = p + 1; q < n; ++q) {
            const cplx v = 0.5 * (input(p, q) + std::conj(input(q, p)));
            a(p, q) = v;
            a(q, p) = std::conj(v);
        }
    }

    CMatrix v = with_vectors ? CMatrix::identity(n) : CMatrix();

    const double threshold = 1e-13 * scale;
    const int max_sweeps = 80;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (offdiagonal_mass(a) <= threshold) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double beta = std::abs(apq);
                if (beta <= 1e-300) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                // Phase that makes the (p,q) entry real, then the standard
                // symmetric Schur rotation on the resulting 2x2 block.
                const cplx phase = apq / beta;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * beta);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx u_pq = s * phase;              // U(p,q)
                const cplx u_qp = -s * std::conj(phase);  // U(q,p)

                // A <- A U (columns p and q).
                for (int r = 0; r < n; ++r) {
                    const cplx arp = a(r, p);
                    const cplx arq = a(r, q);
                    a(r, p) = arp * c + arq * u_qp;
                    a(r, q) = arp * u_pq + arq * c;
                }
                // A <- U^dagger A (rows p and q).
                for (int r = 0; r < n; ++r) {
                    const cplx apr = a(p, r);
                    const cplx aqr = a(q, r);
                    a(p, r) = c * apr + std::conj(u_qp) * aqr;
                    a(q, r) = std::conj(u_pq) * apr + c * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);

                if (with_vectors) {
                    for (int r = 0; r < n; ++r) {
                        const cplx vrp = v(r, p);
                        const cplx vrq = v(r, q);
                        v(r, p) = vrp * c + vrq * u_qp;
                        v(r, q) = vrp * u_pq + vrq * c;
                    }
                }
            }
        }
    }
    if (sweep == max_sweeps)
        throw std::runtime_error("hermitian_eigensystem: Jacobi sweeps did not converge");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out;
    out.values.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out.values[static_cast<std::size_t>(k)] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
    if (with_vectors) {
        out.vectors = CMatrix(n, n);
        for (int k = 0; k < n; ++k)
            for (int r = 0; r < n; ++r)
                out.vectors(r, k) = v(r, order[static_cast<std::size_t>(k)]);
    }
    return out;
}

double max_eigenvalue(const CMatrix& a) {
    return hermitian_eigensystem(a, false).values.back();
}

}  // namespace latdist
