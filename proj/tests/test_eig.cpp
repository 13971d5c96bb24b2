#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "latdist/eig.hpp"
#include "latdist/sampling.hpp"
#include "test_util.hpp"

using namespace latdist;

namespace {

CMatrix random_hermitian(Rng& rng, int n) {
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = rng.uniform(-2.0, 2.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    return a;
}

}  // namespace

TEST_CASE("diagonal matrices come back sorted") {
    CMatrix a(3, 3);
    a(0, 0) = 4.0;
    a(1, 1) = -1.0;
    a(2, 2) = 2.5;
    const EigenSystem es = hermitian_eigensystem(a);
    REQUIRE(es.values.size() == 3);
    CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(es.values[1] == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(es.values[2] == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("known 2x2 spectra") {
    CMatrix a(2, 2);
    a(0, 0) = 2.0;
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    a(1, 1) = 2.0;
    const EigenSystem es = hermitian_eigensystem(a);
    CHECK(es.values[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(es.values[1] == doctest::Approx(3.0).epsilon(1e-13));

    CMatrix b(2, 2);  // pauli sigma_2
    b(0, 1) = cplx(0.0, -1.0);
    b(1, 0) = cplx(0.0, 1.0);
    const EigenSystem es2 = hermitian_eigensystem(b);
    CHECK(es2.values[0] == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(es2.values[1] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("random Hermitian: residuals, orthonormality, trace identities") {
    Rng rng(101);
    for (const int n : {2, 5, 12, 24}) {
        const CMatrix a = random_hermitian(rng, n);
        const EigenSystem es = hermitian_eigensystem(a);

        const double scale = std::max(1.0, a.frobenius_norm());
        for (int k = 0; k < n; ++k) {
            std::vector<cplx> v(n);
            for (int r = 0; r < n; ++r) v[r] = es.vectors(r, k);
            const std::vector<cplx> av = a * v;
            double res = 0.0;
            for (int r = 0; r < n; ++r) res = std::max(res, std::abs(av[r] - es.values[k] * v[r]));
            CHECK(res < 1e-11 * scale);
        }

        const CMatrix gram = es.vectors.adjoint() * es.vectors;
        CHECK(gram.max_abs_diff(CMatrix::identity(n)) < 1e-12);

        double trace = 0.0, frob2 = 0.0, sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < n; ++i) trace += a(i, i).real();
        frob2 = a.frobenius_norm() * a.frobenius_norm();
        for (const double v : es.values) {
            sum += v;
            sum2 += v * v;
        }
        CHECK(std::abs(trace - sum) < 1e-11 * scale);
        CHECK(std::abs(frob2 - sum2) < 1e-10 * scale * scale);
        for (std::size_t k = 1; k < es.values.size(); ++k) CHECK(es.values[k - 1] <= es.values[k]);
    }
}

TEST_CASE("rejects non-Hermitian and non-finite input") {
    CMatrix a(2, 2);
    a(0, 1) = 1.0;  // missing conjugate partner
    CHECK_THROWS_AS(hermitian_eigensystem(a), std::invalid_argument);

    CMatrix b(2, 2);
    b(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(hermitian_eigensystem(b), std::invalid_argument);
}
