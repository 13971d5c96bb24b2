#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "latdist/lattice.hpp"
#include "latdist/sampling.hpp"
#include "test_util.hpp"

using namespace latdist;
using latdist::testutil::matrices_close;

TEST_CASE("open shift matrix, two sites") {
    const ShiftOperator t = build_shift({Topology::Open, 2, 2});
    CMatrix expected(2, 2);
    expected(0, 1) = 1.0;
    CHECK(matrices_close(t.matrix, expected, 0.0));
}

TEST_CASE("cyclic shift is the one-step permutation and has order N") {
    const ShiftOperator t = build_shift({Topology::Cyclic, 3, 2});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(t.matrix(i, j) == (j == (i + 1) % 3 ? cplx(1.0) : cplx(0.0)));
    const CMatrix cubed = t.matrix * t.matrix * t.matrix;
    CHECK(matrices_close(cubed, CMatrix::identity(3), 0.0));
    CHECK(matrices_close(t.matrix * t.matrix.adjoint(), CMatrix::identity(3), 0.0));
    CHECK(matrices_close(t.matrix.adjoint() * t.matrix, CMatrix::identity(3), 0.0));
}

TEST_CASE("open shift is nilpotent: T^N = 0") {
    const ShiftOperator t = build_shift({Topology::Open, 4, 2});
    CMatrix power = CMatrix::identity(4);
    for (int k = 0; k < 4; ++k) power = power * t.matrix;
    CHECK(power.max_abs() == 0.0);
}

TEST_CASE("open shift projector identities") {
    const ShiftOperator t = build_shift({Topology::Open, 5, 2});
    const CMatrix tdt = t.matrix.adjoint() * t.matrix;  // diag(0,1,...,1)
    const CMatrix ttd = t.matrix * t.matrix.adjoint();  // diag(1,...,1,0)
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const cplx want_tdt = (i == j && i > 0) ? cplx(1.0) : cplx(0.0);
            const cplx want_ttd = (i == j && i < 4) ? cplx(1.0) : cplx(0.0);
            CHECK(tdt(i, j) == want_tdt);
            CHECK(ttd(i, j) == want_ttd);
        }
}

TEST_CASE("shift rejects undersized lattices") {
    CHECK_THROWS_AS(build_shift({Topology::Open, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(build_shift({Topology::Cyclic, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(build_shift({Topology::TruncatedLine, 4, -1}), std::invalid_argument);
}

TEST_CASE("forward difference matches the boundary conventions") {
    const SiteFunction f{0.0, 1.0, 3.0};
    const SiteFunction open = forward_diff({Topology::Open, 3, 2}, f);
    CHECK(open == SiteFunction{1.0, 2.0, 0.0});
    const SiteFunction cyc = forward_diff({Topology::Cyclic, 3, 2}, f);
    CHECK(cyc == SiteFunction{1.0, 2.0, -3.0});
}

TEST_CASE("backward difference matches the boundary conventions") {
    const SiteFunction f{0.0, 1.0, 3.0};
    const SiteFunction open = backward_diff({Topology::Open, 3, 2}, f);
    CHECK(open == SiteFunction{0.0, -1.0, -2.0});

    const SiteFunction two = backward_diff({Topology::Open, 2, 2}, SiteFunction{7.0, 4.0});
    CHECK(two == SiteFunction{0.0, 3.0});

    const SiteFunction cyc = backward_diff({Topology::Cyclic, 3, 2}, SiteFunction{5.0, 5.0, 5.0});
    CHECK(cyc == SiteFunction{0.0, 0.0, 0.0});
}

TEST_CASE("difference of a constant vanishes on every topology") {
    for (const Topology topo : {Topology::Open, Topology::Cyclic, Topology::TruncatedLine}) {
        const LatticeSpec spec{topo, 6, 2};
        const SiteFunction c(6, 3.25);
        for (const double v : forward_diff(spec, c)) CHECK(v == 0.0);
        for (const double v : backward_diff(spec, c)) CHECK(v == 0.0);
    }
}

TEST_CASE("difference operators reject size mismatches") {
    CHECK_THROWS_AS(forward_diff({Topology::Open, 3, 2}, SiteFunction{1.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(backward_diff({Topology::Cyclic, 4, 2}, SiteFunction(5, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("cyclic forward differences telescope to zero") {
    Rng rng(11);
    const LatticeSpec spec{Topology::Cyclic, 9, 2};
    for (int trial = 0; trial < 50; ++trial) {
        const SiteFunction f = random_site_function(rng, 9, -5.0, 5.0);
        double sum = 0.0;
        for (const double v : forward_diff(spec, f)) sum += v;
        CHECK(std::abs(sum) < 1e-13);
    }
}

TEST_CASE("forward difference ignores constant offsets") {
    Rng rng(12);
    for (const Topology topo : {Topology::Open, Topology::Cyclic}) {
        const LatticeSpec spec{topo, 7, 2};
        const SiteFunction f = random_site_function(rng, 7);
        SiteFunction shifted = f;
        for (double& v : shifted) v += 0.75;
        CHECK(forward_diff(spec, f) == forward_diff(spec, shifted));
    }
}

TEST_CASE("cyclic shift preserves the norm, open shift contracts") {
    Rng rng(13);
    const int n = 8;
    for (int trial = 0; trial < 30; ++trial) {
        const SiteFunction f = random_site_function(rng, n, -2.0, 2.0);
        std::vector<cplx> v(f.begin(), f.end());
        auto norm = [](const std::vector<cplx>& x) {
            double s = 0.0;
            for (const cplx& e : x) s += std::norm(e);
            return std::sqrt(s);
        };
        const std::vector<cplx> cyc = build_shift({Topology::Cyclic, n, 2}).matrix * v;
        CHECK(std::abs(norm(cyc) - norm(v)) < 1e-12);
        const std::vector<cplx> open = build_shift({Topology::Open, n, 2}).matrix * v;
        CHECK(norm(open) <= norm(v) + 1e-12);
    }
}
