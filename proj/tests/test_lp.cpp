#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "latdist/lp.hpp"
#include "latdist/sampling.hpp"

using namespace latdist;

TEST_CASE("one variable") {
    const LpResult r = simplex_max({{1.0}, {-1.0}}, {3.0, 5.0}, {1.0});
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.objective == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.x[0] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("negative optimum through the variable split") {
    const LpResult r = simplex_max({{-1.0}, {1.0}}, {4.0, 10.0}, {-1.0});
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.objective == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r.x[0] == doctest::Approx(-4.0).epsilon(1e-12));
}

TEST_CASE("two variables with a binding joint constraint") {
    const std::vector<std::vector<double>> a{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0},
                                             {-1.0, 0.0}, {0.0, -1.0}};
    const std::vector<double> b{1.0, 2.0, 2.5, 0.0, 0.0};
    const LpResult r = simplex_max(a, b, {1.0, 1.0});
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.objective == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("detects an unbounded direction") {
    const LpResult r = simplex_max({{-1.0}}, {1.0}, {1.0});
    CHECK(r.status == LpResult::Status::Unbounded);
}

TEST_CASE("rejects negative right-hand sides") {
    CHECK_THROWS_AS(simplex_max({{1.0}}, {-1.0}, {1.0}), std::invalid_argument);
}

// Independent oracle: enumerate candidate vertices from every constraint
// pair and keep the best feasible one.
namespace {

double vertex_enumeration_max(const std::vector<std::vector<double>>& a,
                              const std::vector<double>& b, const std::vector<double>& c) {
    const int m = (int)a.size();
    double best = -1e300;
    auto feasible = [&](double x, double y) {
        for (int i = 0; i < m; ++i)
            if (a[i][0] * x + a[i][1] * y > b[i] + 1e-9) return false;
        return true;
    };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double det = a[i][0] * a[j][1] - a[i][1] * a[j][0];
            if (std::abs(det) < 1e-12) continue;
            const double x = (b[i] * a[j][1] - a[i][1] * b[j]) / det;
            const double y = (a[i][0] * b[j] - b[i] * a[j][0]) / det;
            if (feasible(x, y)) best = std::max(best, c[0] * x + c[1] * y);
        }
    if (feasible(0.0, 0.0)) best = std::max(best, 0.0);
    return best;
}

}  // namespace

TEST_CASE("random 2d programs agree with vertex enumeration") {
    Rng rng(207);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<double>> a;
        std::vector<double> b;
        // Random rows plus a box that keeps the program bounded.
        for (int k = 0; k < 4; ++k) {
            a.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
            b.push_back(rng.uniform(0.0, 2.0));
        }
        for (const auto& row : {std::vector<double>{1.0, 0.0}, std::vector<double>{-1.0, 0.0},
                                std::vector<double>{0.0, 1.0}, std::vector<double>{0.0, -1.0}}) {
            a.push_back(row);
            b.push_back(10.0);
        }
        const std::vector<double> c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const LpResult r = simplex_max(a, b, c);
        REQUIRE(r.status == LpResult::Status::Optimal);
        const double oracle = vertex_enumeration_max(a, b, c);
        CHECK(std::abs(r.objective - oracle) < 1e-8 * std::max(1.0, std::abs(oracle)));
    }
}
