#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "vlcsee/convex.hpp"

using namespace vlcsee;
using namespace vlcsee::convex;

TEST_SUITE("convex") {

TEST_CASE("boundary optimum of a one-dimensional quadratic") {
    // maximize -x^2 subject to x >= 1
    ConvexProgram p;
    p.n = 1;
    p.c = Vec::Zero(1);
    p.P = Mat::Constant(1, 1, 2.0);
    p.lin.push_back({Vec::Constant(1, -1.0), -1.0});

    const SolveReport r = solve(p);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.objective_value == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(r.kkt_residual <= 1e-6);
}

TEST_CASE("monotone chain through a log constraint") {
    // maximize y subject to y <= log2(x + 1), x <= 1 -> (1, 1)
    ConvexProgram p;
    p.n = 2;
    p.c = Vec::Zero(2);
    p.c[1] = 1;
    LogIneq lc;
    lc.g = Vec::Zero(2);
    lc.g[1] = 1;
    lc.a = Vec::Zero(2);
    lc.a[0] = 1;
    lc.b = 1;
    p.logc.push_back(lc);
    p.lin.push_back({(Vec(2) << 1, 0).finished(), 1.0});

    const SolveReport r = solve(p);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r.kkt_residual <= 1e-6);
}

TEST_CASE("phase one locates the center of a box") {
    ConvexProgram p;
    p.n = 1;
    p.c = Vec::Zero(1);
    p.lin.push_back({Vec::Constant(1, -1.0), 0.0});  // x >= 0
    p.lin.push_back({Vec::Constant(1, 1.0), 1.0});   // x <= 1

    const Phase1Result r = phase1_feasible(p);
    CHECK(r.feasible);
    CHECK(r.point[0] == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(r.max_violation == doctest::Approx(-0.5).epsilon(1e-3));
}

TEST_CASE("phase one certifies an empty intersection") {
    ConvexProgram p;
    p.n = 1;
    p.c = Vec::Zero(1);
    p.lin.push_back({Vec::Constant(1, 1.0), 0.0});    // x <= 0
    p.lin.push_back({Vec::Constant(1, -1.0), -1.0});  // x >= 1

    const Phase1Result r = phase1_feasible(p);
    CHECK_FALSE(r.feasible);
    CHECK(r.max_violation == doctest::Approx(0.5).epsilon(1e-3));

    const SolveReport s = solve(p);
    CHECK(s.status == SolveStatus::Infeasible);
}

TEST_CASE("randomized programs against the refined grid") {
    Rng rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform(0, 3.999));
        const ConvexProgram p = oracles::random_program(rng, n);
        const SolveReport r = solve(p);
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(p.max_violation(r.x) <= 1e-8);
        CHECK(r.kkt_residual <= 1e-6);

        const auto grid = oracles::zoom_grid_max(p, Vec::Constant(n, -1), Vec::Constant(n, 1), 13, 6);
        REQUIRE(grid.found);
        CHECK(std::abs(r.objective_value - grid.value) <= 1e-4);
        ++checked;
    }
    CHECK(checked == 40);
}

TEST_CASE("linear programs match vertex enumeration to 1e-6") {
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform(0, 2.999));
        ConvexProgram p;
        p.n = n;
        p.c = Vec(n);
        for (int i = 0; i < n; ++i) p.c[i] = rng.uniform(-1, 1);
        for (int i = 0; i < n; ++i) {
            Vec a = Vec::Zero(n), b = Vec::Zero(n);
            a[i] = 1;
            b[i] = -1;
            p.lin.push_back({a, 1.0});
            p.lin.push_back({b, 1.0});
        }
        for (int extra = 0; extra < n; ++extra) {
            Vec a(n);
            for (int i = 0; i < n; ++i) a[i] = rng.uniform(-1, 1);
            p.lin.push_back({a, rng.uniform(0.2, 1.0)});
        }
        const auto vertex = oracles::lp_vertex_max(p);
        if (!vertex) continue;
        const SolveReport r = solve(p);
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(std::abs(r.objective_value - *vertex) <= 1e-6);
    }
}

TEST_CASE("deterministic replay") {
    Rng rng(5);
    const ConvexProgram p = oracles::random_program(rng, 4);
    const SolveReport a = solve(p);
    const SolveReport b = solve(p);
    REQUIRE(a.status == SolveStatus::Optimal);
    CHECK(a.x == b.x);
    CHECK(a.objective_value == b.objective_value);
    CHECK(a.newton_iterations == b.newton_iterations);
}

TEST_CASE("objective improves monotonically across barrier stages") {
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const ConvexProgram p = oracles::random_program(rng, 3);
        const SolveReport r = solve(p);
        REQUIRE(r.status == SolveStatus::Optimal);
        for (size_t i = 1; i < r.stage_objectives.size(); ++i)
            CHECK(r.stage_objectives[i] >= r.stage_objectives[i - 1] - 1e-9);
    }
}

TEST_CASE("warm starts do not change the answer") {
    Rng rng(31);
    const ConvexProgram p = oracles::random_program(rng, 3);
    const SolveReport cold = solve(p);
    REQUIRE(cold.status == SolveStatus::Optimal);
    const SolveReport warm = solve(p, 1e-8, 1e-8, Vec(Vec::Zero(3)));
    // the origin is not necessarily feasible; warm path may fall back to phase one
    if (warm.status == SolveStatus::Optimal)
        CHECK(warm.objective_value == doctest::Approx(cold.objective_value).epsilon(1e-7));
}

TEST_CASE("malformed programs are rejected") {
    ConvexProgram p;
    p.n = 2;
    p.c = Vec::Zero(1);  // wrong size
    CHECK_THROWS_AS(solve(p), std::invalid_argument);

    ConvexProgram q;
    q.n = 1;
    q.c = Vec::Zero(1);
    q.logc.push_back({Vec::Ones(1), 1.0, Vec::Ones(1), -1.0});  // negative offset
    CHECK_THROWS_AS(solve(q), std::invalid_argument);
}

}  // TEST_SUITE
