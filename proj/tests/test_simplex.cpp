#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabhull/simplex.hpp"

using namespace stabhull;

TEST_CASE("2-variable maximization") {
    // max x + y s.t. x <= 2, y <= 3, x + y <= 4
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {1.0, 1.0};
    lp.add_le({1.0, 0.0}, 2.0);
    lp.add_le({0.0, 1.0}, 3.0);
    lp.add_le({1.0, 1.0}, 4.0);
    auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(std::abs(s.value - 4.0) < 1e-9);
}

TEST_CASE("free variables can go negative") {
    // max -x s.t. x >= -5  (i.e. -x <= 5)
    LinearProgram lp;
    lp.num_vars = 1;
    lp.objective = {-1.0};
    lp.add_le({-1.0}, 5.0);
    auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(std::abs(s.x[0] + 5.0) < 1e-9);
}

TEST_CASE("equality constraints") {
    // max x + 2y s.t. x + y = 1, x,y within [-10, 10]
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {1.0, 2.0};
    lp.add_eq({1.0, 1.0}, 1.0);
    lp.add_le({1.0, 0.0}, 10.0);
    lp.add_le({-1.0, 0.0}, 10.0);
    lp.add_le({0.0, 1.0}, 10.0);
    lp.add_le({0.0, -1.0}, 10.0);
    auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(std::abs(s.x[0] + s.x[1] - 1.0) < 1e-9);
    CHECK(std::abs(s.value - (-9.0 + 2.0 * 10.0)) < 1e-9);  // x=-9, y=10
}

TEST_CASE("infeasible system detected") {
    LinearProgram lp;
    lp.num_vars = 1;
    lp.objective = {0.0};
    lp.add_le({1.0}, 1.0);
    lp.add_le({-1.0}, -3.0);  // x >= 3 and x <= 1
    auto s = solve_lp(lp);
    CHECK(s.status == LpStatus::infeasible);
}

TEST_CASE("unbounded objective detected") {
    LinearProgram lp;
    lp.num_vars = 1;
    lp.objective = {1.0};
    lp.add_le({-1.0}, 0.0);  // x >= 0, max x
    auto s = solve_lp(lp);
    CHECK(s.status == LpStatus::unbounded);
}

TEST_CASE("degenerate ties terminate") {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {1.0, 0.0};
    for (int i = 0; i < 12; ++i) lp.add_le({1.0, static_cast<double>(i) * 0.0}, 1.0);
    lp.add_le({0.0, 1.0}, 0.0);
    lp.add_le({0.0, -1.0}, 0.0);
    auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(std::abs(s.value - 1.0) < 1e-9);
}
