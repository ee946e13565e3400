#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabhull/oracle.hpp"
#include "test_util.hpp"

using namespace stabhull;
using namespace testutil;

namespace {

// Three short segments arranged so that no line stabs all of them.
std::vector<ConvexObject> blocked_instance() {
    return {ConvexObject::make_segment({0.4, 0.0}, {0.6, 0.0}),
            ConvexObject::make_segment({0.4, 1.0}, {0.6, 1.0}),
            ConvexObject::make_segment({0.0, 0.45}, {0.0, 0.55})};
}

}  // namespace

TEST_CASE("perimeter oracle on the triangle fixture") {
    auto r = oracle::oracle_perimeter(unit_triangle_edges(), oracle::Resolution{256}, 2);
    CHECK(std::abs(r.value - 1.5) <= 0.02);
    CHECK(r.value >= 1.5 - 1e-9);  // a feasible polygon can never beat the optimum
}

TEST_CASE("perimeter oracle degenerate cases") {
    std::vector<ConvexObject> common{ConvexObject::make_segment({-1, 0}, {1, 0}),
                                     ConvexObject::make_segment({0, -1}, {0, 1})};
    auto r = oracle::oracle_perimeter(common, oracle::Resolution{64});
    CHECK(r.value <= 0.4);  // a near-point polygon suffices

    std::vector<ConvexObject> single{ConvexObject::make_segment({0, 0}, {1, 1})};
    auto r1 = oracle::oracle_perimeter(single, oracle::Resolution{64});
    CHECK(r1.value <= 1e-9);
}

TEST_CASE("area oracle on the triangle fixture") {
    auto r = oracle::oracle_area(unit_triangle_edges(), oracle::Resolution{64}, 2);
    CHECK(r.value <= r.slack);  // a stabbing line exists, so OPT = 0
}

TEST_CASE("area oracle converges on a blocked instance") {
    auto objs = blocked_instance();
    CHECK_FALSE(sweep_has_stabbing_line(objs));
    auto r64 = oracle::oracle_area(objs, oracle::Resolution{64}, 2);
    auto r128 = oracle::oracle_area(objs, oracle::Resolution{128}, 2);
    auto r256 = oracle::oracle_area(objs, oracle::Resolution{256}, 2);
    CHECK(r64.value > 0.0);
    // antitone up to the coarser slack
    CHECK(r128.value <= r64.value + r64.slack);
    CHECK(r256.value <= r128.value + r128.slack);
    // Richardson-style: the refinements settle down
    CHECK(std::abs(r256.value - r128.value) <= r128.slack + 1e-12);
}

TEST_CASE("perimeter oracle tracks the enumeration oracle on a tiny lattice") {
    auto rng = rng_for(31);
    for (int t = 0; t < 3; ++t) {
        auto segs = random_segments(rng, 3);
        if (common_point_check(segs).point) continue;
        auto r = oracle::oracle_perimeter(segs, oracle::Resolution{128}, 2);
        // the oracle value is a feasible polygon's perimeter
        ConvexPolygon poly{r.polygon};
        if (poly.v.size() >= 2) {
            for (const auto& o : segs) CHECK(intersects(o, poly, 1e-6));
            CHECK(std::abs(poly.perimeter() - r.value) <= 1e-6 * (1.0 + r.value));
        }
        CHECK(r.value >= perimeter_lower_bound(segs) - 1e-9);
    }
}
