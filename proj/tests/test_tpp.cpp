#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabhull/oracle.hpp"
#include "stabhull/tpp.hpp"
#include "test_util.hpp"

using namespace stabhull;
using namespace testutil;

namespace {

std::vector<ConvexObject> three_rays() {
    return {ConvexObject::make_ray({-1.0, 0.0}, {-1.0, -0.8}),
            ConvexObject::make_ray({-1.0, 1.0}, {1.0, 0.0}),
            ConvexObject::make_ray({2.0, 0.0}, {1.0, 0.0})};
}

double tour_closed_form(double eps) {
    return std::sqrt(1.0 + eps * eps) + 2.0 * std::sqrt(1.5 * 1.5 + 1.0) +
           std::sqrt(4.0 + eps * eps);
}

}  // namespace

TEST_CASE("half-plane of a segment avoids u") {
    auto hp = halfplane_of(ConvexObject::make_segment({1, -1}, {1, 1}), {0, 0}, {0.5, 0});
    REQUIRE(hp.has_value());
    CHECK_FALSE(hp->contains({0, 0}, 1e-12));
    CHECK(hp->contains({2, 0}));
    CHECK(hp->contains({1, 5}));  // boundary
}

TEST_CASE("half-plane when u lies on the supporting line") {
    auto hp = halfplane_of(ConvexObject::make_segment({0, -1}, {0, 1}), {0, 0}, {2, 0});
    REQUIRE(hp.has_value());
    CHECK(hp->contains({2, 0}));
    CHECK_FALSE(hp->contains({-1, 0}, 1e-12));
}

TEST_CASE("collinear object takes the chain side") {
    auto hp = halfplane_of(ConvexObject::make_segment({2, 0}, {3, 0}), {0, 0}, {1, 0});
    REQUIRE(hp.has_value());
    CHECK(hp->contains({0.5, 1.0}));  // left of u->v
    CHECK_FALSE(hp->contains({0.5, -1.0}, 1e-12));
}

TEST_CASE("ordering by clockwise normal angle") {
    auto mk = [](double deg) {
        double cwa = deg * kPi / 180.0;
        // normal at clockwise angle cwa from (0,-1)
        Vec2 n = rotated(Vec2{0.0, -1.0}, -cwa);
        return HalfPlane{n, 0.0};
    };
    std::vector<std::pair<HalfPlane, int>> hps{{mk(200.0), 0}, {mk(10.0), 1}, {mk(350.0), 2}};
    auto seq = order_halfplanes(hps);
    CHECK(seq.entries[0].source == 1);
    CHECK(seq.entries[1].source == 0);
    CHECK(seq.entries[2].source == 2);

    // ties keep input order (stable)
    std::vector<std::pair<HalfPlane, int>> same{{mk(90.0), 7}, {mk(90.0), 3}};
    auto seq2 = order_halfplanes(same);
    CHECK(seq2.entries[0].source == 7);
    CHECK(seq2.entries[1].source == 3);

    auto rng = rng_for(21);
    std::uniform_real_distribution<double> ang(0.0, 360.0);
    std::vector<std::pair<HalfPlane, int>> rnd;
    for (int i = 0; i < 40; ++i) rnd.push_back({mk(ang(rng)), i});
    auto sorted = order_halfplanes(rnd);
    for (size_t i = 0; i + 1 < sorted.entries.size(); ++i)
        CHECK(cw_angle({0.0, -1.0}, sorted.entries[i].hp.normal) <=
              cw_angle({0.0, -1.0}, sorted.entries[i + 1].hp.normal) + 1e-12);
}

TEST_CASE("single half-plane doubles the perpendicular") {
    OrderedHalfPlanes seq;
    seq.entries.push_back({HalfPlane{{1.0, 0.0}, 1.0}, 0});
    auto path = tour({0, 0}, seq, {0, 0});
    CHECK(path.converged);
    CHECK(std::abs(path.length - 2.0) < 1e-9);
    CHECK(dist(path.waypoints[1], {1.0, 0.0}) < 1e-7);
    CHECK(path.contacts[0] == ContactKind::boundary_touch);
}

TEST_CASE("empty sequence has zero length") {
    OrderedHalfPlanes seq;
    auto path = tour({1, 2}, seq, {1, 2});
    CHECK(path.length == 0.0);
}

TEST_CASE("three-ray fixture: tour, pseudo-tour and the bad order") {
    double eps = 0.05;
    Point2 s{0.0, -eps};
    auto rays = three_rays();

    TourOptions topts;
    topts.tol = 1e-10;

    SUBCASE("visiting the rays in order 1,2,3") {
        auto path = tour_objects(s, {rays[0], rays[1], rays[2]}, s, topts);
        CHECK(path.converged);
        CHECK(std::abs(path.length - tour_closed_form(eps)) < 1e-6);
        CHECK(path.length < 6.8);
        // optimal visits: the two ray origins and the reflection point on r2
        CHECK(dist(path.waypoints[1], {-1.0, 0.0}) < 1e-5);
        CHECK(dist(path.waypoints[2], {0.5, 1.0}) < 1e-5);
        CHECK(dist(path.waypoints[3], {2.0, 0.0}) < 1e-5);
    }

    SUBCASE("pseudo-tour over the supporting half-planes") {
        std::vector<std::pair<HalfPlane, int>> hps;
        for (int i = 0; i < 3; ++i) {
            auto hp = halfplane_of(rays[static_cast<size_t>(i)], s, s, 1e-9);
            REQUIRE(hp.has_value());
            hps.emplace_back(*hp, i);
        }
        OrderedHalfPlanes seq;  // fixture order r1, r2, r3
        for (auto& [hp, src] : hps) seq.entries.push_back({hp, src});
        auto path = tour(s, seq, s, topts);
        CHECK(path.converged);
        CHECK(std::abs(path.length - (2.0 + 2.0 * eps)) < 1e-6);
    }

    SUBCASE("order r2, r1, r3 costs at least 7") {
        auto path = tour_objects(s, {rays[1], rays[0], rays[2]}, s, topts);
        CHECK(path.converged);
        CHECK(path.length >= 7.0 - 1e-6);
    }
}

TEST_CASE("witness for the single half-plane tour") {
    OrderedHalfPlanes seq;
    seq.entries.push_back({HalfPlane{{1.0, 0.0}, 1.0}, 0});
    auto path = tour({0, 0}, seq, {0, 0});
    auto wit = order_witness(path, seq, 1e-7);
    REQUIRE(wit.size() == 1);
    CHECK(dist(wit[0], {1.0, 0.0}) < 1e-6);
}

TEST_CASE("path never leaving a half-plane witnesses at the terminal") {
    OrderedHalfPlanes seq;
    seq.entries.push_back({HalfPlane{{0.0, 1.0}, -5.0}, 0});  // everything above y=-5
    seq.entries.push_back({HalfPlane{{1.0, 0.0}, -5.0}, 1});
    TourPath path;
    path.waypoints = {{0, 0}, {1, 0}, {2, 1}};
    path.length = dist({0, 0}, {1, 0}) + dist({1, 0}, {2, 1});
    auto wit = order_witness(path, seq, 1e-9);
    CHECK(dist(wit[0], {2, 1}) < 1e-12);
    CHECK(dist(wit[1], {2, 1}) < 1e-12);
}

TEST_CASE("witness procedure names the violated half-plane") {
    OrderedHalfPlanes seq;
    seq.entries.push_back({HalfPlane{{1.0, 0.0}, 10.0}, 0});  // x >= 10, never visited
    TourPath path;
    path.waypoints = {{0, 0}, {1, 0}};
    path.length = 1.0;
    CHECK_THROWS_AS(order_witness(path, seq, 1e-9), WitnessError);
    try {
        order_witness(path, seq, 1e-9);
    } catch (const WitnessError& e) {
        CHECK(e.violated_index == 0);
    }
}

TEST_CASE("tour length is reproducible from different initializations") {
    auto rng = rng_for(22);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        std::vector<std::pair<HalfPlane, int>> hps;
        for (int i = 0; i < 4; ++i) {
            Vec2 n = normalized({u(rng), u(rng)});
            hps.emplace_back(HalfPlane{n, u(rng)}, i);
        }
        auto seq = order_halfplanes(hps);
        Point2 s{u(rng), u(rng)}, tpt{u(rng), u(rng)};
        TourOptions a, b;
        a.tol = b.tol = 1e-10;
        a.seed = 1;
        b.seed = 99;
        b.restarts = 4;
        auto p1 = tour(s, seq, tpt, a);
        auto p2 = tour(s, seq, tpt, b);
        CHECK(std::abs(p1.length - p2.length) <= 2e-9 + 2.0 * a.tol);
    }
}

TEST_CASE("incumbent trace is nonincreasing") {
    auto rng = rng_for(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::pair<HalfPlane, int>> hps;
    for (int i = 0; i < 5; ++i) hps.emplace_back(HalfPlane{normalized({u(rng), u(rng)}), u(rng)}, i);
    auto seq = order_halfplanes(hps);
    auto path = tour({0, 0}, seq, {0.3, 0.1});
    for (size_t i = 0; i + 1 < path.trace.size(); ++i)
        CHECK(path.trace[i + 1] <= path.trace[i] + 1e-12);
}

TEST_CASE("tour oracle agrees on simple cases") {
    using namespace stabhull::oracle;
    // single half-plane x >= 1 from the origin
    TourOracleResult r = oracle_tour({0, 0}, {TourSet::of(HalfPlane{{1.0, 0.0}, 1.0})}, {0, 0},
                                     Resolution{128});
    double slack = 3.0 * std::sqrt(2.0) * r.cell;
    CHECK(std::abs(r.value - 2.0) <= slack);

    // empty order
    TourOracleResult r0 = oracle_tour({1, 1}, {}, {1, 1}, Resolution{16});
    CHECK(r0.value == 0.0);

    // three-ray fixture at order 1,2,3
    double eps = 0.05;
    auto rays = three_rays();
    std::vector<TourSet> sets{TourSet::of(rays[0]), TourSet::of(rays[1]), TourSet::of(rays[2])};
    TourOracleResult rt = oracle_tour({0, -eps}, sets, {0, -eps}, Resolution{192});
    double slack_t = 5.0 * std::sqrt(2.0) * rt.cell;
    CHECK(std::abs(rt.value - tour_closed_form(eps)) <= slack_t);
}
