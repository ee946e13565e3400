#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabhull/exact.hpp"
#include "stabhull/tpp.hpp"
#include "test_util.hpp"

using namespace stabhull;
using namespace testutil;

TEST_CASE("minkowski perimeter additivity over 200 random pairs") {
    auto rng = rng_for(81);
    int done = 0;
    while (done < 200) {
        ConvexPolygon p = random_convex_polygon(rng, 6);
        ConvexPolygon q = random_convex_polygon(rng, 6);
        if (p.v.empty() || q.v.empty()) continue;
        ++done;
        auto s = minkowski_sum(p, q);
        double lhs = s.perimeter();
        double rhs = p.perimeter() + q.perimeter();
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (rhs + 1.0));
    }
}

TEST_CASE("blending equal-order paths never beats the longer one") {
    auto rng = rng_for(82);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int done = 0;
    while (done < 100) {
        int n = 4 + static_cast<int>(std::floor((u(rng) + 1.0) * 2));
        Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
        std::vector<Point2> g0{a}, g1{a};
        for (int i = 0; i < n; ++i) {
            g0.push_back({u(rng), u(rng)});
            g1.push_back({u(rng), u(rng)});
        }
        g0.push_back(b);
        g1.push_back(b);
        auto len = [](const std::vector<Point2>& g) {
            double l = 0.0;
            for (size_t i = 0; i + 1 < g.size(); ++i) l += dist(g[i], g[i + 1]);
            return l;
        };
        if (len(g0) > len(g1)) std::swap(g0, g1);
        if (std::abs(len(g0) - len(g1)) < 1e-9) continue;
        ++done;
        for (double lam : {0.0, 0.2, 0.5, 0.8, 0.99}) {
            std::vector<Point2> gl;
            for (size_t i = 0; i < g0.size(); ++i)
                gl.push_back((1.0 - lam) * g0[i] + lam * g1[i]);
            CHECK(len(gl) < len(g1) + 1e-12);
        }
    }
}

TEST_CASE("witness walk on 100 random feasible chains") {
    auto rng = rng_for(83);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int done = 0;
    while (done < 100) {
        ConvexPolygon hull = random_convex_polygon(rng, 8);
        if (hull.v.size() < 4) continue;
        size_t n = hull.v.size();
        size_t iu = 0, iv = n / 2;
        Point2 pu = hull.v[iu], pv = hull.v[iv];
        if (dist(pu, pv) < 1e-6) continue;

        // rotate so that u -> v lies on the +x axis
        double ang = std::atan2((pv - pu).y, (pv - pu).x);
        auto xf = [&](Point2 p) { return rotated(p - pu, -ang); };

        // the arc from v back to u in CCW order, reversed, runs clockwise u -> v;
        // keep the variant that lies above the chord
        std::vector<Point2> arc;
        for (size_t k = iv; ; k = (k + 1) % n) {
            arc.push_back(xf(hull.v[k]));
            if (k == iu) break;
        }
        std::reverse(arc.begin(), arc.end());
        bool above = true;
        for (const auto& p : arc)
            if (p.y < -1e-9) above = false;
        if (!above) {
            arc.clear();
            for (size_t k = iu; ; k = (k + 1) % n) {
                arc.push_back(xf(hull.v[k]));
                if (k == iv) break;
            }
            bool ok = true;
            for (const auto& p : arc)
                if (p.y < -1e-9) ok = false;
            if (!ok) continue;
        }
        if (arc.size() < 3) continue;

        // waypoints: chain vertices with sampled touch points inserted
        std::vector<Point2> waypoints;
        std::vector<std::pair<HalfPlane, int>> hps;
        int src = 0;
        for (size_t k = 0; k + 1 < arc.size(); ++k) {
            waypoints.push_back(arc[k]);
            Vec2 d = arc[k + 1] - arc[k];
            if (norm(d) < 1e-9) continue;
            double t = 0.2 + 0.6 * u01(rng);
            Point2 q = arc[k] + t * d;
            waypoints.push_back(q);
            Vec2 nrm = normalized(perp_ccw(d));  // outward for a clockwise chain
            hps.emplace_back(HalfPlane{nrm, dot(nrm, q)}, src++);
        }
        waypoints.push_back(arc.back());
        if (hps.size() < 2) continue;
        ++done;

        auto seq = order_halfplanes(hps);
        TourPath path;
        path.waypoints = waypoints;
        for (size_t i = 0; i + 1 < waypoints.size(); ++i)
            path.length += dist(waypoints[i], waypoints[i + 1]);

        auto wit = order_witness(path, seq, 1e-7);
        REQUIRE(wit.size() == seq.entries.size());
        auto arc_pos = [&](Point2 p) {
            double best = kInf, pos = 0.0, acc = 0.0;
            for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
                Vec2 d = waypoints[i + 1] - waypoints[i];
                double len = norm(d);
                if (len > 1e-12) {
                    double t = std::clamp(dot(p - waypoints[i], d) / (len * len), 0.0, 1.0);
                    double dd = dist(p, waypoints[i] + t * d);
                    if (dd < best) {
                        best = dd;
                        pos = acc + t * len;
                    }
                }
                acc += len;
            }
            return pos;
        };
        double prev = -1e-9;
        for (size_t i = 0; i < wit.size(); ++i) {
            CHECK(seq.entries[i].hp.contains(wit[i], 1e-6));
            double pos = arc_pos(wit[i]);
            CHECK(pos >= prev - 1e-6);
            prev = std::max(prev, pos);
        }
    }
}

TEST_CASE("tour perturbation certificate on 50 instances") {
    auto rng = rng_for(84);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int done = 0;
    while (done < 50) {
        std::vector<std::pair<HalfPlane, int>> hps;
        int k = 2 + (done % 4);
        for (int i = 0; i < k; ++i)
            hps.emplace_back(HalfPlane{normalized({u(rng), u(rng)}), u(rng)}, i);
        auto seq = order_halfplanes(hps);
        Point2 s{u(rng), u(rng)}, t{u(rng), u(rng)};
        TourOptions topts;
        topts.tol = 1e-10;
        auto path = tour(s, seq, t, topts);
        if (!path.converged) continue;
        ++done;
        double delta = 1e-4;
        for (size_t i = 1; i + 1 < path.waypoints.size(); ++i) {
            const HalfPlane& h = seq.entries[i - 1].hp;
            for (int d = 0; d < 16; ++d) {
                double a = 2.0 * kPi * d / 16.0;
                Point2 cand = path.waypoints[i] + Point2{delta * std::cos(a), delta * std::sin(a)};
                if (!h.contains(cand, 0.0)) continue;  // stay within the half-plane
                double len = 0.0;
                for (size_t j = 0; j + 1 < path.waypoints.size(); ++j) {
                    Point2 pj = j == i ? cand : path.waypoints[j];
                    Point2 pn = (j + 1) == i ? cand : path.waypoints[j + 1];
                    len += dist(pj, pn);
                }
                CHECK(len >= path.length - 1e-8);
            }
        }
    }
}

TEST_CASE("prefix sets stay nested across random configurations") {
    auto rng = rng_for(85);
    for (int t = 0; t < 50; ++t) {
        auto segs = random_segments(rng, 5);
        Point2 p_bot = random_point(rng, -0.5, 0.0);
        Point2 w = random_point(rng, 0.5, 1.5);
        auto ctx = psi_prefix_sets(w, p_bot, segs);
        for (size_t j = 0; j + 1 < ctx.prefix_masks.size(); ++j)
            CHECK((ctx.prefix_masks[j] & ~ctx.prefix_masks[j + 1]) == 0);
        CHECK(ctx.prefix_masks.front() == 0);
        if (!ctx.prefix_masks.empty())
            CHECK((ctx.prefix_masks.back() & ~ctx.star) == 0);
    }
}
