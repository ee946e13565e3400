#include "stabhull/tpp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <span>

namespace stabhull {

std::optional<HalfPlane> halfplane_of(const ConvexObject& o, Point2 u, Point2 v, double tol) {
    if (o.kind == ObjectKind::polygon)
        throw std::invalid_argument("halfplane_of: expects a thin object");
    if (o.kind == ObjectKind::point) {
        Point2 p = o.pts[0];
        if (dist(u, p) <= tol) return std::nullopt;  // vacuous, u already on the object
        Vec2 n = normalized(p - u);
        return HalfPlane{n, dot(n, p)};
    }
    Point2 a = o.pts[0];
    Vec2 e = o.kind == ObjectKind::segment ? o.pts[1] - o.pts[0] : o.dir;
    Vec2 n = normalized(perp_ccw(e));
    double c = dot(n, a);
    double su = dot(n, u) - c;
    if (std::abs(su) > tol) {
        if (su > 0.0) return HalfPlane{-1.0 * n, -c};
        return HalfPlane{n, c};
    }
    double sv = dot(n, v) - c;
    if (std::abs(sv) > tol) {
        if (sv < 0.0) return HalfPlane{-1.0 * n, -c};
        return HalfPlane{n, c};
    }
    // line(o) == line(uv): the chain side (left of u->v)
    if (dist(u, v) <= tol) return std::nullopt;
    Vec2 nn = normalized(perp_ccw(v - u));
    return HalfPlane{nn, dot(nn, u)};
}

OrderedHalfPlanes order_halfplanes(const std::vector<std::pair<HalfPlane, int>>& hps,
                                   Vec2 base_normal) {
    OrderedHalfPlanes out;
    for (const auto& [hp, src] : hps) out.entries.push_back({hp, src});
    std::stable_sort(out.entries.begin(), out.entries.end(),
                     [&](const OrderedHalfPlanes::Entry& a, const OrderedHalfPlanes::Entry& b) {
                         return cw_angle(base_normal, a.hp.normal) <
                                cw_angle(base_normal, b.hp.normal);
                     });
    return out;
}

// ---------------------------------------------------------------------------
// Tour solver: block coordinate descent with exact per-waypoint updates,
// followed by reflection-unfolding reconstruction across the contact set.

namespace {

struct Target {
    bool is_halfplane = false;
    HalfPlane hp;
    const ConvexObject* obj = nullptr;
};

Point2 reflect_across(Point2 base, Vec2 dir, Point2 p) {
    Vec2 n = normalized(perp_ccw(dir));
    double d = dot(n, p - base);
    return p - 2.0 * d * n;
}

Point2 project_to_piece(Point2 a, Point2 base, Vec2 e, double s0, double s1) {
    double s = dot(a - base, e) / norm2(e);
    s = std::clamp(s, s0, s1);
    return base + s * e;
}

Point2 project_to_target(Point2 a, const Target& tg) {
    if (tg.is_halfplane) {
        double d = tg.hp.signed_dist(a);
        if (d >= 0.0) return a;
        return a - d * tg.hp.normal;
    }
    const ConvexObject& o = *tg.obj;
    switch (o.kind) {
        case ObjectKind::point: return o.pts[0];
        case ObjectKind::segment: return project_to_piece(a, o.pts[0], o.pts[1] - o.pts[0], 0.0, 1.0);
        case ObjectKind::ray: return project_to_piece(a, o.pts[0], o.dir, 0.0, 1e18);
        case ObjectKind::line: return project_to_piece(a, o.pts[0], o.dir, -1e18, 1e18);
        case ObjectKind::polygon: {
            ConvexPolygon poly{o.pts};
            if (point_in_polygon(a, poly, 0.0)) return a;
            double best = kInf;
            Point2 bp = o.pts[0];
            size_t n = o.pts.size();
            for (size_t i = 0; i < n; ++i) {
                Point2 q = project_to_piece(a, o.pts[i], o.pts[(i + 1) % n] - o.pts[i], 0.0, 1.0);
                double d = dist(a, q);
                if (d < best) {
                    best = d;
                    bp = q;
                }
            }
            return bp;
        }
    }
    return a;
}

// argmin over q on the piece of |a-q| + |q-b|
Point2 piece_min(Point2 a, Point2 b, Point2 base, Vec2 e, double s0, double s1) {
    double en = norm(e);
    Vec2 n{-e.y / en, e.x / en};
    double da = dot(a - base, n);
    double db = dot(b - base, n);
    double s_star;
    if (da * db <= 0.0) {
        double denom = da - db;
        if (std::abs(denom) <= 1e-300) {
            s_star = dot(a - base, e) / (en * en);
        } else {
            Point2 q = a + (da / denom) * (b - a);
            s_star = dot(q - base, e) / (en * en);
        }
    } else {
        Point2 b_ref = b - 2.0 * db * n;
        Point2 q = a + (da / (da + db)) * (b_ref - a);
        s_star = dot(q - base, e) / (en * en);
    }
    return base + std::clamp(s_star, s0, s1) * e;
}

Point2 block_min(Point2 a, Point2 b, const Target& tg) {
    if (dist(a, b) <= 1e-15) return project_to_target(a, tg);
    if (tg.is_halfplane) {
        double da = tg.hp.signed_dist(a);
        double db = tg.hp.signed_dist(b);
        if (da >= 0.0 && db >= 0.0) return 0.5 * (a + b);
        if (da >= 0.0 || db >= 0.0) {
            // crossing: middle of the in-halfplane portion of a-b
            double tcross = da / (da - db);
            if (da >= 0.0) return a + (0.5 * tcross) * (b - a);
            return a + (0.5 * (tcross + 1.0)) * (b - a);
        }
        Vec2 n = tg.hp.normal;
        Point2 b_ref = b - 2.0 * db * n;
        return a + (da / (da + db)) * (b_ref - a);
    }
    const ConvexObject& o = *tg.obj;
    switch (o.kind) {
        case ObjectKind::point: return o.pts[0];
        case ObjectKind::segment: return piece_min(a, b, o.pts[0], o.pts[1] - o.pts[0], 0.0, 1.0);
        case ObjectKind::ray: return piece_min(a, b, o.pts[0], o.dir, 0.0, 1e18);
        case ObjectKind::line: return piece_min(a, b, o.pts[0], o.dir, -1e18, 1e18);
        case ObjectKind::polygon: {
            ConvexPolygon poly{o.pts};
            auto clip = clip_line_to_polygon(a, b - a, poly, 0.0);
            if (clip) {
                double lo = std::max(clip->first, 0.0), hi = std::min(clip->second, 1.0);
                if (lo <= hi) return a + (0.5 * (lo + hi)) * (b - a);
            }
            size_t n = o.pts.size();
            double best = kInf;
            Point2 bp = o.pts[0];
            for (size_t i = 0; i < n; ++i) {
                Point2 q = piece_min(a, b, o.pts[i], o.pts[(i + 1) % n] - o.pts[i], 0.0, 1.0);
                double v = dist(a, q) + dist(q, b);
                if (v < best) {
                    best = v;
                    bp = q;
                }
            }
            return bp;
        }
    }
    return a;
}

double path_length(const std::vector<Point2>& wp) {
    double len = 0.0;
    for (size_t i = 0; i + 1 < wp.size(); ++i) len += dist(wp[i], wp[i + 1]);
    return len;
}

bool point_in_target(Point2 p, const Target& tg, double tol) {
    if (tg.is_halfplane) return tg.hp.contains(p, tol);
    return point_in_object(p, *tg.obj, tol);
}

// Contact structure of a waypoint for the exact reconstruction pass.
struct Contact {
    enum Kind { pass, reflect, pinned } kind = pass;
    Point2 base;  // reflection line
    Vec2 dir;
    Point2 pin;
    double s0 = -kInf, s1 = kInf;  // valid param range on the reflection line
};

Contact classify_for_polish(Point2 p, const Target& tg, double ctol) {
    Contact c;
    if (tg.is_halfplane) {
        double d = tg.hp.signed_dist(p);
        if (std::abs(d) <= ctol) {
            c.kind = Contact::reflect;
            Vec2 dir = perp_ccw(tg.hp.normal);
            c.base = p - d * tg.hp.normal;
            c.dir = dir;
        }
        return c;
    }
    const ConvexObject& o = *tg.obj;
    switch (o.kind) {
        case ObjectKind::point:
            c.kind = Contact::pinned;
            c.pin = o.pts[0];
            return c;
        case ObjectKind::segment:
        case ObjectKind::ray:
        case ObjectKind::line: {
            Point2 base = o.pts[0];
            Vec2 e = o.kind == ObjectKind::segment ? o.pts[1] - o.pts[0] : o.dir;
            double en2 = norm2(e);
            double s = dot(p - base, e) / en2;
            double s0 = o.kind == ObjectKind::line ? -kInf : 0.0;
            double s1 = o.kind == ObjectKind::segment ? 1.0 : (o.kind == ObjectKind::ray ? kInf : kInf);
            double spad = ctol / std::sqrt(en2);
            if (s <= s0 + spad) {
                c.kind = Contact::pinned;
                c.pin = base + s0 * e;
            } else if (s >= s1 - spad) {
                c.kind = Contact::pinned;
                c.pin = base + s1 * e;
            } else {
                c.kind = Contact::reflect;
                c.base = base;
                c.dir = e;
                c.s0 = s0;
                c.s1 = s1;
            }
            return c;
        }
        case ObjectKind::polygon: {
            ConvexPolygon poly{o.pts};
            size_t n = o.pts.size();
            int edge_hits = 0;
            size_t last_edge = 0;
            double best_d = kInf;
            for (size_t i = 0; i < n; ++i) {
                Point2 a = o.pts[i];
                Vec2 e = o.pts[(i + 1) % n] - a;
                double d = std::abs(cross(e, p - a)) / norm(e);
                double s = dot(p - a, e) / norm2(e);
                if (d <= ctol && s >= -ctol && s <= 1.0 + ctol) {
                    ++edge_hits;
                    if (d < best_d) {
                        best_d = d;
                        last_edge = i;
                    }
                }
            }
            if (edge_hits == 0) return c;  // interior: pass
            if (edge_hits >= 2) {
                c.kind = Contact::pinned;
                c.pin = project_to_target(p, tg);
                return c;
            }
            Point2 a = o.pts[last_edge];
            Vec2 e = o.pts[(last_edge + 1) % n] - a;
            c.kind = Contact::reflect;
            c.base = a;
            c.dir = e;
            c.s0 = 0.0;
            c.s1 = 1.0;
            return c;
        }
    }
    return c;
}

// Exact shortest subpath from a to b reflecting on the given lines in order.
std::optional<std::vector<Point2>> unfold_exact(Point2 a, std::span<const Contact> lines,
                                                Point2 b) {
    std::vector<Point2> out;
    Point2 cur = a;
    for (size_t i = 0; i < lines.size(); ++i) {
        Point2 target = b;
        for (size_t j = lines.size(); j-- > i + 1;)
            target = reflect_across(lines[j].base, lines[j].dir, target);
        // reflect target across line i only if cur and target are on the same side
        const Contact& li = lines[i];
        Vec2 n = normalized(perp_ccw(li.dir));
        double dc = dot(n, cur - li.base);
        double dt = dot(n, target - li.base);
        Point2 t_img = target;
        if (dc * dt > 0.0) t_img = reflect_across(li.base, li.dir, target);
        double denom = dot(n, cur - li.base) - dot(n, t_img - li.base);
        Point2 q;
        if (std::abs(dc) <= 1e-15) {
            q = cur;
        } else if (std::abs(denom) <= 1e-300) {
            return std::nullopt;
        } else {
            q = cur + (dc / denom) * (t_img - cur);
        }
        double s = dot(q - li.base, li.dir) / norm2(li.dir);
        if (s < li.s0 - 1e-12 || s > li.s1 + 1e-12) return std::nullopt;
        out.push_back(q);
        cur = q;
    }
    return out;
}

class TourSolver {
  public:
    TourSolver(Point2 s, std::vector<Target> targets, Point2 t, const TourOptions& opts)
        : s_(s), t_(t), targets_(std::move(targets)), opts_(opts) {}

    TourPath solve() {
        size_t k = targets_.size();
        TourPath best;
        best.length = kInf;
        best.converged = false;
        for (int restart = 0; restart <= opts_.restarts; ++restart) {
            std::vector<Point2> wp = initial_waypoints(restart);
            TourPath cand = descend(std::move(wp));
            polish(cand);
            if (cand.length < best.length - 1e-15 ||
                (restart == 0 && best.length == kInf)) {
                best = std::move(cand);
            }
        }
        best.contacts.assign(k, ContactKind::pass_through);
        best.grazing = false;
        for (size_t i = 0; i < k; ++i) {
            double d = boundary_distance(best.waypoints[i + 1], targets_[i]);
            if (d <= opts_.tol) best.contacts[i] = ContactKind::boundary_touch;
            else if (d < 10.0 * opts_.tol) best.grazing = true;
        }
        return best;
    }

  private:
    std::vector<Point2> initial_waypoints(int restart) {
        size_t k = targets_.size();
        std::vector<Point2> wp(k + 2);
        wp.front() = s_;
        wp.back() = t_;
        std::mt19937_64 rng(opts_.seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(restart));
        std::uniform_real_distribution<double> jitter(-1.0, 1.0);
        double scale = std::max(1.0, dist(s_, t_));
        for (size_t i = 0; i < k; ++i) {
            double f = static_cast<double>(i + 1) / static_cast<double>(k + 1);
            Point2 guess = s_ + f * (t_ - s_);
            if (restart > 0) guess = guess + Point2{jitter(rng) * scale, jitter(rng) * scale};
            wp[i + 1] = project_to_target(guess, targets_[i]);
        }
        return wp;
    }

    TourPath descend(std::vector<Point2> wp) {
        size_t k = targets_.size();
        TourPath path;
        double len = path_length(wp);
        path.trace.push_back(len);
        int max_sweeps = std::max(16, opts_.max_iters / std::max<int>(1, static_cast<int>(k)));
        double tol_inner = std::max(opts_.tol * 1e-3, 1e-15);
        bool converged = k == 0;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            for (size_t i = 0; i < k; ++i)
                wp[i + 1] = block_min(wp[i], wp[i + 2], targets_[i]);
            double nl = path_length(wp);
            path.trace.push_back(std::min(nl, path.trace.back()));
            if (len - nl < tol_inner) {
                converged = true;
                break;
            }
            len = nl;
        }
        path.waypoints = std::move(wp);
        path.length = path_length(path.waypoints);
        path.converged = converged;
        return path;
    }

    void polish(TourPath& path) {
        size_t k = targets_.size();
        if (k == 0) return;
        double scale = 1.0;
        for (const auto& p : path.waypoints)
            scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
        double ctol = 1e-6 * scale;

        std::vector<Contact> contacts(k);
        for (size_t i = 0; i < k; ++i)
            contacts[i] = classify_for_polish(path.waypoints[i + 1], targets_[i], ctol);

        std::vector<Point2> rebuilt;
        rebuilt.push_back(s_);
        Point2 anchor = s_;
        std::vector<Contact> group;
        std::vector<size_t> group_idx;
        std::vector<std::pair<size_t, Point2>> placed;  // waypoint index -> point
        auto flush = [&](Point2 next_anchor) -> bool {
            auto sub = unfold_exact(anchor, group, next_anchor);
            if (!sub) return false;
            for (size_t g = 0; g < group.size(); ++g) placed.emplace_back(group_idx[g], (*sub)[g]);
            group.clear();
            group_idx.clear();
            anchor = next_anchor;
            return true;
        };
        bool ok = true;
        for (size_t i = 0; i < k && ok; ++i) {
            const Contact& c = contacts[i];
            if (c.kind == Contact::pass) continue;
            if (c.kind == Contact::pinned) {
                ok = flush(c.pin);
                if (ok) placed.emplace_back(i, c.pin);
            } else {
                group.push_back(c);
                group_idx.push_back(i);
            }
        }
        if (ok) ok = flush(t_);
        if (!ok) return;

        std::vector<Point2> wp = path.waypoints;
        for (auto& [idx, pt] : placed) wp[idx + 1] = pt;
        // pass-through waypoints: re-pick cheapest point on the target between neighbors
        for (size_t i = 0; i < k; ++i)
            if (contacts[i].kind == Contact::pass) wp[i + 1] = block_min(wp[i], wp[i + 2], targets_[i]);
        double check_tol = std::max(ctol, 10.0 * opts_.tol);
        for (size_t i = 0; i < k; ++i)
            if (!point_in_target(wp[i + 1], targets_[i], check_tol)) return;
        double nl = path_length(wp);
        if (nl <= path.length + opts_.tol) {
            path.waypoints = std::move(wp);
            path.length = nl;
            path.trace.push_back(std::min(nl, path.trace.back()));
        }
    }

    double boundary_distance(Point2 p, const Target& tg) const {
        if (tg.is_halfplane) return std::abs(tg.hp.signed_dist(p));
        const ConvexObject& o = *tg.obj;
        if (o.kind == ObjectKind::polygon) {
            double best = kInf;
            size_t n = o.pts.size();
            for (size_t i = 0; i < n; ++i) {
                Point2 q = project_to_piece(p, o.pts[i], o.pts[(i + 1) % n] - o.pts[i], 0.0, 1.0);
                best = std::min(best, dist(p, q));
            }
            return best;
        }
        return distance_point_object(p, o);  // thin objects: the set is its boundary
    }

    Point2 s_, t_;
    std::vector<Target> targets_;
    TourOptions opts_;
};

}  // namespace

TourPath tour(Point2 s, const OrderedHalfPlanes& seq, Point2 t, double tol) {
    TourOptions opts;
    opts.tol = tol;
    return tour(s, seq, t, opts);
}

TourPath tour(Point2 s, const OrderedHalfPlanes& seq, Point2 t, const TourOptions& opts) {
    std::vector<Target> targets;
    targets.reserve(seq.entries.size());
    for (const auto& e : seq.entries) {
        Target tg;
        tg.is_halfplane = true;
        tg.hp = e.hp;
        targets.push_back(tg);
    }
    return TourSolver(s, std::move(targets), t, opts).solve();
}

TourPath tour_objects(Point2 s, const std::vector<ConvexObject>& seq, Point2 t,
                      const TourOptions& opts) {
    std::vector<Target> targets;
    targets.reserve(seq.size());
    for (const auto& o : seq) {
        Target tg;
        tg.is_halfplane = false;
        tg.obj = &o;
        targets.push_back(tg);
    }
    return TourSolver(s, std::move(targets), t, opts).solve();
}

std::vector<Point2> order_witness(const TourPath& path, const OrderedHalfPlanes& seq, double tol) {
    size_t n = seq.entries.size();
    std::vector<Point2> witnesses(n);
    if (n == 0) return witnesses;
    const auto& wp = path.waypoints;
    if (wp.empty()) throw WitnessError(0, "order_witness: empty path");

    // Arc-length position of the first inside->outside transition for each
    // half-plane, walked once along the polyline.
    struct Exit {
        bool found = false;
        double pos = kInf;
        Point2 at;
    };
    auto first_exit_after = [&](size_t hp_idx, double from_pos) -> Exit {
        const HalfPlane& h = seq.entries[hp_idx].hp;
        Exit ex;
        double pos = 0.0;
        for (size_t i = 0; i + 1 < wp.size(); ++i) {
            Point2 a = wp[i], b = wp[i + 1];
            double seg_len = dist(a, b);
            double da = h.signed_dist(a), db = h.signed_dist(b);
            if (da >= -tol && db < -tol) {
                double f = da / (da - db);
                double at_pos = pos + f * seg_len;
                if (at_pos >= from_pos - tol) {
                    ex.found = true;
                    ex.pos = at_pos;
                    ex.at = a + f * (b - a);
                    return ex;
                }
            }
            pos += seg_len;
        }
        return ex;
    };

    size_t j = 0;
    double cur_pos = 0.0;
    Point2 terminal = wp.back();
    while (j < n) {
        // first exit among queued half-planes
        double best_pos = kInf;
        Point2 best_at{};
        bool any = false;
        for (size_t i = j; i < n; ++i) {
            Exit ex = first_exit_after(i, cur_pos);
            if (ex.found && ex.pos < best_pos) {
                best_pos = ex.pos;
                best_at = ex.at;
                any = true;
            }
        }
        if (!any) {
            for (size_t i = j; i < n; ++i) {
                if (!seq.entries[i].hp.contains(terminal, tol))
                    throw WitnessError(static_cast<int>(i),
                                       "order_witness: path never visits half-plane " +
                                           std::to_string(i));
                witnesses[i] = terminal;
            }
            return witnesses;
        }
        // largest queued index exiting at this point
        size_t k = j;
        for (size_t i = j; i < n; ++i) {
            Exit ex = first_exit_after(i, cur_pos);
            if (ex.found && std::abs(ex.pos - best_pos) <= tol && dist(ex.at, best_at) <= 10.0 * tol)
                k = std::max(k, i);
        }
        for (size_t i = j; i <= k; ++i) {
            if (!seq.entries[i].hp.contains(best_at, 10.0 * tol))
                throw WitnessError(static_cast<int>(i),
                                   "order_witness: half-plane " + std::to_string(i) +
                                       " not covered at its exit point");
            witnesses[i] = best_at;
        }
        j = k + 1;
        cur_pos = best_pos;
    }
    return witnesses;
}

}  // namespace stabhull
