#include "stabhull/io.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "stabhull/geom.hpp"

namespace stabhull {

namespace {

using json = nlohmann::ordered_json;

std::pair<int, int> line_col(const std::string& text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Point2 parse_point(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(what + ": expected [x, y]", 0, 0);
    Point2 p{j[0].get<double>(), j[1].get<double>()};
    if (!finite(p)) throw ParseError(what + ": non-finite coordinate", 0, 0);
    return p;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ParseError(ctx + ": unknown field \"" + it.key() + "\"", 0, 0);
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

}  // namespace

Instance parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string("malformed JSON: ") + e.what(), line, col);
    }
    if (!j.is_object()) throw ParseError("instance: expected an object", 0, 0);
    reject_unknown(j, {"schema", "objects", "config"}, "instance");
    if (j.contains("schema") && j["schema"] != "stabhull/1")
        throw ParseError("instance: unsupported schema", 0, 0);
    if (!j.contains("objects") || !j["objects"].is_array())
        throw ParseError("instance: missing objects array", 0, 0);
    if (j["objects"].empty()) throw ParseError("empty instance", 0, 0);

    Instance inst;
    for (const auto& jo : j["objects"]) {
        if (!jo.is_object() || !jo.contains("kind"))
            throw ParseError("object: missing kind", 0, 0);
        std::string kind = jo["kind"].get<std::string>();
        try {
            if (kind == "point") {
                reject_unknown(jo, {"kind", "p"}, "point");
                inst.objects.push_back(ConvexObject::make_point(parse_point(jo.at("p"), "point.p")));
            } else if (kind == "segment") {
                reject_unknown(jo, {"kind", "a", "b"}, "segment");
                inst.objects.push_back(ConvexObject::make_segment(
                    parse_point(jo.at("a"), "segment.a"), parse_point(jo.at("b"), "segment.b")));
            } else if (kind == "ray") {
                reject_unknown(jo, {"kind", "origin", "dir"}, "ray");
                inst.objects.push_back(ConvexObject::make_ray(
                    parse_point(jo.at("origin"), "ray.origin"), parse_point(jo.at("dir"), "ray.dir")));
            } else if (kind == "line") {
                reject_unknown(jo, {"kind", "point", "dir"}, "line");
                inst.objects.push_back(ConvexObject::make_line(
                    parse_point(jo.at("point"), "line.point"), parse_point(jo.at("dir"), "line.dir")));
            } else if (kind == "polygon") {
                reject_unknown(jo, {"kind", "vertices"}, "polygon");
                std::vector<Point2> vs;
                for (const auto& v : jo.at("vertices")) vs.push_back(parse_point(v, "polygon.vertex"));
                inst.objects.push_back(ConvexObject::make_polygon(std::move(vs)));
            } else {
                throw ParseError("object: unknown kind \"" + kind + "\"", 0, 0);
            }
        } catch (const json::exception& e) {
            throw ParseError(std::string("object: ") + e.what(), 0, 0);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("degenerate geometry: ") + e.what(), 0, 0);
        }
    }
    if (j.contains("config")) {
        const auto& jc = j["config"];
        reject_unknown(jc, {"tol", "seed", "eps"}, "config");
        if (jc.contains("tol")) inst.config.tol = jc["tol"].get<double>();
        if (jc.contains("seed")) inst.config.seed = jc["seed"].get<std::uint64_t>();
        if (jc.contains("eps")) inst.config.eps = jc["eps"].get<double>();
        if (!(inst.config.tol > 0.0) || !std::isfinite(inst.config.tol))
            throw ParseError("config.tol: must be positive", 0, 0);
    }
    return inst;
}

std::string emit_instance(const Instance& inst) {
    json j;
    j["schema"] = "stabhull/1";
    j["objects"] = json::array();
    for (const auto& o : inst.objects) {
        json jo;
        jo["kind"] = to_string(o.kind);
        switch (o.kind) {
            case ObjectKind::point: jo["p"] = point_json(o.pts[0]); break;
            case ObjectKind::segment:
                jo["a"] = point_json(o.pts[0]);
                jo["b"] = point_json(o.pts[1]);
                break;
            case ObjectKind::ray:
                jo["origin"] = point_json(o.pts[0]);
                jo["dir"] = point_json(o.dir);
                break;
            case ObjectKind::line:
                jo["point"] = point_json(o.pts[0]);
                jo["dir"] = point_json(o.dir);
                break;
            case ObjectKind::polygon: {
                json vs = json::array();
                for (const auto& p : o.pts) vs.push_back(point_json(p));
                jo["vertices"] = std::move(vs);
                break;
            }
        }
        j["objects"].push_back(std::move(jo));
    }
    json jc;
    jc["tol"] = inst.config.tol;
    jc["seed"] = inst.config.seed;
    jc["eps"] = inst.config.eps;
    j["config"] = std::move(jc);
    return j.dump(2) + "\n";
}

std::string emit_result(const Solution& sol, const Instance& inst) {
    // Self-check: every witness must certify its object against the polygon.
    // Tour results store path waypoints in visit order instead (a pseudo-tour
    // waypoint may legitimately sit off its ray), so they are not re-checked.
    if (sol.feasible && sol.objective != Objective::tour) {
        double tol = std::max(inst.config.tol, 1e-6);
        for (size_t i = 0; i < sol.witnesses.size(); ++i) {
            if (!point_in_object(sol.witnesses[i], inst.objects[i], tol) ||
                !point_in_polygon(sol.witnesses[i], sol.polygon, tol))
                throw std::runtime_error("emit_result: witness " + std::to_string(i) +
                                         " fails verification");
        }
    }
    json j;
    j["schema"] = "stabhull-result/1";
    j["status"] = sol.feasible ? "ok" : "infeasible";
    j["objective"] = to_string(sol.objective);
    j["value"] = sol.feasible ? json(sol.value) : json();
    json poly = json::array();
    for (const auto& p : sol.polygon.v) poly.push_back(point_json(p));
    j["polygon"] = std::move(poly);
    json wits = json::array();
    for (size_t i = 0; i < sol.witnesses.size(); ++i)
        wits.push_back(json::array({json(i), point_json(sol.witnesses[i])}));
    j["witnesses"] = std::move(wits);
    json meta;
    meta["branch"] = sol.branch;
    meta["eps"] = sol.eps;
    meta["caveats"] = sol.caveats;
    j["method"] = std::move(meta);
    return j.dump(2) + "\n";
}

Solution parse_result(const std::string& text, const Instance& inst) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string("malformed JSON: ") + e.what(), line, col);
    }
    if (j.value("schema", "") != "stabhull-result/1")
        throw ParseError("result: unsupported schema", 0, 0);
    Solution sol;
    std::string obj = j.at("objective").get<std::string>();
    sol.objective = obj == "perimeter" ? Objective::perimeter
                    : obj == "area"    ? Objective::area
                                       : Objective::tour;
    sol.feasible = j.at("status") == "ok";
    if (sol.feasible) sol.value = j.at("value").get<double>();
    for (const auto& p : j.at("polygon")) sol.polygon.v.push_back(parse_point(p, "polygon"));
    sol.witnesses.assign(inst.objects.size(), Point2{});
    for (const auto& w : j.at("witnesses")) {
        size_t idx = w.at(0).get<size_t>();
        if (idx >= inst.objects.size()) throw ParseError("result: witness index out of range", 0, 0);
        sol.witnesses[idx] = parse_point(w.at(1), "witness");
    }
    if (j.contains("method")) {
        sol.branch = j["method"].value("branch", "");
        sol.eps = j["method"].value("eps", 0.0);
        if (j["method"].contains("caveats"))
            for (const auto& c : j["method"]["caveats"]) sol.caveats.push_back(c.get<std::string>());
    }
    if (sol.feasible && sol.objective != Objective::tour) {
        double tol = std::max(inst.config.tol, 1e-6);
        for (size_t i = 0; i < inst.objects.size(); ++i)
            if (!point_in_object(sol.witnesses[i], inst.objects[i], tol) ||
                !point_in_polygon(sol.witnesses[i], sol.polygon, tol))
                throw ParseError("result: witness " + std::to_string(i) + " fails verification", 0,
                                 0);
    }
    return sol;
}

}  // namespace stabhull
