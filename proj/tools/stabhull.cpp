#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stabhull/config.hpp"
#include "stabhull/exact.hpp"
#include "stabhull/fptas_area.hpp"
#include "stabhull/fptas_perimeter.hpp"
#include "stabhull/io.hpp"
#include "stabhull/oracle.hpp"
#include "stabhull/svg.hpp"
#include "stabhull/tpp.hpp"

namespace {

using namespace stabhull;

struct CommonOpts {
    std::string input;
    std::string output;
    std::string svg;
    std::optional<double> eps;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    int max_iters = 100000;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_eps) {
    cmd->add_option("-i,--input", o.input, "instance JSON file")->required();
    cmd->add_option("-o,--output", o.output, "result JSON file (default: stdout)");
    cmd->add_option("--svg", o.svg, "write an SVG rendering");
    if (needs_eps) cmd->add_option("--eps", o.eps, "approximation parameter");
    cmd->add_option("--tol", o.tol, "numeric tolerance");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--threads", o.threads, "worker threads for guess loops");
    cmd->add_option("--max-iters", o.max_iters, "iteration cap for the tour solver");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file: " + path, 0, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

int emit_all(const Solution& sol, const Instance& inst, const CommonOpts& o) {
    std::string result = emit_result(sol, inst);
    if (o.output.empty())
        std::cout << result;
    else
        write_file(o.output, result);
    if (!o.svg.empty()) write_file(o.svg, render_svg(sol, inst));
    return sol.feasible ? 0 : 3;
}

SolverConfig make_config(const Instance& inst, const CommonOpts& o) {
    SolverConfig cfg;
    cfg.tol = o.tol.value_or(inst.config.tol);
    cfg.seed = o.seed.value_or(inst.config.seed);
    cfg.threads = o.threads;
    cfg.max_iters = o.max_iters;
    return cfg;
}

std::vector<int> parse_order(const std::string& text, size_t n_objects) {
    std::vector<int> order;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int v = std::stoi(item);
        if (v < 1 || static_cast<size_t>(v) > n_objects)
            throw ParseError("--order index out of range: " + item, 0, 0);
        order.push_back(v - 1);
    }
    if (order.empty()) throw ParseError("--order is empty", 0, 0);
    return order;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabhull: smallest convex polygons intersecting every object of an instance"};
    app.require_subcommand(1);

    CommonOpts operi, oarea, oexact, otpp, oorc;
    auto* cmd_peri = app.add_subcommand("perimeter", "(1+eps)-approximate minimum perimeter");
    add_common(cmd_peri, operi, true);
    auto* cmd_area = app.add_subcommand("area", "(1+eps)-approximate minimum area");
    add_common(cmd_area, oarea, true);
    auto* cmd_exact = app.add_subcommand("exact", "exact minimum perimeter for segments/rays");
    add_common(cmd_exact, oexact, false);

    auto* cmd_tpp = app.add_subcommand("tpp", "shortest tour visiting objects in a fixed order");
    add_common(cmd_tpp, otpp, false);
    std::string order_text;
    std::string start_text;
    double eps_ray = -1.0;
    bool pseudo = false;
    cmd_tpp->add_option("--order", order_text, "1-based object visit order, e.g. 1,2,3")->required();
    cmd_tpp->add_option("--start", start_text, "start point \"x,y\" (tour begins and ends here)");
    cmd_tpp->add_option("--eps-ray", eps_ray, "shorthand: start at (0, -eps)");
    cmd_tpp->add_flag("--pseudo", pseudo, "pseudo-tour: crossing a supporting line suffices");

    auto* cmd_orc = app.add_subcommand("oracle", "brute-force baseline values");
    add_common(cmd_orc, oorc, false);
    std::string orc_objective = "perimeter";
    int resolution = 256;
    cmd_orc->add_option("--objective", orc_objective, "perimeter or area")
        ->check(CLI::IsMember({"perimeter", "area"}));
    cmd_orc->add_option("--resolution", resolution, "grid subdivisions per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cmd_peri->parsed()) {
            Instance inst = parse_instance(read_file(operi.input));
            SolverConfig cfg = make_config(inst, operi);
            double eps = operi.eps.value_or(inst.config.eps);
            Solution sol = solve_perimeter(inst.objects, eps, cfg);
            return emit_all(sol, inst, operi);
        }
        if (cmd_area->parsed()) {
            Instance inst = parse_instance(read_file(oarea.input));
            SolverConfig cfg = make_config(inst, oarea);
            double eps = oarea.eps.value_or(inst.config.eps);
            Solution sol = solve_area(inst.objects, eps, cfg);
            return emit_all(sol, inst, oarea);
        }
        if (cmd_exact->parsed()) {
            Instance inst = parse_instance(read_file(oexact.input));
            SolverConfig cfg = make_config(inst, oexact);
            Solution sol = solve_exact(inst.objects, cfg);
            return emit_all(sol, inst, oexact);
        }
        if (cmd_tpp->parsed()) {
            Instance inst = parse_instance(read_file(otpp.input));
            SolverConfig cfg = make_config(inst, otpp);
            std::vector<int> order = parse_order(order_text, inst.objects.size());
            Point2 start{0.0, 0.0};
            if (!start_text.empty()) {
                auto comma = start_text.find(',');
                if (comma == std::string::npos) throw ParseError("--start expects \"x,y\"", 0, 0);
                start = {std::stod(start_text.substr(0, comma)),
                         std::stod(start_text.substr(comma + 1))};
            } else if (eps_ray >= 0.0) {
                start = {0.0, -eps_ray};
            } else {
                throw ParseError("tpp needs --start or --eps-ray", 0, 0);
            }
            TourOptions topts;
            topts.tol = cfg.tol;
            topts.max_iters = cfg.max_iters;
            topts.seed = cfg.seed;
            TourPath path;
            if (pseudo) {
                std::vector<std::pair<HalfPlane, int>> hps;
                std::vector<int> kept;
                for (int idx : order) {
                    auto hp = halfplane_of(inst.objects[static_cast<size_t>(idx)], start, start,
                                           cfg.tol);
                    if (hp) {
                        hps.emplace_back(*hp, idx);
                        kept.push_back(idx);
                    }
                }
                OrderedHalfPlanes seq;  // keep the user-specified order
                for (const auto& [hp, src] : hps) seq.entries.push_back({hp, src});
                path = tour(start, seq, start, topts);
            } else {
                std::vector<ConvexObject> seq;
                for (int idx : order) seq.push_back(inst.objects[static_cast<size_t>(idx)]);
                path = tour_objects(start, seq, start, topts);
            }
            if (!path.converged) {
                std::cerr << "tour solver did not converge\n";
                return 4;
            }
            Solution sol;
            sol.objective = Objective::tour;
            sol.value = path.length;
            sol.polygon.v = path.waypoints;
            sol.witnesses.clear();
            for (size_t i = 1; i + 1 < path.waypoints.size(); ++i)
                sol.witnesses.push_back(path.waypoints[i]);
            sol.branch = pseudo ? "pseudo_tour" : "tour";
            if (path.grazing) sol.caveats.push_back("grazing_contact");
            return emit_all(sol, inst, otpp);
        }
        if (cmd_orc->parsed()) {
            Instance inst = parse_instance(read_file(oorc.input));
            oracle::Resolution res{resolution};
            oracle::OracleResult r =
                orc_objective == "perimeter"
                    ? oracle::oracle_perimeter(inst.objects, res, oorc.threads)
                    : oracle::oracle_area(inst.objects, res, oorc.threads);
            Solution sol;
            sol.objective = orc_objective == "perimeter" ? Objective::perimeter : Objective::area;
            sol.value = r.value;
            sol.polygon.v = r.polygon;
            sol.branch = "oracle";
            sol.caveats.push_back("discretization_slack=" + std::to_string(r.slack));
            for (const auto& o : inst.objects) {
                auto w = intersection_witness(o, sol.polygon, 1e-6);
                sol.witnesses.push_back(w.value_or(Point2{}));
            }
            return emit_all(sol, inst, oorc);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what();
        if (e.line > 0) std::cerr << " (line " << e.line << ", column " << e.column << ")";
        std::cerr << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
