// Acceptance suite: runs every gate criterion and prints one line per
// criterion. Exits nonzero if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "stabhull/exact.hpp"
#include "stabhull/fptas_area.hpp"
#include "stabhull/fptas_perimeter.hpp"
#include "stabhull/io.hpp"
#include "stabhull/oracle.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace stabhull;
using namespace testutil;
using nlohmann::ordered_json;

namespace {

int g_failures = 0;

void report(int n, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << n << " (" << name << "): "
              << detail << std::endl;
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string g_cli;
fs::path g_data;
fs::path g_tmp;

int run_cli(const std::string& args) {
    std::string cmd = "\"" + g_cli + "\" " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ordered_json run_and_load(const std::string& args, const std::string& outname) {
    fs::path out = g_tmp / outname;
    int rc = run_cli(args + " -o \"" + out.string() + "\"");
    if (rc != 0) throw std::runtime_error("cli exited with code " + std::to_string(rc));
    return ordered_json::parse(slurp(out));
}

// Seeded generator for criteria 4 and 5. The oracle at grid_n=512 carries a
// discretization gap of roughly 1.5 cells (about 0.009 at unit scale), so the
// 1% comparison is only meaningful when OPT is bounded away from zero; we
// rejection-sample on a certified lower bound (2 * max pairwise distance).
std::vector<std::vector<ConvexObject>> perimeter_corpus(int count, int min_segs, int max_segs,
                                                        double lb) {
    std::vector<std::vector<ConvexObject>> out;
    std::uint64_t attempt = 0;
    while (static_cast<int>(out.size()) < count) {
        auto rng = rng_for(0xACC0 + attempt);
        ++attempt;
        int n = min_segs + static_cast<int>(attempt % static_cast<std::uint64_t>(max_segs - min_segs + 1));
        auto segs = random_segments(rng, n);
        if (common_point_check(segs).point) continue;
        if (perimeter_lower_bound(segs) < lb) continue;
        out.push_back(segs);
    }
    return out;
}

std::vector<std::vector<ConvexObject>> area_corpus(int count) {
    std::vector<std::vector<ConvexObject>> out;
    std::uint64_t attempt = 0;
    while (static_cast<int>(out.size()) < count) {
        auto rng = rng_for(0xA12EA0 + attempt);
        ++attempt;
        int n = 3 + static_cast<int>(attempt % 2);
        auto segs = random_segments(rng, n);
        if (line_stab(segs)) continue;  // rejection-sample: no stabbing line
        out.push_back(segs);
    }
    return out;
}

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::ostringstream d;
    try {
        fs::path tri = g_data / "triangle.json";
        auto ex = run_and_load("exact -i \"" + tri.string() + "\" --threads 8", "c1_exact.json");
        double exv = ex["value"].get<double>();
        pass = pass && std::abs(exv - 1.5) <= 1e-6;
        d << "exact=" << exv;
        auto ap = run_and_load("perimeter --eps 0.25 -i \"" + tri.string() + "\" --threads 8",
                               "c1_peri.json");
        double apv = ap["value"].get<double>();
        pass = pass && apv >= 1.5 - 1e-9 && apv <= 1.875;
        d << " approx=" << apv;
    } catch (const std::exception& e) {
        pass = false;
        d << " error: " << e.what();
    }
    double dt = seconds_since(t0);
    pass = pass && dt < 10.0;
    d << " time=" << dt << "s";
    report(1, "triangle perimeter", pass, d.str());
}

void criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::ostringstream d;
    try {
        fs::path tri = g_data / "triangle.json";
        auto ar = run_and_load("area --eps 0.25 -i \"" + tri.string() + "\" --threads 8",
                               "c2_area.json");
        double v = ar["value"].get<double>();
        std::string branch = ar["method"]["branch"].get<std::string>();
        pass = v == 0.0 && branch == "line_stab";
        d << "value=" << v << " branch=" << branch;
    } catch (const std::exception& e) {
        pass = false;
        d << " error: " << e.what();
    }
    double dt = seconds_since(t0);
    pass = pass && dt < 10.0;
    d << " time=" << dt << "s";
    report(2, "triangle area via stabbing line", pass, d.str());
}

void criterion_3() {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::ostringstream d;
    double eps = 0.05;
    double closed_form = std::sqrt(1.0 + eps * eps) + 2.0 * std::sqrt(1.5 * 1.5 + 1.0) +
                         std::sqrt(4.0 + eps * eps);
    try {
        fs::path rays = g_data / "three_rays.json";
        auto tourj = run_and_load(
            "tpp -i \"" + rays.string() + "\" --order 1,2,3 --eps-ray 0.05", "c3_tour.json");
        double tv = tourj["value"].get<double>();
        pass = pass && std::abs(tv - closed_form) <= 1e-6 && tv < 6.8;
        d << "tour=" << tv << " (closed form " << closed_form << ")";
        auto pseudoj = run_and_load(
            "tpp -i \"" + rays.string() + "\" --order 1,2,3 --eps-ray 0.05 --pseudo",
            "c3_pseudo.json");
        double pv = pseudoj["value"].get<double>();
        pass = pass && std::abs(pv - 2.1) <= 1e-6;
        d << " pseudo=" << pv;
        auto altj = run_and_load(
            "tpp -i \"" + rays.string() + "\" --order 2,1,3 --eps-ray 0.05", "c3_alt.json");
        double av = altj["value"].get<double>();
        pass = pass && av >= 7.0 - 1e-6;
        d << " alt_order=" << av;
    } catch (const std::exception& e) {
        pass = false;
        d << " error: " << e.what();
    }
    double dt = seconds_since(t0);
    pass = pass && dt < 5.0;
    d << " time=" << dt << "s";
    report(3, "three-ray fixture", pass, d.str());
}

void criteria_4_and_5() {
    auto t0 = std::chrono::steady_clock::now();
    SolverConfig cfg;
    cfg.threads = 8;
    auto corpus = perimeter_corpus(20, 3, 5, 0.9);
    bool pass4 = true, pass5 = true;
    std::ostringstream d4, d5;
    double worst_rel = 0.0, worst_ratio = 0.0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        const auto& segs = corpus[i];
        auto ex = solve_exact(segs, cfg);
        auto orc = oracle::oracle_perimeter(segs, oracle::Resolution{512}, 8);
        double rel = std::abs(ex.value - orc.value) / orc.value;
        worst_rel = std::max(worst_rel, rel);
        if (rel > 0.01) {
            pass4 = false;
            d4 << " [instance " << i << ": rel=" << rel << "]";
        }
        auto ap = solve_perimeter(segs, 0.25, cfg);
        if (!(ex.value <= ap.value + 1e-7)) {
            pass5 = false;
            d5 << " [instance " << i << ": exact " << ex.value << " > approx " << ap.value << "]";
        }
        double ratio = ap.value / ex.value;
        worst_ratio = std::max(worst_ratio, ratio);
        if (!(ap.value <= 1.25 * ex.value + 1e-7)) {
            pass5 = false;
            d5 << " [instance " << i << ": ratio=" << ratio << "]";
        }
    }
    double dt = seconds_since(t0);
    pass4 = pass4 && dt < 600.0;
    std::ostringstream s4;
    s4 << "20 instances, worst |exact-oracle|/oracle=" << worst_rel << d4.str() << " time=" << dt
       << "s";
    report(4, "oracle equivalence", pass4, s4.str());
    std::ostringstream s5;
    s5 << "worst approx/exact ratio=" << worst_ratio << d5.str();
    report(5, "perimeter guarantee sandwich", pass5, s5.str());
}

void criterion_6() {
    auto t0 = std::chrono::steady_clock::now();
    SolverConfig cfg;
    cfg.threads = 8;
    auto corpus = area_corpus(10);
    bool pass = true;
    std::ostringstream d;
    double worst = 0.0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        const auto& segs = corpus[i];
        auto sa = solve_area(segs, 0.5, cfg);
        auto orc = oracle::oracle_area(segs, oracle::Resolution{512}, 8);
        double slack = 2.0 * orc.slack;
        if (!sa.feasible || !(sa.value <= 1.5 * orc.value + slack) ||
            !(sa.value >= orc.value - slack)) {
            pass = false;
            d << " [instance " << i << ": solve=" << (sa.feasible ? sa.value : -1.0)
              << " oracle=" << orc.value << " slack=" << slack << "]";
        }
        if (orc.value > 0.0) worst = std::max(worst, sa.value / orc.value);
    }
    double dt = seconds_since(t0);
    std::ostringstream s;
    s << "10 blocked instances, worst solve/oracle=" << worst << d.str() << " time=" << dt << "s";
    report(6, "area guarantee vs oracle", pass, s.str());
}

void criterion_7(const std::string& property_binary) {
    auto t0 = std::chrono::steady_clock::now();
    int rc = std::system(("\"" + property_binary + "\" > /dev/null 2>&1").c_str());
    bool ok = rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
    double dt = seconds_since(t0);
    bool pass = ok && dt < 300.0;
    std::ostringstream s;
    s << "property suites " << (ok ? "green" : "failing") << " time=" << dt << "s";
    report(7, "property suites", pass, s.str());
}

void criterion_8() {
    bool pass = true;
    std::ostringstream d;
    // a fixed seeded instance for the polygon objectives
    auto corpus = perimeter_corpus(1, 4, 4, 0.5);
    Instance inst;
    inst.objects = corpus[0];
    fs::path ipath = g_tmp / "det_instance.json";
    std::ofstream(ipath) << emit_instance(inst);
    fs::path rays = g_data / "three_rays.json";

    struct Run {
        std::string name;
        std::string args;
    };
    std::vector<Run> runs{
        {"exact", "exact -i \"" + ipath.string() + "\" --seed 0"},
        {"perimeter", "perimeter --eps 0.25 -i \"" + ipath.string() + "\" --seed 0"},
        {"area", "area --eps 0.5 -i \"" + ipath.string() + "\" --seed 0"},
        {"tpp", "tpp -i \"" + rays.string() + "\" --order 1,2,3 --eps-ray 0.05 --seed 0"},
    };
    for (const auto& r : runs) {
        std::array<std::string, 3> outs;
        std::array<std::string, 3> svgs;
        std::array<std::string, 3> flags{" --threads 1", " --threads 1", " --threads 8"};
        bool ok = true;
        for (int k = 0; k < 3; ++k) {
            fs::path out = g_tmp / ("det_" + r.name + "_" + std::to_string(k) + ".json");
            fs::path svg = g_tmp / ("det_" + r.name + "_" + std::to_string(k) + ".svg");
            int rc = run_cli(r.args + flags[static_cast<size_t>(k)] + " -o \"" + out.string() +
                             "\" --svg \"" + svg.string() + "\"");
            if (rc != 0) ok = false;
            outs[static_cast<size_t>(k)] = slurp(out);
            svgs[static_cast<size_t>(k)] = slurp(svg);
        }
        ok = ok && outs[0] == outs[1] && outs[0] == outs[2] && !outs[0].empty();
        ok = ok && svgs[0] == svgs[1] && svgs[0] == svgs[2] && !svgs[0].empty();
        if (!ok) {
            pass = false;
            d << " [" << r.name << " differs]";
        }
    }
    report(8, "byte-identical determinism", pass, pass ? "4 commands x {rerun, threads 1 vs 8}"
                                                       : d.str());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <stabhull-cli> <data-dir> [property-test-binary]\n";
        return 2;
    }
    g_cli = argv[1];
    g_data = argv[2];
    g_tmp = fs::path("acceptance_tmp");
    fs::create_directories(g_tmp);
    std::string prop = argc > 3 ? argv[3] : "";

    criterion_1();
    criterion_2();
    criterion_3();
    criteria_4_and_5();
    criterion_6();
    if (!prop.empty())
        criterion_7(prop);
    else
        std::cout << "[SKIP] criterion 7 (property suites): binary path not supplied — run "
                     "test_properties via ctest\n";
    criterion_8();

    std::cout << (g_failures == 0 ? "acceptance: all criteria passed"
                                  : "acceptance: " + std::to_string(g_failures) + " criteria failed")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
