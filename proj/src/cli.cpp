#include "eosmap/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "eosmap/render.hpp"

namespace eosmap {

namespace {

Family parse_family(const std::string& name) {
    if (name == "eos") return Family::Eos;
    if (name == "logistic") return Family::Logistic;
    throw CLI::ValidationError("--family", "must be 'eos' or 'logistic'");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    return f;
}

// Shared sweep flags.
struct ScanArgs {
    std::string family = "eos";
    double a = 100.0;
    double b_min = 0.0;
    double b_max = 0.5;
    int params = 2000;
    int transient = kDefaultTransient;
    int samples = kDefaultSamples;
    bool compensated = false;
    int threads = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family", family, "map family: eos | logistic");
        cmd->add_option("--a", a, "EOS steepness parameter a");
        cmd->add_option("--b-min", b_min, "lower sweep bound (b for eos, r for logistic)");
        cmd->add_option("--b-max", b_max, "upper sweep bound");
        cmd->add_option("--params", params, "number of parameter grid samples");
        cmd->add_option("--transient", transient, "iterates skipped before sampling");
        cmd->add_option("--samples", samples, "iterates stored per seed");
        cmd->add_flag("--compensated", compensated, "double-double iteration (for large a)");
        cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    }

    BifurcationScan run() const {
        return sweep(parse_family(family), a, {b_min, b_max}, params, transient, samples,
                     compensated, threads);
    }
};

void print_rotation(std::ostream& out, const RotationClass& rc, const PeriodicOrbit& orbit) {
    out << "kind " << to_string(rc.kind) << "\n";
    out << "rotation_number ";
    if (rc.rotation_number) {
        out << rc.rotation_number->num << "/" << rc.rotation_number->den;
    } else {
        out << "none";
    }
    out << "\nlap_histogram";
    for (int c : rc.lap_histogram) out << " " << c;
    out << "\nperiod " << orbit.period << "\nmultiplier " << format_g17(orbit.multiplier)
        << "\npoints";
    for (double p : orbit.points) out << " " << format_g17(p);
    out << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"bifurcation analysis of the EOS and logistic map families"};
    app.require_subcommand(1);

    // ---- scan ----
    auto* scan_cmd = app.add_subcommand("scan", "parameter sweep; CSV and/or P6 pixmap output");
    ScanArgs scan_args;
    scan_args.attach(scan_cmd);
    std::string scan_csv, scan_img;
    int scan_width = 0, scan_height = 1000;
    double y_min = 0.0, y_max = 0.0;
    bool y_set = false, olive = false;
    scan_cmd->add_option("--out-csv", scan_csv, "write scan points CSV here");
    scan_cmd->add_option("--out-img", scan_img, "write bifurcation diagram (P6 .ppm) here");
    scan_cmd->add_option("--width", scan_width, "image width (0 = one column per sample)");
    scan_cmd->add_option("--height", scan_height, "image height");
    auto* y_min_opt = scan_cmd->add_option("--y-min", y_min, "y axis lower bound");
    auto* y_max_opt = scan_cmd->add_option("--y-max", y_max, "y axis upper bound")
                          ->each([&](const std::string&) { y_set = true; });
    y_min_opt->needs(y_max_opt);
    y_max_opt->needs(y_min_opt);
    scan_cmd->add_flag("--olive", olive, "draw the first seed olive instead of yellow");
    scan_cmd->callback([&] {
        BifurcationScan scan = scan_args.run();
        if (!scan_csv.empty()) {
            auto f = open_out(scan_csv);
            write_scan_csv(scan, f);
        }
        if (!scan_img.empty()) {
            RenderSpec spec = default_render_spec(scan, scan_width, scan_height);
            if (y_set) spec.y_axis = {y_min, y_max};
            if (olive) spec.seed_colors[0] = kOlive;
            write_ppm(render_scan(scan, spec), scan_img);
        }
        std::cout << "scan: " << scan.columns.size() << " columns over ["
                  << format_g17(scan.range.lo) << ", " << format_g17(scan.range.hi) << "]\n";
    });

    // ---- graph ----
    auto* graph_cmd = app.add_subcommand("graph", "sample and plot F^n over the domain");
    std::string g_family = "eos", g_csv, g_img;
    double g_a = 100.0, g_b = 1.0 / 3.0, g_r = 3.83;
    int g_n = 1, g_resolution = 2000, g_width = 800, g_height = 800;
    bool g_comp = false;
    graph_cmd->add_option("--family", g_family, "map family: eos | logistic");
    graph_cmd->add_option("--a", g_a, "EOS a");
    graph_cmd->add_option("--b", g_b, "EOS b");
    graph_cmd->add_option("--r", g_r, "logistic r");
    graph_cmd->add_option("--n", g_n, "iterate order")->required();
    graph_cmd->add_option("--resolution", g_resolution, "sample count over the domain");
    graph_cmd->add_option("--out-csv", g_csv, "write x,F^n(x) CSV here");
    graph_cmd->add_option("--out-img", g_img, "write graph image (P6 .ppm) here");
    graph_cmd->add_option("--width", g_width, "image width");
    graph_cmd->add_option("--height", g_height, "image height");
    graph_cmd->add_flag("--compensated", g_comp, "double-double iteration");
    graph_cmd->callback([&] {
        MapInstance m = parse_family(g_family) == Family::Eos
                            ? MapInstance::eos(g_a, g_b, g_comp)
                            : MapInstance::logistic(g_r);
        IterateGraph g = render_iterate_graph(m, g_n, g_resolution, g_width, g_height);
        if (!g_csv.empty()) {
            auto f = open_out(g_csv);
            write_graph_csv(g, f);
        } else {
            write_graph_csv(g, std::cout);
        }
        if (!g_img.empty()) write_ppm(g.image, g_img);
    });

    // ---- windows ----
    auto* win_cmd = app.add_subcommand("windows", "detect periodic windows; CSV table output");
    ScanArgs win_args;
    win_args.attach(win_cmd);
    std::string win_csv;
    int max_period = kDefaultMaxPeriod, report_steps = 200;
    bool no_report = false;
    win_cmd->add_option("--max-period", max_period, "largest detected period");
    win_cmd->add_option("--report-steps", report_steps, "continuation steps per window report");
    win_cmd->add_flag("--no-report", no_report, "skip branch continuation / hopping metric");
    win_cmd->add_option("--out-csv", win_csv, "write window table here (default stdout)");
    win_cmd->callback([&] {
        BifurcationScan scan = win_args.run();
        std::vector<Window> ws = find_windows(scan, max_period);
        if (!no_report && scan.family == Family::Eos) {
            for (Window& w : ws) {
                try {
                    w = window_report(scan.a, w, report_steps, scan.compensated);
                } catch (const Error&) {
                    // leave the bare window in the table
                }
            }
        }
        if (!win_csv.empty()) {
            auto f = open_out(win_csv);
            write_windows_csv(ws, f);
        } else {
            write_windows_csv(ws, std::cout);
        }
    });

    // ---- track ----
    auto* track_cmd = app.add_subcommand("track", "continue a periodic branch P(b); CSV output");
    double t_a = 100.0, t_b_min = 0.0, t_b_max = 0.0;
    int t_period = 0, t_steps = 200, t_index = 0;
    bool t_comp = false;
    std::string t_csv;
    track_cmd->add_option("--a", t_a, "EOS a");
    track_cmd->add_option("--period", t_period, "orbit period")->required();
    track_cmd->add_option("--b-min", t_b_min, "window lower bound")->required();
    track_cmd->add_option("--b-max", t_b_max, "window upper bound")->required();
    track_cmd->add_option("--steps", t_steps, "uniform continuation steps");
    track_cmd->add_option("--track-index", t_index, "which sorted orbit point to track");
    track_cmd->add_flag("--compensated", t_comp, "double-double residuals (for large a)");
    track_cmd->add_option("--out-csv", t_csv, "write branch CSV here (default stdout)");
    track_cmd->callback([&] {
        Branch branch = continue_branch(t_a, {t_b_min, t_b_max}, t_period, t_index, t_steps,
                                        t_comp);
        if (!t_csv.empty()) {
            auto f = open_out(t_csv);
            write_branch_csv(branch, f);
        } else {
            write_branch_csv(branch, std::cout);
        }
    });

    // ---- classify ----
    auto* cls_cmd = app.add_subcommand("classify", "rotational type of the attracting orbit");
    double c_a = 100.0, c_b = 0.0;
    int c_period = 0, c_transient = kDefaultTransient;
    bool c_comp = false;
    cls_cmd->add_option("--a", c_a, "EOS a");
    cls_cmd->add_option("--b", c_b, "EOS b")->required();
    cls_cmd->add_option("--period", c_period, "orbit period")->required();
    cls_cmd->add_option("--transient", c_transient, "iterates skipped before detection");
    cls_cmd->add_flag("--compensated", c_comp, "double-double iteration");
    cls_cmd->callback([&] {
        MapInstance m = MapInstance::eos(c_a, c_b, c_comp);
        for (double seed : seed_points(m)) {
            OrbitSegment seg = iterate_unchecked(m, seed, c_transient,
                                                 std::max(kDefaultSamples, 4 * c_period));
            AttractorReport rep =
                classify_attractor(seg, std::max(kDefaultMaxPeriod, c_period));
            if (rep.kind != AttractorKind::PeriodicOrbit || rep.period != c_period) continue;
            PeriodicOrbit orbit = refine(m, rep.clusters.front().center, c_period);
            print_rotation(std::cout, classify_orbit(m, orbit), orbit);
            return;
        }
        throw SeedOrbitNotFound("classify: no attracting period-" + std::to_string(c_period) +
                                " orbit found at b=" + format_g17(c_b));
    });

    // ---- jumps ----
    auto* jump_cmd = app.add_subcommand("jumps", "locate attractor jumps along a sweep");
    ScanArgs jump_args;
    jump_args.attach(jump_cmd);
    int j_seed = 1;
    std::string j_csv;
    jump_cmd->add_option("--seed", j_seed, "seed index (0 = left critical, 1 = right)");
    jump_cmd->add_option("--out-csv", j_csv, "write jump CSV here (default stdout)");
    jump_cmd->callback([&] {
        BifurcationScan scan = jump_args.run();
        std::vector<Jump> js = find_jumps(scan, j_seed);
        if (!j_csv.empty()) {
            auto f = open_out(j_csv);
            write_jumps_csv(js, f);
        } else {
            write_jumps_csv(js, std::cout);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidRange& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace eosmap
