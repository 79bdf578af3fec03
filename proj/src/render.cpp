#include "eosmap/render.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace eosmap {

Image::Image(int w, int h, Rgb fill) : width(w), height(h) {
    data.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
    for (std::size_t i = 0; i < data.size(); i += 3) {
        data[i] = fill.r;
        data[i + 1] = fill.g;
        data[i + 2] = fill.b;
    }
}

void Image::set(int x, int y, Rgb c) {
    if (x < 0 || x >= width || y < 0 || y >= height) return;
    std::size_t i = 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                         static_cast<std::size_t>(x));
    data[i] = c.r;
    data[i + 1] = c.g;
    data[i + 2] = c.b;
}

Rgb Image::get(int x, int y) const {
    std::size_t i = 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                         static_cast<std::size_t>(x));
    return {data[i], data[i + 1], data[i + 2]};
}

void write_ppm(const Image& img, std::ostream& out) {
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
}

void write_ppm(const Image& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    write_ppm(img, f);
}

namespace {

// Nearest-pixel mapping of v in [lo, hi] onto 0..n-1.
int to_pixel(double v, double lo, double hi, int n) {
    if (!(hi > lo) || n < 1) return -1;
    double t = (v - lo) / (hi - lo);
    int p = static_cast<int>(std::lround(t * (n - 1)));
    return (p < 0 || p >= n) ? -1 : p;
}

}  // namespace

RenderSpec default_render_spec(const BifurcationScan& scan, int width, int height) {
    RenderSpec spec;
    spec.width = width > 0 ? width : static_cast<int>(scan.columns.size());
    spec.height = height;
    spec.x_axis = scan.range;
    if (scan.family == Family::Eos) {
        spec.y_axis = {scan.range.lo - 1.0, scan.range.hi};
    } else {
        spec.y_axis = {0.0, 1.0};
    }
    return spec;
}

Image render_scan(const BifurcationScan& scan, const RenderSpec& spec) {
    std::size_t total = 0;
    for (const auto& col : scan.columns) {
        for (const auto& s : col.seed_samples) total += s.size();
    }
    if (scan.columns.empty() || total == 0) throw EmptyScan("render_scan: no points to plot");

    Image img(spec.width, spec.height, spec.background);
    std::size_t n_seeds = 0;
    for (const auto& col : scan.columns) n_seeds = std::max(n_seeds, col.seed_samples.size());

    auto px = [&](double b) { return to_pixel(b, spec.x_axis.lo, spec.x_axis.hi, spec.width); };
    auto py = [&](double x) {
        int p = to_pixel(x, spec.y_axis.lo, spec.y_axis.hi, spec.height);
        return p < 0 ? -1 : spec.height - 1 - p;  // row 0 is the top
    };

    for (std::size_t s = 0; s < n_seeds; ++s) {
        Rgb color = s < spec.seed_colors.size() ? spec.seed_colors[s] : spec.seed_colors.back();
        for (const auto& col : scan.columns) {
            if (s >= col.seed_samples.size()) continue;
            int x = px(col.param);
            if (x < 0) continue;
            for (double v : col.seed_samples[s]) {
                int y = py(v);
                if (y >= 0) img.set(x, y, color);
            }
        }
    }

    // Critical-point lines for the mid-range map.
    MapInstance mid = scan.map_at(scan.range.midpoint());
    for (double c : critical_points(mid).points) {
        int y = py(c);
        if (y < 0) continue;
        for (int x = 0; x < spec.width; ++x) img.set(x, y, spec.critical_color);
    }
    return img;
}

IterateGraph render_iterate_graph(const MapInstance& m, int n, int resolution, int width,
                                  int height) {
    if (n < 1) throw std::invalid_argument("render_iterate_graph: n must be >= 1");
    if (resolution < 2) throw std::invalid_argument("render_iterate_graph: resolution must be >= 2");

    const Interval dom = m.domain();
    IterateGraph g;
    g.xs.reserve(static_cast<std::size_t>(resolution));
    g.values.reserve(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
        double x = dom.lo + dom.width() * i / (resolution - 1);
        g.xs.push_back(x);
        if (m.compensated()) {
            dd::DD z{x};
            for (int k = 0; k < n; ++k) z = eval_dd(m, z);
            g.values.push_back(dd::to_double(z));
        } else {
            double z = x;
            for (int k = 0; k < n; ++k) z = eval(m, z);
            g.values.push_back(z);
        }
    }

    // Attracting fixed points of F^n: the attractor must be periodic with a
    // period dividing n.
    for (double seed : seed_points(m)) {
        OrbitSegment seg = iterate_unchecked(m, seed, kDefaultTransient, kDefaultSamples);
        AttractorReport rep = classify_attractor(seg, kDefaultMaxPeriod);
        if (rep.kind != AttractorKind::PeriodicOrbit || !rep.period || n % *rep.period != 0) {
            continue;
        }
        try {
            PeriodicOrbit orbit = refine(m, rep.clusters.front().center, *rep.period);
            for (double p : orbit.points) {
                bool known = false;
                for (double q : g.fixed_points) known = known || std::abs(p - q) < kTolCluster;
                if (!known) g.fixed_points.push_back(p);
            }
        } catch (const Error&) {
            // no lines for this seed
        }
    }

    Image img(width, height, kWhite);
    auto px = [&](double v) { return to_pixel(v, dom.lo, dom.hi, width); };
    auto py = [&](double v) {
        int p = to_pixel(v, dom.lo, dom.hi, height);
        return p < 0 ? -1 : height - 1 - p;
    };
    for (int x = 0; x < width; ++x) {  // identity diagonal
        double v = dom.lo + dom.width() * x / (width - 1);
        int y = py(v);
        if (y >= 0) img.set(x, y, kGray);
    }
    for (std::size_t i = 0; i < g.xs.size(); ++i) {
        int x = px(g.xs[i]);
        int y = py(g.values[i]);
        if (x >= 0 && y >= 0) img.set(x, y, kBlue);
    }
    for (double p : g.fixed_points) {
        int x = px(p);
        int y = py(p);
        if (y >= 0) {
            for (int xx = 0; xx < width; ++xx) img.set(xx, y, kGreen);
        }
        if (x >= 0) {
            for (int yy = 0; yy < height; ++yy) img.set(x, yy, kGreen);
        }
    }
    g.image = std::move(img);
    return g;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<ScanPoint> scan_points(const BifurcationScan& scan) {
    std::vector<ScanPoint> pts;
    for (const auto& col : scan.columns) {
        for (std::size_t s = 0; s < col.seed_samples.size(); ++s) {
            const auto& samples = col.seed_samples[s];
            for (std::size_t k = 0; k < samples.size(); ++k) {
                pts.push_back({col.param, static_cast<int>(s), static_cast<int>(k), samples[k]});
            }
        }
    }
    return pts;
}

void write_scan_csv(const BifurcationScan& scan, std::ostream& out) {
    out << "b,seed,iter,x\n";
    for (const ScanPoint& p : scan_points(scan)) {
        out << format_g17(p.param) << ',' << p.seed << ',' << p.iter << ',' << format_g17(p.x)
            << '\n';
    }
}

std::vector<ScanPoint> parse_scan_csv(std::istream& in) {
    std::vector<ScanPoint> pts;
    std::string line;
    if (!std::getline(in, line)) return pts;  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ScanPoint p;
        char* end = nullptr;
        const char* s = line.c_str();
        p.param = std::strtod(s, &end);
        p.seed = static_cast<int>(std::strtol(end + 1, &end, 10));
        p.iter = static_cast<int>(std::strtol(end + 1, &end, 10));
        p.x = std::strtod(end + 1, nullptr);
        pts.push_back(p);
    }
    return pts;
}

void write_branch_csv(const Branch& branch, std::ostream& out) {
    out << "b,P,multiplier,dPdb\n";
    for (std::size_t i = 0; i < branch.samples.size(); ++i) {
        const auto& s = branch.samples[i];
        out << format_g17(s.b) << ',' << format_g17(s.position) << ','
            << format_g17(s.multiplier) << ',';
        if (i < branch.derivative_estimates.size()) {
            out << format_g17(branch.derivative_estimates[i].dPdb);
        }
        out << '\n';
    }
}

void write_windows_csv(const std::vector<Window>& ws, std::ostream& out) {
    out << "b_lo,b_hi,period,rotation_kind,rotation_number,hopping_peak,hopping_edges\n";
    for (const Window& w : ws) {
        out << format_g17(w.param_interval.lo) << ',' << format_g17(w.param_interval.hi) << ','
            << w.period << ',';
        if (w.rotation) {
            out << to_string(w.rotation->kind) << ',';
            if (w.rotation->rotation_number) {
                out << w.rotation->rotation_number->num << '/' << w.rotation->rotation_number->den;
            }
        } else {
            out << ',';
        }
        out << ',';
        if (w.hopping) {
            out << format_g17(w.hopping->slope_peak) << ',' << format_g17(w.hopping->slope_edges);
        } else {
            out << ',';
        }
        out << '\n';
    }
}

void write_graph_csv(const IterateGraph& g, std::ostream& out) {
    out << "x,Fn_x\n";
    for (std::size_t i = 0; i < g.xs.size(); ++i) {
        out << format_g17(g.xs[i]) << ',' << format_g17(g.values[i]) << '\n';
    }
}

void write_jumps_csv(const std::vector<Jump>& js, std::ostream& out) {
    out << "b_left,b_right,gap\n";
    for (const Jump& j : js) {
        out << format_g17(j.b_left) << ',' << format_g17(j.b_right) << ',' << format_g17(j.gap)
            << '\n';
    }
}

}  // namespace eosmap
