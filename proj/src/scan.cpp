#include "eosmap/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace eosmap {

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> cluster_centers(std::span<const double> samples) {
    std::vector<double> centers;
    for (const Cluster& c : agglomerate(samples, kTolCluster)) centers.push_back(c.center);
    return centers;
}

double hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return a.size() == b.size() ? 0.0 : 1e300;
    auto one_sided = [](const std::vector<double>& from, const std::vector<double>& to) {
        double worst = 0.0;
        for (double x : from) {
            double best = std::abs(x - to[0]);
            for (double y : to) best = std::min(best, std::abs(x - y));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace

MapInstance BifurcationScan::map_at(double param) const {
    if (family == Family::Eos) return MapInstance::eos(a, param, compensated);
    return MapInstance::logistic(param);
}

double BifurcationScan::grid_step() const {
    if (columns.size() < 2) return 0.0;
    return range.width() / static_cast<double>(columns.size() - 1);
}

std::vector<double> seed_points(const MapInstance& m) {
    CriticalSet cs = critical_points(m);
    if (cs.points.empty()) return {m.domain().midpoint()};
    return cs.points;
}

BifurcationScan sweep(Family family, double a, Interval range, int n_params, int transient,
                      int samples, bool compensated, int threads) {
    if (n_params < 2) throw InvalidRange("sweep: need at least 2 parameter samples");
    if (!(range.lo < range.hi)) throw InvalidRange("sweep: empty parameter range");
    if (family == Family::Eos) {
        if (range.lo < 0.0 || range.hi > 1.0) throw InvalidRange("sweep: b range outside [0,1]");
    } else {
        if (range.lo <= 0.0 || range.hi > 4.0) throw InvalidRange("sweep: r range outside (0,4]");
    }
    if (transient < 0 || samples < 1) throw InvalidRange("sweep: bad transient/sample counts");

    BifurcationScan scan;
    scan.family = family;
    scan.a = a;
    scan.compensated = compensated;
    scan.range = range;
    scan.transient = transient;
    scan.samples = samples;
    scan.columns.resize(static_cast<std::size_t>(n_params));

    const double h = range.width() / (n_params - 1);
    parallel_for(n_params, threads, [&](int i) {
        double param = range.lo + i * h;
        MapInstance m = scan.map_at(param);
        ScanColumn col;
        col.param = param;
        for (double seed : seed_points(m)) {
            col.seed_samples.push_back(
                iterate_unchecked(m, seed, transient, samples).samples);
        }
        scan.columns[static_cast<std::size_t>(i)] = std::move(col);
    });
    return scan;
}

namespace {

// Per-column period with the seed-consensus rule: all seeds equal -> that
// period; exactly one seed periodic -> its period, flagged split; otherwise
// none.
struct ColumnPeriod {
    std::optional<int> period;
    bool split = false;
};

ColumnPeriod column_period(const BifurcationScan& scan, const ScanColumn& col, int max_period) {
    std::vector<std::optional<int>> per_seed;
    for (const auto& samples : col.seed_samples) {
        OrbitSegment seg{scan.map_at(col.param), 0.0, scan.transient, samples};
        per_seed.push_back(detect_period(seg, max_period));
    }
    ColumnPeriod out;
    for (const auto& p : per_seed) {
        if (!p) continue;
        if (!out.period) {
            out.period = p;
        } else if (*out.period != *p) {
            return {};  // seeds on different periods: ambiguous
        }
    }
    if (out.period) {
        out.split = std::any_of(per_seed.begin(), per_seed.end(),
                                [](const auto& p) { return !p.has_value(); });
    }
    return out;
}

ColumnPeriod probe_period(const BifurcationScan& scan, double param, int max_period) {
    MapInstance m = scan.map_at(param);
    ScanColumn col;
    col.param = param;
    for (double seed : seed_points(m)) {
        col.seed_samples.push_back(
            iterate_unchecked(m, seed, scan.transient, scan.samples).samples);
    }
    return column_period(scan, col, max_period);
}

// Refine and rotationally classify the attracting period-p orbit at one
// parameter. Convergence onto a hopping plateau can take far longer than the
// scan transient (the multiplier sits just below 1 there), so the transient
// escalates up to 100x before giving up.
std::optional<RotationClass> classify_orbit_at(const MapInstance& m, int period, int transient,
                                               int samples) {
    for (int scale : {1, 10, 100}) {
        for (double seed : seed_points(m)) {
            OrbitSegment seg = iterate_unchecked(m, seed, transient * scale,
                                                 std::max(samples, 4 * period));
            AttractorReport rep =
                classify_attractor(seg, std::max(kDefaultMaxPeriod, period));
            if (rep.kind != AttractorKind::PeriodicOrbit || rep.period != period) continue;
            try {
                PeriodicOrbit orbit = refine(m, rep.clusters.front().center, period);
                return classify_orbit(m, orbit);
            } catch (const Error&) {
                // try the next seed or a longer transient
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<Window> find_windows(const BifurcationScan& scan, int max_period) {
    if (scan.columns.empty()) return {};
    const int max_p = std::min(max_period, scan.samples / 2);
    if (max_p < 1) return {};

    std::vector<ColumnPeriod> cols(scan.columns.size());
    parallel_for(static_cast<int>(scan.columns.size()), 0, [&](int i) {
        cols[static_cast<std::size_t>(i)] =
            column_period(scan, scan.columns[static_cast<std::size_t>(i)], max_p);
    });

    const double step = scan.grid_step();
    std::vector<Window> windows;
    std::size_t i = 0;
    while (i < cols.size()) {
        if (!cols[i].period) {
            ++i;
            continue;
        }
        const int p = *cols[i].period;
        std::size_t j = i;
        bool split = false;
        while (j + 1 < cols.size() && cols[j + 1].period && *cols[j + 1].period == p) ++j;
        for (std::size_t t = i; t <= j; ++t) split = split || cols[t].split;

        Window w;
        w.period = p;
        w.seed_split = split;
        w.param_interval = {scan.columns[i].param, scan.columns[j].param};

        // Bisect each boundary against the first out-of-window neighbor.
        auto bisect_edge = [&](double inside, double outside) {
            while (std::abs(outside - inside) > step / 100.0) {
                double mid = 0.5 * (inside + outside);
                ColumnPeriod probe = probe_period(scan, mid, max_p);
                if (probe.period && *probe.period == p) {
                    inside = mid;
                } else {
                    outside = mid;  // unresolved probes shrink the window
                }
            }
            return inside;
        };
        if (i > 0) {
            w.param_interval.lo = bisect_edge(scan.columns[i].param, scan.columns[i - 1].param);
        }
        if (j + 1 < cols.size()) {
            w.param_interval.hi = bisect_edge(scan.columns[j].param, scan.columns[j + 1].param);
        }

        // Classify the midpoint orbit.
        w.rotation = classify_orbit_at(scan.map_at(w.param_interval.midpoint()), p,
                                       scan.transient, scan.samples);

        windows.push_back(std::move(w));
        i = j + 1;
    }
    return windows;
}

std::vector<Jump> find_jumps(const BifurcationScan& scan, int seed_index) {
    std::vector<Jump> jumps;
    if (scan.columns.size() < 2) return jumps;

    auto centers_of = [&](const ScanColumn& col) -> std::vector<double> {
        const auto s = static_cast<std::size_t>(seed_index);
        if (s >= col.seed_samples.size()) return {};
        return cluster_centers(col.seed_samples[s]);
    };
    auto probe_centers = [&](double param) -> std::vector<double> {
        MapInstance m = scan.map_at(param);
        std::vector<double> seeds = seed_points(m);
        const auto s = static_cast<std::size_t>(seed_index);
        if (s >= seeds.size()) return {};
        return cluster_centers(
            iterate_unchecked(m, seeds[s], scan.transient, scan.samples).samples);
    };
    // A column is comparable when its cluster set is attractor-sized; the
    // cluster sets of chaotic columns fluctuate between neighboring samples
    // at amplitudes far above any usable threshold.
    auto comparable = [](const std::vector<double>& centers) {
        return !centers.empty() && centers.size() <= kDefaultMaxPeriod;
    };

    const double step = scan.grid_step();
    std::size_t prev_idx = 0;
    std::vector<double> prev;
    bool have_prev = false;
    for (std::size_t i = 0; i < scan.columns.size(); ++i) {
        std::vector<double> cur = centers_of(scan.columns[i]);
        if (!comparable(cur)) continue;
        // Bridge short unresolved stretches (a trajectory takes a while to
        // settle just past a basin boundary), never wide chaotic swaths.
        if (have_prev && i - prev_idx <= kMaxJumpBridge) {
            double d = hausdorff(prev, cur);
            if (d > kJumpThreshold) {
                double bl = scan.columns[prev_idx].param;
                double br = scan.columns[i].param;
                std::vector<double> cl = prev;
                std::vector<double> cr = cur;
                while (br - bl > step / 100.0) {
                    double bm = 0.5 * (bl + br);
                    std::vector<double> cm = probe_centers(bm);
                    // Keep the half across which the sets still disagree most.
                    if (hausdorff(cl, cm) >= hausdorff(cm, cr)) {
                        br = bm;
                        cr = std::move(cm);
                    } else {
                        bl = bm;
                        cl = std::move(cm);
                    }
                }
                jumps.push_back({bl, br, hausdorff(cl, cr)});
            }
        }
        prev_idx = i;
        prev = std::move(cur);
        have_prev = true;
    }
    return jumps;
}

Window window_report(double a, const Window& window, int steps, bool compensated) {
    Window w = window;
    Branch branch =
        continue_branch(a, w.param_interval, w.period, 0, steps, compensated);
    HoppingMetric hm = hopping_metric(branch);
    w.hopping = hm;
    w.hopping_flag = hm.slope_edges > 0.0
                         ? (hm.slope_peak / hm.slope_edges >= kHoppingRatio)
                         : hm.slope_peak > 0.0;
    if (!w.rotation) {
        MapInstance m = MapInstance::eos(a, w.param_interval.midpoint(), compensated);
        w.rotation = classify_orbit_at(m, w.period, kDefaultTransient, kDefaultSamples);
    }
    return w;
}

}  // namespace eosmap
