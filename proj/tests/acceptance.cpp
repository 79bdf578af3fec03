// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. An optional argv[1] runs a single criterion.
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <sstream>
#include <string>

#include "eosmap/render.hpp"

using namespace eosmap;

namespace {

int g_failures = 0;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int id, const char* name, bool pass, double seconds, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", pass ? "PASS" : "FAIL", id, name, seconds,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// -------------------------------------------------------------------------
// 1. Period-3 window reproduction at a=100, b=1/3, transient 20000.
void criterion1() {
    Timer t;
    MapInstance m = MapInstance::eos(100, 1.0 / 3.0);
    auto crits = critical_points(m).points;
    bool pass = true;
    std::ostringstream detail;
    for (std::size_t s = 0; s < crits.size(); ++s) {
        OrbitSegment seg = iterate(m, crits[s], 20000, kDefaultSamples);
        auto p = detect_period(seg, 32);
        AttractorReport rep = classify_attractor(seg, kDefaultMaxPeriod);
        bool ok = p == 3 && rep.kind == AttractorKind::PeriodicOrbit;
        pass = pass && ok;
        if (!ok) {
            detail << "seed " << s << ": detect=" << (p ? std::to_string(*p) : "none")
                   << " kind="
                   << (rep.kind == AttractorKind::PeriodicOrbit    ? "PeriodicOrbit"
                       : rep.kind == AttractorKind::IntervalCycle ? "IntervalCycle"
                                                                   : "Unresolved")
                   << "; ";
        }
    }
    double secs = t.seconds();
    pass = pass && secs < 1.0;
    if (!pass) {
        detail << "orbit multiplier at b=1/3 is 0.9999884, so 20000 iterates contract the "
                  "transient by only ~7%; the trajectory is still creeping along the "
                  "near-identity plateau of F^3";
    }
    report(1, "period-3 window reproduction (transient 20000)", pass, secs, detail.str());

    // Informational: the same check settles with a longer transient.
    Timer t2;
    bool long_ok = true;
    for (double seed : crits) {
        OrbitSegment seg = iterate(m, seed, 2000000, kDefaultSamples);
        long_ok = long_ok && detect_period(seg, 32) == 3 &&
                  classify_attractor(seg, kDefaultMaxPeriod).kind ==
                      AttractorKind::PeriodicOrbit;
    }
    std::printf("       info: transient 2000000 gives detect=3 and PeriodicOrbit for both "
                "seeds: %s (%.2f s)\n",
                long_ok ? "yes" : "no", t2.seconds());
}

// -------------------------------------------------------------------------
// 2. Hopping quantification on the period-3 window.
void criterion2() {
    Timer t;
    bool pass = false;
    std::string detail;
    try {
        Branch br = continue_branch(100, {0.325, 0.345}, 3, 0, 200);
        HoppingMetric hm = hopping_metric(br);
        double ratio = hm.slope_peak / hm.slope_edges;
        pass = ratio >= 10.0 && std::abs(hm.b_peak - 1.0 / 3.0) <= 1e-3;
        detail = fmt("peak=%.4g at b=%.6f, edges=%.4g, ratio=%.4g", hm.slope_peak, hm.b_peak,
                     hm.slope_edges, ratio);
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double secs = t.seconds();
    pass = pass && secs < 10.0;
    report(2, "hopping ratio >= 10 near b=1/3", pass, secs, detail);
}

// -------------------------------------------------------------------------
// 3. Hopping contrast: period-10 at a=100 (no hopping) vs a=200 (hopping).
void criterion3() {
    Timer t;
    bool pass = false;
    std::string detail;
    try {
        Branch b100 = continue_branch(100, {0.29, 0.31}, 10, 0, 200);
        HoppingMetric h100 = hopping_metric(b100);
        double r100 = h100.slope_peak / h100.slope_edges;

        double r200 = 0.0;
        bool used_compensated = false;
        try {
            Branch b200 = continue_branch(200, {0.29, 0.31}, 10, 0, 200, false);
            HoppingMetric h200 = hopping_metric(b200);
            r200 = h200.slope_peak / h200.slope_edges;
        } catch (const Error&) {
            r200 = 0.0;
        }
        if (r200 < 10.0) {
            // default precision did not resolve the branch; the compensated
            // mode must
            used_compensated = true;
            Branch b200 = continue_branch(200, {0.29, 0.31}, 10, 0, 200, true);
            HoppingMetric h200 = hopping_metric(b200);
            r200 = h200.slope_peak / h200.slope_edges;
        }
        pass = r100 < 10.0 && r200 >= 10.0;
        detail = fmt("a=100 ratio=%.4g, a=200 ratio=%.4g%s", r100, r200,
                     used_compensated ? " (compensated mode; default-precision run fell short)"
                                      : " (default precision)");
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double secs = t.seconds();
    pass = pass && secs < 30.0;
    report(3, "hopping contrast: period-10 at a=100 vs a=200", pass, secs, detail);
}

// -------------------------------------------------------------------------
// 4. Jump localization in the period-17 window.
void criterion4() {
    Timer t;
    bool pass = false;
    std::string detail;
    try {
        const double b_jump = 0.1064055;
        const double tol = 5e-5;
        BifurcationScan scan = sweep(Family::Eos, 100, {0.106, 0.107}, 2000, 20000, 500);

        auto right = find_jumps(scan, 1);
        bool right_ok = false;
        double rb_left = 0, rb_right = 0, best = 1e300;
        for (const auto& j : right) {
            if (std::abs(j.b_left - b_jump) <= tol && std::abs(j.b_right - b_jump) <= tol) {
                right_ok = true;
                double dist = std::abs(0.5 * (j.b_left + j.b_right) - b_jump);
                if (dist < best) {
                    best = dist;
                    rb_left = j.b_left;
                    rb_right = j.b_right;
                }
            }
        }
        auto left = find_jumps(scan, 0);
        bool left_clean = true;
        for (const auto& j : left) {
            if (std::abs(j.b_left - b_jump) <= tol || std::abs(j.b_right - b_jump) <= tol) {
                left_clean = false;
            }
        }

        // Post-jump attractor: cycle of 17 small intervals for the right seed.
        MapInstance m = MapInstance::eos(100, 0.1064065);
        OrbitSegment seg =
            iterate_unchecked(m, critical_points(m).points[1], 1000000, 1000000);
        AttractorReport rep = classify_attractor(seg, kDefaultMaxPeriod);
        bool cycle_ok = rep.kind == AttractorKind::IntervalCycle && rep.period == 17;

        pass = right_ok && left_clean && cycle_ok;
        detail = fmt("right-seed bracket [%.9f, %.9f]%s; left seed clean at the jump: %s; "
                     "post-jump attractor: %s period %d",
                     rb_left, rb_right, right_ok ? "" : " (missing)", left_clean ? "yes" : "no",
                     rep.kind == AttractorKind::IntervalCycle ? "IntervalCycle" : "other",
                     rep.period ? *rep.period : 0);
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double secs = t.seconds();
    pass = pass && secs < 60.0;
    report(4, "jump at b=0.1064055 +/- 5e-5 (right seed only)", pass, secs, detail);
}

// -------------------------------------------------------------------------
// 5. Rotational classification of three reference orbits.
void criterion5() {
    Timer t;
    bool pass = false;
    std::string detail;
    try {
        auto settled = [](double b, int period, int transient) {
            MapInstance m = MapInstance::eos(100, b);
            OrbitSegment seg =
                iterate_unchecked(m, critical_points(m).points[0], transient, 4);
            return refine(m, seg.samples[0], period);
        };
        MapInstance m3 = MapInstance::eos(100, 1.0 / 3.0);
        RotationClass c3 = classify_orbit(m3, settled(1.0 / 3.0, 3, 2000000));
        bool ok3 = c3.kind == RotationKind::FirstType && c3.rotation_number &&
                   *c3.rotation_number == Rational{1, 3};

        MapInstance m11 = MapInstance::eos(100, 0.0885);
        RotationClass c11 = classify_orbit(m11, settled(0.0885, 11, 200000));
        bool ok11 = c11.kind == RotationKind::OtherRotational;

        MapInstance m17 = MapInstance::eos(100, 0.10639);
        RotationClass c17 = classify_orbit(m17, settled(0.10639, 17, 400000));
        bool ok17 = c17.kind == RotationKind::NonRotational;

        pass = ok3 && ok11 && ok17;
        detail = fmt("b=1/3: %s %ld/%ld; b=0.0885 (period 11): %s; b=0.10639 (period 17): %s",
                     to_string(c3.kind), c3.rotation_number ? c3.rotation_number->num : 0,
                     c3.rotation_number ? c3.rotation_number->den : 0, to_string(c11.kind),
                     to_string(c17.kind));
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double secs = t.seconds();
    pass = pass && secs < 10.0;
    report(5, "rotational types: FirstType 1/3, OtherRotational, NonRotational", pass, secs,
           detail);
}

// -------------------------------------------------------------------------
// 6. Logistic sanity: closed-form period-2 orbit and the period-3 window.
void criterion6() {
    Timer t;
    bool pass = false;
    std::string detail;
    try {
        const double r = 3.2;
        PeriodicOrbit orbit = refine(MapInstance::logistic(r), 0.51, 2);
        double s = std::sqrt((r + 1) * (r - 3));
        double lo = (r + 1 - s) / (2 * r);
        double hi = (r + 1 + s) / (2 * r);
        bool points_ok = std::abs(orbit.points[0] - lo) <= 1e-10 &&
                         std::abs(orbit.points[1] - hi) <= 1e-10;
        double mult_formula = 4 + 2 * r - r * r;  // = +0.16 at r = 3.2
        bool mult_ok = std::abs(orbit.multiplier - mult_formula) <= 1e-8;

        BifurcationScan scan = sweep(Family::Logistic, 0, {3.82, 3.86}, 81, 20000, 500);
        bool window_ok = false;
        for (const auto& w : find_windows(scan, 64)) {
            if (w.period == 3) window_ok = true;
        }
        pass = points_ok && mult_ok && window_ok;
        detail = fmt("points {%.12f, %.12f}, multiplier %.10f vs 4+2r-r^2=%.2f; period-3 "
                     "window in [3.82,3.86]: %s",
                     orbit.points[0], orbit.points[1], orbit.multiplier, mult_formula,
                     window_ok ? "found" : "missing");
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double secs = t.seconds();
    pass = pass && secs < 10.0;
    report(6, "logistic closed-form period-2 orbit and period-3 window", pass, secs, detail);
}

// -------------------------------------------------------------------------
// 7. Property suites.
void criterion7() {
    Timer t;
    std::ostringstream bad;

    // symmetry conjugacy to 1e-13
    {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (double a : {37.5, 100.0, 200.0}) {
            for (int i = 0; i < 300; ++i) {
                double b = u(rng);
                MapInstance m = MapInstance::eos(a, b);
                MapInstance mm = MapInstance::eos(a, 1.0 - b);
                double x = m.domain().lo + u(rng) * m.domain().width();
                if (std::abs(eval(m, x) + eval(mm, -x)) >= 1e-13) {
                    bad << "conjugacy violated at a=" << a << " b=" << b << "; ";
                    break;
                }
            }
        }
    }
    // analytic vs finite-difference derivatives, relative 1e-5
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.05, 0.95);
        const double h[4] = {0, 1e-6, 1e-5, 2e-5};
        const double tau[4] = {0, 25.0, 1250.0, 125000.0};
        auto fd = [](const MapInstance& m, double x, int k, double hh) {
            auto f = [&](double z) { return eval(m, z); };
            if (k == 1) return (f(x + hh) - f(x - hh)) / (2 * hh);
            if (k == 2) return (f(x + hh) - 2 * f(x) + f(x - hh)) / (hh * hh);
            return (f(x + 2 * hh) - 2 * f(x + hh) + 2 * f(x - hh) - f(x - 2 * hh)) /
                   (2 * hh * hh * hh);
        };
        for (int i = 0; i < 100; ++i) {
            MapInstance m = MapInstance::eos(100, u(rng));
            double x = m.domain().lo + (0.05 + 0.9 * u(rng)) * m.domain().width();
            for (int k = 1; k <= 3; ++k) {
                double want = fd(m, x, k, h[k]);
                double got = deriv(m, x, k);
                if (std::abs(got - want) >= 1e-5 * std::max(std::abs(want), tau[k])) {
                    bad << "derivative order " << k << " mismatch; ";
                    i = 100;
                    break;
                }
            }
        }
    }
    // negative Schwarzian on the sample grids
    {
        for (double b : {0.1, 1.0 / 3.0, 0.45}) {
            MapInstance m = MapInstance::eos(100, b);
            for (int i = 0; i < 1000; ++i) {
                double x = m.domain().lo + (i + 0.5) / 1000.0 * m.domain().width();
                if (std::abs(deriv(m, x, 1)) < 1e-9) continue;
                if (!(schwarzian(m, x) < 0)) {
                    bad << "Schwarzian >= 0 at b=" << b << "; ";
                    break;
                }
            }
        }
        for (double r : {3.5, 3.83}) {
            MapInstance m = MapInstance::logistic(r);
            for (int i = 0; i < 1000; ++i) {
                double x = (i + 0.5) / 1000.0;
                if (!(schwarzian(m, x) < 0)) {
                    bad << "logistic Schwarzian >= 0 at r=" << r << "; ";
                    break;
                }
            }
        }
    }
    // domain invariance
    {
        for (int bi = 1; bi <= 99; ++bi) {
            MapInstance m = MapInstance::eos(100, bi / 100.0);
            Interval dom = m.domain();
            for (int i = 0; i < 10000; ++i) {
                double x = dom.lo + i / 9999.0 * dom.width();
                double y = eval(m, x);
                if (!(y >= dom.lo && y <= dom.hi)) {
                    bad << "domain escape at b=" << bi / 100.0 << "; ";
                    bi = 100;
                    break;
                }
            }
        }
    }
    // scan determinism under varying parallelism
    {
        BifurcationScan one = sweep(Family::Eos, 100, {0.32, 0.35}, 40, 2000, 100, false, 1);
        BifurcationScan four = sweep(Family::Eos, 100, {0.32, 0.35}, 40, 2000, 100, false, 4);
        for (std::size_t i = 0; i < one.columns.size(); ++i) {
            if (one.columns[i].seed_samples != four.columns[i].seed_samples) {
                bad << "parallel sweep not deterministic; ";
                break;
            }
        }
    }
    // CSV round-trip exactness
    {
        BifurcationScan scan = sweep(Family::Eos, 100, {1.0 / 3.0, 0.35}, 7, 1000, 40);
        std::stringstream csv;
        write_scan_csv(scan, csv);
        if (parse_scan_csv(csv) != scan_points(scan)) bad << "CSV round-trip not exact; ";
    }
    // byte-identical pixmap reruns
    {
        BifurcationScan scan = sweep(Family::Eos, 100, {0.32, 0.34}, 30, 5000, 100);
        RenderSpec spec = default_render_spec(scan, 0, 200);
        std::ostringstream a, b;
        write_ppm(render_scan(scan, spec), a);
        write_ppm(render_scan(scan, spec), b);
        if (a.str() != b.str()) bad << "pixmap rerun differs; ";
    }

    double secs = t.seconds();
    bool pass = bad.str().empty() && secs < 60.0;
    report(7, "property suites (conjugacy, derivatives, Schwarzian, invariance, determinism, "
              "round-trips)",
           pass, secs, bad.str().empty() ? "all properties hold" : bad.str());
}

// -------------------------------------------------------------------------
// 8. Figure-protocol reproduction: full half-range scan and render.
void criterion8() {
    Timer t;
    bool pass = false;
    std::string detail;
    try {
        BifurcationScan scan = sweep(Family::Eos, 100, {0.0, 0.5}, 2000, 20000, 500);
        RenderSpec spec = default_render_spec(scan, 1500, 1000);
        Image img = render_scan(scan, spec);
        write_ppm(img, "acceptance_full_scan.ppm");
        int yellow = 0, blue = 0, green = 0;
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                Rgb c = img.get(x, y);
                if (c == kYellow) ++yellow;
                if (c == kBlue) ++blue;
                if (c == kGreen) ++green;
            }
        }
        pass = img.width == 1500 && img.height == 1000 && yellow > 0 && blue > 0 && green > 0;
        detail = fmt("1500x1000 pixmap written to acceptance_full_scan.ppm (%d yellow, %d blue, "
                     "%d green pixels); visual agreement is a human check",
                     yellow, blue, green);
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double secs = t.seconds();
    pass = pass && secs < 120.0;
    report(8, "full-range scan and figure render", pass, secs, detail);
}

}  // namespace

int main(int argc, char** argv) {
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    void (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                            criterion5, criterion6, criterion7, criterion8};
    for (int i = 0; i < 8; ++i) {
        if (only == 0 || only == i + 1) criteria[i]();
    }
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
    } else {
        std::printf("all criteria passed\n");
    }
    return g_failures;
}
