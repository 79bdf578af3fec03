#include "eosmap/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "eosmap/orbit.hpp"

namespace eosmap {

namespace {

constexpr double kResidualTol = 1e-13;
constexpr double kLowerPeriodTol = 1e-11;
constexpr int kMaxNewtonIters = 50;

// F^p(x) - x, in the map's precision mode.
double residual(const MapInstance& m, double x, int period) {
    if (m.compensated()) {
        dd::DD z{x};
        for (int i = 0; i < period; ++i) z = eval_dd(m, z);
        return dd::to_double(dd::sub(z, x));
    }
    double z = x;
    for (int i = 0; i < period; ++i) z = eval(m, z);
    return z - x;
}

// (F^p)'(x) - 1 via the chain rule along the orbit.
double residual_deriv(const MapInstance& m, double x, int period) {
    double z = x;
    double prod = 1.0;
    for (int i = 0; i < period; ++i) {
        prod *= deriv(m, z, 1);
        z = eval(m, z);
    }
    return prod - 1.0;
}

}  // namespace

PeriodicOrbit refine(const MapInstance& m, double guess, int period) {
    if (period < 1) throw std::invalid_argument("refine: period must be >= 1");
    const Interval dom = m.domain();

    double x = guess;
    double g = residual(m, x, period);
    int worse_streak = 0;
    // Bracketing iterates for the bisection fallback.
    std::optional<double> x_neg, x_pos;
    auto note_bracket = [&](double xi, double gi) {
        if (gi < 0.0) x_neg = xi;
        else if (gi > 0.0) x_pos = xi;
    };
    note_bracket(x, g);

    bool converged = std::abs(g) < kResidualTol;
    for (int it = 0; it < kMaxNewtonIters && !converged; ++it) {
        double gp = residual_deriv(m, x, period);
        if (std::abs(gp) < 1e-14) {
            throw DerivativeSingular("refine: |G'| below 1e-14");
        }
        double x_next = x - g / gp;
        if (worse_streak >= 2 && x_neg && x_pos) {
            x_next = 0.5 * (*x_neg + *x_pos);
            worse_streak = 0;
        }
        if (!dom.contains(x_next)) {
            throw NoConvergence("refine: Newton iterate left the domain");
        }
        double g_next = residual(m, x_next, period);
        worse_streak = std::abs(g_next) > std::abs(g) ? worse_streak + 1 : 0;
        x = x_next;
        g = g_next;
        note_bracket(x, g);
        converged = std::abs(g) < kResidualTol;
    }
    if (!converged) {
        throw NoConvergence("refine: 50 Newton iterations exceeded");
    }

    // Reject roots whose true period is a proper divisor of the request.
    for (int q = 1; q < period; ++q) {
        if (period % q != 0) continue;
        if (std::abs(residual(m, x, q)) < kLowerPeriodTol) {
            throw ConvergedToLowerPeriod(period, q);
        }
    }

    PeriodicOrbit orbit{m, period, {}, 0.0};
    orbit.points.reserve(static_cast<std::size_t>(period));
    double z = x;
    double mult = 1.0;
    for (int i = 0; i < period; ++i) {
        orbit.points.push_back(z);
        mult *= deriv(m, z, 1);
        z = m.compensated() ? dd::to_double(eval_dd(m, dd::DD{z})) : eval(m, z);
    }
    orbit.multiplier = mult;
    std::sort(orbit.points.begin(), orbit.points.end());
    return orbit;
}

namespace {

// One continuation step b_from -> b_to, warm-started at the tracked point.
// Jumps beyond a tenth of the domain width mean the solver slid onto a
// different root; bridge through the midpoint instead, up to 10 halvings.
PeriodicOrbit advance(const MapInstance& proto, double x_from, double b_from, double b_to,
                      int period, int track_index, int depth) {
    const double kMaxMove = 0.1 * proto.domain().width();
    if (depth <= 10) {
        try {
            PeriodicOrbit orbit = refine(proto.with_param(b_to), x_from, period);
            if (std::abs(orbit.points[static_cast<std::size_t>(track_index)] - x_from) <=
                kMaxMove) {
                return orbit;
            }
        } catch (const Error&) {
            if (depth == 10) throw;
        }
        if (depth < 10) {
            double b_mid = 0.5 * (b_from + b_to);
            PeriodicOrbit mid =
                advance(proto, x_from, b_from, b_mid, period, track_index, depth + 1);
            return advance(proto, mid.points[static_cast<std::size_t>(track_index)], b_mid, b_to,
                           period, track_index, depth + 1);
        }
    }
    throw NoConvergence("continue_branch: step rejected after 10 halvings");
}

}  // namespace

Branch continue_branch(double a, Interval window, int period, int track_index, int steps,
                       bool compensated) {
    if (steps < 2) throw std::invalid_argument("continue_branch: steps must be >= 2");
    if (track_index < 0 || track_index >= period) {
        throw std::invalid_argument("continue_branch: track_index out of range");
    }

    const double b_mid = window.midpoint();
    const MapInstance m_mid = MapInstance::eos(a, b_mid, compensated);

    // Establish the seed orbit at the midpoint from the critical-point
    // trajectories. A midpoint on a hopping plateau (multiplier just below 1)
    // settles very slowly, so the transient escalates up to 100x.
    std::optional<PeriodicOrbit> seed_orbit;
    CriticalSet cs = critical_points(m_mid);
    std::vector<double> seeds = cs.points;
    if (seeds.empty()) seeds.push_back(m_mid.domain().midpoint());
    for (int scale : {1, 10, 100}) {
        for (double seed : seeds) {
            OrbitSegment seg = iterate_unchecked(m_mid, seed, kDefaultTransient * scale,
                                                 std::max(kDefaultSamples, 4 * period));
            AttractorReport rep = classify_attractor(seg, std::max(kDefaultMaxPeriod, period));
            if (rep.kind != AttractorKind::PeriodicOrbit || rep.period != period) continue;
            try {
                PeriodicOrbit orbit = refine(m_mid, rep.clusters.front().center, period);
                if (std::abs(orbit.multiplier) < 1.0) {
                    seed_orbit = orbit;
                    break;
                }
            } catch (const Error&) {
                // try the other seed
            }
        }
        if (seed_orbit) break;
    }
    if (!seed_orbit) {
        throw SeedOrbitNotFound("continue_branch: no attracting period-" + std::to_string(period) +
                                " orbit at the window midpoint");
    }

    const int n_grid = steps + 1;
    const double h = window.width() / steps;
    const int i_start = static_cast<int>(std::lround((b_mid - window.lo) / h));
    std::vector<BranchSample> samples;

    auto track = [&](const PeriodicOrbit& o) {
        return o.points[static_cast<std::size_t>(track_index)];
    };

    // Replace the midpoint solve with one at the nearest grid value, then
    // march outward in both directions with warm starts.
    for (int dir : {+1, -1}) {
        PeriodicOrbit current = *seed_orbit;
        double b_cur = b_mid;
        for (int i = i_start + (dir > 0 ? 0 : -1); i >= 0 && i < n_grid; i += dir) {
            double b_next = window.lo + i * h;
            PeriodicOrbit next = current;
            try {
                next = advance(m_mid, track(current), b_cur, b_next, period, track_index, 0);
            } catch (const Error&) {
                break;  // truncate this direction
            }
            if (std::abs(next.multiplier) >= 1.0) break;
            samples.push_back({b_next, track(next), next.multiplier});
            current = next;
            b_cur = b_next;
        }
    }

    std::sort(samples.begin(), samples.end(),
              [](const BranchSample& l, const BranchSample& r) { return l.b < r.b; });

    Branch branch{window, period, track_index, std::move(samples), {}};
    const std::size_t n = branch.samples.size();
    branch.derivative_estimates.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (n < 2) break;
        std::size_t lo = i == 0 ? 0 : i - 1;
        std::size_t hi = i + 1 == n ? i : i + 1;
        double db = branch.samples[hi].b - branch.samples[lo].b;
        double dP = branch.samples[hi].position - branch.samples[lo].position;
        branch.derivative_estimates.push_back({branch.samples[i].b, dP / db});
    }
    return branch;
}

HoppingMetric hopping_metric(const Branch& branch) {
    const auto& d = branch.derivative_estimates;
    if (branch.samples.size() < 5 || d.size() < 5) {
        throw BranchTooShort("hopping_metric: need at least 5 branch samples");
    }
    HoppingMetric hm;
    for (const auto& e : d) {
        if (std::abs(e.dPdb) > hm.slope_peak) {
            hm.slope_peak = std::abs(e.dPdb);
            hm.b_peak = e.b;
        }
    }
    const std::size_t n = d.size();
    const std::size_t k = std::max<std::size_t>(1, n / 10);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sum += std::abs(d[i].dPdb) + std::abs(d[n - 1 - i].dPdb);
    }
    hm.slope_edges = sum / static_cast<double>(2 * k);
    return hm;
}

}  // namespace eosmap
