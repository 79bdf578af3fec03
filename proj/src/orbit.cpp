#include "eosmap/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eosmap {

namespace {

// The seed itself is not recorded: after skipping `transient` iterates the
// next `samples` images are stored, so transient 0 / samples 1 yields
// exactly the image of the seed.
OrbitSegment run_orbit(const MapInstance& m, double seed, int transient, int samples) {
    OrbitSegment seg{m, seed, transient, {}};
    seg.samples.reserve(static_cast<std::size_t>(samples));
    if (m.compensated()) {
        dd::DD z{seed};
        for (int i = 0; i < transient; ++i) z = eval_dd(m, z);
        for (int i = 0; i < samples; ++i) {
            z = eval_dd(m, z);
            seg.samples.push_back(dd::to_double(z));
        }
    } else {
        double z = seed;
        for (int i = 0; i < transient; ++i) z = eval(m, z);
        for (int i = 0; i < samples; ++i) {
            z = eval(m, z);
            seg.samples.push_back(z);
        }
    }
    return seg;
}

}  // namespace

OrbitSegment iterate(const MapInstance& m, double seed, int transient, int samples) {
    if (transient < 0) throw std::invalid_argument("iterate: transient must be >= 0");
    if (samples < 1) throw std::invalid_argument("iterate: samples must be >= 1");
    Interval dom = m.domain();
    if (!dom.contains(seed)) {
        throw SeedOutOfDomain("iterate: seed " + std::to_string(seed) + " outside [" +
                              std::to_string(dom.lo) + ", " + std::to_string(dom.hi) + "]");
    }
    return run_orbit(m, seed, transient, samples);
}

OrbitSegment iterate_unchecked(const MapInstance& m, double seed, int transient, int samples) {
    if (transient < 0) throw std::invalid_argument("iterate: transient must be >= 0");
    if (samples < 1) throw std::invalid_argument("iterate: samples must be >= 1");
    return run_orbit(m, seed, transient, samples);
}

std::optional<int> detect_period(const OrbitSegment& seg, int max_period) {
    if (max_period < 1) throw std::invalid_argument("detect_period: max_period must be >= 1");
    const auto& s = seg.samples;
    if (s.size() < 2 * static_cast<std::size_t>(max_period)) {
        throw InsufficientSamples("detect_period: need at least 2*max_period samples");
    }
    const std::size_t n = s.size();
    for (int p = 1; p <= max_period; ++p) {
        bool ok = true;
        for (std::size_t i = 0; i + p < n; ++i) {
            if (std::abs(s[i + p] - s[i]) >= kTolPoint) {
                ok = false;
                break;
            }
        }
        if (ok) return p;
    }
    return std::nullopt;
}

std::vector<Cluster> agglomerate(std::span<const double> points, double tol) {
    std::vector<Cluster> out;
    if (points.empty()) return out;
    std::vector<double> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    double lo = sorted.front();
    double hi = sorted.front();
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] - hi < tol) {
            hi = sorted[i];
        } else {
            out.push_back({0.5 * (lo + hi), hi - lo});
            lo = hi = sorted[i];
        }
    }
    out.push_back({0.5 * (lo + hi), hi - lo});
    return out;
}

AttractorReport classify_attractor(const OrbitSegment& seg, int max_period) {
    const auto& s = seg.samples;
    if (max_period < 1) throw std::invalid_argument("classify_attractor: max_period must be >= 1");
    if (s.size() < 2 * static_cast<std::size_t>(max_period)) {
        throw InsufficientSamples("classify_attractor: need at least 2*max_period samples");
    }

    AttractorReport rep;
    rep.seed = seg.seed;
    rep.clusters = agglomerate(s, kTolCluster);
    const int p = static_cast<int>(rep.clusters.size());
    if (p > max_period) return rep;  // Unresolved

    // Itinerary in cluster indices; clusters are sorted, so bisect on the
    // half-gaps between consecutive centers.
    std::vector<double> edges;
    edges.reserve(rep.clusters.size() - 1);
    for (std::size_t i = 0; i + 1 < rep.clusters.size(); ++i) {
        edges.push_back(0.5 * (rep.clusters[i].center + rep.clusters[i + 1].center));
    }
    std::vector<int> itinerary(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        itinerary[i] = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), s[i]) -
                                        edges.begin());
    }

    // Cyclic with period p: repeats with lag p and the first p entries visit
    // every cluster exactly once.
    for (std::size_t i = 0; i + p < itinerary.size(); ++i) {
        if (itinerary[i + p] != itinerary[i]) return rep;
    }
    std::vector<char> seen(static_cast<std::size_t>(p), 0);
    for (int i = 0; i < p; ++i) {
        if (seen[static_cast<std::size_t>(itinerary[static_cast<std::size_t>(i)])]) return rep;
        seen[static_cast<std::size_t>(itinerary[static_cast<std::size_t>(i)])] = 1;
    }

    double max_diam = 0.0;
    for (const auto& c : rep.clusters) max_diam = std::max(max_diam, c.diameter);
    if (max_diam < kTolPoint) {
        rep.kind = AttractorKind::PeriodicOrbit;
        rep.period = p;
    } else if (max_diam >= kTolInterval) {
        rep.kind = AttractorKind::IntervalCycle;
        rep.period = p;
    }
    return rep;  // in-between diameters stay Unresolved
}

}  // namespace eosmap
