#include "eosmap/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eosmap {

namespace {
constexpr double kCriticalCoincidence = 1e-12;
}

LapAssignment lap_of(const MapInstance& m, double x) {
    CriticalSet cs = critical_points(m);
    if (cs.points.empty()) {
        throw MonotoneMap("lap_of: map has no critical points");
    }
    for (std::size_t i = 0; i < cs.points.size(); ++i) {
        if (std::abs(x - cs.points[i]) <= kCriticalCoincidence) {
            return {static_cast<int>(i) + 1, true};  // lower lap
        }
    }
    int lap = 1;
    for (double c : cs.points) {
        if (x > c) ++lap;
    }
    return {lap, false};
}

std::optional<Rational> rotation_number(const PeriodicOrbit& orbit) {
    const auto& pts = orbit.points;
    const int p = orbit.period;
    if (p == 1) return Rational{0, 1};

    // Spatial permutation: where does F send the i-th smallest point?
    std::vector<int> perm(pts.size(), -1);
    std::vector<char> hit(pts.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double y = eval(orbit.map, pts[i]);
        std::size_t j = 0;
        double best = std::abs(y - pts[0]);
        for (std::size_t t = 1; t < pts.size(); ++t) {
            double dist = std::abs(y - pts[t]);
            if (dist < best) {
                best = dist;
                j = t;
            }
        }
        if (hit[j]) return std::nullopt;  // not a permutation of the point set
        hit[j] = 1;
        perm[i] = static_cast<int>(j);
    }

    const int k = perm[0];
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] != (static_cast<int>(i) + k) % p) return std::nullopt;
    }
    long g = std::gcd(static_cast<long>(k), static_cast<long>(p));
    return Rational{k / g, p / g};
}

RotationClass classify_orbit(const MapInstance& m, const PeriodicOrbit& orbit) {
    CriticalSet cs = critical_points(m);
    if (cs.points.empty()) {
        throw MonotoneMap("classify_orbit: map has no critical points");
    }

    RotationClass rc;
    rc.lap_histogram.assign(static_cast<std::size_t>(cs.laps), 0);
    for (double x : orbit.points) {
        LapAssignment la = lap_of(m, x);
        ++rc.lap_histogram[static_cast<std::size_t>(la.lap - 1)];
        rc.critical_flagged = rc.critical_flagged || la.at_critical;
    }

    rc.rotation_number = rotation_number(orbit);
    if (!rc.rotation_number) {
        rc.kind = RotationKind::NonRotational;
        return rc;
    }
    // Lap 2 is the decreasing lap for both bimodal and unimodal maps.
    const int middle = cs.laps >= 2 ? rc.lap_histogram[1] : 0;
    if (middle == 0) {
        rc.kind = RotationKind::FirstType;
    } else if (middle == 1) {
        rc.kind = RotationKind::SecondType;
    } else {
        rc.kind = RotationKind::OtherRotational;
    }
    return rc;
}

const char* to_string(RotationKind kind) {
    switch (kind) {
        case RotationKind::FirstType: return "FirstType";
        case RotationKind::SecondType: return "SecondType";
        case RotationKind::OtherRotational: return "OtherRotational";
        case RotationKind::NonRotational: return "NonRotational";
    }
    return "?";
}

}  // namespace eosmap
