// Lap assignment relative to critical points, the rotation-likeness test
// (does the orbit's spatial cyclic order match a circle rotation?), and the
// resulting rotational-type classification of periodic orbits.
#pragma once

#include <optional>
#include <vector>

#include "eosmap/map.hpp"
#include "eosmap/periodic.hpp"

namespace eosmap {

struct Rational {
    long num = 0;
    long den = 1;
    bool operator==(const Rational&) const = default;
};

enum class RotationKind { FirstType, SecondType, OtherRotational, NonRotational };

struct LapAssignment {
    int lap = 1;               // 1-based, left to right
    bool at_critical = false;  // within 1e-12 of a critical point (lower lap assigned)
};

struct RotationClass {
    RotationKind kind = RotationKind::NonRotational;
    std::optional<Rational> rotation_number;
    std::vector<int> lap_histogram;  // orbit points per lap, index 0 = lap 1
    bool critical_flagged = false;   // some orbit point sat on a critical point
};

// Which monotone lap contains x. Throws MonotoneMap when the map has no
// critical points.
LapAssignment lap_of(const MapInstance& m, double x);

// k/p in lowest terms when F acts on the sorted orbit points as the cyclic
// shift i -> i+k (the order of consecutive points matches a circle
// rotation); nullopt otherwise. A fixed point yields 0/1.
std::optional<Rational> rotation_number(const PeriodicOrbit& orbit);

// Rotational orbits sort by how many points sit in the decreasing (middle)
// lap: none is first type, exactly one is second type, more is "other".
RotationClass classify_orbit(const MapInstance& m, const PeriodicOrbit& orbit);

const char* to_string(RotationKind kind);

}  // namespace eosmap
