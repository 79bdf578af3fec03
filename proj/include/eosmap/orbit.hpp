// Trajectory iteration with transient skipping, empirical period detection,
// and classification of the observed attractor (periodic orbit vs cycle of
// intervals).
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "eosmap/map.hpp"

namespace eosmap {

// Tolerances, from loosest to tightest they must stay well separated:
// a cluster whose diameter reaches kTolInterval is an interval, one below
// kTolPoint is a point, anything between is left unresolved.
inline constexpr double kTolPoint = 1e-7;
inline constexpr double kTolCluster = 1e-5;
inline constexpr double kTolInterval = 1e-4;

inline constexpr int kDefaultTransient = 20000;
inline constexpr int kDefaultSamples = 500;
inline constexpr int kDefaultMaxPeriod = 64;

struct OrbitSegment {
    MapInstance map;
    double seed = 0.0;
    int transient = 0;
    std::vector<double> samples;  // post-transient iterates, in order
};

enum class AttractorKind { PeriodicOrbit, IntervalCycle, Unresolved };

struct Cluster {
    double center = 0.0;    // midrange of the member points
    double diameter = 0.0;  // max - min
};

struct AttractorReport {
    AttractorKind kind = AttractorKind::Unresolved;
    std::optional<int> period;
    std::vector<Cluster> clusters;  // sorted by center, pairwise disjoint
    double seed = 0.0;
};

// Applies the map `transient` times, then records the next `samples`
// iterates. Throws SeedOutOfDomain when the seed lies outside domain(m).
OrbitSegment iterate(const MapInstance& m, double seed, int transient, int samples);

// Same, without the domain check: evaluation outside the domain is defined
// by the formula (parameter sweeps seed critical points that can sit just
// outside [b-1, b] for small b; one application lands inside).
OrbitSegment iterate_unchecked(const MapInstance& m, double seed, int transient, int samples);

// Smallest p <= max_period with |samples[i+p] - samples[i]| < kTolPoint for
// every valid i; nullopt when none qualifies. Requires at least 2*max_period
// samples (InsufficientSamples otherwise).
std::optional<int> detect_period(const OrbitSegment& seg, int max_period);

// Single-linkage agglomeration of points whose sorted gaps are below tol.
std::vector<Cluster> agglomerate(std::span<const double> points, double tol);

// Clusters the samples and inspects the itinerary: a cyclic visit of p
// clusters is a periodic orbit when every cluster is point-like, a cycle of
// intervals when at least one cluster is wide, unresolved otherwise.
AttractorReport classify_attractor(const OrbitSegment& seg, int max_period);

}  // namespace eosmap
