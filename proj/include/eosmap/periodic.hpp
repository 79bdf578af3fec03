// Newton refinement of periodic orbits, orbit multipliers, continuation of a
// periodic-point branch P(b) across a parameter window, and the hopping
// metric built from dP/db.
#pragma once

#include <vector>

#include "eosmap/map.hpp"

namespace eosmap {

struct PeriodicOrbit {
    MapInstance map;
    int period = 1;
    std::vector<double> points;  // one full orbit, sorted ascending
    double multiplier = 0.0;     // (F^p)' along the orbit; attracting iff |.| < 1
};

struct BranchSample {
    double b = 0.0;
    double position = 0.0;  // P(b), the tracked periodic point
    double multiplier = 0.0;
};

struct DerivativeEstimate {
    double b = 0.0;
    double dPdb = 0.0;
};

struct Branch {
    Interval window;
    int period = 1;
    int track_index = 0;  // which of the period sorted points is tracked
    std::vector<BranchSample> samples;  // strictly increasing in b
    std::vector<DerivativeEstimate> derivative_estimates;
};

struct HoppingMetric {
    double b_peak = 0.0;      // where |dP/db| is largest
    double slope_peak = 0.0;  // the largest |dP/db|
    double slope_edges = 0.0; // mean |dP/db| over the outer 20% of the branch
};

// Hopping flag threshold: a window hops when slope_peak/slope_edges reaches this.
inline constexpr double kHoppingRatio = 10.0;

// Newton on G(x) = F^p(x) - x with G' from the chain rule. Full steps, with
// a bisection fallback between bracketing iterates when |G| grows twice in a
// row. Residuals are evaluated in double-double when the map is compensated.
// Throws NoConvergence, DerivativeSingular, or ConvergedToLowerPeriod.
PeriodicOrbit refine(const MapInstance& m, double guess, int period);

// Marches b across the window in `steps` uniform steps, warm-starting refine
// from the previous solution; truncates where refine fails or the orbit
// stops attracting. A step whose tracked point moves more than a tenth of
// the domain width is retried at half the stride (up to 10 halvings).
Branch continue_branch(double a, Interval window, int period, int track_index, int steps,
                       bool compensated = false);

// dP/db via central differences on the branch samples (one-sided at the
// ends); peak location/value plus the mean slope over the outer 20%.
HoppingMetric hopping_metric(const Branch& branch);

}  // namespace eosmap
