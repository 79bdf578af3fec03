// Parameter sweeps from critical-point seeds, periodic-window detection with
// boundary bisection, attractor-jump detection, and per-window enrichment
// (branch continuation, hopping metric, rotational class).
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "eosmap/orbit.hpp"
#include "eosmap/periodic.hpp"
#include "eosmap/rotation.hpp"

namespace eosmap {

// Minimum Hausdorff distance between adjacent attractor cluster sets that
// counts as a jump (in x units). Calibrated against the EOS100 period-17
// window: the basin jump moves the cluster set by ~1.2e-2 while in-window
// drift between neighboring columns stays below ~2e-4.
inline constexpr double kJumpThreshold = 5e-3;

// find_jumps compares consecutive resolvable columns; runs of unresolved
// columns up to this many grid steps wide are bridged.
inline constexpr std::size_t kMaxJumpBridge = 32;

struct ScanColumn {
    double param = 0.0;
    // seed_samples[s][k]: k-th post-transient iterate of seed s.
    std::vector<std::vector<double>> seed_samples;
};

struct BifurcationScan {
    Family family = Family::Eos;
    double a = 0.0;
    bool compensated = false;
    Interval range;
    int transient = kDefaultTransient;
    int samples = kDefaultSamples;
    std::vector<ScanColumn> columns;

    MapInstance map_at(double param) const;
    double grid_step() const;
};

struct Window {
    Interval param_interval;
    int period = 0;
    // Seeds disagreed on part of the window (one may sit on a coexisting
    // attractor, as across an attractor jump).
    bool seed_split = false;
    std::optional<RotationClass> rotation;
    std::optional<HoppingMetric> hopping;
    bool hopping_flag = false;
};

struct Jump {
    double b_left = 0.0;
    double b_right = 0.0;
    double gap = 0.0;  // Hausdorff distance between the bracket's cluster sets
};

// Trajectory seeds for one map: its critical points (the domain midpoint
// when the map is monotone).
std::vector<double> seed_points(const MapInstance& m);

// Iterates every seed at every grid parameter and stores the post-transient
// samples. Columns are independent; they are evaluated concurrently
// (threads = 0 picks the hardware count) and merged by grid index, so the
// result is identical for any degree of parallelism.
BifurcationScan sweep(Family family, double a, Interval range, int n_params,
                      int transient = kDefaultTransient, int samples = kDefaultSamples,
                      bool compensated = false, int threads = 0);

// Detects per-column periods, merges equal-period runs, and refines each
// window boundary by bisection to a bracket of width <= grid_step/100.
// Unresolved probes count against the window, so extents are conservative.
// Each window midpoint orbit is refined and classified.
std::vector<Window> find_windows(const BifurcationScan& scan, int max_period = kDefaultMaxPeriod);

// Compares adjacent columns' attractor cluster sets for one seed and
// reports the pairs whose Hausdorff distance exceeds kJumpThreshold, each
// refined by bisection to a bracket of width <= grid_step/100.
std::vector<Jump> find_jumps(const BifurcationScan& scan, int seed_index);

// Attaches continue_branch + hopping_metric output (and, if missing, the
// rotational class) to a detected window. EOS families only.
Window window_report(double a, const Window& window, int steps = 200, bool compensated = false);

}  // namespace eosmap
