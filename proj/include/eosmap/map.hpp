// Map families and their pointwise analysis: evaluation, the first three
// derivatives in closed form, Schwarzian derivative, critical points and
// fixed points.
//
//   EOS family:      F(x) = x + b - 1/(e^{-ax} + 1)   on [b-1, b]
//   logistic family: l(x) = r x (1 - x)               on [0, 1]
#pragma once

#include <vector>

#include "eosmap/dd.hpp"
#include "eosmap/errors.hpp"

namespace eosmap {

enum class Family { Eos, Logistic };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

// A fully specified map. Immutable; all operations on it are pure, so
// instances can be shared across threads freely.
class MapInstance {
public:
    // EOS: a > 0, 0 <= b <= 1. `compensated` selects double-double internal
    // arithmetic for orbit iteration and periodic-point residuals; advisable
    // for a >= 150 where plain doubles drown the residuals in roundoff.
    static MapInstance eos(double a, double b, bool compensated = false);

    // Logistic: 0 < r <= 4.
    static MapInstance logistic(double r);

    Family family() const { return family_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double r() const { return r_; }
    bool compensated() const { return compensated_; }

    Interval domain() const;

    // The swept parameter: b for EOS, r for logistic.
    double param() const { return family_ == Family::Eos ? b_ : r_; }
    MapInstance with_param(double p) const;

private:
    MapInstance() = default;
    Family family_ = Family::Eos;
    double a_ = 0.0;
    double b_ = 0.0;
    double r_ = 0.0;
    bool compensated_ = false;
};

struct CriticalSet {
    std::vector<double> points;  // strictly increasing
    int laps = 1;                // monotone laps, points.size() + 1
};

double eval(const MapInstance& m, double x);
dd::DD eval_dd(const MapInstance& m, const dd::DD& x);

// Analytic derivative of order 1, 2 or 3.
double deriv(const MapInstance& m, double x, int order);

// F'''/F' - (3/2)(F''/F')^2. Throws CriticalPointSingularity when
// |F'(x)| < 1e-12.
double schwarzian(const MapInstance& m, double x);

// Logistic: {0.5}. EOS with a > 4: the two roots of F', symmetric about 0.
// EOS with a <= 4: empty (the map is monotone).
CriticalSet critical_points(const MapInstance& m);

// EOS: the unique solution of sigma(ax) = b, requires 0 < b < 1.
// Logistic: {0, 1 - 1/r}.
std::vector<double> fixed_points(const MapInstance& m);

}  // namespace eosmap
