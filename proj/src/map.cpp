#include "eosmap/map.hpp"

#include <algorithm>
#include <cmath>

namespace eosmap {

namespace {

// Branch-stable sigmoid: never exponentiates a positive argument, so no
// overflow for |u| up to ~1e308 and full relative accuracy in both tails.
double sigmoid(double u) {
    if (u >= 0.0) {
        return 1.0 / (1.0 + std::exp(-u));
    }
    double t = std::exp(u);
    return t / (1.0 + t);
}

// sigma and 1-sigma together; the smaller one keeps full relative accuracy,
// which the derivative products need deep in the tails.
struct SigmoidPair {
    double s;  // sigma(u)
    double q;  // 1 - sigma(u)
};

SigmoidPair sigmoid_pair(double u) {
    if (u >= 0.0) {
        double t = std::exp(-u);
        double d = 1.0 + t;
        return {1.0 / d, t / d};
    }
    double t = std::exp(u);
    double d = 1.0 + t;
    return {t / d, 1.0 / d};
}

}  // namespace

MapInstance MapInstance::eos(double a, double b, bool compensated) {
    if (!(a > 0.0)) throw std::invalid_argument("EOS map requires a > 0");
    if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("EOS map requires 0 <= b <= 1");
    MapInstance m;
    m.family_ = Family::Eos;
    m.a_ = a;
    m.b_ = b;
    m.compensated_ = compensated;
    return m;
}

MapInstance MapInstance::logistic(double r) {
    if (!(r > 0.0 && r <= 4.0)) throw std::invalid_argument("logistic map requires 0 < r <= 4");
    MapInstance m;
    m.family_ = Family::Logistic;
    m.r_ = r;
    return m;
}

Interval MapInstance::domain() const {
    if (family_ == Family::Eos) return {b_ - 1.0, b_};
    return {0.0, 1.0};
}

MapInstance MapInstance::with_param(double p) const {
    if (family_ == Family::Eos) return eos(a_, p, compensated_);
    return logistic(p);
}

double eval(const MapInstance& m, double x) {
    if (m.family() == Family::Eos) {
        return x + m.b() - sigmoid(m.a() * x);
    }
    return m.r() * x * (1.0 - x);
}

dd::DD eval_dd(const MapInstance& m, const dd::DD& x) {
    using namespace dd;
    if (m.family() == Family::Eos) {
        DD s = sigmoid(mul(x, m.a()));
        return sub(add(x, m.b()), s);
    }
    DD one_minus = sub(1.0, x);
    return mul(mul(x, one_minus), m.r());
}

double deriv(const MapInstance& m, double x, int order) {
    if (order < 1 || order > 3) throw std::invalid_argument("deriv: order must be 1, 2 or 3");
    if (m.family() == Family::Logistic) {
        switch (order) {
            case 1: return m.r() * (1.0 - 2.0 * x);
            case 2: return -2.0 * m.r();
            default: return 0.0;
        }
    }
    double a = m.a();
    auto [s, q] = sigmoid_pair(a * x);
    double sq = s * q;  // sigma'(u)
    // 1-2s = q-s and 1-6s+6s^2 = 1-6sq: stable in both tails.
    switch (order) {
        case 1: return 1.0 - a * sq;
        case 2: return -a * a * sq * (q - s);
        default: return -a * a * a * sq * (1.0 - 6.0 * sq);
    }
}

double schwarzian(const MapInstance& m, double x) {
    double d1 = deriv(m, x, 1);
    if (std::abs(d1) < 1e-12) {
        throw CriticalPointSingularity("schwarzian: x is a critical point");
    }
    double d2 = deriv(m, x, 2);
    double d3 = deriv(m, x, 3);
    double q = d2 / d1;
    return d3 / d1 - 1.5 * q * q;
}

CriticalSet critical_points(const MapInstance& m) {
    CriticalSet cs;
    if (m.family() == Family::Logistic) {
        cs.points = {0.5};
        cs.laps = 2;
        return cs;
    }
    double a = m.a();
    double disc = 1.0 - 4.0 / a;
    if (disc <= 0.0) {
        cs.laps = 1;  // monotone (a = 4 is a degenerate tangency)
        return cs;
    }
    // F' = 0  <=>  sigma(ax)(1 - sigma(ax)) = 1/a; with s the larger root
    // of s(1-s) = 1/a the two solutions are x = +/- logit(s)/a.
    double root = std::sqrt(disc);
    double s = 0.5 * (1.0 + root);
    double one_minus_s = 2.0 / (a * (1.0 + root));  // 1-s without cancellation
    double c = std::log(s / one_minus_s) / a;
    cs.points = {-c, c};
    cs.laps = 3;
    return cs;
}

std::vector<double> fixed_points(const MapInstance& m) {
    if (m.family() == Family::Logistic) {
        double other = 1.0 - 1.0 / m.r();
        if (other == 0.0) return {0.0};
        std::vector<double> pts = {0.0, other};
        std::sort(pts.begin(), pts.end());
        return pts;
    }
    double b = m.b();
    if (b <= 0.0 || b >= 1.0) {
        throw NoInteriorFixedPoint("EOS fixed point requires 0 < b < 1");
    }
    return {std::log(b / (1.0 - b)) / m.a()};
}

}  // namespace eosmap
