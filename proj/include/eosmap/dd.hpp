// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving roughly 32 significant decimal digits. Used by the compensated
// evaluation mode for steep maps, where plain doubles lose the residual
// F^n(x) - x to cancellation.
#pragma once

#include <cmath>

namespace eosmap::dd {

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    constexpr DD(double h, double l) : hi(h), lo(l) {}
    constexpr DD(double h) : hi(h), lo(0.0) {}
};

inline constexpr double kEps = 4.93038065763132e-32;  // 2^-104

// Error-free transforms.
inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// Requires |a| >= |b| (or a == 0).
inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

inline DD add(const DD& a, const DD& b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD add(const DD& a, double b) {
    DD s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD neg(const DD& a) { return {-a.hi, -a.lo}; }
inline DD sub(const DD& a, const DD& b) { return add(a, neg(b)); }
inline DD sub(const DD& a, double b) { return add(a, -b); }
inline DD sub(double a, const DD& b) { return add(neg(b), a); }

inline DD mul(const DD& a, const DD& b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD mul(const DD& a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD div(const DD& a, const DD& b) {
    double q1 = a.hi / b.hi;
    DD r = sub(a, mul(b, q1));
    double q2 = r.hi / b.hi;
    r = sub(r, mul(b, q2));
    double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return add(q, q3);
}

inline DD div(double a, const DD& b) { return div(DD{a}, b); }

// Exact scaling by a power of two.
inline DD mul_pwr2(const DD& a, double p) { return {a.hi * p, a.lo * p}; }
inline DD ldexp(const DD& a, int n) { return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)}; }

inline DD sqr(const DD& a) {
    DD p = two_prod(a.hi, a.hi);
    p.lo += 2.0 * a.hi * a.lo;
    return quick_two_sum(p.hi, p.lo);
}

inline double to_double(const DD& a) { return a.hi + a.lo; }
inline DD abs(const DD& a) { return a.hi < 0.0 ? neg(a) : a; }

inline bool less(const DD& a, const DD& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

inline DD operator+(const DD& a, const DD& b) { return add(a, b); }
inline DD operator+(const DD& a, double b) { return add(a, b); }
inline DD operator-(const DD& a, const DD& b) { return sub(a, b); }
inline DD operator-(const DD& a, double b) { return sub(a, b); }
inline DD operator-(double a, const DD& b) { return sub(a, b); }
inline DD operator-(const DD& a) { return neg(a); }
inline DD operator*(const DD& a, const DD& b) { return mul(a, b); }
inline DD operator*(const DD& a, double b) { return mul(a, b); }
inline DD operator/(const DD& a, const DD& b) { return div(a, b); }
inline DD operator/(double a, const DD& b) { return div(a, b); }

// ln 2 to double-double precision.
inline constexpr DD kLog2{6.931471805599452862e-01, 2.319046813846299558e-17};

DD exp(const DD& a);

// Branch-stable logistic sigmoid 1/(1 + e^-u).
DD sigmoid(const DD& u);

}  // namespace eosmap::dd
