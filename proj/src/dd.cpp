#include "eosmap/dd.hpp"

#include <limits>

namespace eosmap::dd {

namespace {

// 1/k! for k = 3..10, to full double-double precision. The factorials are
// exactly representable, so dividing once at startup is error-free enough.
const DD* inv_fact_table() {
    static const DD table[] = {
        div(DD{1.0}, DD{6.0}),      div(DD{1.0}, DD{24.0}),
        div(DD{1.0}, DD{120.0}),    div(DD{1.0}, DD{720.0}),
        div(DD{1.0}, DD{5040.0}),   div(DD{1.0}, DD{40320.0}),
        div(DD{1.0}, DD{362880.0}), div(DD{1.0}, DD{3628800.0}),
    };
    return table;
}

}  // namespace

// exp(a) = 2^m * exp(r)^512 with r = (a - m ln2)/512, |r| <= ln2/1024.
// Taylor on r, then nine squarings of expm1 to keep full precision.
DD exp(const DD& a) {
    constexpr double k = 512.0;
    constexpr double inv_k = 1.0 / k;

    if (a.hi <= -709.0) return DD{0.0};
    if (a.hi >= 709.0) return DD{std::numeric_limits<double>::infinity()};
    if (a.hi == 0.0 && a.lo == 0.0) return DD{1.0};

    const DD* inv_fact = inv_fact_table();
    double m = std::floor(a.hi / kLog2.hi + 0.5);
    DD r = mul_pwr2(sub(a, mul(kLog2, m)), inv_k);

    DD p = sqr(r);
    DD s = add(r, mul_pwr2(p, 0.5));
    p = mul(p, r);
    DD t = mul(p, inv_fact[0]);
    std::size_t i = 0;
    do {
        s = add(s, t);
        p = mul(p, r);
        ++i;
        t = mul(p, inv_fact[i]);
    } while (std::abs(to_double(t)) > inv_k * kEps && i < 5);
    s = add(s, t);

    // expm1 squaring: e^{2x} - 1 = (e^x - 1)^2 + 2(e^x - 1)
    for (int j = 0; j < 9; ++j) {
        s = add(mul_pwr2(s, 2.0), sqr(s));
    }
    s = add(s, 1.0);
    return ldexp(s, static_cast<int>(m));
}

DD sigmoid(const DD& u) {
    if (u.hi >= 0.0) {
        DD t = exp(neg(u));
        return div(DD{1.0}, add(t, 1.0));
    }
    DD t = exp(u);
    return div(t, add(t, 1.0));
}

}  // namespace eosmap::dd
