#pragma once

#include <cmath>
#include <complex>

// Double-double (compensated) arithmetic, Dekker/Knuth style. Used by the
// hypergeometric series, where terms of size ~e^|z| cancel down to O(1)
// results: a plain double accumulator loses the result entirely for |z| > ~40,
// while two doubles (~31 digits) keep usable accuracy to |z| ~ 55.

namespace tempus::detail {

struct dd {
    double hi = 0.0;
    double lo = 0.0;
    dd() = default;
    constexpr dd(double h, double l = 0.0) : hi(h), lo(l) {}
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    double e = (a - (s - v)) + (b - v);
    return {s, e};
}

// requires |a| >= |b|
inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd add(dd a, double b) {
    dd s = two_sum(a.hi, b);
    return quick_two_sum(s.hi, s.lo + a.lo);
}

inline dd neg(dd a) { return {-a.hi, -a.lo}; }

inline dd sub(dd a, dd b) { return add(a, neg(b)); }

inline dd mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd mul(dd a, double b) {
    dd p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline dd div(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = sub(a, mul(b, q1));
    double q2 = r.hi / b.hi;
    r = sub(r, mul(b, q2));
    double q3 = r.hi / b.hi;
    return add(quick_two_sum(q1, q2), q3);
}

inline double to_double(dd a) { return a.hi + a.lo; }

struct cdd {
    dd re, im;
    cdd() = default;
    cdd(dd r, dd i) : re(r), im(i) {}
    explicit cdd(std::complex<double> z) : re(z.real()), im(z.imag()) {}
};

inline cdd add(cdd a, cdd b) { return {add(a.re, b.re), add(a.im, b.im)}; }

inline cdd mul(cdd a, cdd b) {
    return {sub(mul(a.re, b.re), mul(a.im, b.im)),
            add(mul(a.re, b.im), mul(a.im, b.re))};
}

inline cdd mul(cdd a, dd b) { return {mul(a.re, b), mul(a.im, b)}; }

inline cdd div(cdd a, cdd b) {
    dd n = add(mul(b.re, b.re), mul(b.im, b.im));
    cdd t = mul(a, cdd{b.re, neg(b.im)});
    return {div(t.re, n), div(t.im, n)};
}

inline std::complex<double> to_complex(cdd a) {
    return {to_double(a.re), to_double(a.im)};
}

inline double abs_approx(cdd a) {
    return std::hypot(to_double(a.re), to_double(a.im));
}

} // namespace tempus::detail
