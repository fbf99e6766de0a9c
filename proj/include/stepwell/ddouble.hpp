#pragma once

#include <cmath>

namespace stepwell::detail {

// Compensated double-double arithmetic, enough to sum power series whose
// terms grow to ~e^zeta before cancelling back down to O(1).  Roughly 31
// significant digits; only the operations the Airy series needs.
struct ddouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr ddouble() = default;
    constexpr ddouble(double h) : hi(h), lo(0.0) {}
    constexpr ddouble(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

inline ddouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline ddouble quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline ddouble two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline ddouble operator+(ddouble a, ddouble b) {
    ddouble s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline ddouble operator-(ddouble a, ddouble b) {
    ddouble s = two_sum(a.hi, -b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo - b.lo);
}

inline ddouble operator*(ddouble a, ddouble b) {
    ddouble p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline ddouble operator*(ddouble a, double b) {
    ddouble p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline ddouble operator/(ddouble a, double b) {
    double q = a.hi / b;
    ddouble p = two_prod(q, b);
    double r = ((a.hi - p.hi) + (a.lo - p.lo)) / b;
    return quick_two_sum(q, r);
}

inline ddouble dd_sqr(double x) { return two_prod(x, x); }

} // namespace stepwell::detail
