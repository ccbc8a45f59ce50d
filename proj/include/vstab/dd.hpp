#pragma once

#include <cmath>
#include <cstddef>

// Compensated double-double arithmetic (Dekker/Knuth error-free transforms).
// A dd value carries ~31 significant decimal digits as an unevaluated sum
// hi + lo with |lo| <= ulp(hi)/2. Every operation is a fixed sequence of
// IEEE double operations, so results are identical across runs and thread
// counts. Used inside the dense kernels where certificate comparisons are
// equality-tight and plain doubles would lose the margin.

namespace vstab::detail {

struct dd {
    double hi = 0.0;
    double lo = 0.0;
    constexpr dd() = default;
    constexpr dd(double h) : hi(h) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
};

inline double to_double(dd a) { return a.hi + a.lo; }

inline dd quick_two_sum(double a, double b) {
    // requires |a| >= |b| or a == 0
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd operator+(dd a, double b) {
    dd s = two_sum(a.hi, b);
    return quick_two_sum(s.hi, s.lo + a.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }
inline dd operator-(dd a, double b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd operator*(dd a, double b) {
    dd p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return q + q3;
}

inline dd operator/(dd a, double b) { return a / dd(b); }

inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }

inline bool operator<(dd a, dd b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(dd a, dd b) { return b < a; }

inline dd abs(dd a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

inline dd sqrt(dd a) {
    if (a.hi <= 0.0) return {std::sqrt(a.hi), 0.0}; // 0 or NaN propagation
    double x = std::sqrt(a.hi);
    dd diff = a - two_prod(x, x);
    return quick_two_sum(x, to_double(diff) / (2.0 * x));
}

// Compensated dot product of two double arrays.
inline dd dot(const double* a, const double* b, std::size_t n) {
    dd acc;
    for (std::size_t i = 0; i < n; ++i) acc += two_prod(a[i], b[i]);
    return acc;
}

inline dd norm2_squared(const double* a, std::size_t n) { return dot(a, a, n); }

} // namespace vstab::detail
