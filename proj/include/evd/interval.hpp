#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace evd {

/// Closed interval [lo, hi] over the extended reals. Infinite endpoints are
/// legal values and propagate through arithmetic; division by an interval
/// containing zero yields the full line.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {}

    static Interval point(double v) { return {v, v}; }
    static Interval entire() {
        const double inf = std::numeric_limits<double>::infinity();
        return {-inf, inf};
    }

    bool is_point(double v) const { return lo == v && hi == v; }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }

    double width() const { return hi - lo; }
    double mid() const { return (lo + hi) / 2.0; }
    double rad() const { return (hi - lo) / 2.0; }

    Interval hull(const Interval& other) const {
        return {std::min(lo, other.lo), std::max(hi, other.hi)};
    }
    Interval hull(double v) const { return {std::min(lo, v), std::max(hi, v)}; }

    Interval intersect(const Interval& other) const {
        return {std::max(lo, other.lo), std::min(hi, other.hi)};
    }
};

inline Interval operator-(const Interval& x) { return {-x.hi, -x.lo}; }

inline Interval operator+(const Interval& x, const Interval& y) {
    return {x.lo + y.lo, x.hi + y.hi};
}

inline Interval operator-(const Interval& x, const Interval& y) {
    return {x.lo - y.hi, x.hi - y.lo};
}

namespace detail {
// Product endpoint with the IA convention 0 * inf == 0, so that degenerate
// factors do not poison the result with NaN.
inline double iprod(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return a * b;
}
}  // namespace detail

inline Interval operator*(const Interval& x, const Interval& y) {
    using detail::iprod;
    const double p1 = iprod(x.lo, y.lo);
    const double p2 = iprod(x.lo, y.hi);
    const double p3 = iprod(x.hi, y.lo);
    const double p4 = iprod(x.hi, y.hi);
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

inline Interval operator/(const Interval& x, const Interval& y) {
    if (y.contains_zero()) return Interval::entire();
    const double q1 = x.lo / y.lo;
    const double q2 = x.lo / y.hi;
    const double q3 = x.hi / y.lo;
    const double q4 = x.hi / y.hi;
    return {std::min(std::min(q1, q2), std::min(q3, q4)),
            std::max(std::max(q1, q2), std::max(q3, q4))};
}

inline Interval abs(const Interval& x) {
    if (x.lo >= 0.0) return x;
    if (x.hi <= 0.0) return -x;
    return {0.0, std::max(-x.lo, x.hi)};
}

/// x*x as a range of a single variable, never negative (unlike x * x).
inline Interval square(const Interval& x) {
    const Interval a = abs(x);
    return {a.lo * a.lo, a.hi * a.hi};
}

/// Square root over the nonnegative part of the operand; a negative lower
/// endpoint is treated as range slack and clamped to zero.
inline Interval sqrt(const Interval& x) {
    const double lo = std::max(x.lo, 0.0);
    const double hi = std::max(x.hi, 0.0);
    return {std::sqrt(lo), std::sqrt(hi)};
}

/// Enclosure of sign(x) with the convention sign(0) = +1.
inline Interval sign_enclosure(const Interval& x) {
    const double slo = x.lo >= 0.0 ? 1.0 : -1.0;
    const double shi = x.hi >= 0.0 ? 1.0 : -1.0;
    return {std::min(slo, shi), std::max(slo, shi)};
}

}  // namespace evd
