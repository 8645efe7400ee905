// Exact scalar types and certified double brackets.
//
// All spectral radii and entropies in this library are reported as closed
// intervals [lo, hi] of doubles that are guaranteed to contain the true
// value.  Interval endpoints are produced from exact rational arithmetic
// with directed rounding, so downstream comparisons (monotonicity,
// product rules, conjecture checks) never pass or fail due to float
// rounding alone.

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace etale {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Greatest double <= q.  convert_to<double> rounds to nearest, so at most
// one ulp nudge in either direction is needed; we verify exactly.
inline double to_double_down(const Rat& q) {
    double d = q.convert_to<double>();
    if (!std::isfinite(d)) throw std::overflow_error("to_double_down: value out of double range");
    while (Rat(d) > q) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
    while (true) {
        double up = std::nextafter(d, std::numeric_limits<double>::infinity());
        if (std::isfinite(up) && Rat(up) <= q) d = up; else break;
    }
    return d;
}

// Least double >= q.
inline double to_double_up(const Rat& q) {
    double d = q.convert_to<double>();
    if (!std::isfinite(d)) throw std::overflow_error("to_double_up: value out of double range");
    while (Rat(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
    while (true) {
        double down = std::nextafter(d, -std::numeric_limits<double>::infinity());
        if (std::isfinite(down) && Rat(down) >= q) d = down; else break;
    }
    return d;
}

inline double to_double_down(const Int& n) { return to_double_down(Rat(n)); }
inline double to_double_up(const Int& n) { return to_double_up(Rat(n)); }

// log of a big integer, usable far beyond double range.  Accurate to a few
// ulps; callers that need a certified bound widen by log_guard().
inline double log_int(const Int& n) {
    if (n <= 0) throw std::domain_error("log_int: nonpositive argument");
    double d = n.convert_to<double>();
    if (std::isfinite(d)) return std::log(d);
    const std::size_t bits = msb(n);  // boost: index of most significant bit
    Int top = n >> static_cast<unsigned>(bits - 52);
    return std::log(top.convert_to<double>()) + static_cast<double>(bits - 52) * std::log(2.0);
}

// Directed-rounding guards for libm calls (faithful rounding assumed,
// widened by two ulps on each side).
inline double nudge_down(double x, int ulps = 2) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
    return x;
}
inline double nudge_up(double x, int ulps = 2) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
    return x;
}

// A certified closed interval: the reported quantity lies in [lo, hi].
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;

    Bracket() = default;
    Bracket(double l, double h) : lo(l), hi(h) {
        if (!(lo <= hi)) throw std::invalid_argument("Bracket: lo > hi");
    }
    static Bracket point(double x) { return Bracket(x, x); }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool overlaps(const Bracket& o, double slack = 0.0) const {
        return lo <= o.hi + slack && o.lo <= hi + slack;
    }
    // Certified strict order: every point of *this is below every point of o.
    bool certified_below(const Bracket& o) const { return hi < o.lo; }

    bool operator==(const Bracket&) const = default;
};

// Intersection of two brackets known to contain the same value.
inline Bracket intersect(const Bracket& a, const Bracket& b) {
    double lo = std::max(a.lo, b.lo);
    double hi = std::min(a.hi, b.hi);
    if (lo > hi) throw std::logic_error("Bracket::intersect: disjoint certified brackets");
    return Bracket(lo, hi);
}

inline Bracket add(const Bracket& a, const Bracket& b) {
    return Bracket(nudge_down(a.lo + b.lo), nudge_up(a.hi + b.hi));
}
inline Bracket sub(const Bracket& a, const Bracket& b) {
    return Bracket(nudge_down(a.lo - b.hi), nudge_up(a.hi - b.lo));
}
inline Bracket scale(const Bracket& a, double s) {
    if (s < 0) throw std::invalid_argument("Bracket::scale: negative factor");
    return Bracket(nudge_down(a.lo * s), nudge_up(a.hi * s));
}
inline Bracket shift(const Bracket& a, double s) {
    return Bracket(nudge_down(a.lo + s), nudge_up(a.hi + s));
}
// max/min of two bracketed values.
inline Bracket bracket_max(const Bracket& a, const Bracket& b) {
    return Bracket(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}
inline Bracket bracket_min(const Bracket& a, const Bracket& b) {
    return Bracket(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
}

// log of a bracket of positive values; [0, x] is allowed only as the exact
// zero bracket's complement -- callers treat rho = 0 separately.
inline Bracket log_bracket(const Bracket& a) {
    if (a.lo <= 0.0) throw std::domain_error("log_bracket: nonpositive lower endpoint");
    double lo = a.lo == 1.0 ? 0.0 : nudge_down(std::log(a.lo));
    double hi = a.hi == 1.0 ? 0.0 : nudge_up(std::log(a.hi));
    if (a.lo >= 1.0 && lo < 0.0) lo = 0.0;  // log is exact at 1 and monotone
    return Bracket(lo, hi);
}

// sqrt of a bracket of nonnegative values.
inline Bracket sqrt_bracket(const Bracket& a) {
    if (a.lo < 0.0) throw std::domain_error("sqrt_bracket: negative lower endpoint");
    double lo = a.lo == 0.0 ? 0.0 : nudge_down(std::sqrt(a.lo));
    if (lo < 0.0) lo = 0.0;
    return Bracket(lo, nudge_up(std::sqrt(a.hi)));
}

}  // namespace etale
