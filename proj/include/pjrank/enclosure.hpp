#pragma once

// Interval enclosures with exact rational endpoints.
//
// Rationals are closed under +,-,*,/ so no outward rounding is ever
// needed: an Enclosure built from exact inputs contains the exact result
// by plain interval arithmetic.  Infinite products and series enter only
// through explicitly bounded tail brackets (see qseries.hpp), so every
// Enclosure in this library is a rigorous two-sided bound.

#include "pjrank/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace pjrank {

struct Enclosure {
    Rat lo, hi;

    Enclosure() : lo(0), hi(0) {}
    explicit Enclosure(const Rat& exact) : lo(exact), hi(exact) {}
    Enclosure(Rat lo_, Rat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo > hi) throw std::invalid_argument("Enclosure: lo > hi");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const Enclosure& other) const { return lo <= other.lo && other.hi <= hi; }
    bool overlaps(const Enclosure& other) const { return lo <= other.hi && other.lo <= hi; }
    // Largest |value| over the interval.
    Rat mag() const { return std::max(rat_abs(lo), rat_abs(hi)); }
};

inline Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    return Enclosure(a.lo + b.lo, a.hi + b.hi);
}

inline Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    return Enclosure(a.lo - b.hi, a.hi - b.lo);
}

inline Enclosure operator-(const Enclosure& a) { return Enclosure(-a.hi, -a.lo); }

inline Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return Enclosure(std::min(std::min(p1, p2), std::min(p3, p4)),
                     std::max(std::max(p1, p2), std::max(p3, p4)));
}

inline Enclosure operator*(const Rat& c, const Enclosure& a) {
    return c >= 0 ? Enclosure(c * a.lo, c * a.hi) : Enclosure(c * a.hi, c * a.lo);
}

inline Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.lo <= 0 && 0 <= b.hi) throw std::domain_error("Enclosure division by interval containing 0");
    Rat p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return Enclosure(std::min(std::min(p1, p2), std::min(p3, p4)),
                     std::max(std::max(p1, p2), std::max(p3, p4)));
}

inline Enclosure& operator+=(Enclosure& a, const Enclosure& b) { return a = a + b; }
inline Enclosure& operator*=(Enclosure& a, const Enclosure& b) { return a = a * b; }

inline Enclosure pow_int(const Enclosure& a, long e) {
    if (e < 0) return Enclosure(Rat(1)) / pow_int(a, -e);
    if (e == 0) return Enclosure(Rat(1));
    if (e % 2 == 1 || a.lo >= 0) return Enclosure(rat_pow(a.lo, e), rat_pow(a.hi, e));
    if (a.hi <= 0) return Enclosure(rat_pow(a.hi, e), rat_pow(a.lo, e));
    // even power of an interval straddling zero
    return Enclosure(Rat(0), std::max(rat_pow(a.lo, e), rat_pow(a.hi, e)));
}

struct RoundedDecimal {
    std::string text;     // shared rendering when certain, else empty
    bool certain = false;
    std::string lo_text;  // endpoint renderings, always filled
    std::string hi_text;
};

// Half-even rounding of both endpoints; certain iff they agree, in which
// case the common string is a correctly rounded rendering of the enclosed
// value.  Ambiguity is resolved upstream by recomputing at tighter
// tolerance, never by guessing.
inline RoundedDecimal round_decimal(const Enclosure& x, int digits) {
    RoundedDecimal out;
    out.lo_text = decimal_nearest(x.lo, digits);
    out.hi_text = decimal_nearest(x.hi, digits);
    out.certain = out.lo_text == out.hi_text;
    if (out.certain) out.text = out.lo_text;
    return out;
}

}  // namespace pjrank
