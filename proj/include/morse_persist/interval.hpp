#pragma once

#include <algorithm>
#include <initializer_list>

#include "morse_persist/rational.hpp"

namespace morse_persist {

// Closed rational interval [lo, hi].  Every operation returns the exact
// range of the operation on interval arguments, so composite expressions
// evaluate to inclusion-monotone enclosures: widening an argument never
// shrinks the result.
struct Interval {
    Rational lo, hi;

    Interval() : lo(0), hi(0) {}
    Interval(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {
        detail::require(lo <= hi, "interval endpoints out of order");
    }
    static Interval point(const Rational& v) { return Interval(v, v); }

    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& other) const {
        return lo <= other.lo && other.hi <= hi;
    }
    bool intersects(const Interval& other) const {
        return lo <= other.hi && other.lo <= hi;
    }
    Rational width() const { return hi - lo; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo + b.lo, a.hi + b.hi);
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo - b.hi, a.hi - b.lo);
}

inline Interval operator-(const Interval& a) {
    return Interval(-a.hi, -a.lo);
}

inline Interval operator*(const Interval& a, const Interval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                    std::max(std::max(p1, p2), std::max(p3, p4)));
}

// Integer power with the exact range (even powers straddle zero correctly).
inline Interval pow(const Interval& a, unsigned exponent) {
    using boost::multiprecision::pow;
    if (exponent == 0) return Interval::point(1);
    auto rpow = [](const Rational& v, unsigned e) {
        return Rational(pow(boost::multiprecision::numerator(v), e),
                        pow(boost::multiprecision::denominator(v), e));
    };
    Rational plo = rpow(a.lo, exponent), phi = rpow(a.hi, exponent);
    if (exponent % 2 == 1) return Interval(plo, phi);
    if (a.lo >= 0) return Interval(plo, phi);
    if (a.hi <= 0) return Interval(phi, plo);
    return Interval(Rational(0), std::max(plo, phi));
}

}  // namespace morse_persist
