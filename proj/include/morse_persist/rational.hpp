#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "morse_persist/errors.hpp"

namespace morse_persist {

// All geometry and homology run on exact rationals; the library never
// rounds.  Decimal input ("0.25") is converted exactly.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer rational_floor(const Rational& q) {
    Integer num = boost::multiprecision::numerator(q);
    Integer den = boost::multiprecision::denominator(q);  // den > 0
    Integer quot = num / den;
    if (num % den != 0 && num < 0) --quot;
    return quot;
}

inline Integer rational_ceil(const Rational& q) {
    Integer num = boost::multiprecision::numerator(q);
    Integer den = boost::multiprecision::denominator(q);
    Integer quot = num / den;
    if (num % den != 0 && num > 0) ++quot;
    return quot;
}

inline bool is_integer(const Rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

// Renders integers bare ("3") and everything else as "p/q".
inline std::string format_rational(const Rational& q) {
    Integer num = boost::multiprecision::numerator(q);
    Integer den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// Accepts "p/q", integers, and exact decimals ("-0.375", "1.5e-2").
inline Rational parse_rational(const std::string& text) {
    auto fail = [&]() -> Rational {
        throw ConfigError("cannot parse rational number: '" + text + "'");
    };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) return fail();

    auto parse_int = [](std::string t) {
        bool negative = false;
        if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
            negative = t[0] == '-';
            t = t.substr(1);
        }
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("not an integer");
        std::size_t first = t.find_first_not_of('0');  // avoid octal parsing
        t = first == std::string::npos ? "0" : t.substr(first);
        Integer v(t);
        return negative ? -v : v;
    };

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) return fail();
        try {
            Integer n = parse_int(num), d = parse_int(den);
            if (d == 0) return fail();
            return Rational(n, d);
        } catch (const std::exception&) {
            return fail();
        }
    }

    bool negative = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long long frac_digits = 0, exponent = 0;
    bool seen_dot = false, seen_digit = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.') {
            if (seen_dot) return fail();
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            std::string exp = s.substr(pos + 1);
            if (exp.empty()) return fail();
            try {
                exponent = std::stoll(exp);
            } catch (const std::exception&) {
                return fail();
            }
            pos = s.size() - 1;
        } else {
            return fail();
        }
    }
    if (!seen_digit) return fail();

    // cpp_int reads a leading zero as an octal prefix
    std::size_t first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? "0" : digits.substr(first);
    Integer num(digits);
    if (negative) num = -num;
    Rational value(num);
    long long shift = exponent - frac_digits;
    Integer ten(10);
    if (shift > 0)
        value *= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(shift)));
    else if (shift < 0)
        value /= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(-shift)));
    return value;
}

}  // namespace morse_persist
