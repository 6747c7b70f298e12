#pragma once

#include "ignorance/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <regex>
#include <string>
#include <vector>

namespace ignorance {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Outcomes live in the unit interval; the alias documents intent only.
using Utility = Rational;

inline Rational make_rational(long long num, long long den = 1) {
    return Rational(Integer(num), Integer(den));
}

inline bool in_unit_interval(const Rational& r) { return r >= 0 && r <= 1; }

inline Rational abs_diff(const Rational& a, const Rational& b) { return a >= b ? a - b : b - a; }

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string format_rational(const Rational& r) {
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Accepts "p", "-p" and "p/q". Decimal notation is rejected so that no
/// value enters the engine through a lossy conversion.
inline Rational parse_rational(const std::string& text) {
    static const std::regex pattern(R"(^\s*(-?)(\d+)(?:\s*/\s*(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        throw Error(ErrorCode::ParseError, "not an exact rational: \"" + text + "\"");
    Integer num(m[2].str());
    if (m[1].length() > 0) num = -num;
    Integer den(1);
    if (m[3].matched) {
        den = Integer(m[3].str());
        if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in \"" + text + "\"");
    }
    return Rational(num, den);
}

/// The utility grid {0, 1/d, ..., 1}.
inline std::vector<Rational> unit_grid(unsigned denominator) {
    if (denominator == 0) throw Error(ErrorCode::InvalidArgument, "grid denominator must be >= 1");
    std::vector<Rational> grid;
    grid.reserve(denominator + 1);
    for (unsigned k = 0; k <= denominator; ++k)
        grid.push_back(make_rational(k, denominator));
    return grid;
}

} // namespace ignorance
