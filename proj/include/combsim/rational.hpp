#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace combsim {

// Exact arithmetic for all axiom checks; no floating point anywhere in the
// decision paths. long long is ample at the scales this library targets
// (small matrices, denominators bounded by the witness value scheme).
using Rational = boost::rational<long long>;

inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text));
        const long long num = std::stoll(text.substr(0, slash));
        const long long den = std::stoll(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return Rational(num, den);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed rational: '" + text + "'");
    }
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace combsim
