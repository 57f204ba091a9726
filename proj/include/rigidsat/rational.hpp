#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace rigidsat {

/// Exact rational scalar used for every metric quantity. All comparisons in
/// this project are equality-sensitive, so no floating point is allowed in
/// any code path that stores or compares distances.
using Rat = boost::multiprecision::cpp_rational;

/// Canonical text form: "p/q" in lowest terms, or just "p" when q == 1.
inline std::string rat_to_string(const Rat& x) {
    if (denominator(x) == 1) {
        return numerator(x).str();
    }
    return numerator(x).str() + "/" + denominator(x).str();
}

/// Parses "p" or "p/q". Rejects empty input, zero denominators and garbage.
inline Rat rat_from_string(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(boost::multiprecision::cpp_int(text));
        }
        boost::multiprecision::cpp_int num(text.substr(0, slash));
        boost::multiprecision::cpp_int den(text.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + text + "'");
        }
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal '" + text + "'");
    }
}

}  // namespace rigidsat
