#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chainft {

// Exact arithmetic everywhere: entries of boundary matrices and the values of
// cochains are arbitrary-precision, so unimodularity and divisibility checks
// are equalities, never tolerances.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Index = std::size_t;

inline Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw std::invalid_argument("floor_div: division by zero");
    Int q = a / b;  // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// residue of a modulo m, normalized into [0, m), m > 0
inline Int mod_positive(const Int& a, const Int& m) {
    if (m <= 0) throw std::invalid_argument("mod_positive: modulus must be positive");
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// r - floor(r), in [0, 1)
inline Rat mod_one(const Rat& r) {
    const Int n = numerator(r);
    const Int d = denominator(r);  // canonical: d > 0
    return Rat(mod_positive(n, d), d);
}

// Canonical fraction string: "p" when the denominator is 1, else "p/q" with
// q > 0 and gcd(p, q) = 1. This is the wire format for every rational value.
inline std::string to_fraction_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

// Accepts "p" or "p/q" (q > 0); reduces. Throws std::invalid_argument.
inline Rat parse_fraction(const std::string& text) {
    const auto bad = [&]() -> std::invalid_argument {
        return std::invalid_argument("not a fraction: '" + text + "'");
    };
    const auto parse_int = [&](const std::string& part) -> Int {
        if (part.empty()) throw bad();
        Index start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) throw bad();
        for (Index i = start; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') throw bad();
        return Int(part);
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(parse_int(text));
    const Int num = parse_int(text.substr(0, slash));
    const Int den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw bad();
    return Rat(num, den);
}

}  // namespace chainft
