#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cyv {

// All arithmetic in the engine is exact. Values stay tiny (numerators well
// below 10^6, denominators divide 24), so a 64-bit rational is plenty.
using Rat = boost::rational<long long>;

inline std::string to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "p" or "p/q" with optional leading minus. Throws on anything else.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t slash = s.find('/');
    auto parse_int = [](const std::string& t) -> long long {
        std::size_t pos = 0;
        long long v = std::stoll(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("bad integer literal: " + t);
        return v;
    };
    if (slash == std::string::npos) return Rat(parse_int(s));
    long long num = parse_int(s.substr(0, slash));
    long long den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rat(num, den);
}

inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

}  // namespace cyv
