#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace recourse {

// Exact arithmetic for objective values, ratios and bound thresholds.
// Every comparison the library makes goes through Rat; floating point only
// shows up in convenience columns of CSV output.
using Rat = boost::rational<long long>;

inline std::string to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline Rat rat_abs(const Rat& r) { return r < Rat(0) ? -r : r; }

// Smallest integer >= r.
inline long long rat_ceil(const Rat& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
    return q;
}

// Accepts "3", "-3", "3/2" and decimal forms like "1.25".
// Returns nullopt on anything else.
inline std::optional<Rat> parse_rational(std::string_view s) {
    if (s.empty()) return std::nullopt;
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    auto digits = [&](long long& out) -> bool {
        if (i >= s.size() || s[i] < '0' || s[i] > '9') return false;
        out = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            out = out * 10 + (s[i] - '0');
            ++i;
        }
        return true;
    };
    long long whole = 0;
    if (!digits(whole)) return std::nullopt;
    if (i == s.size()) return Rat(neg ? -whole : whole);
    if (s[i] == '/') {
        ++i;
        long long den = 0;
        if (!digits(den) || i != s.size() || den == 0) return std::nullopt;
        return Rat(neg ? -whole : whole, den);
    }
    if (s[i] == '.') {
        ++i;
        long long den = 1;
        long long frac = 0;
        std::size_t start = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            frac = frac * 10 + (s[i] - '0');
            den *= 10;
            ++i;
        }
        if (i != s.size() || i == start) return std::nullopt;
        Rat v = Rat(whole) + Rat(frac, den);
        return neg ? -v : v;
    }
    return std::nullopt;
}

}  // namespace recourse
