#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace fotpi {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Renders "p/q", or just "p" when q == 1.
inline std::string rat_str(const Rat& r) {
    Int n = rat_num(r), d = rat_den(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

/// Parses "p", "-p" or "p/q". Throws fotpi::error on malformed input.
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw error("zero denominator in rational literal: " + s);
        return Rat(num, den);
    } catch (const std::exception&) {
        throw error("malformed rational literal: " + s);
    }
}

}  // namespace fotpi
