#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace abgeo {

// Exact arithmetic used everywhere a decision is made. mpq keeps values in
// canonical form (coprime, positive denominator) so equality is plain ==.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

// x^e for integer e of either sign (x must be nonzero when e < 0).
inline Rat rat_pow(const Rat& x, long e) {
    if (e < 0) return 1 / rat_pow(x, -e);
    Rat out = 1;
    for (long t = 0; t < e; ++t) out *= x;
    return out;
}

// Serialized as "p" or "p/q"; the same grammar is accepted back.
inline std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rat: empty string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
    }
}

} // namespace abgeo
