#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace abgeo {

// Exponent of a Firey sum together with its conjugate, 1/p + 1/q = 1.  The
// endpoints are tagged so that p=1 (Minkowski sum, q=inf) and p=inf (hull of
// the union, q=1) stay exact.
struct LpParam {
    enum class Kind { one, finite, inf };
    Kind kind = Kind::one;
    double p = 1;

    static LpParam one() { return LpParam{Kind::one, 1}; }
    static LpParam inf() { return LpParam{Kind::inf, std::numeric_limits<double>::infinity()}; }
    static LpParam finite(double pv) {
        if (!(pv >= 1)) throw std::invalid_argument("LpParam: p must be at least 1");
        if (pv == 1) return one();
        if (std::isinf(pv)) return inf();
        return LpParam{Kind::finite, pv};
    }

    bool is_one() const { return kind == Kind::one; }
    bool is_inf() const { return kind == Kind::inf; }

    double q() const {
        switch (kind) {
        case Kind::one: return std::numeric_limits<double>::infinity();
        case Kind::inf: return 1;
        default: return p / (p - 1);
        }
    }
};

} // namespace abgeo
