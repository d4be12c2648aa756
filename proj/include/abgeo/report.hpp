#pragma once

#include <cmath>
#include <string>

namespace abgeo {

// Outcome of one inequality or identity check.  For one-sided checks the
// stored rhs already includes the sharp constant; `constant` records it.
// margin is the decision slack: nonnegative exactly when the check passes.
struct CheckReport {
    std::string theorem_id;
    std::string instance;
    double lhs = 0;
    double lhs_stderr = 0;
    double rhs = 0;
    double rhs_stderr = 0;
    double constant = 1;
    double margin = 0;
    bool pass = false;
    std::string method; // "exact" or "mc"
};

inline double combined_stderr(const CheckReport& r) {
    return std::sqrt(r.lhs_stderr * r.lhs_stderr + r.rhs_stderr * r.rhs_stderr);
}

// lhs <= rhs, with a 3-sigma allowance when Monte Carlo noise is present.
inline void decide_one_sided(CheckReport& r) {
    double slack = (r.method == "mc") ? 3 * combined_stderr(r) : 0;
    r.margin = r.rhs + slack - r.lhs;
    r.pass = r.margin >= 0;
}

// lhs == rhs within 3 sigma; for exact methods the sides must coincide.
inline void decide_two_sided(CheckReport& r) {
    double slack = (r.method == "mc") ? 3 * combined_stderr(r) : 0;
    r.margin = slack - std::fabs(r.rhs - r.lhs);
    r.pass = r.margin >= 0;
}

} // namespace abgeo
