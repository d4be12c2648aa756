#pragma once

#include <vector>

#include "abgeo/linalg.hpp"

namespace abgeo {

enum class Sense { LE, EQ, GE };

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Rat value;   // objective at the optimum (valid when Optimal)
    RVec x;      // optimal point over the original variables
    bool optimal() const { return status == Status::Optimal; }
};

// Exact rational simplex over variables x >= 0:
//   maximize c.x  subject to  A[i].x (<=|=|>=) b[i].
// Two phases, Bland's rule throughout, so it terminates on degenerate inputs.
LpResult lp_maximize(const RMat& a, const std::vector<Sense>& senses, const RVec& b,
                     const RVec& c);

LpResult lp_minimize(const RMat& a, const std::vector<Sense>& senses, const RVec& b,
                     const RVec& c);

// Phase-1 only: is {x >= 0 : A.x (sense) b} nonempty?
bool lp_feasible(const RMat& a, const std::vector<Sense>& senses, const RVec& b);

} // namespace abgeo
