#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "abgeo/bodies.hpp"
#include "abgeo/lp_param.hpp"
#include "abgeo/report.hpp"
#include "abgeo/volume.hpp"

namespace abgeo {

// Convex body given only by a membership oracle inside a bounding box.
// member(x, tol) answers up to a band of width tol in the gauge direction,
// so boundaries are fuzzy at that scale; checks must treat the band as slack.
// Bodies built by shifts or Firey sums of exact polytopes land here because
// they have no finite exact vertex representation.
struct OracleBody {
    int n = 0;
    BBox box; // contains the body
    std::function<bool(const std::vector<double>&, double)> member;
    bool anti_blocking = false; // down-closed in the positive orthant

    bool contains(const std::vector<double>& x, double tol = 1e-9) const {
        return member(x, tol);
    }
};

// Facet-backed oracles for the exact body types.  Both require a
// full-dimensional body.
OracleBody oracle_of(const AntiBlockingBody& K);
OracleBody oracle_of(const VPolytope& P);

// x in A (+)_p B, the union over t of (1-t)^{1/q} A + t^{1/q} B.  Decided on
// a 64-point t-grid refined by 40 golden-section steps, each step solving the
// exact decomposition LP that scales x as far as possible into the fixed-t
// Minkowski sum (the feasible t-set is an interval, so the refinement is
// sound).  p = 1 is the Minkowski sum and p = inf the hull of the union; both
// are answered by a single exact LP with no error band.  For finite p the
// answer is correct up to a band of width tol in the gauge direction.
bool lp_sum_contains(const VPolytope& A, const VPolytope& B, const LpParam& p, const RVec& x,
                     double tol = 1e-9);
bool lp_sum_contains(const AntiBlockingBody& A, const AntiBlockingBody& B, const LpParam& p,
                     const RVec& x, double tol = 1e-9);

// Sampling oracles for Firey combinations of full-dimensional anti-blocking
// bodies.  Facet systems are computed exactly once per instance; memberships
// are then plain halfspace scans.
//
// A (+)_p B for finite p is approximated from below by the union of 128 exact
// t-slices, so estimates drawn from it can only undercount — safe on the
// small side of a one-sided check.  A (+)_p -B needs no grid at all: the
// orthant split gives the exact gauge condition
//     ||x_+||^q_{P_E A} + ||x_-||^q_{P_{E^c} B} <= 1,  E = {i : x_i >= 0},
// and the triple difference A (+)_p -B (+)_p -C equals A (+)_p -(B (+)_p C),
// where only the inner positive sum B (+)_p C uses the t-grid.
OracleBody lp_sum_oracle(const AntiBlockingBody& A, const AntiBlockingBody& B, const LpParam& p);
OracleBody lp_diff_oracle(const AntiBlockingBody& A, const AntiBlockingBody& B, const LpParam& p);
OracleBody lp_triple_diff_oracle(const AntiBlockingBody& A, const AntiBlockingBody& B,
                                 const AntiBlockingBody& C, const LpParam& p);

// Steiner-type shift along axis i: each fiber of K in direction e_i slides to
// [0, fiber length].  Anti-blocking bodies are fixed points and are returned
// unchanged.  Fiber endpoints come from a 64-point scan plus bisection, so a
// fiber thinner than about 1/64 of the box height may be reported empty; that
// one-sided sliver is part of the oracle band.
OracleBody steiner_shift(const OracleBody& K, int axis);

// Samples witnesses (1-t)^{1/q} a + t^{1/q} b with a in S_i(A), b in S_i(B)
// and asserts each lies in S_i(A (+)_p B), for every axis i.  lhs reports the
// violation count, which must be zero.
CheckReport sym_inclusion_check(const VPolytope& A, const VPolytope& B, const LpParam& p,
                                long samples, uint64_t seed);

// |A (+)_p B| <= |A (+)_p -B|.  Monte Carlo left side against the exact
// subspace-decomposition right side; both sides exact rational when p is 1
// (plain Minkowski sums) or inf (hulls of unions).
CheckReport rk_lp_check(const AntiBlockingBody& A, const AntiBlockingBody& B, const LpParam& p,
                        long samples, uint64_t seed);

// |K (+)_p -K| <= kappa |K| with kappa the sharp constant for the conjugate
// exponent; equality when K is a (weighted) simplex, which the instance
// string flags.  Exact rational at p in {1, inf}; otherwise the two sides are
// Gamma-weighted sums evaluated to about 1e-12, and the report's rhs_stderr
// encodes the pinned 1e-9 relative tolerance as its 3-sigma band.
CheckReport rogers_shephard_lp_check(const AntiBlockingBody& K, const LpParam& p);

// |A|/|P_E A| + |B|/|P_E B| <= nu(n,p,|E|) |A (+)_p -B| / |P_E (A (+)_p -B)|.
// The left side and the projected volume are exact; the middle volume is
// Monte Carlo for finite p and exact rational at the endpoints.
CheckReport ratio_lp_check(const AntiBlockingBody& A, const AntiBlockingBody& B, const LpParam& p,
                           const CoordSubspace& E, long samples, uint64_t seed);

// |A| |A (+)_p -B (+)_p -C| <= b(n,p) |A (+)_p -B| |A (+)_p -C|.  The triple
// sum is Monte Carlo for finite p and exact rational at the endpoints.
CheckReport plun_ruz_lp_check(const AntiBlockingBody& A, const AntiBlockingBody& B,
                              const AntiBlockingBody& C, const LpParam& p, long samples,
                              uint64_t seed);

// Two-sided consistency check: Monte Carlo volume of the A (+)_p -B oracle
// against the Gamma-weighted decomposition formula, within 3 sigma.
CheckReport lp_diff_decomp_check(const AntiBlockingBody& A, const AntiBlockingBody& B,
                                 const LpParam& p, long samples, uint64_t seed);

} // namespace abgeo
