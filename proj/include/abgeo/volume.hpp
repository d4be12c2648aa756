#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "abgeo/bodies.hpp"
#include "abgeo/hull.hpp"
#include "abgeo/lp_param.hpp"
#include "abgeo/report.hpp"

namespace abgeo {

struct VolumeEstimate {
    double value = 0;
    double std_err = 0; // 0 iff exact
    long samples = 0;
    enum class Method { exact, mc } method = Method::exact;
    uint64_t seed = 0;
};

// Axis-aligned sampling box, lo <= x <= hi componentwise.
struct BBox {
    RVec lo, hi;
};

BBox bbox_of(const VPolytope& P);
BBox bbox_orthant(const RVec& hi);

// Exact ambient-dimension Lebesgue volume; 0 when P is lower-dimensional.
// Intended desk scale is dim <= 5 with <= 64 vertices; hard resource caps sit
// a little above that.  The intrinsic overload measures in the affine hull's
// dimension instead (axis-aligned degeneracies only).
Rat exact_volume(const VPolytope& P);
Rat exact_volume(const VPolytope& P, bool intrinsic);

// Volume of an anti-blocking body and of its coordinate projections, with the
// convention that the projection onto the zero subspace has measure 1 and a
// projection that is degenerate in its own subspace has measure 0.
Rat ab_volume(const AntiBlockingBody& K);
Rat ab_proj_volume(const AntiBlockingBody& K, const CoordSubspace& E);

using MemberFn = std::function<bool(const std::vector<double>&)>;

// Hit-or-miss volume; sampling is split over 64 fixed substreams so results
// are byte-stable for a given seed regardless of scheduling.
VolumeEstimate mc_volume(const MemberFn& member, const BBox& box, long samples, uint64_t seed);

// Sum over all coordinate subspaces E of |P_E A| |P_{E^c} B|; equals the
// volume of the difference-style Minkowski sum A + (-B).
Rat diff_volume_decomp(const AntiBlockingBody& A, const AntiBlockingBody& B);

// Same sum with the Gamma-function weights of the Firey-sum decomposition:
// sum over E of gen_binom(n/q, |E|/q)^{-1} |P_E A| |P_{E^c} B|.
double lp_diff_volume(const AntiBlockingBody& A, const AntiBlockingBody& B, const LpParam& p);
// Rational evaluation at the exact endpoints p = 1 and p = inf.
Rat lp_diff_volume_exact(const AntiBlockingBody& A, const AntiBlockingBody& B, const LpParam& p);

// |A (+)_p B| for bodies supported on complementary coordinate subspaces:
// gen_binom(n/q, i/q)^{-1} |A|_i |B|_{n-i}.
double direct_lp_sum_volume(const AntiBlockingBody& A, const AntiBlockingBody& B, const LpParam& p);

// Monte Carlo check of |K| = Gamma(1+n/q)^{-1} Int exp(-||x||_K^q) dx, the
// gauge evaluated by bisection on membership.
CheckReport volint_identity_check(const AntiBlockingBody& K, double q, long samples, uint64_t seed);

// Facet data a.x <= b in doubles for fast approximate membership (boundary
// tolerance 1e-9).
struct FacetsD {
    int n = 0;
    std::vector<std::vector<double>> a;
    std::vector<double> b;
};
FacetsD ab_facets(const AntiBlockingBody& K);
// Float rows of an exact facet system, each scaled so max |a_i| = 1.
FacetsD facets_of(const HRep& h);
bool facets_member(const FacetsD& F, const std::vector<double>& x);
bool facets_member(const FacetsD& F, const std::vector<double>& x, double tol);
// max over facets of a.x / b: the Minkowski gauge of a body whose facet
// offsets are positive (anti-blocking bodies qualify), evaluated at x >= 0.
double facets_gauge(const FacetsD& F, const std::vector<double>& x);

} // namespace abgeo
