#pragma once

#include <cstdint>
#include <vector>

#include "abgeo/linalg.hpp"
#include "abgeo/subspace.hpp"

namespace abgeo {

// Down-closed convex body in the positive orthant, represented as
// K = {x >= 0 : x <= y componentwise for some y in conv(gens)}.
// Generators are componentwise nonnegative, lex-sorted, and pruned: none lies
// in the down-closure of the hull of the others.
struct AntiBlockingBody {
    int n = 0;
    RMat gens;
    bool operator==(const AntiBlockingBody&) const = default;
};

// General polytope given by its extreme points (lex-sorted).  affine_dim
// carries the dimension of the affine hull so lower-dimensional images keep a
// meaningful Lebesgue measure.
struct VPolytope {
    int n = 0;
    RMat verts;
    int affine_dim = 0;
    bool operator==(const VPolytope&) const = default;
};

AntiBlockingBody make_antiblocking(int n, RMat generators);

// Canonical families.
AntiBlockingBody ab_box(const RVec& sides);
AntiBlockingBody ab_simplex(const RVec& sides);
// Down-closed hull of the two unit cubes spanned by sigma and its complement.
AntiBlockingBody hanner_pos(int n, const std::vector<int>& sigma);
// Cube of the given side inside a coordinate subspace, degenerate in ambient
// space.
AntiBlockingBody ab_subcube(const CoordSubspace& E, const Rat& side);

// Coordinate projection onto span{e_i : i in E}, written in |E| coordinates.
// For anti-blocking bodies the projection equals the section K ∩ E.
AntiBlockingBody project(const AntiBlockingBody& K, const CoordSubspace& E);
AntiBlockingBody minkowski_sum(const AntiBlockingBody& A, const AntiBlockingBody& B);
AntiBlockingBody scale(const AntiBlockingBody& K, const Rat& t);

VPolytope make_vpolytope(int n, RMat points);
// Extreme points of K as a polytope: the pruned mask orbit {d*g : d in {0,1}^n}
// of the generators, origin included.
VPolytope vertex_orbit(const AntiBlockingBody& K);
VPolytope project(const VPolytope& P, const CoordSubspace& E);
VPolytope minkowski_sum(const VPolytope& A, const VPolytope& B);
VPolytope reflect(const VPolytope& P, const std::vector<int>& signs);
VPolytope reflect(const AntiBlockingBody& K, const std::vector<int>& signs);
VPolytope negate(const VPolytope& P);
VPolytope negate(const AntiBlockingBody& K);
// Hull of all 2^n coordinate reflections: the smallest 1-unconditional body
// containing K.  Ambient dimension capped at 8.
VPolytope sign_orbit(const AntiBlockingBody& K);

// Exact membership.
bool contains(const AntiBlockingBody& K, const RVec& x);
bool contains(const VPolytope& P, const RVec& x);

// max over vertices of <u, v>.
Rat support(const VPolytope& P, const RVec& u);

// Checks P_E(hull) = hull ∩ E for every coordinate subspace E by exact
// support comparison along the axes of E plus `directions` random directions
// inside E.  Expects a polytope in the positive orthant.
bool antiblocking_check(const VPolytope& P, int directions, uint64_t seed);

} // namespace abgeo
