#pragma once

#include "abgeo/linalg.hpp"

namespace abgeo {

// Facet description of a full-dimensional polytope: rows a.x <= b with each
// (a, b) a primitive integer vector, sorted lexicographically.
struct HRep {
    int dim = 0;
    RMat normals;
    RVec offsets;
    size_t size() const { return normals.size(); }
};

// Exact facet enumeration of conv(points) via double description of the polar
// cone.  Redundant or duplicate input points are allowed.  Requires a
// full-dimensional point set; throws std::invalid_argument otherwise.
HRep facet_enum(int dim, const RMat& points);

// Exact Lebesgue volume of conv(points) in R^dim; 0 when the hull is
// lower-dimensional.  Results are memoized on the (deduplicated) point set.
// Desk scale: dim <= 5 and at most a few thousand candidate points; throws
// std::length_error beyond that.
Rat exact_volume_points(int dim, RMat points);

// The extreme points of conv(candidates), lexicographically sorted.
// Axis-aligned degeneracy (constant coordinates) is handled by dropping those
// coordinates; a point set that is degenerate in a skew direction throws
// std::invalid_argument.
RMat extreme_points(int dim, RMat candidates);

} // namespace abgeo
