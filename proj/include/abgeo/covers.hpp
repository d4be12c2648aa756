#pragma once

#include <string>
#include <vector>

#include "abgeo/bodies.hpp"
#include "abgeo/report.hpp"

namespace abgeo {

// A lambda-uniform cover of an index set sigma: an ordered list of parts,
// each a subset of sigma, such that every element of sigma lies in exactly
// lambda parts.  Parts are distinguishable (ordered tuple) and may be empty.
// Indices are 0-based; sigma and every part are strictly increasing.
struct UniformCover {
    std::vector<int> sigma;
    std::vector<std::vector<int>> parts;
    int lambda = 1;
    bool operator==(const UniformCover&) const = default;
};

// Exact multiplicity check: every part is a sorted subset of sigma and every
// element of sigma lies in exactly `lambda` parts.
bool validate_cover(const UniformCover& c);

// Canonical one-line description, 1-based: "sigma=1,2;parts=1|2;lambda=1".
std::string cover_instance(const UniformCover& c);

// All ordered lambda-uniform covers of sigma into m (possibly empty) parts,
// one per choice of a lambda-subset of parts for each element.  With
// unordered = true, covers that coincide up to reordering the parts are
// reported once.  Guard: |sigma| * m <= 24.
std::vector<UniformCover> enumerate_covers(const std::vector<int>& sigma, int m,
                                           int lambda, bool unordered = false);

// Local Loomis-Whitney inequality for a cover of sigma:
//   |K|^(m-lambda) |P_{E_sigma} K|^lambda  <=  c * prod_i |P_{E_sigma_i} K|,
// where E_tau drops the coordinates of tau (projection onto span{e_j : j
// not in tau}) and c is the sharp cover constant.  Exact rational arithmetic.
CheckReport llw_check(const AntiBlockingBody& K, const UniformCover& c);
CheckReport llw_check(const VPolytope& K, const UniformCover& c);

// Uniform-cover projection inequality over the full index set:
//   |K|^lambda <= prod_i |P_{span sigma_i} K|   (sigma must equal [n]).
// Here the projections keep each part's coordinates.  Exact.
CheckReport bt_check(const AntiBlockingBody& K, const UniformCover& c);
CheckReport bt_check(const VPolytope& K, const UniformCover& c);

// Splitting bound for Minkowski sums of anti-blocking bodies:
//   |A_1 + ... + A_r| <= sum over ordered splittings (sigma_1,...,sigma_r)
//   of [n] of prod_i |P_{span sigma_i} A_i|,
// each coordinate assigned to exactly one part and body i projected onto the
// span of its own part.  Exact.  Guard: r^n <= 2^20.
CheckReport sum_split_check(const std::vector<AntiBlockingBody>& bodies);

} // namespace abgeo
