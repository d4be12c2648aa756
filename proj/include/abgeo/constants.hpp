#pragma once

#include <optional>
#include <vector>

#include "abgeo/covers.hpp"
#include "abgeo/lp_param.hpp"
#include "abgeo/rational.hpp"

namespace abgeo {

// Value of a sharp constant.  `exact` is present whenever the value is a
// rational number (always for the purely combinatorial constants, and at the
// endpoint exponents for the Gamma-weighted ones); `approx` always carries
// the double value.  `argmax` holds the lexicographically smallest maximizing
// tuple for grid-maximized constants and is empty otherwise.
struct ConstantResult {
    std::optional<Rat> exact;
    double approx = 0;
    std::vector<int> argmax;
};

// d_{n,m}(alpha) = prod_i binom(alpha_i, N) / binom(n, N)^(m-1) with
// N = sum_i alpha_i - n(m-1).  Requires 0 <= alpha_i <= n for all i and
// N >= 0 (otherwise the tuple is not a valid cover-dimension vector).
Rat d_nm(int n, const std::vector<int>& alphas);

// Sharp constant of the iterated difference-body inequality: the maximum of
// d_{n,m} over the full tuple grid.  For m = 2 the result is cross-checked
// against the three-case closed form (hard failure on mismatch).
// Tuple grids with m >= 4 are capped at n <= 12.
ConstantResult zeta(int n, int m);

// Sharp constant of the projection-ratio inequality: max over j of
// d_{n,2}(i, j).  Cross-checked against the two-case closed form.
// Requires 1 <= i <= n-1.
ConstantResult r_const(int n, int i);

// Sharp constant of the Firey-sum projection-ratio inequality:
//   max_j d_{n,2}(i,j) * G(i+j-n) G(n) / (G(i) G(j)),  G(x) = Gamma(1+x/q),
// skipping j with i + j < n (outside d's domain).  Exact at p = 1 and
// p = inf.  Requires 1 <= i <= n-1.
ConstantResult nu_const(int n, const LpParam& p, int i);

// Sharp constant of the Firey-sum triple-product inequality: the same terms
// maximized over all pairs (i, j).  Asserts the sandwich
//   2/(e sqrt(pi n)) (4/3)^n <= b(n,p) <= 2^(n+1/2) / sqrt(pi n).
ConstantResult b_const(int n, const LpParam& p);

// Sharp constant of the Rogers-Shephard inequality for Firey differences:
//   kappa = sum_i gen_binom(n/q, i/q)^(-1) binom(n,i)^2.
// The argument is the conjugate exponent q itself (kind one means q = 1).
// Exact at q = 1 (2^n) and q = inf (binom(2n,n)); asserts
// 2^n <= kappa <= binom(2n,n).
ConstantResult kappa_const(int n, const LpParam& q);

// Sharp constant of the m-body Firey-difference product inequality:
//   max over tuples of d_{n,m} * G(N) G(n)^(m-1) / prod_i G(alpha_i).
// Coincides with zeta(n,m) at p = 1 and with b_const at m = 2.
// Tuple grids with m >= 4 are capped at n <= 12.
ConstantResult varrho_const(int n, int m, const LpParam& p);

// Sharp constant of the local Loomis-Whitney inequality for a cover:
//   prod_i binom(n - |sigma_i|, n - |sigma|) / binom(n, n - |sigma|)^(m-lambda).
Rat llw_const(int n, const UniformCover& cover);

} // namespace abgeo
