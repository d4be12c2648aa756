#pragma once

#include "abgeo/rational.hpp"

namespace abgeo {

// binom(n, k) as an exact rational; 0 whenever (n, k) is outside the triangle.
Rat binom_exact(long n, long k);

// log Gamma(x) for x > 0.  Throws std::domain_error otherwise.
double log_gamma(double x);

// Generalized binomial coefficient Gamma(x+1) / (Gamma(y+1) Gamma(x-y+1)).
// Requires x+1 > 0, y+1 > 0 and x-y+1 > 0; throws std::domain_error otherwise.
double gen_binom(double x, double y);

// Digamma for x > 0 (upward recursion into an asymptotic tail).
// Absolute accuracy well below 1e-10 on the tested range.
double digamma(double x);

} // namespace abgeo
