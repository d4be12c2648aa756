#include "abgeo/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace abgeo {

Rat binom_exact(long n, long k) {
    if (n < 0 || k < 0 || k > n) return Rat(0);
    if (k > n - k) k = n - k;
    Int num = 1, den = 1;
    for (long i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return Rat(num, den);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    return std::lgamma(x);
}

double gen_binom(double x, double y) {
    if (!(x + 1.0 > 0.0) || !(y + 1.0 > 0.0) || !(x - y + 1.0 > 0.0))
        throw std::domain_error("gen_binom: arguments outside Gamma domain");
    return std::exp(log_gamma(x + 1.0) - log_gamma(y + 1.0) - log_gamma(x - y + 1.0));
}

double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma: requires x > 0");
    double acc = 0.0;
    // psi(x) = psi(x + m) - sum 1/(x+i); shift until the asymptotic series below
    // has its first omitted term under 1e-15.
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    // Bernoulli-number tail: ln z - 1/(2z) - sum B_{2k} / (2k z^{2k}).
    double series = -inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 * (1.0 / 12)))))));
    return acc + std::log(x) - 0.5 * inv + series;
}

} // namespace abgeo
