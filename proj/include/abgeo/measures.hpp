#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abgeo/bodies.hpp"
#include "abgeo/covers.hpp"
#include "abgeo/lpsum.hpp"
#include "abgeo/report.hpp"
#include "abgeo/subspace.hpp"
#include "abgeo/volume.hpp"

namespace abgeo {

// One coordinate of a product measure: an even density t -> phi(|t|),
// non-increasing on [0, infinity), with phi(0) = 1.  Not normalized to mass
// one; the flat kind is Lebesgue measure itself.
struct DensitySpec {
    enum class Kind { flat, exponential, gaussian, powerlaw };
    Kind kind = Kind::flat;
    double param = 0;

    static DensitySpec flat();
    static DensitySpec exponential(double rate);  // exp(-rate |t|)
    static DensitySpec gaussian(double sigma);    // exp(-t^2 / (2 sigma^2))
    static DensitySpec powerlaw(double beta);     // (1 + |t|)^(-beta), beta > 1

    double phi(double t) const;
    // Closed-form integral of phi over [0, x], x >= 0.  Test oracle only, the
    // estimator never touches it.
    double cdf(double x) const;
    std::string str() const; // CLI token: "flat", "exp:1", "gauss:0.5", "pow:2"
};

// mu = tensor product of per-coordinate densities; sub-measures select
// coordinates in increasing order, matching coordinate projections.
struct ProductMeasure {
    int n = 0;
    std::vector<DensitySpec> coords;

    ProductMeasure() = default;
    explicit ProductMeasure(std::vector<DensitySpec> cs);

    static ProductMeasure flat(int n);  // Lebesgue measure on R^n

    double phi(const std::vector<double>& x) const;
    ProductMeasure sub(const CoordSubspace& E) const;
    bool is_flat() const;
    std::string str() const; // comma-joined tokens
};

// "exp:1,exp:1,gauss:0.5" -> three-coordinate measure.  Accepts the long kind
// names too (exponential/gaussian/powerlaw).
ProductMeasure parse_measure(const std::string& text);

// mu(K) by uniform box sampling weighted by the density; same 64-substream
// determinism contract as mc_volume.
VolumeEstimate mu_mc(const OracleBody& K, const ProductMeasure& mu, long samples, uint64_t seed);
VolumeEstimate mu_mc(const AntiBlockingBody& K, const ProductMeasure& mu, long samples,
                     uint64_t seed);
// mu_E(P_E K): the projection measured by the sub-measure of E's coordinates;
// the zero subspace has measure exactly 1.
VolumeEstimate mu_project(const AntiBlockingBody& K, const CoordSubspace& E,
                          const ProductMeasure& mu, long samples, uint64_t seed);

// The checks below evaluate both sides by weighted Monte Carlo and pass iff
// lhs <= rhs + 3 * combined stderr (delta-method propagation through powers,
// products, and ratios).  A fully flat measure delegates to the exact
// Lebesgue evaluation instead — no sampling.

// mu(K)^lambda <= prod_i mu_{sigma_i}(P_{span sigma_i} K), cover of [n].
CheckReport mu_bt_check(const AntiBlockingBody& K, const UniformCover& c, const ProductMeasure& mu,
                        long samples, uint64_t seed);
CheckReport mu_bt_check(const VPolytope& K, const UniformCover& c, const ProductMeasure& mu,
                        long samples, uint64_t seed);

// Local Loomis-Whitney with sub-measures, cover of sigma inside [n]:
//   mu(K)^(m-lambda) mu(P_{E_sigma} K)^lambda <= c prod_i mu(P_{E_sigma_i} K),
// each projection weighted by the sub-measure of its kept coordinates.
CheckReport mu_llw_check(const AntiBlockingBody& K, const UniformCover& c,
                         const ProductMeasure& mu, long samples, uint64_t seed);
CheckReport mu_llw_check(const VPolytope& K, const UniformCover& c, const ProductMeasure& mu,
                         long samples, uint64_t seed);

// mu(A)/mu(P_E A) + mu(B)/mu(P_E B) <= r_{n,i} mu(A-B)/mu(P_E(A-B)).
CheckReport mu_ratio_check(const AntiBlockingBody& A, const AntiBlockingBody& B,
                           const CoordSubspace& E, const ProductMeasure& mu, long samples,
                           uint64_t seed);

// mu(S_axis(A - B)) <= mu(A - B): the Steiner shift of a locally
// anti-blocking difference body never gains measure.
CheckReport mu_shift_check(const AntiBlockingBody& A, const AntiBlockingBody& B, int axis,
                           const ProductMeasure& mu, long samples, uint64_t seed);

// mu(A + B) <= mu(A - B).
CheckReport mu_diff_sum_check(const AntiBlockingBody& A, const AntiBlockingBody& B,
                              const ProductMeasure& mu, long samples, uint64_t seed);

// mu(A)^(m-1) mu(A +- B_1 ... +- B_m) <= zeta_{n,m} prod_i mu(A - B_i), the
// sign of each B_i given by the entries (+1/-1) of `signs`.
CheckReport mu_plun_check(const AntiBlockingBody& A, const std::vector<AntiBlockingBody>& Bs,
                          const std::vector<int>& signs, const ProductMeasure& mu, long samples,
                          uint64_t seed);

} // namespace abgeo
