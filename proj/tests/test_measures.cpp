#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abgeo/measures.hpp"
#include "abgeo/bodies.hpp"
#include "abgeo/covers.hpp"
#include "abgeo/lpsum.hpp"
#include "abgeo/rng.hpp"
#include "abgeo/volume.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

using namespace abgeo;

namespace {

std::vector<Rat> rv(std::initializer_list<double> xs) {
  std::vector<Rat> out;
  for (double x : xs) out.emplace_back(Rat(static_cast<long long>(x * 16), 16));
  return out;
}

AntiBlockingBody random_body(int n, int k, std::uint64_t seed) {
  Rng rng(seed, 0);
  std::vector<std::vector<Rat>> gens;
  for (int j = 0; j < k; ++j) {
    std::vector<Rat> g(n);
    for (int i = 0; i < n; ++i) g[i] = Rat(1, 4) + Rat(rng.next() % 49, 32);
    gens.push_back(g);
  }
  return make_antiblocking(n, gens);
}

}  // namespace

TEST_CASE("density kinds evaluate their closed forms") {
  CHECK(DensitySpec::flat().phi(3.7) == 1.0);
  CHECK(DensitySpec::flat().phi(-12.0) == 1.0);
  CHECK(DensitySpec::exponential(1.0).phi(2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(DensitySpec::exponential(0.5).phi(-4.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(DensitySpec::gaussian(0.5).phi(0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(DensitySpec::gaussian(2.0).phi(-2.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(DensitySpec::powerlaw(2.0).phi(1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(DensitySpec::powerlaw(3.0).phi(-1.0) == doctest::Approx(0.125).epsilon(1e-15));
  for (const DensitySpec& d : {DensitySpec::flat(), DensitySpec::exponential(1.0),
                               DensitySpec::gaussian(0.7), DensitySpec::powerlaw(2.5)}) {
    CHECK(d.phi(0.0) == 1.0);
  }
}

TEST_CASE("densities are even and non-increasing on |t|") {
  for (const DensitySpec& d : {DensitySpec::flat(), DensitySpec::exponential(2.0),
                               DensitySpec::gaussian(0.5), DensitySpec::powerlaw(1.5)}) {
    double prev = d.phi(0.0);
    CHECK(prev == 1.0);
    for (int k = 1; k <= 1000; ++k) {
      double t = 5.0 * static_cast<double>(k) / 1000.0;
      double cur = d.phi(t);
      CHECK(cur == d.phi(-t));
      CHECK(cur <= prev + 1e-15);
      CHECK(cur > 0.0);
      prev = cur;
    }
  }
}

TEST_CASE("density construction rejects bad parameters") {
  CHECK_THROWS_AS(DensitySpec::exponential(0.0), std::invalid_argument);
  CHECK_THROWS_AS(DensitySpec::exponential(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(DensitySpec::gaussian(0.0), std::invalid_argument);
  CHECK_THROWS_AS(DensitySpec::powerlaw(1.0), std::invalid_argument);
  CHECK_THROWS_AS(DensitySpec::powerlaw(0.5), std::invalid_argument);
}

TEST_CASE("one-sided cumulative integrals match hand values") {
  CHECK(DensitySpec::flat().cdf(2.5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(DensitySpec::exponential(1.0).cdf(1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(DensitySpec::exponential(2.0).cdf(0.5) ==
        doctest::Approx((1.0 - std::exp(-1.0)) / 2.0).epsilon(1e-15));
  // The half-line integral of exp(-t^2/(2 sigma^2)) is sigma * sqrt(pi/2).
  double sigma = 0.8;
  CHECK(DensitySpec::gaussian(sigma).cdf(12.0 * sigma) ==
        doctest::Approx(sigma * std::sqrt(std::atan(1.0) * 2.0)).epsilon(1e-12));
  CHECK(DensitySpec::powerlaw(2.0).cdf(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(DensitySpec::powerlaw(3.0).cdf(3.0) ==
        doctest::Approx((1.0 - 1.0 / 16.0) / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(DensitySpec::exponential(1.0).cdf(-0.1), std::invalid_argument);
}

TEST_CASE("product measure parser round-trips and validates") {
  ProductMeasure mu = parse_measure("exp:1,exp:1,gauss:0.5");
  CHECK(mu.n == 3);
  CHECK(mu.coords[0].kind == DensitySpec::Kind::exponential);
  CHECK(mu.coords[1].param == 1.0);
  CHECK(mu.coords[2].kind == DensitySpec::Kind::gaussian);
  CHECK(mu.coords[2].param == 0.5);
  CHECK(mu.str() == "exp:1,exp:1,gauss:0.5");

  ProductMeasure mixed = parse_measure("flat,powerlaw:2,exponential:0.25,gaussian:1.5");
  CHECK(mixed.n == 4);
  CHECK(mixed.coords[0].kind == DensitySpec::Kind::flat);
  CHECK(mixed.coords[1].kind == DensitySpec::Kind::powerlaw);
  CHECK(mixed.str() == "flat,pow:2,exp:0.25,gauss:1.5");
  CHECK(parse_measure(mixed.str()).str() == mixed.str());

  CHECK(ProductMeasure::flat(3).str() == "flat,flat,flat");
  CHECK_FALSE(parse_measure("exp:1,flat").is_flat());
  CHECK(parse_measure("flat,flat").is_flat());

  CHECK_THROWS_AS(parse_measure(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_measure("exp"), std::invalid_argument);
  CHECK_THROWS_AS(parse_measure("flat:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_measure("bogus:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_measure("exp:zero"), std::invalid_argument);
  CHECK_THROWS_AS(parse_measure("exp:1junk"), std::invalid_argument);
  CHECK_THROWS_AS(parse_measure("pow:1"), std::invalid_argument);
}

TEST_CASE("product density is unconditional in every coordinate") {
  ProductMeasure mu = parse_measure("exp:1,gauss:0.5,pow:2");
  Rng rng(99, 0);
  for (int trial = 0; trial < 64; ++trial) {
    std::vector<double> x(3), flipped(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = 3.0 * to_double(rng.next_signed_dyadic());
      flipped[i] = (rng.next() & 1) ? -x[i] : x[i];
    }
    CHECK(mu.phi(x) == mu.phi(flipped));
  }
  std::vector<double> origin(3, 0.0);
  CHECK(mu.phi(origin) == 1.0);
}

TEST_CASE("sub-measure keeps the selected coordinates in order") {
  ProductMeasure mu = parse_measure("exp:1,gauss:0.5,pow:2");
  ProductMeasure s = mu.sub(CoordSubspace{3, {0, 2}});
  CHECK(s.n == 2);
  CHECK(s.coords[0].kind == DensitySpec::Kind::exponential);
  CHECK(s.coords[1].kind == DensitySpec::Kind::powerlaw);
  CHECK_THROWS_AS(mu.sub(CoordSubspace{3, {}}), std::invalid_argument);
}

TEST_CASE("flat product measure reproduces Lebesgue volume") {
  for (std::uint64_t seed : {11ull, 12ull, 13ull, 14ull}) {
    for (int n : {2, 3}) {
      AntiBlockingBody K = random_body(n, 3, seed * 10 + static_cast<std::uint64_t>(n));
      ProductMeasure flat = ProductMeasure::flat(n);
      VolumeEstimate est = mu_mc(K, flat, 20000, 500 + seed);
      double exact = to_double(ab_volume(K));
      CHECK(std::abs(est.value - exact) <= 3.0 * est.std_err + 1e-12);
      // Same sampling stream as the plain Lebesgue estimator: values agree exactly.
      OracleBody O = oracle_of(K);
      VolumeEstimate plain = mc_volume(
          [&](const std::vector<double>& y) { return O.member(y, 1e-9); }, O.box, 20000,
          500 + seed);
      CHECK(est.value == plain.value);
      CHECK(est.std_err == doctest::Approx(plain.std_err).epsilon(1e-12));
    }
  }
}

TEST_CASE("exponential measure of the unit box matches the product of line integrals") {
  AntiBlockingBody box = make_antiblocking(2, {rv({1, 1})});
  ProductMeasure mu = parse_measure("exp:1,exp:1");
  double oracle = DensitySpec::exponential(1.0).cdf(1.0) * DensitySpec::exponential(1.0).cdf(1.0);
  CHECK(oracle == doctest::Approx(0.3996).epsilon(1e-3));
  VolumeEstimate est = mu_mc(box, mu, 100000, 31);
  CHECK(est.std_err > 0.0);
  CHECK(std::abs(est.value - oracle) <= 3.0 * est.std_err);

  // Rectangle with distinct densities per axis.
  AntiBlockingBody rect = make_antiblocking(2, {rv({1, 2})});
  ProductMeasure mixed = parse_measure("gauss:0.5,exp:2");
  double r_oracle = DensitySpec::gaussian(0.5).cdf(1.0) * DensitySpec::exponential(2.0).cdf(2.0);
  VolumeEstimate rest = mu_mc(rect, mixed, 100000, 32);
  CHECK(std::abs(rest.value - r_oracle) <= 3.0 * rest.std_err);
}

TEST_CASE("exponential measure of the standard simplex matches the closed form") {
  // Integrating e^{-x-y} over x,y >= 0, x+y <= 1 gives 1 - 2/e.
  AntiBlockingBody simplex = ab_simplex(rv({1, 1}));
  ProductMeasure mu = parse_measure("exp:1,exp:1");
  double oracle = 1.0 - 2.0 * std::exp(-1.0);
  CHECK(oracle == doctest::Approx(0.26424111765712).epsilon(1e-12));
  VolumeEstimate est = mu_mc(simplex, mu, 100000, 33);
  CHECK(std::abs(est.value - oracle) <= 3.0 * est.std_err);
}

TEST_CASE("projected measure uses the sub-measure of the kept coordinates") {
  AntiBlockingBody simplex = ab_simplex(rv({1, 1, 1}));
  ProductMeasure mu = parse_measure("exp:1,exp:1,exp:1");
  // The shadow of the 3-simplex on the first two coordinates is the 2-simplex.
  VolumeEstimate est = mu_project(simplex, CoordSubspace{3, {0, 1}}, mu, 100000, 41);
  double oracle = 1.0 - 2.0 * std::exp(-1.0);
  CHECK(std::abs(est.value - oracle) <= 3.0 * est.std_err);

  // Keeping every coordinate is the plain weighted volume.
  VolumeEstimate full = mu_project(simplex, CoordSubspace{3, {0, 1, 2}}, mu, 20000, 42);
  VolumeEstimate direct = mu_mc(simplex, mu, 20000, 42);
  CHECK(full.value == direct.value);

  // The zero-dimensional projection carries measure one by convention.
  VolumeEstimate none = mu_project(simplex, CoordSubspace{3, {}}, mu, 100, 43);
  CHECK(none.value == 1.0);
  CHECK(none.std_err == 0.0);
}

TEST_CASE("weighted estimates are deterministic in the seed") {
  AntiBlockingBody K = random_body(3, 4, 77);
  ProductMeasure mu = parse_measure("exp:1,gauss:1,pow:2");
  VolumeEstimate a = mu_mc(K, mu, 30000, 9);
  VolumeEstimate b = mu_mc(K, mu, 30000, 9);
  CHECK(a.value == b.value);
  CHECK(a.std_err == b.std_err);
  VolumeEstimate c = mu_mc(K, mu, 30000, 10);
  CHECK(a.value != c.value);
}

TEST_CASE("restricted projection inequality holds for product measures") {
  // mu(K)^lambda <= prod_i mu_i(P_i K) over lambda-uniform covers.
  UniformCover split;
  split.sigma = {0, 1, 2};
  split.parts = {{0, 1}, {2}};
  split.lambda = 1;
  UniformCover cyclic;
  cyclic.sigma = {0, 1, 2};
  cyclic.parts = {{0, 1}, {1, 2}, {0, 2}};
  cyclic.lambda = 2;

  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    AntiBlockingBody K = random_body(3, 3, 300 + seed);
    ProductMeasure mu = (seed % 2 == 0) ? parse_measure("exp:1,exp:1,exp:1")
                                        : parse_measure("exp:1,gauss:0.7,pow:2.5");
    for (const UniformCover& c : {split, cyclic}) {
      CheckReport r = mu_bt_check(K, c, mu, 20000, 900 + seed);
      CHECK(r.theorem_id == "measure.bt");
      CHECK(r.method == "mc");
      CHECK(r.pass);
      ++checked;
    }
  }
  CHECK(checked == 20);

  // Flat measures delegate to the exact Lebesgue comparison.
  AntiBlockingBody K = random_body(3, 3, 55);
  CheckReport flat = mu_bt_check(K, split, ProductMeasure::flat(3), 100, 1);
  CHECK(flat.theorem_id == "measure.bt");
  CHECK(flat.method == "exact");
  CHECK(flat.pass);
  CHECK(flat.instance.find("mu=flat,flat,flat") != std::string::npos);
}

TEST_CASE("restricted local inequality holds for unconditional and anti-blocking bodies") {
  UniformCover cover;
  cover.sigma = {0, 1};
  cover.parts = {{0}, {1}};
  cover.lambda = 1;

  // Unconditional polytopes via reflected anti-blocking generators.
  for (std::uint64_t seed : {401ull, 402ull, 403ull}) {
    AntiBlockingBody K = random_body(3, 3, seed);
    VPolytope U = sign_orbit(K);
    ProductMeasure mu = parse_measure("exp:0.8,exp:1,gauss:1");
    CheckReport r = mu_llw_check(U, cover, mu, 20000, seed);
    CHECK(r.theorem_id == "measure.llw");
    CHECK(r.constant > 0.0);
    CHECK(r.pass);
  }

  // Anti-blocking corollary form.
  for (std::uint64_t seed : {404ull, 405ull, 406ull}) {
    AntiBlockingBody K = random_body(3, 4, seed);
    ProductMeasure mu = parse_measure("exp:1,exp:1,pow:2");
    CheckReport r = mu_llw_check(K, cover, mu, 20000, seed);
    CHECK(r.theorem_id == "measure.llw");
    CHECK(r.pass);
  }

  // Flat delegation matches the exact restricted Loomis-Whitney check.
  AntiBlockingBody K = random_body(3, 3, 407);
  CheckReport flat = mu_llw_check(K, cover, ProductMeasure::flat(3), 10, 2);
  CHECK(flat.method == "exact");
  CHECK(flat.theorem_id == "measure.llw");
  CHECK(flat.pass);
}

TEST_CASE("projection ratio sum holds in the weighted setting") {
  AntiBlockingBody A = ab_simplex(rv({1, 1, 1}));
  AntiBlockingBody B = make_antiblocking(3, {rv({1, 1, 1})});
  CoordSubspace E{3, {0, 1}};
  ProductMeasure mu = parse_measure("exp:1,exp:1,exp:1");
  CheckReport r = mu_ratio_check(A, B, E, mu, 40000, 21);
  CHECK(r.theorem_id == "measure.proj.ratio-sum");
  CHECK(r.method == "mc");
  CHECK(r.constant == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(r.pass);

  // Flat delegation reproduces the exact Lebesgue ratio identity for A = B.
  CheckReport flat = mu_ratio_check(A, A, E, ProductMeasure::flat(3), 10, 3);
  CHECK(flat.method == "exact");
  CHECK(flat.theorem_id == "measure.proj.ratio-sum");
  CHECK(flat.pass);
  CHECK(flat.lhs == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(flat.rhs == doctest::Approx(40.0 / 27.0).epsilon(1e-12));
}

TEST_CASE("coordinate shifts do not increase the weighted volume") {
  AntiBlockingBody A = random_body(2, 3, 601);
  AntiBlockingBody B = random_body(2, 2, 602);
  ProductMeasure mu = parse_measure("exp:1,gauss:0.8");
  for (int axis : {0, 1}) {
    CheckReport r = mu_shift_check(A, B, axis, mu, 15000, 700 + axis);
    CHECK(r.theorem_id == "measure.steiner.shift");
    CHECK(r.method == "mc");
    CHECK(r.pass);
  }

  // Lebesgue measure is shift-invariant, so the flat case is an exact tie.
  CheckReport flat = mu_shift_check(A, B, 0, ProductMeasure::flat(2), 10, 4);
  CHECK(flat.method == "exact");
  CHECK(flat.pass);
  CHECK(flat.margin == 0.0);
  CHECK(flat.lhs == flat.rhs);
}

TEST_CASE("weighted sums are dominated by weighted differences") {
  // mu(A + B) <= mu(A - B) with A = B the standard triangle and exp(1) weights:
  // the left side integrates over 2*simplex, the right over the hexagonal difference.
  AntiBlockingBody T = ab_simplex(rv({1, 1}));
  ProductMeasure mu = parse_measure("exp:1,exp:1");
  CheckReport r = mu_diff_sum_check(T, T, mu, 60000, 51);
  CHECK(r.theorem_id == "measure.kleitman.reverse");
  CHECK(r.method == "mc");
  CHECK(r.pass);
  double lhs_oracle = 1.0 - 3.0 * std::exp(-2.0);  // integral of e^{-x-y} over x+y<=2
  CHECK(std::abs(r.lhs - lhs_oracle) <= 3.0 * r.lhs_stderr);
  CHECK(r.lhs < r.rhs);

  for (std::uint64_t seed : {502ull, 503ull}) {
    AntiBlockingBody A = random_body(2, 3, seed);
    AntiBlockingBody B = random_body(2, 2, seed + 50);
    CheckReport rr = mu_diff_sum_check(A, B, parse_measure("exp:1,gauss:1"), 30000, seed);
    CHECK(rr.pass);
  }

  // Flat delegation: the exact Lebesgue comparison with the measure recorded.
  CheckReport flat = mu_diff_sum_check(T, T, ProductMeasure::flat(2), 10, 5);
  CHECK(flat.method == "exact");
  CHECK(flat.theorem_id == "measure.kleitman.reverse");
  CHECK(flat.pass);
  CHECK(flat.instance.find("mu=flat,flat") != std::string::npos);
}

TEST_CASE("weighted sum-difference bound holds for several summands and signs") {
  AntiBlockingBody A = random_body(2, 3, 801);
  AntiBlockingBody B1 = random_body(2, 2, 802);
  AntiBlockingBody B2 = random_body(2, 2, 803);
  ProductMeasure mu = parse_measure("exp:1,exp:1");

  CheckReport both_minus = mu_plun_check(A, {B1, B2}, {-1, -1}, mu, 25000, 811);
  CHECK(both_minus.theorem_id == "measure.sum.diff-bound");
  CHECK(both_minus.pass);
  CHECK(both_minus.instance.find("signs=--") != std::string::npos);

  CheckReport mixed = mu_plun_check(A, {B1, B2}, {+1, -1}, mu, 25000, 812);
  CHECK(mixed.pass);
  CHECK(mixed.instance.find("signs=+-") != std::string::npos);

  CheckReport single = mu_plun_check(A, {B1}, {+1}, mu, 25000, 813);
  CHECK(single.constant == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(single.pass);

  // Flat, all-plus, equal bodies: |T| * |3T| = 0.5 * 4.5 against zeta * 3^2 = 9.
  AntiBlockingBody T = ab_simplex(rv({1, 1}));
  CheckReport flat = mu_plun_check(T, {T, T}, {+1, +1}, ProductMeasure::flat(2), 10, 6);
  CHECK(flat.method == "exact");
  CHECK(flat.pass);
  CHECK(flat.lhs == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(flat.rhs == doctest::Approx(9.0).epsilon(1e-12));

  CHECK_THROWS_AS(mu_plun_check(A, {B1, B2}, {1}, mu, 100, 7), std::invalid_argument);
  CHECK_THROWS_AS(mu_plun_check(A, {B1}, {2}, mu, 100, 7), std::invalid_argument);
  CHECK_THROWS_AS(mu_plun_check(A, {}, {}, mu, 100, 7), std::invalid_argument);
}
