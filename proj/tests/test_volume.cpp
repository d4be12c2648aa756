#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "abgeo/bodies.hpp"
#include "abgeo/rng.hpp"
#include "abgeo/volume.hpp"

using namespace abgeo;

namespace {

RVec rv(std::initializer_list<Rat> xs) { return RVec(xs); }

AntiBlockingBody random_body(int n, int k, Rng& rng) {
    RMat gens;
    for (int i = 0; i < k; ++i) {
        RVec g(n);
        for (Rat& x : g) x = rng.next_dyadic();
        gens.push_back(std::move(g));
    }
    return make_antiblocking(n, std::move(gens));
}

MemberFn ab_member(const AntiBlockingBody& K) {
    FacetsD F = ab_facets(K);
    return [F](const std::vector<double>& x) { return facets_member(F, x); };
}

} // namespace

TEST_CASE("exact volume and the intrinsic flag") {
    CHECK(exact_volume(vertex_orbit(ab_simplex(rv({1, 1, 1})))) == Rat(1, 6));
    CHECK(ab_volume(hanner_pos(4, {0, 1})) == Rat(1, 6));
    CHECK(ab_volume(ab_box(rv({2, 3}))) == 6);

    VPolytope hexagon = minkowski_sum(vertex_orbit(ab_simplex(rv({1, 1}))),
                                      negate(ab_simplex(rv({1, 1}))));
    CHECK(exact_volume(hexagon) == 3);

    VPolytope flat = vertex_orbit(ab_subcube(CoordSubspace(3, {0, 2}), 1));
    CHECK(exact_volume(flat) == 0);
    CHECK(exact_volume(flat, true) == 1);
    CHECK(exact_volume(flat, false) == 0);

    VPolytope skew;
    skew.n = 2;
    skew.verts = {rv({0, 0}), rv({1, 1})};
    skew.affine_dim = 1;
    CHECK(exact_volume(skew) == 0);
    CHECK_THROWS_AS(exact_volume(skew, true), std::invalid_argument);

    VPolytope point = make_vpolytope(2, {rv({Rat(1, 2), Rat(1, 3)})});
    CHECK(exact_volume(point, true) == 1);

    RMat big;
    big.push_back(RVec(7, Rat(0)));
    for (int i = 0; i < 7; ++i) {
        RVec e(7, Rat(0));
        e[i] = 1;
        big.push_back(e);
    }
    CHECK_THROWS_AS(exact_volume(make_vpolytope(7, big)), std::length_error);
}

TEST_CASE("volume scales like the dimension-th power") {
    Rng rng(31415);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + (int)(rng.next() % 3);
        AntiBlockingBody K = random_body(n, 2 + (int)(rng.next() % 2), rng);
        Rat t = rng.next_dyadic();
        Rat expected = ab_volume(K);
        for (int i = 0; i < n; ++i) expected *= t;
        CHECK(ab_volume(scale(K, t)) == expected);
    }
}

TEST_CASE("monte carlo volume") {
    AntiBlockingBody box = ab_box(rv({1, 1}));
    VolumeEstimate exact_box = mc_volume(ab_member(box), bbox_orthant(rv({1, 1})), 20000, 7);
    CHECK(exact_box.value == doctest::Approx(1.0));
    CHECK(exact_box.std_err == 0.0);

    AntiBlockingBody simplex = ab_simplex(rv({1, 1, 1}));
    VolumeEstimate s = mc_volume(ab_member(simplex), bbox_orthant(rv({1, 1, 1})), 1000000, 11);
    CHECK(std::fabs(s.value - 1.0 / 6.0) <= 3 * s.std_err);

    AntiBlockingBody h = hanner_pos(4, {0, 1});
    VolumeEstimate hv = mc_volume(ab_member(h), bbox_orthant(rv({1, 1, 1, 1})), 1000000, 13);
    CHECK(std::fabs(hv.value - 1.0 / 6.0) <= 3 * hv.std_err);

    // Determinism: same seed, same estimate.
    VolumeEstimate again = mc_volume(ab_member(simplex), bbox_orthant(rv({1, 1, 1})), 1000000, 11);
    CHECK(again.value == s.value);
}

TEST_CASE("monte carlo matches exact volume on random bodies") {
    Rng rng(2024);
    int misses = 0;
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + trial % 3;
        AntiBlockingBody K = random_body(n, 2 + (int)(rng.next() % 3), rng);
        double vol = to_double(ab_volume(K));
        RVec hi(n, Rat(0));
        for (const RVec& g : K.gens)
            for (int i = 0; i < n; ++i) hi[i] = std::max(hi[i], g[i]);
        VolumeEstimate est = mc_volume(ab_member(K), bbox_orthant(hi), 100000, 1000 + trial);
        if (std::fabs(est.value - vol) > 3 * est.std_err) ++misses;
    }
    CHECK(misses <= 1);
}

TEST_CASE("difference decomposition") {
    AntiBlockingBody tri = ab_simplex(rv({1, 1}));
    CHECK(diff_volume_decomp(tri, tri) == 3);

    AntiBlockingBody zero = make_antiblocking(2, {rv({0, 0})});
    Rng rng(5150);
    AntiBlockingBody A = random_body(2, 3, rng);
    CHECK(diff_volume_decomp(A, zero) == ab_volume(A));

    CHECK(diff_volume_decomp(tri, ab_box(rv({1, 1}))) == Rat(7, 2));

    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            AntiBlockingBody P = random_body(n, n == 4 ? 2 : 3, rng);
            AntiBlockingBody Q = random_body(n, 2, rng);
            Rat decomp = diff_volume_decomp(P, Q);
            VPolytope diff = minkowski_sum(vertex_orbit(P), negate(Q));
            CHECK(decomp == exact_volume(diff));
            CHECK(ab_volume(minkowski_sum(P, Q)) <= decomp);
        }
    }
}

TEST_CASE("firey decomposition weights") {
    Rng rng(808);
    for (int trial = 0; trial < 5; ++trial) {
        AntiBlockingBody A = random_body(3, 2, rng);
        AntiBlockingBody B = random_body(3, 2, rng);
        CHECK(lp_diff_volume_exact(A, B, LpParam::one()) == diff_volume_decomp(A, B));
    }

    AntiBlockingBody tri = ab_simplex(rv({1, 1}));
    double two_plus_pi_over_2 = (2.0 + std::acos(-1.0)) / 2.0;
    CHECK(lp_diff_volume(tri, tri, LpParam::finite(2)) ==
          doctest::Approx(two_plus_pi_over_2).epsilon(1e-12));

    AntiBlockingBody box = ab_box(rv({1, 1}));
    CHECK(lp_diff_volume_exact(box, box, LpParam::inf()) == 3);

    CHECK_THROWS_AS(lp_diff_volume_exact(tri, tri, LpParam::finite(2)), std::invalid_argument);
}

TEST_CASE("direct sums of orthogonal bodies") {
    AntiBlockingBody segx = ab_subcube(CoordSubspace(2, {0}), 1);
    AntiBlockingBody segy = ab_subcube(CoordSubspace(2, {1}), 1);
    CHECK(direct_lp_sum_volume(segx, segy, LpParam::one()) == doctest::Approx(1.0));
    CHECK(direct_lp_sum_volume(segx, segy, LpParam::inf()) == doctest::Approx(0.5));
    CHECK(direct_lp_sum_volume(segx, segy, LpParam::finite(2)) ==
          doctest::Approx(std::acos(-1.0) / 4).epsilon(1e-12));

    CHECK_THROWS_AS(direct_lp_sum_volume(segx, segx, LpParam::one()), std::invalid_argument);
    AntiBlockingBody segx3 = ab_subcube(CoordSubspace(3, {0}), 1);
    AntiBlockingBody segy3 = ab_subcube(CoordSubspace(3, {1}), 1);
    CHECK_THROWS_AS(direct_lp_sum_volume(segx3, segy3, LpParam::one()), std::invalid_argument);

    AntiBlockingBody planar = ab_subcube(CoordSubspace(3, {0, 1}), Rat(1, 2));
    AntiBlockingBody segz = ab_subcube(CoordSubspace(3, {2}), 2);
    CHECK(direct_lp_sum_volume(planar, segz, LpParam::one()) == doctest::Approx(0.5));
}

TEST_CASE("gauge integral identity") {
    CheckReport r1 = volint_identity_check(ab_box(rv({1, 1})), 1, 100000, 21);
    CHECK(r1.pass);
    CHECK(r1.method == "mc");
    CHECK(r1.lhs == doctest::Approx(1.0));

    CheckReport r2 = volint_identity_check(ab_simplex(rv({1, 1, 1})), 2, 100000, 22);
    CHECK(r2.pass);
    CHECK(r2.lhs == doctest::Approx(1.0 / 6.0));

    CheckReport r3 = volint_identity_check(ab_box(rv({2, 3})), 3, 100000, 23);
    CHECK(r3.pass);
    CHECK(r3.lhs == doctest::Approx(6.0));
}
