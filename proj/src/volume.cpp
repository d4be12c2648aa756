#include "abgeo/volume.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "abgeo/hull.hpp"
#include "abgeo/numerics.hpp"
#include "abgeo/rng.hpp"

namespace abgeo {

namespace {

constexpr int kShards = 64;

// Mask orbit of the generators; redundant points are fine downstream because
// the hull routines deduplicate and prune internally.
RMat down_orbit(int n, const RMat& gens) {
    if (n > 16) throw std::length_error("down_orbit: dimension beyond desk scale");
    RMat cand;
    cand.reserve(gens.size() << n);
    for (const RVec& g : gens)
        for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
            RVec v(n, Rat(0));
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) v[i] = g[i];
            cand.push_back(std::move(v));
        }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    return cand;
}

unsigned support_mask(const AntiBlockingBody& K) {
    unsigned m = 0;
    for (const RVec& g : K.gens)
        for (int i = 0; i < K.n; ++i)
            if (g[i] > 0) m |= 1u << i;
    return m;
}

std::vector<Rat> proj_volume_table(const AntiBlockingBody& K) {
    std::vector<Rat> table(size_t{1} << K.n);
    for (unsigned mask = 0; mask < table.size(); ++mask)
        table[mask] = ab_proj_volume(K, CoordSubspace::from_mask(K.n, mask));
    return table;
}

} // namespace

BBox bbox_of(const VPolytope& P) {
    BBox box{P.verts[0], P.verts[0]};
    for (const RVec& v : P.verts)
        for (int i = 0; i < P.n; ++i) {
            box.lo[i] = std::min(box.lo[i], v[i]);
            box.hi[i] = std::max(box.hi[i], v[i]);
        }
    return box;
}

BBox bbox_orthant(const RVec& hi) {
    return BBox{RVec(hi.size(), Rat(0)), hi};
}

Rat exact_volume(const VPolytope& P) {
    if (P.n > 6 || P.verts.size() > 4096)
        throw std::length_error("exact_volume: beyond desk-scale limits");
    return exact_volume_points(P.n, P.verts);
}

Rat exact_volume(const VPolytope& P, bool intrinsic) {
    if (!intrinsic || P.affine_dim == P.n) return exact_volume(P);
    if (P.affine_dim == 0) return 1;
    std::vector<int> keep;
    for (int i = 0; i < P.n; ++i)
        for (const RVec& v : P.verts)
            if (v[i] != P.verts[0][i]) {
                keep.push_back(i);
                break;
            }
    if ((int)keep.size() != P.affine_dim)
        throw std::invalid_argument("exact_volume: degenerate polytope is not axis-aligned");
    RMat reduced;
    reduced.reserve(P.verts.size());
    for (const RVec& v : P.verts) {
        RVec q;
        q.reserve(keep.size());
        for (int i : keep) q.push_back(v[i]);
        reduced.push_back(std::move(q));
    }
    if ((int)keep.size() > 6 || reduced.size() > 4096)
        throw std::length_error("exact_volume: beyond desk-scale limits");
    return exact_volume_points((int)keep.size(), std::move(reduced));
}

Rat ab_volume(const AntiBlockingBody& K) {
    if (K.n > 12) throw std::length_error("ab_volume: dimension beyond desk scale");
    return exact_volume_points(K.n, down_orbit(K.n, K.gens));
}

Rat ab_proj_volume(const AntiBlockingBody& K, const CoordSubspace& E) {
    if (E.ambient != K.n) throw std::invalid_argument("ab_proj_volume: ambient dimension mismatch");
    if (E.dim() == 0) return 1;
    if (E.dim() > 12) throw std::length_error("ab_proj_volume: dimension beyond desk scale");
    RMat restricted;
    restricted.reserve(K.gens.size());
    for (const RVec& g : K.gens) {
        RVec q;
        q.reserve(E.dim());
        for (int i : E.coords) q.push_back(g[i]);
        restricted.push_back(std::move(q));
    }
    return exact_volume_points(E.dim(), down_orbit(E.dim(), restricted));
}

VolumeEstimate mc_volume(const MemberFn& member, const BBox& box, long samples, uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("mc_volume: sample count must be positive");
    if (box.lo.size() != box.hi.size()) throw std::invalid_argument("mc_volume: malformed box");
    const int n = (int)box.hi.size();
    std::vector<double> lo(n), span(n);
    double boxvol = 1;
    for (int i = 0; i < n; ++i) {
        lo[i] = to_double(box.lo[i]);
        span[i] = to_double(box.hi[i]) - lo[i];
        boxvol *= span[i];
    }
    long hits = 0;
    std::vector<double> x(n);
    for (int shard = 0; shard < kShards; ++shard) {
        long count = samples / kShards + (shard < samples % kShards ? 1 : 0);
        Rng rng(seed, (uint64_t)shard);
        for (long s = 0; s < count; ++s) {
            for (int i = 0; i < n; ++i) x[i] = lo[i] + span[i] * rng.next_unit();
            if (member(x)) ++hits;
        }
    }
    double f = double(hits) / double(samples);
    VolumeEstimate est;
    est.value = boxvol * f;
    est.std_err = boxvol * std::sqrt(f * (1 - f) / double(samples));
    est.samples = samples;
    est.method = VolumeEstimate::Method::mc;
    est.seed = seed;
    return est;
}

Rat diff_volume_decomp(const AntiBlockingBody& A, const AntiBlockingBody& B) {
    if (A.n != B.n) throw std::invalid_argument("diff_volume_decomp: dimension mismatch");
    if (A.n > 12) throw std::length_error("diff_volume_decomp: dimension beyond desk scale");
    const unsigned full = (1u << A.n) - 1;
    Rat total = 0;
    for (unsigned mask = 0; mask <= full; ++mask) {
        Rat va = ab_proj_volume(A, CoordSubspace::from_mask(A.n, mask));
        if (va == 0) continue;
        total += va * ab_proj_volume(B, CoordSubspace::from_mask(A.n, full & ~mask));
    }
    return total;
}

Rat lp_diff_volume_exact(const AntiBlockingBody& A, const AntiBlockingBody& B, const LpParam& p) {
    if (A.n != B.n) throw std::invalid_argument("lp_diff_volume: dimension mismatch");
    if (A.n > 12) throw std::length_error("lp_diff_volume: dimension beyond desk scale");
    if (p.is_one()) return diff_volume_decomp(A, B);
    if (!p.is_inf())
        throw std::invalid_argument("lp_diff_volume_exact: rational evaluation needs p = 1 or p = inf");
    const unsigned full = (1u << A.n) - 1;
    std::vector<Rat> ta = proj_volume_table(A), tb = proj_volume_table(B);
    Rat total = 0;
    for (unsigned mask = 0; mask <= full; ++mask) {
        int i = std::popcount(mask);
        total += ta[mask] * tb[full & ~mask] / binom_exact(A.n, i);
    }
    return total;
}

double lp_diff_volume(const AntiBlockingBody& A, const AntiBlockingBody& B, const LpParam& p) {
    if (p.is_one() || p.is_inf()) return to_double(lp_diff_volume_exact(A, B, p));
    if (A.n != B.n) throw std::invalid_argument("lp_diff_volume: dimension mismatch");
    if (A.n > 12) throw std::length_error("lp_diff_volume: dimension beyond desk scale");
    const unsigned full = (1u << A.n) - 1;
    std::vector<Rat> ta = proj_volume_table(A), tb = proj_volume_table(B);
    const double q = p.q();
    double total = 0;
    for (unsigned mask = 0; mask <= full; ++mask) {
        int i = std::popcount(mask);
        double term = to_double(ta[mask]) * to_double(tb[full & ~mask]);
        total += term / gen_binom(A.n / q, i / q);
    }
    return total;
}

double direct_lp_sum_volume(const AntiBlockingBody& A, const AntiBlockingBody& B, const LpParam& p) {
    if (A.n != B.n) throw std::invalid_argument("direct_lp_sum_volume: dimension mismatch");
    const unsigned full = (1u << A.n) - 1;
    unsigned sa = support_mask(A), sb = support_mask(B);
    if ((sa & sb) != 0 || (sa | sb) != full)
        throw std::invalid_argument("direct_lp_sum_volume: supports are not complementary");
    CoordSubspace E = CoordSubspace::from_mask(A.n, sa);
    const int i = E.dim();
    double va = to_double(ab_proj_volume(A, E));
    double vb = to_double(ab_proj_volume(B, E.complement()));
    double coef;
    if (p.is_one())
        coef = 1;
    else if (p.is_inf())
        coef = 1.0 / to_double(binom_exact(A.n, i));
    else {
        double q = p.q();
        coef = 1.0 / gen_binom(A.n / q, i / q);
    }
    return coef * va * vb;
}

FacetsD facets_of(const HRep& h) {
    FacetsD F;
    F.n = h.dim;
    for (size_t f = 0; f < h.size(); ++f) {
        std::vector<double> row(h.dim);
        double scale = 0;
        for (int i = 0; i < h.dim; ++i) {
            row[i] = to_double(h.normals[f][i]);
            scale = std::max(scale, std::fabs(row[i]));
        }
        double off = to_double(h.offsets[f]);
        for (double& c : row) c /= scale;
        F.a.push_back(std::move(row));
        F.b.push_back(off / scale);
    }
    return F;
}

FacetsD ab_facets(const AntiBlockingBody& K) {
    return facets_of(facet_enum(K.n, down_orbit(K.n, K.gens)));
}

bool facets_member(const FacetsD& F, const std::vector<double>& x, double tol) {
    for (size_t f = 0; f < F.a.size(); ++f) {
        double s = 0;
        for (int i = 0; i < F.n; ++i) s += F.a[f][i] * x[i];
        if (s > F.b[f] + tol) return false;
    }
    return true;
}

bool facets_member(const FacetsD& F, const std::vector<double>& x) {
    return facets_member(F, x, 1e-9);
}

double facets_gauge(const FacetsD& F, const std::vector<double>& x) {
    double g = 0;
    for (size_t f = 0; f < F.a.size(); ++f) {
        double s = 0;
        for (int i = 0; i < F.n; ++i) s += F.a[f][i] * x[i];
        if (F.b[f] > 1e-12) g = std::max(g, s / F.b[f]);
        else if (s > 1e-12) return std::numeric_limits<double>::infinity();
    }
    return g;
}

CheckReport volint_identity_check(const AntiBlockingBody& K, double q, long samples, uint64_t seed) {
    if (!(q >= 1)) throw std::invalid_argument("volint_identity_check: q must be at least 1");
    if (samples < 1) throw std::invalid_argument("volint_identity_check: sample count must be positive");
    Rat vol = ab_volume(K);
    if (vol == 0) throw std::invalid_argument("volint_identity_check: body must be full-dimensional");
    FacetsD F = ab_facets(K);
    const int n = K.n;

    // Importance sampling with independent exponential coordinates.  K lies
    // inside the box spanned by hi, so the gauge dominates max_i x_i/hi[i]
    // and the weight exp(sum_i x_i/(2n hi[i]) - gauge^q) stays bounded for
    // every q >= 1.  Unbiased over all of R^n_+ -- no truncation.
    std::vector<double> hi(n, 0.0);
    for (const RVec& g : K.gens)
        for (int i = 0; i < n; ++i) hi[i] = std::max(hi[i], to_double(g[i]));
    const double stretch = 2.0 * double(n);
    double wbase = 1;
    for (double h : hi) wbase *= stretch * h;

    auto inside = [&](const std::vector<double>& x, double lam) {
        for (size_t f = 0; f < F.a.size(); ++f) {
            double s = 0;
            for (int i = 0; i < n; ++i) s += F.a[f][i] * x[i];
            if (s > lam * F.b[f] + 1e-12) return false;
        }
        return true;
    };
    auto gauge = [&](const std::vector<double>& x) {
        double top = 1;
        int guard = 0;
        while (!inside(x, top) && guard++ < 80) top *= 2;
        double bot = 0;
        for (int it = 0; it < 60; ++it) {
            double mid = (bot + top) / 2;
            if (inside(x, mid)) top = mid;
            else bot = mid;
        }
        return top;
    };

    double sum = 0, sum2 = 0;
    std::vector<double> x(n);
    for (int shard = 0; shard < kShards; ++shard) {
        long count = samples / kShards + (shard < samples % kShards ? 1 : 0);
        Rng rng(seed, (uint64_t)shard);
        for (long s = 0; s < count; ++s) {
            double expsum = 0;
            for (int i = 0; i < n; ++i) {
                double e = -std::log1p(-rng.next_unit());
                expsum += e;
                x[i] = stretch * hi[i] * e;
            }
            double w = wbase * std::exp(expsum - std::pow(gauge(x), q));
            sum += w;
            sum2 += w * w;
        }
    }
    double mean = sum / double(samples);
    double var = std::max(0.0, sum2 / double(samples) - mean * mean);
    double factor = 1.0 / std::tgamma(1.0 + double(n) / q);

    CheckReport r;
    r.theorem_id = "volint";
    std::ostringstream os;
    os << "n=" << n << " q=" << q << " samples=" << samples << " seed=" << seed;
    r.instance = os.str();
    r.lhs = to_double(vol);
    r.lhs_stderr = 0;
    r.rhs = factor * mean;
    r.rhs_stderr = factor * std::sqrt(var / double(samples));
    r.constant = 1;
    r.method = "mc";
    decide_two_sided(r);
    return r;
}

} // namespace abgeo
