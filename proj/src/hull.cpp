#include "abgeo/hull.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace abgeo {

namespace {

// Scale a rational vector to a primitive integer vector pointing the same way.
RVec primitive_vec(const RVec& v) {
    Int den = 1;
    for (const Rat& x : v) den = lcm(den, denominator(x));
    std::vector<Int> w;
    w.reserve(v.size());
    Int g = 0;
    for (const Rat& x : v) {
        Int t = numerator(x) * (den / denominator(x));
        w.push_back(t);
        g = gcd(g, t < 0 ? Int(-t) : t);
    }
    if (g == 0) g = 1;
    RVec out;
    out.reserve(v.size());
    for (const Int& t : w) out.emplace_back(Rat(t / g));
    return out;
}

void dedupe_sorted(RMat& pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

using Bits = std::vector<uint64_t>;

struct Ray {
    RVec z;
    Bits tight;
};

size_t popcount_and(const Bits& a, const Bits& b) {
    size_t n = 0;
    for (size_t i = 0; i < a.size(); ++i) n += std::popcount(a[i] & b[i]);
    return n;
}

bool covers_and(const Bits& big, const Bits& a, const Bits& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t t = a[i] & b[i];
        if ((big[i] & t) != t) return false;
    }
    return true;
}

} // namespace

HRep facet_enum(int dim, const RMat& points) {
    if (dim < 1) throw std::invalid_argument("facet_enum: dimension must be positive");
    RMat pts = points;
    for (const RVec& p : pts)
        if ((int)p.size() != dim) throw std::invalid_argument("facet_enum: point dimension mismatch");
    dedupe_sorted(pts);
    if (affine_rank(pts) != dim)
        throw std::invalid_argument("facet_enum: point set is not full-dimensional");

    RVec c(dim, Rat(0));
    for (const RVec& p : pts)
        for (int i = 0; i < dim; ++i) c[i] += p[i];
    for (int i = 0; i < dim; ++i) c[i] /= (long)pts.size();

    // Dualize: rays z = (r0, y) of {z : row . z >= 0 for all rows (1, c - p)}
    // correspond to valid inequalities y.x <= r0 + y.c on the hull, and the
    // extreme rays are exactly the facets since c is interior.
    const int d = dim + 1;
    RMat rows;
    rows.reserve(pts.size());
    for (const RVec& p : pts) {
        RVec row(d);
        row[0] = 1;
        for (int i = 0; i < dim; ++i) row[i + 1] = c[i] - p[i];
        rows.push_back(primitive_vec(row));
    }

    // Start from d independent rows; their simplicial cone has the inverse's
    // columns as extreme rays.
    std::vector<size_t> order;
    {
        RMat sel;
        std::vector<char> used(rows.size(), 0);
        for (size_t i = 0; i < rows.size() && (int)sel.size() < d; ++i) {
            sel.push_back(rows[i]);
            if (mat_rank(sel) == (int)sel.size()) {
                order.push_back(i);
                used[i] = 1;
            } else {
                sel.pop_back();
            }
        }
        if ((int)order.size() != d)
            throw std::logic_error("facet_enum: lost rank after full-dimension check");
        for (size_t i = 0; i < rows.size(); ++i)
            if (!used[i]) order.push_back(i);
    }

    const size_t words = (rows.size() + 63) / 64;
    auto compute_tight = [&](const RVec& z, size_t nproc) {
        Bits t(words, 0);
        for (size_t j = 0; j < nproc; ++j)
            if (dot(rows[order[j]], z) == 0) t[j >> 6] |= uint64_t(1) << (j & 63);
        return t;
    };

    std::vector<Ray> rays;
    {
        RMat basis(d, RVec(d));
        for (int r = 0; r < d; ++r) basis[r] = rows[order[r]];
        RMat inv = mat_inverse(basis);
        for (int k = 0; k < d; ++k) {
            RVec z(d);
            for (int r = 0; r < d; ++r) z[r] = inv[r][k];
            z = primitive_vec(z);
            rays.push_back(Ray{z, compute_tight(z, d)});
        }
    }

    for (size_t m = d; m < order.size(); ++m) {
        const RVec& a = rows[order[m]];
        std::vector<Rat> s(rays.size());
        bool any_neg = false;
        for (size_t r = 0; r < rays.size(); ++r) {
            s[r] = dot(a, rays[r].z);
            if (s[r] < 0) any_neg = true;
        }
        if (!any_neg) {
            for (size_t r = 0; r < rays.size(); ++r)
                if (s[r] == 0) rays[r].tight[m >> 6] |= uint64_t(1) << (m & 63);
            continue;
        }
        std::vector<size_t> plus, minus;
        std::vector<Ray> next;
        for (size_t r = 0; r < rays.size(); ++r) {
            if (s[r] > 0) plus.push_back(r);
            else if (s[r] < 0) minus.push_back(r);
            if (s[r] >= 0) {
                Ray kept = rays[r];
                if (s[r] == 0) kept.tight[m >> 6] |= uint64_t(1) << (m & 63);
                next.push_back(std::move(kept));
            }
        }
        for (size_t ip : plus) {
            for (size_t im : minus) {
                if (popcount_and(rays[ip].tight, rays[im].tight) + 1 < (size_t)d - 1)
                    continue;
                bool blocked = false;
                for (size_t k = 0; k < rays.size() && !blocked; ++k) {
                    if (k == ip || k == im) continue;
                    if (covers_and(rays[k].tight, rays[ip].tight, rays[im].tight))
                        blocked = true;
                }
                if (blocked) continue;
                RVec z(d);
                for (int i = 0; i < d; ++i)
                    z[i] = s[ip] * rays[im].z[i] - s[im] * rays[ip].z[i];
                z = primitive_vec(z);
                next.push_back(Ray{z, compute_tight(z, m + 1)});
            }
        }
        rays.swap(next);
    }

    RMat facets;
    facets.reserve(rays.size());
    for (const Ray& ray : rays) {
        if (!(ray.z[0] > 0))
            throw std::logic_error("facet_enum: unbounded dual ray on a point hull");
        RVec ab(dim + 1);
        Rat b = ray.z[0];
        for (int i = 0; i < dim; ++i) {
            ab[i] = ray.z[i + 1];
            b += ray.z[i + 1] * c[i];
        }
        ab[dim] = b;
        facets.push_back(primitive_vec(ab));
    }
    std::sort(facets.begin(), facets.end());

    HRep h;
    h.dim = dim;
    for (RVec& f : facets) {
        h.offsets.push_back(f[dim]);
        f.pop_back();
        h.normals.push_back(std::move(f));
    }
    return h;
}

namespace {

std::map<std::string, Rat>& volume_cache() {
    static std::map<std::string, Rat> cache;
    return cache;
}
std::mutex g_cache_mutex;

std::string cache_key(int dim, const RMat& pts) {
    std::ostringstream os;
    os << dim << '#';
    for (const RVec& p : pts) {
        for (const Rat& x : p) os << rat_to_string(x) << ',';
        os << ';';
    }
    return os.str();
}

} // namespace

Rat exact_volume_points(int dim, RMat pts) {
    if (dim < 0) throw std::invalid_argument("exact_volume_points: negative dimension");
    if (pts.empty()) return 0;
    for (const RVec& p : pts)
        if ((int)p.size() != dim)
            throw std::invalid_argument("exact_volume_points: point dimension mismatch");
    if (dim == 0) return 1;
    dedupe_sorted(pts);
    if (dim == 1) {
        Rat lo = pts.front()[0], hi = lo;
        for (const RVec& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return hi - lo;
    }
    if (dim > 8 || pts.size() > 20000)
        throw std::length_error("exact_volume_points: instance too large for exact hull volume");
    if (affine_rank(pts) < dim) return 0;

    const std::string key = cache_key(dim, pts);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = volume_cache().find(key);
        if (it != volume_cache().end()) return it->second;
    }

    RVec c(dim, Rat(0));
    for (const RVec& p : pts)
        for (int i = 0; i < dim; ++i) c[i] += p[i];
    for (int i = 0; i < dim; ++i) c[i] /= (long)pts.size();

    // Sum pyramid volumes from the centroid over each facet; the facet's own
    // volume is taken as a graph over the coordinate plane that drops the
    // largest normal component.
    HRep h = facet_enum(dim, pts);
    Rat total = 0;
    for (size_t f = 0; f < h.size(); ++f) {
        const RVec& a = h.normals[f];
        const Rat& b = h.offsets[f];
        int drop = 0;
        Rat best = abs(a[0]);
        for (int i = 1; i < dim; ++i) {
            Rat cur = abs(a[i]);
            if (cur > best) {
                best = cur;
                drop = i;
            }
        }
        RMat shadow;
        for (const RVec& p : pts) {
            if (dot(a, p) != b) continue;
            RVec q;
            q.reserve(dim - 1);
            for (int i = 0; i < dim; ++i)
                if (i != drop) q.push_back(p[i]);
            shadow.push_back(std::move(q));
        }
        Rat base = exact_volume_points(dim - 1, std::move(shadow));
        total += (b - dot(a, c)) * base / (best * dim);
    }

    std::lock_guard<std::mutex> lock(g_cache_mutex);
    volume_cache().emplace(key, total);
    return total;
}

RMat extreme_points(int dim, RMat candidates) {
    for (const RVec& p : candidates)
        if ((int)p.size() != dim)
            throw std::invalid_argument("extreme_points: point dimension mismatch");
    if (candidates.empty()) return {};
    dedupe_sorted(candidates);
    if (candidates.size() == 1) return candidates;

    // Coordinates that are constant across the set carry no facial structure;
    // drop them and work in the span of the rest.
    std::vector<int> keep;
    for (int i = 0; i < dim; ++i) {
        bool varies = false;
        for (const RVec& p : candidates)
            if (p[i] != candidates[0][i]) {
                varies = true;
                break;
            }
        if (varies) keep.push_back(i);
    }
    const int sub = (int)keep.size();
    RMat reduced;
    reduced.reserve(candidates.size());
    for (const RVec& p : candidates) {
        RVec q;
        q.reserve(sub);
        for (int i : keep) q.push_back(p[i]);
        reduced.push_back(std::move(q));
    }
    if (affine_rank(reduced) != sub)
        throw std::invalid_argument("extreme_points: degenerate point set is not axis-aligned");

    HRep h = facet_enum(sub, reduced);
    RMat out;
    for (size_t idx = 0; idx < reduced.size(); ++idx) {
        RMat tight;
        for (size_t f = 0; f < h.size(); ++f)
            if (dot(h.normals[f], reduced[idx]) == h.offsets[f])
                tight.push_back(h.normals[f]);
        if (mat_rank(tight) == sub) out.push_back(candidates[idx]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace abgeo
