#include "abgeo/bodies.hpp"

#include <algorithm>
#include <stdexcept>

#include "abgeo/hull.hpp"
#include "abgeo/lp.hpp"
#include "abgeo/rng.hpp"

namespace abgeo {

namespace {

// x <= some convex combination of the rows of gens, all weights >= 0.
bool in_down_hull(const RVec& x, const RMat& gens) {
    if (gens.empty()) return false;
    const size_t m = gens.size();
    const size_t n = x.size();
    RMat a(n + 1, RVec(m));
    std::vector<Sense> senses(n + 1, Sense::GE);
    RVec b(n + 1);
    for (size_t c = 0; c < n; ++c) {
        for (size_t j = 0; j < m; ++j) a[c][j] = gens[j][c];
        b[c] = x[c];
    }
    for (size_t j = 0; j < m; ++j) a[n][j] = 1;
    senses[n] = Sense::EQ;
    b[n] = 1;
    return lp_feasible(a, senses, b);
}

void check_dims(int n, const RMat& pts, const char* who) {
    for (const RVec& p : pts)
        if ((int)p.size() != n) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

} // namespace

AntiBlockingBody make_antiblocking(int n, RMat generators) {
    if (n < 1) throw std::invalid_argument("make_antiblocking: dimension must be positive");
    if (generators.empty()) throw std::invalid_argument("make_antiblocking: generator list is empty");
    check_dims(n, generators, "make_antiblocking");
    for (const RVec& g : generators)
        for (const Rat& x : g)
            if (x < 0) throw std::invalid_argument("make_antiblocking: negative coordinate");
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    // One pass suffices: survivors were tested against supersets of the final
    // set, and removals never shrink the represented body.
    for (size_t i = 0; i < generators.size() && generators.size() > 1;) {
        RMat others;
        others.reserve(generators.size() - 1);
        for (size_t j = 0; j < generators.size(); ++j)
            if (j != i) others.push_back(generators[j]);
        if (in_down_hull(generators[i], others))
            generators.erase(generators.begin() + (long)i);
        else
            ++i;
    }
    return AntiBlockingBody{n, std::move(generators)};
}

AntiBlockingBody ab_box(const RVec& sides) {
    for (const Rat& s : sides)
        if (s <= 0) throw std::invalid_argument("ab_box: side lengths must be positive");
    return make_antiblocking((int)sides.size(), {sides});
}

AntiBlockingBody ab_simplex(const RVec& sides) {
    const int n = (int)sides.size();
    for (const Rat& s : sides)
        if (s <= 0) throw std::invalid_argument("ab_simplex: side lengths must be positive");
    RMat gens;
    for (int i = 0; i < n; ++i) {
        RVec g(n, Rat(0));
        g[i] = sides[i];
        gens.push_back(std::move(g));
    }
    return make_antiblocking(n, std::move(gens));
}

AntiBlockingBody hanner_pos(int n, const std::vector<int>& sigma) {
    if (n < 1) throw std::invalid_argument("hanner_pos: dimension must be positive");
    std::vector<char> in(n, 0);
    for (int i : sigma) {
        if (i < 0 || i >= n) throw std::invalid_argument("hanner_pos: index out of range");
        in[i] = 1;
    }
    RVec a(n), b(n);
    for (int i = 0; i < n; ++i) {
        a[i] = in[i] ? 1 : 0;
        b[i] = in[i] ? 0 : 1;
    }
    return make_antiblocking(n, {a, b});
}

AntiBlockingBody ab_subcube(const CoordSubspace& E, const Rat& side) {
    if (side <= 0) throw std::invalid_argument("ab_subcube: side length must be positive");
    RVec g(E.ambient, Rat(0));
    for (int i : E.coords) g[i] = side;
    return make_antiblocking(E.ambient, {std::move(g)});
}

AntiBlockingBody project(const AntiBlockingBody& K, const CoordSubspace& E) {
    if (E.ambient != K.n) throw std::invalid_argument("project: ambient dimension mismatch");
    if (E.dim() == 0) throw std::invalid_argument("project: empty subspace");
    RMat gens;
    gens.reserve(K.gens.size());
    for (const RVec& g : K.gens) {
        RVec q;
        q.reserve(E.dim());
        for (int i : E.coords) q.push_back(g[i]);
        gens.push_back(std::move(q));
    }
    return make_antiblocking(E.dim(), std::move(gens));
}

AntiBlockingBody minkowski_sum(const AntiBlockingBody& A, const AntiBlockingBody& B) {
    if (A.n != B.n) throw std::invalid_argument("minkowski_sum: dimension mismatch");
    RMat gens;
    gens.reserve(A.gens.size() * B.gens.size());
    for (const RVec& u : A.gens)
        for (const RVec& w : B.gens) {
            RVec s(A.n);
            for (int i = 0; i < A.n; ++i) s[i] = u[i] + w[i];
            gens.push_back(std::move(s));
        }
    return make_antiblocking(A.n, std::move(gens));
}

AntiBlockingBody scale(const AntiBlockingBody& K, const Rat& t) {
    if (t < 0) throw std::invalid_argument("scale: negative factor");
    if (t == 0) return AntiBlockingBody{K.n, {RVec(K.n, Rat(0))}};
    RMat gens = K.gens;
    for (RVec& g : gens)
        for (Rat& x : g) x *= t;
    return AntiBlockingBody{K.n, std::move(gens)};
}

VPolytope make_vpolytope(int n, RMat points) {
    if (points.empty()) throw std::invalid_argument("make_vpolytope: point list is empty");
    check_dims(n, points, "make_vpolytope");
    VPolytope P;
    P.n = n;
    P.verts = extreme_points(n, std::move(points));
    P.affine_dim = affine_rank(P.verts);
    return P;
}

VPolytope vertex_orbit(const AntiBlockingBody& K) {
    if (K.n > 16) throw std::length_error("vertex_orbit: dimension too large for mask orbit");
    RMat cand;
    cand.reserve(K.gens.size() << K.n);
    for (const RVec& g : K.gens)
        for (uint32_t mask = 0; mask < (uint32_t{1} << K.n); ++mask) {
            RVec v(K.n, Rat(0));
            for (int i = 0; i < K.n; ++i)
                if (mask >> i & 1) v[i] = g[i];
            cand.push_back(std::move(v));
        }
    return make_vpolytope(K.n, std::move(cand));
}

VPolytope project(const VPolytope& P, const CoordSubspace& E) {
    if (E.ambient != P.n) throw std::invalid_argument("project: ambient dimension mismatch");
    if (E.dim() == 0) throw std::invalid_argument("project: empty subspace");
    RMat pts;
    pts.reserve(P.verts.size());
    for (const RVec& v : P.verts) {
        RVec q;
        q.reserve(E.dim());
        for (int i : E.coords) q.push_back(v[i]);
        pts.push_back(std::move(q));
    }
    return make_vpolytope(E.dim(), std::move(pts));
}

VPolytope minkowski_sum(const VPolytope& A, const VPolytope& B) {
    if (A.n != B.n) throw std::invalid_argument("minkowski_sum: dimension mismatch");
    RMat cand;
    cand.reserve(A.verts.size() * B.verts.size());
    for (const RVec& u : A.verts)
        for (const RVec& w : B.verts) {
            RVec s(A.n);
            for (int i = 0; i < A.n; ++i) s[i] = u[i] + w[i];
            cand.push_back(std::move(s));
        }
    return make_vpolytope(A.n, std::move(cand));
}

VPolytope reflect(const VPolytope& P, const std::vector<int>& signs) {
    if ((int)signs.size() != P.n) throw std::invalid_argument("reflect: sign vector length mismatch");
    for (int s : signs)
        if (s != 1 && s != -1) throw std::invalid_argument("reflect: signs must be +1 or -1");
    VPolytope out = P;
    for (RVec& v : out.verts)
        for (int i = 0; i < P.n; ++i)
            if (signs[i] < 0) v[i] = -v[i];
    std::sort(out.verts.begin(), out.verts.end());
    return out;
}

VPolytope reflect(const AntiBlockingBody& K, const std::vector<int>& signs) {
    return reflect(vertex_orbit(K), signs);
}

VPolytope negate(const VPolytope& P) {
    return reflect(P, std::vector<int>(P.n, -1));
}

VPolytope negate(const AntiBlockingBody& K) {
    return negate(vertex_orbit(K));
}

VPolytope sign_orbit(const AntiBlockingBody& K) {
    if (K.n > 8) throw std::length_error("sign_orbit: ambient dimension capped at 8");
    const VPolytope base = vertex_orbit(K);
    RMat pts;
    for (unsigned mask = 0; mask < (1u << K.n); ++mask) {
        std::vector<int> signs(K.n, 1);
        for (int j = 0; j < K.n; ++j)
            if (mask & (1u << j)) signs[j] = -1;
        const VPolytope image = reflect(base, signs);
        pts.insert(pts.end(), image.verts.begin(), image.verts.end());
    }
    return make_vpolytope(K.n, std::move(pts));
}

bool contains(const AntiBlockingBody& K, const RVec& x) {
    if ((int)x.size() != K.n) throw std::invalid_argument("contains: dimension mismatch");
    for (const Rat& xi : x)
        if (xi < 0) return false;
    return in_down_hull(x, K.gens);
}

bool contains(const VPolytope& P, const RVec& x) {
    if ((int)x.size() != P.n) throw std::invalid_argument("contains: dimension mismatch");
    const size_t m = P.verts.size();
    RMat a(P.n + 1, RVec(m));
    std::vector<Sense> senses(P.n + 1, Sense::EQ);
    RVec b(P.n + 1);
    for (int c = 0; c < P.n; ++c) {
        for (size_t j = 0; j < m; ++j) a[c][j] = P.verts[j][c];
        b[c] = x[c];
    }
    for (size_t j = 0; j < m; ++j) a[P.n][j] = 1;
    b[P.n] = 1;
    return lp_feasible(a, senses, b);
}

Rat support(const VPolytope& P, const RVec& u) {
    if ((int)u.size() != P.n) throw std::invalid_argument("support: dimension mismatch");
    Rat best = dot(u, P.verts[0]);
    for (const RVec& v : P.verts) best = std::max(best, dot(u, v));
    return best;
}

bool antiblocking_check(const VPolytope& P, int directions, uint64_t seed) {
    const int n = P.n;
    const size_t m = P.verts.size();
    Rng rng(seed);
    for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
        std::vector<int> inside;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) inside.push_back(i);

        // Section constraints: convex weights whose combination vanishes on
        // the complement of E.
        std::vector<int> outside;
        for (int i = 0; i < n; ++i)
            if (!(mask >> i & 1)) outside.push_back(i);
        RMat a(outside.size() + 1, RVec(m));
        std::vector<Sense> senses(outside.size() + 1, Sense::EQ);
        RVec b(outside.size() + 1, Rat(0));
        for (size_t r = 0; r < outside.size(); ++r)
            for (size_t j = 0; j < m; ++j) a[r][j] = P.verts[j][outside[r]];
        for (size_t j = 0; j < m; ++j) a[outside.size()][j] = 1;
        b[outside.size()] = 1;

        auto test_direction = [&](const RVec& u) {
            RVec w(m);
            for (size_t j = 0; j < m; ++j) w[j] = dot(u, P.verts[j]);
            Rat proj = w[0];
            for (const Rat& wj : w) proj = std::max(proj, wj);
            LpResult sec = lp_maximize(a, senses, b, w);
            return sec.optimal() && sec.value == proj;
        };

        if (inside.empty()) {
            if (!test_direction(RVec(n, Rat(0)))) return false;
            continue;
        }
        for (int i : inside) {
            RVec u(n, Rat(0));
            u[i] = 1;
            if (!test_direction(u)) return false;
            u[i] = -1;
            if (!test_direction(u)) return false;
        }
        for (int d = 0; d < directions; ++d) {
            RVec u(n, Rat(0));
            for (int i : inside) u[i] = rng.next_signed_dyadic();
            if (!test_direction(u)) return false;
        }
    }
    return true;
}

} // namespace abgeo
