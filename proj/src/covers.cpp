#include "abgeo/covers.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "abgeo/constants.hpp"
#include "abgeo/volume.hpp"

namespace abgeo {

namespace {

bool sorted_unique(const std::vector<int>& v) {
    return std::is_sorted(v.begin(), v.end()) &&
           std::adjacent_find(v.begin(), v.end()) == v.end();
}

} // namespace

// Indices are 0-based in memory; reports and the CLI use 1-based labels.
std::string cover_instance(const UniformCover& c) {
    std::ostringstream out;
    out << "sigma=";
    for (size_t k = 0; k < c.sigma.size(); ++k)
        out << (k ? "," : "") << c.sigma[k] + 1;
    out << ";parts=";
    for (size_t i = 0; i < c.parts.size(); ++i) {
        if (i) out << "|";
        for (size_t k = 0; k < c.parts[i].size(); ++k)
            out << (k ? "," : "") << c.parts[i][k] + 1;
    }
    out << ";lambda=" << c.lambda;
    return out.str();
}

namespace {

Rat body_volume(const AntiBlockingBody& K) { return ab_volume(K); }
Rat body_volume(const VPolytope& P) { return exact_volume(P); }

// |P_E K| for E spanned by the listed coordinates, measure 1 on the zero
// subspace.
Rat keep_volume(const AntiBlockingBody& K, const std::vector<int>& keep) {
    return ab_proj_volume(K, CoordSubspace(K.n, keep));
}
Rat keep_volume(const VPolytope& P, const std::vector<int>& keep) {
    if (keep.empty()) return 1;
    if (static_cast<int>(keep.size()) == P.n) return exact_volume(P);
    return exact_volume(project(P, CoordSubspace(P.n, keep)));
}

// |P_{E_tau} K| where E_tau drops the coordinates of tau.
template <class Body>
Rat drop_volume(const Body& K, int n, const std::vector<int>& tau) {
    std::vector<int> keep;
    for (int j = 0; j < n; ++j)
        if (!std::binary_search(tau.begin(), tau.end(), j)) keep.push_back(j);
    return keep_volume(K, keep);
}

template <class Body>
CheckReport llw_check_impl(const Body& K, int n, const UniformCover& c) {
    const Rat constant = llw_const(n, c); // validates the cover against n
    const int m = static_cast<int>(c.parts.size());

    const Rat lhs = rat_pow(body_volume(K), m - c.lambda) *
                    rat_pow(drop_volume(K, n, c.sigma), c.lambda);
    Rat rhs = constant;
    for (const auto& part : c.parts) rhs *= drop_volume(K, n, part);

    CheckReport r;
    r.theorem_id = "cover.llw";
    r.instance = cover_instance(c);
    r.lhs = to_double(lhs);
    r.rhs = to_double(rhs);
    r.constant = to_double(constant);
    r.method = "exact";
    r.pass = lhs <= rhs;
    r.margin = to_double(rhs - lhs);
    return r;
}

template <class Body>
CheckReport bt_check_impl(const Body& K, int n, const UniformCover& c) {
    if (!validate_cover(c)) throw std::invalid_argument("bt_check: invalid cover");
    if (static_cast<int>(c.sigma.size()) != n ||
        (n > 0 && (c.sigma.front() != 0 || c.sigma.back() != n - 1)))
        throw std::invalid_argument("bt_check: cover must be over the full index set");

    const Rat lhs = rat_pow(body_volume(K), c.lambda);
    Rat rhs = 1;
    for (const auto& part : c.parts) rhs *= keep_volume(K, part);

    CheckReport r;
    r.theorem_id = "cover.bt";
    r.instance = cover_instance(c);
    r.lhs = to_double(lhs);
    r.rhs = to_double(rhs);
    r.method = "exact";
    r.pass = lhs <= rhs;
    r.margin = to_double(rhs - lhs);
    return r;
}

} // namespace

bool validate_cover(const UniformCover& c) {
    if (c.lambda < 1) return false;
    if (!sorted_unique(c.sigma)) return false;
    if (!c.sigma.empty() && c.sigma.front() < 0) return false;
    for (const auto& part : c.parts) {
        if (!sorted_unique(part)) return false;
        if (!std::includes(c.sigma.begin(), c.sigma.end(), part.begin(), part.end()))
            return false;
    }
    for (int j : c.sigma) {
        int count = 0;
        for (const auto& part : c.parts)
            if (std::binary_search(part.begin(), part.end(), j)) ++count;
        if (count != c.lambda) return false;
    }
    return true;
}

std::vector<UniformCover> enumerate_covers(const std::vector<int>& sigma, int m,
                                           int lambda, bool unordered) {
    if (m < 1 || lambda < 1)
        throw std::invalid_argument("enumerate_covers: need m >= 1 and lambda >= 1");
    if (!sorted_unique(sigma) || (!sigma.empty() && sigma.front() < 0))
        throw std::invalid_argument("enumerate_covers: sigma must be a sorted index set");
    const int s = static_cast<int>(sigma.size());
    if (static_cast<long>(s) * m > 24)
        throw std::length_error("enumerate_covers: |sigma| * m exceeds the cap of 24");

    // Each element independently picks the lambda-subset of parts containing
    // it; enumerate those subsets once.
    std::vector<std::vector<int>> choices;
    if (lambda <= m) {
        std::vector<int> pick(lambda);
        for (int t = 0; t < lambda; ++t) pick[t] = t;
        for (;;) {
            choices.push_back(pick);
            int pos = lambda - 1;
            while (pos >= 0 && pick[pos] == m - lambda + pos) --pos;
            if (pos < 0) break;
            ++pick[pos];
            for (int t = pos + 1; t < lambda; ++t) pick[t] = pick[t - 1] + 1;
        }
    }
    if (s > 0 && choices.empty()) return {};

    std::vector<UniformCover> out;
    std::set<std::vector<std::vector<int>>> seen;
    std::vector<int> at(s, 0);
    for (;;) {
        UniformCover c;
        c.sigma = sigma;
        c.lambda = lambda;
        c.parts.assign(m, {});
        for (int e = 0; e < s; ++e)
            for (int part : choices[at[e]]) c.parts[part].push_back(sigma[e]);
        if (unordered) {
            auto key = c.parts;
            std::sort(key.begin(), key.end());
            if (seen.insert(std::move(key)).second) out.push_back(std::move(c));
        } else {
            out.push_back(std::move(c));
        }
        int pos = s - 1;
        while (pos >= 0 && at[pos] == static_cast<int>(choices.size()) - 1) {
            at[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++at[pos];
    }
    return out;
}

CheckReport llw_check(const AntiBlockingBody& K, const UniformCover& c) {
    return llw_check_impl(K, K.n, c);
}
CheckReport llw_check(const VPolytope& K, const UniformCover& c) {
    return llw_check_impl(K, K.n, c);
}
CheckReport bt_check(const AntiBlockingBody& K, const UniformCover& c) {
    return bt_check_impl(K, K.n, c);
}
CheckReport bt_check(const VPolytope& K, const UniformCover& c) {
    return bt_check_impl(K, K.n, c);
}

CheckReport sum_split_check(const std::vector<AntiBlockingBody>& bodies) {
    if (bodies.empty()) throw std::invalid_argument("sum_split_check: need at least one body");
    const int r = static_cast<int>(bodies.size());
    const int n = bodies[0].n;
    for (const auto& A : bodies)
        if (A.n != n) throw std::invalid_argument("sum_split_check: dimension mismatch");
    if (n * std::log2(std::max(r, 2)) > 20)
        throw std::length_error("sum_split_check: splitting count beyond desk scale");

    // keepvol[i][mask] = volume of A_i projected onto the coordinates of mask.
    const unsigned top = 1u << n;
    std::vector<std::vector<Rat>> keepvol(static_cast<size_t>(r), std::vector<Rat>(top));
    for (int b = 0; b < r; ++b)
        for (unsigned mask = 0; mask < top; ++mask) {
            std::vector<int> keep;
            for (int c = 0; c < n; ++c)
                if (mask >> c & 1u) keep.push_back(c);
            keepvol[b][mask] = keep_volume(bodies[b], keep);
        }

    AntiBlockingBody total = bodies[0];
    for (int b = 1; b < r; ++b) total = minkowski_sum(total, bodies[b]);
    const Rat lhs = ab_volume(total);

    Rat rhs = 0;
    std::vector<int> owner(n, 0); // which part each coordinate lands in
    for (;;) {
        std::vector<unsigned> masks(static_cast<size_t>(r), 0u);
        for (int c = 0; c < n; ++c) masks[static_cast<size_t>(owner[c])] |= 1u << c;
        Rat term = 1;
        for (int b = 0; b < r && term != 0; ++b) term *= keepvol[b][masks[b]];
        rhs += term;
        int pos = n - 1;
        while (pos >= 0 && owner[pos] == r - 1) { owner[pos] = 0; --pos; }
        if (pos < 0) break;
        ++owner[pos];
    }

    CheckReport rep;
    rep.theorem_id = "cover.sum-split";
    std::ostringstream os;
    os << "n=" << n << " r=" << r << " gens=";
    for (int b = 0; b < r; ++b) {
        if (b) os << "+";
        os << bodies[b].gens.size();
    }
    rep.instance = os.str();
    rep.lhs = to_double(lhs);
    rep.rhs = to_double(rhs);
    rep.margin = to_double(rhs - lhs);
    rep.pass = lhs <= rhs;
    rep.method = "exact";
    return rep;
}

} // namespace abgeo
