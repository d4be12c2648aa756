#pragma once

#include <stdexcept>
#include <vector>

#include "abgeo/rational.hpp"

namespace abgeo {

using RVec = std::vector<Rat>;
using RMat = std::vector<RVec>;

inline Rat dot(const RVec& a, const RVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline int mat_rank(RMat m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    int r = 0;
    for (size_t c = 0; c < cols && size_t(r) < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == size_t(r) || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

// Rank of the affine hull of a point set (0 for a single point).
inline int affine_rank(const RMat& pts) {
    if (pts.size() <= 1) return 0;
    RMat diffs;
    for (size_t i = 1; i < pts.size(); ++i) {
        RVec d(pts[i].size());
        for (size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        diffs.push_back(std::move(d));
    }
    return mat_rank(std::move(diffs));
}

inline RMat mat_inverse(RMat m) {
    const size_t n = m.size();
    RMat inv(n, RVec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) throw std::invalid_argument("mat_inverse: singular matrix");
        std::swap(m[c], m[piv]);
        std::swap(inv[c], inv[piv]);
        Rat d = m[c][c];
        for (size_t j = 0; j < n; ++j) {
            m[c][j] /= d;
            inv[c][j] /= d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

} // namespace abgeo
