#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace abgeo {

// A coordinate subspace, stored by its SPANNING coordinate set (0-based,
// strictly increasing).  Projection onto it keeps exactly these coordinates.
// Formulas quoted from sources that index subspaces by the dropped set call
// complement() at the call site and say so.
struct CoordSubspace {
    int ambient = 0;
    std::vector<int> coords;

    CoordSubspace() = default;
    CoordSubspace(int n, std::vector<int> cs) : ambient(n), coords(std::move(cs)) {
        std::sort(coords.begin(), coords.end());
        for (size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] < 0 || coords[i] >= n)
                throw std::invalid_argument("CoordSubspace: coordinate out of range");
            if (i > 0 && coords[i] == coords[i - 1])
                throw std::invalid_argument("CoordSubspace: repeated coordinate");
        }
    }

    static CoordSubspace from_mask(int n, unsigned mask) {
        std::vector<int> cs;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) cs.push_back(i);
        return CoordSubspace(n, std::move(cs));
    }

    unsigned mask() const {
        unsigned m = 0;
        for (int c : coords) m |= 1u << c;
        return m;
    }

    CoordSubspace complement() const {
        std::vector<int> cs;
        size_t k = 0;
        for (int i = 0; i < ambient; ++i) {
            if (k < coords.size() && coords[k] == i) ++k;
            else cs.push_back(i);
        }
        return CoordSubspace(ambient, std::move(cs));
    }

    int dim() const { return int(coords.size()); }
    bool contains(int coord) const {
        return std::binary_search(coords.begin(), coords.end(), coord);
    }
};

} // namespace abgeo
