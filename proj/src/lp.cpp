#include "abgeo/lp.hpp"

#include <cstddef>

namespace abgeo {

namespace {

struct Tableau {
    RMat t;                    // m rows plus objective row; last column is rhs
    std::vector<size_t> basis; // basic variable per row
    size_t ncols;              // total variables (excluding rhs column)

    size_t m() const { return basis.size(); }
    RVec& obj() { return t[m()]; }

    void pivot(size_t row, size_t col) {
        Rat d = t[row][col];
        for (auto& v : t[row]) v /= d;
        for (size_t i = 0; i < t.size(); ++i) {
            if (i == row || t[i][col] == 0) continue;
            Rat f = t[i][col];
            for (size_t j = 0; j <= ncols; ++j) t[i][j] -= f * t[row][j];
        }
        basis[row] = col;
    }

    // One Bland step; returns false at optimality, sets *unbounded if an
    // improving column has no blocking row.
    bool step(bool* unbounded) {
        size_t enter = ncols;
        for (size_t j = 0; j < ncols; ++j)
            if (obj()[j] < 0) { enter = j; break; }
        if (enter == ncols) return false;
        size_t leave = m();
        for (size_t i = 0; i < m(); ++i) {
            if (t[i][enter] <= 0) continue;
            if (leave == m()) { leave = i; continue; }
            Rat cmp = t[i][ncols] * t[leave][enter] - t[leave][ncols] * t[i][enter];
            if (cmp < 0 || (cmp == 0 && basis[i] < basis[leave])) leave = i;
        }
        if (leave == m()) { *unbounded = true; return false; }
        pivot(leave, enter);
        return true;
    }

    // Load "maximize c" into the objective row and price out the basis.
    void set_objective(const RVec& c) {
        RVec& o = obj();
        for (size_t j = 0; j <= ncols; ++j) o[j] = j < c.size() ? -c[j] : Rat(0);
        for (size_t i = 0; i < m(); ++i) {
            if (o[basis[i]] == 0) continue;
            Rat f = o[basis[i]];
            for (size_t j = 0; j <= ncols; ++j) o[j] -= f * t[i][j];
        }
    }
};

} // namespace

LpResult lp_maximize(const RMat& a, const std::vector<Sense>& senses, const RVec& b,
                     const RVec& c) {
    const size_t m = a.size(), n = c.size();
    size_t nslack = 0;
    for (auto s : senses)
        if (s != Sense::EQ) ++nslack;
    const size_t nstruct = n + nslack;

    Tableau tab;
    tab.basis.assign(m, 0);
    std::vector<size_t> art_rows;

    RMat rows(m);
    size_t slack_at = n;
    for (size_t i = 0; i < m; ++i) {
        RVec row(nstruct + 1, Rat(0));
        Rat rhs = b[i];
        Sense s = senses[i];
        bool flip = rhs < 0;
        if (flip) {
            rhs = -rhs;
            if (s == Sense::LE) s = Sense::GE;
            else if (s == Sense::GE) s = Sense::LE;
        }
        for (size_t j = 0; j < n && j < a[i].size(); ++j)
            row[j] = flip ? -a[i][j] : a[i][j];
        if (senses[i] != Sense::EQ) {
            row[slack_at] = (s == Sense::LE) ? Rat(1) : Rat(-1);
            if (s == Sense::LE) tab.basis[i] = slack_at;
            else art_rows.push_back(i);
            ++slack_at;
        } else {
            art_rows.push_back(i);
        }
        row[nstruct] = rhs;
        rows[i] = std::move(row);
    }

    // Artificial columns sit past the structural block.
    size_t ncols = nstruct + art_rows.size();
    for (size_t i = 0; i < m; ++i) {
        Rat rhs = rows[i][nstruct];
        rows[i].resize(ncols + 1, Rat(0));
        rows[i][nstruct] = 0;
        rows[i][ncols] = rhs;
    }
    for (size_t k = 0; k < art_rows.size(); ++k) {
        rows[art_rows[k]][nstruct + k] = 1;
        tab.basis[art_rows[k]] = nstruct + k;
    }

    tab.t = std::move(rows);
    tab.t.emplace_back(ncols + 1, Rat(0));
    tab.ncols = ncols;

    LpResult res;
    if (!art_rows.empty()) {
        RVec phase1(ncols, Rat(0));
        for (size_t j = nstruct; j < ncols; ++j) phase1[j] = -1;
        tab.set_objective(phase1);
        bool unbounded = false;
        while (tab.step(&unbounded)) {}
        if (tab.obj()[ncols] != 0) {
            res.status = LpResult::Status::Infeasible;
            return res;
        }
        // Drive basic artificials out wherever a structural pivot exists; the
        // rhs is zero there, so any nonzero entry gives a degenerate pivot.
        for (size_t i = 0; i < tab.m(); ++i) {
            if (tab.basis[i] < nstruct) continue;
            for (size_t j = 0; j < nstruct; ++j)
                if (tab.t[i][j] != 0) { tab.pivot(i, j); break; }
        }
        // Rows still owned by an artificial are redundant (all-zero structural
        // part).  Rebuild the tableau without them and without the artificial
        // columns so phase 2 cannot bring one back.
        RMat kept;
        std::vector<size_t> kept_basis;
        for (size_t i = 0; i < tab.m(); ++i) {
            if (tab.basis[i] >= nstruct) continue;
            RVec row(nstruct + 1);
            for (size_t j = 0; j < nstruct; ++j) row[j] = tab.t[i][j];
            row[nstruct] = tab.t[i][ncols];
            kept.push_back(std::move(row));
            kept_basis.push_back(tab.basis[i]);
        }
        kept.emplace_back(nstruct + 1, Rat(0));
        tab.t = std::move(kept);
        tab.basis = std::move(kept_basis);
        tab.ncols = ncols = nstruct;
    }

    tab.set_objective(c);
    bool unbounded = false;
    while (tab.step(&unbounded)) {}
    if (unbounded) {
        res.status = LpResult::Status::Unbounded;
        return res;
    }
    res.status = LpResult::Status::Optimal;
    res.value = tab.obj()[ncols];
    res.x.assign(n, Rat(0));
    for (size_t i = 0; i < tab.m(); ++i)
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t[i][ncols];
    return res;
}

LpResult lp_minimize(const RMat& a, const std::vector<Sense>& senses, const RVec& b,
                     const RVec& c) {
    RVec neg(c.size());
    for (size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
    LpResult r = lp_maximize(a, senses, b, neg);
    if (r.optimal()) r.value = -r.value;
    return r;
}

bool lp_feasible(const RMat& a, const std::vector<Sense>& senses, const RVec& b) {
    size_t n = a.empty() ? 0 : a[0].size();
    return lp_maximize(a, senses, b, RVec(n, Rat(0))).optimal();
}

} // namespace abgeo
