#include "abgeo/constants.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "abgeo/numerics.hpp"

namespace abgeo {

namespace {

Int factorial(int k) {
    Int f = 1;
    for (int t = 2; t <= k; ++t) f *= t;
    return f;
}

// The Gamma weight G(x) = Gamma(1 + x/q) at integer arguments.  The endpoint
// exponents stay exact: q = inf gives G == 1, q = 1 gives G(x) = x!.
struct QWeight {
    LpParam::Kind kind = LpParam::Kind::inf;
    double q = std::numeric_limits<double>::infinity();

    static QWeight conjugate_of(const LpParam& p) {
        switch (p.kind) {
        case LpParam::Kind::one: return {};
        case LpParam::Kind::inf: return {LpParam::Kind::one, 1};
        default: return {LpParam::Kind::finite, p.q()};
        }
    }

    bool is_exact() const { return kind != LpParam::Kind::finite; }
    Rat exact_at(int x) const {
        return kind == LpParam::Kind::inf ? Rat(1) : Rat(factorial(x));
    }
    double log_at(int x) const {
        return kind == LpParam::Kind::inf ? 0.0 : log_gamma(1 + x / q);
    }
};

// Maximize d_{n,m}(alpha) G(N) G(n)^(m-1) / prod_i G(alpha_i) over the tuple
// grid [0,n]^m, skipping N < 0, with the first coordinate optionally pinned.
// Lex-ascending scan with strict improvement keeps the lexicographically
// smallest maximizer.
ConstantResult grid_max(int n, int m, const QWeight& w, std::optional<int> fixed_first) {
    std::vector<int> a(m, 0);
    if (fixed_first) a[0] = *fixed_first;
    const int first_free = fixed_first ? 1 : 0;

    ConstantResult best;
    Rat best_exact = 0;
    bool have = false;
    const Rat gn = w.is_exact() ? w.exact_at(n) : Rat(0);
    const double lgn = w.is_exact() ? 0 : w.log_at(n);

    for (;;) {
        long sum = 0;
        for (int v : a) sum += v;
        const long excess = sum - static_cast<long>(n) * (m - 1);
        if (excess >= 0) {
            const Rat d = d_nm(n, a);
            const int N = static_cast<int>(excess);
            if (w.is_exact()) {
                Rat term = d * w.exact_at(N) * rat_pow(gn, m - 1);
                for (int v : a) term /= w.exact_at(v);
                if (!have || term > best_exact) {
                    have = true;
                    best_exact = term;
                    best.argmax = a;
                }
            } else {
                double lg = w.log_at(N) + (m - 1) * lgn;
                for (int v : a) lg -= w.log_at(v);
                const double term = to_double(d) * std::exp(lg);
                if (!have || term > best.approx) {
                    have = true;
                    best.approx = term;
                    best.argmax = a;
                }
            }
        }
        int pos = m - 1;
        while (pos >= first_free && a[pos] == n) { a[pos] = 0; --pos; }
        if (pos < first_free) break;
        ++a[pos];
    }
    if (w.is_exact()) {
        best.exact = best_exact;
        best.approx = to_double(best_exact);
    }
    return best;
}

// Three-case closed form for the two-body constant.
Rat zeta2_closed(int n) {
    const int k = n / 3;
    const Rat base = Rat(factorial(2 * k) * factorial(2 * k) * factorial(2 * k)) /
                     Rat(factorial(3 * k) * factorial(k) * factorial(k) * factorial(k));
    switch (n % 3) {
    case 0:
        return base;
    case 1:
        return base * ((2 * k + 1) * (2 * k + 1)) / ((k + 1) * (3 * k + 1));
    default:
        return base * (2 * (2 * k + 1) * (2 * k + 1) * (2 * k + 1)) /
               ((k + 1) * (3 * k + 1) * (3 * k + 2));
    }
}

// Two-case closed form for the projection-ratio constant.
Rat r_closed(int n, int i) {
    const int k = i / 2;
    const Rat base = Rat(factorial(2 * k) * factorial(n - k) * factorial(n - k)) /
                     Rat(factorial(k) * factorial(k) * factorial(n - 2 * k) * factorial(n));
    if (i % 2 == 0) return base;
    return base * ((2 * k + 1) * (n - 2 * k)) / ((k + 1) * (n - k));
}

void check_tuple_cap(const char* who, int n, int m) {
    if (m >= 4 && n > 12)
        throw std::length_error(std::string(who) + ": tuple grid is capped at n <= 12 for m >= 4");
}

} // namespace

Rat d_nm(int n, const std::vector<int>& alphas) {
    if (n < 1) throw std::invalid_argument("d_nm: dimension must be positive");
    if (alphas.empty()) throw std::invalid_argument("d_nm: empty tuple");
    const int m = static_cast<int>(alphas.size());
    long sum = 0;
    for (int a : alphas) {
        if (a < 0 || a > n) throw std::invalid_argument("d_nm: entries must lie in [0, n]");
        sum += a;
    }
    const long N = sum - static_cast<long>(n) * (m - 1);
    if (N < 0) throw std::invalid_argument("d_nm: tuple has negative excess");
    Rat value = 1;
    for (int a : alphas) value *= binom_exact(a, N);
    return value / rat_pow(binom_exact(n, N), m - 1);
}

ConstantResult zeta(int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("zeta: need n >= 1 and m >= 1");
    check_tuple_cap("zeta", n, m);
    ConstantResult res = grid_max(n, m, QWeight{}, std::nullopt);
    if (m == 2 && *res.exact != zeta2_closed(n))
        throw std::logic_error("zeta: grid maximum disagrees with the closed form");
    return res;
}

ConstantResult r_const(int n, int i) {
    if (i < 1 || i > n - 1) throw std::invalid_argument("r_const: need 1 <= i <= n-1");
    ConstantResult res = grid_max(n, 2, QWeight{}, i);
    if (*res.exact != r_closed(n, i))
        throw std::logic_error("r_const: grid maximum disagrees with the closed form");
    res.argmax.erase(res.argmax.begin());
    return res;
}

ConstantResult nu_const(int n, const LpParam& p, int i) {
    if (i < 1 || i > n - 1) throw std::invalid_argument("nu_const: need 1 <= i <= n-1");
    ConstantResult res = grid_max(n, 2, QWeight::conjugate_of(p), i);
    res.argmax.erase(res.argmax.begin());
    return res;
}

ConstantResult b_const(int n, const LpParam& p) {
    if (n < 1) throw std::invalid_argument("b_const: need n >= 1");
    ConstantResult res = grid_max(n, 2, QWeight::conjugate_of(p), std::nullopt);
    const double root = std::sqrt(std::numbers::pi * n);
    const double lo = 2 / (std::exp(1.0) * root) * std::pow(4.0 / 3.0, n);
    const double hi = std::pow(2.0, n + 0.5) / root;
    if (!(res.approx >= lo * (1 - 1e-12) && res.approx <= hi * (1 + 1e-12)))
        throw std::logic_error("b_const: value escapes the sandwich bounds");
    return res;
}

ConstantResult kappa_const(int n, const LpParam& q) {
    if (n < 1) throw std::invalid_argument("kappa_const: need n >= 1");
    ConstantResult res;
    if (q.kind == LpParam::Kind::finite) {
        double s = 0;
        for (int i = 0; i <= n; ++i) {
            const Rat b = binom_exact(n, i);
            s += to_double(b * b) / gen_binom(n / q.p, static_cast<double>(i) / q.p);
        }
        res.approx = s;
    } else {
        Rat s = 0;
        for (int i = 0; i <= n; ++i) {
            const Rat b = binom_exact(n, i);
            s += q.is_inf() ? b * b : b; // at q = 1 one binomial cancels
        }
        res.exact = s;
        res.approx = to_double(s);
    }
    const double lo = to_double(rat_pow(2, n));
    const double hi = to_double(binom_exact(2 * n, n));
    if (!(res.approx >= lo * (1 - 1e-12) && res.approx <= hi * (1 + 1e-12)))
        throw std::logic_error("kappa_const: value escapes [2^n, binom(2n,n)]");
    return res;
}

ConstantResult varrho_const(int n, int m, const LpParam& p) {
    if (n < 1 || m < 1) throw std::invalid_argument("varrho_const: need n >= 1 and m >= 1");
    check_tuple_cap("varrho_const", n, m);
    return grid_max(n, m, QWeight::conjugate_of(p), std::nullopt);
}

Rat llw_const(int n, const UniformCover& cover) {
    if (!validate_cover(cover)) throw std::invalid_argument("llw_const: invalid cover");
    if (!cover.sigma.empty() && (cover.sigma.front() < 0 || cover.sigma.back() >= n))
        throw std::invalid_argument("llw_const: cover indices exceed the dimension");
    const int m = static_cast<int>(cover.parts.size());
    const long codim = n - static_cast<long>(cover.sigma.size());
    Rat value = 1;
    for (const auto& part : cover.parts)
        value *= binom_exact(n - static_cast<long>(part.size()), codim);
    return value / rat_pow(binom_exact(n, codim), m - cover.lambda);
}

} // namespace abgeo
