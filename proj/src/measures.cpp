#include "abgeo/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "abgeo/constants.hpp"
#include "abgeo/rng.hpp"

namespace abgeo {

namespace {

constexpr int kShards = 64;

// Value with a standard error, under the usual independence assumptions.
struct Est {
    double v = 0;
    double s = 0;
};

Est est_of(const VolumeEstimate& e) { return {e.value, e.std_err}; }

Est mul(const Est& a, const Est& b) {
    return {a.v * b.v, std::hypot(a.s * b.v, b.s * a.v)};
}

Est powe(const Est& a, int e) {
    if (e == 0) return {1, 0};
    double v = std::pow(a.v, e);
    return {v, std::fabs(double(e) * std::pow(a.v, e - 1)) * a.s};
}

Est div(const Est& a, const Est& b) {
    if (b.v == 0) throw std::runtime_error("measure check: denominator estimate vanished");
    if (a.v == 0) return {0, a.s / std::fabs(b.v)};
    double v = a.v / b.v;
    return {v, std::fabs(v) * std::hypot(a.s / a.v, b.s / b.v)};
}

uint64_t sub_seed(uint64_t seed, uint64_t k) { return Rng(seed, 0x6d75u + k).next(); }

std::string trim_zeros(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

OracleBody body_oracle(const AntiBlockingBody& K) { return oracle_of(K); }
OracleBody body_oracle(const VPolytope& P) { return oracle_of(P); }

// mu_{keep}(P_{keep} K) estimate, with the zero subspace pinned to 1.
template <class Body>
Est mu_keep(const Body& K, int n, const std::vector<int>& keep, const ProductMeasure& mu,
            long samples, uint64_t seed) {
    if (keep.empty()) return {1, 0};
    CoordSubspace E(n, keep);
    if ((int)keep.size() == n) return est_of(mu_mc(body_oracle(K), mu, samples, seed));
    return est_of(mu_mc(body_oracle(project(K, E)), mu.sub(E), samples, seed));
}

std::vector<int> drop_of(int n, const std::vector<int>& tau) {
    std::vector<int> keep;
    for (int j = 0; j < n; ++j)
        if (!std::binary_search(tau.begin(), tau.end(), j)) keep.push_back(j);
    return keep;
}

void finish_mc(CheckReport& r, const Est& lhs, const Est& rhs) {
    r.lhs = lhs.v;
    r.lhs_stderr = lhs.s;
    r.rhs = rhs.v;
    r.rhs_stderr = rhs.s;
    r.method = "mc";
    decide_one_sided(r);
}

std::string retag(CheckReport& r, const char* id, const ProductMeasure& mu) {
    r.theorem_id = id;
    r.instance += " mu=" + mu.str();
    return r.instance;
}

template <class Body>
CheckReport mu_bt_impl(const Body& K, int n, const UniformCover& c, const ProductMeasure& mu,
                       long samples, uint64_t seed) {
    if (mu.n != n) throw std::invalid_argument("mu_bt_check: measure dimension mismatch");
    if (!validate_cover(c)) throw std::invalid_argument("mu_bt_check: invalid cover");
    if ((int)c.sigma.size() != n || (n > 0 && (c.sigma.front() != 0 || c.sigma.back() != n - 1)))
        throw std::invalid_argument("mu_bt_check: cover must be over the full index set");
    if (mu.is_flat()) {
        CheckReport r = bt_check(K, c);
        retag(r, "measure.bt", mu);
        return r;
    }
    Est lhs = powe(est_of(mu_mc(body_oracle(K), mu, samples, sub_seed(seed, 0))), c.lambda);
    Est rhs{1, 0};
    for (size_t i = 0; i < c.parts.size(); ++i)
        rhs = mul(rhs, mu_keep(K, n, c.parts[i], mu, samples, sub_seed(seed, 1 + i)));
    CheckReport r;
    r.theorem_id = "measure.bt";
    std::ostringstream os;
    os << cover_instance(c) << " mu=" << mu.str() << " samples=" << samples << " seed=" << seed;
    r.instance = os.str();
    finish_mc(r, lhs, rhs);
    return r;
}

template <class Body>
CheckReport mu_llw_impl(const Body& K, int n, const UniformCover& c, const ProductMeasure& mu,
                        long samples, uint64_t seed) {
    if (mu.n != n) throw std::invalid_argument("mu_llw_check: measure dimension mismatch");
    const Rat constant = llw_const(n, c); // validates the cover against n
    if (mu.is_flat()) {
        CheckReport r = llw_check(K, c);
        retag(r, "measure.llw", mu);
        return r;
    }
    const int m = (int)c.parts.size();
    Est a = est_of(mu_mc(body_oracle(K), mu, samples, sub_seed(seed, 0)));
    Est b = mu_keep(K, n, drop_of(n, c.sigma), mu, samples, sub_seed(seed, 1));
    Est lhs = mul(powe(a, m - c.lambda), powe(b, c.lambda));
    Est rhs{to_double(constant), 0};
    for (int i = 0; i < m; ++i)
        rhs = mul(rhs, mu_keep(K, n, drop_of(n, c.parts[i]), mu, samples, sub_seed(seed, 2 + i)));
    CheckReport r;
    r.theorem_id = "measure.llw";
    std::ostringstream os;
    os << cover_instance(c) << " mu=" << mu.str() << " samples=" << samples << " seed=" << seed;
    r.instance = os.str();
    r.constant = to_double(constant);
    finish_mc(r, lhs, rhs);
    return r;
}

} // namespace

DensitySpec DensitySpec::flat() { return {Kind::flat, 0}; }

DensitySpec DensitySpec::exponential(double rate) {
    if (!(rate > 0)) throw std::invalid_argument("DensitySpec: rate must be positive");
    return {Kind::exponential, rate};
}

DensitySpec DensitySpec::gaussian(double sigma) {
    if (!(sigma > 0)) throw std::invalid_argument("DensitySpec: sigma must be positive");
    return {Kind::gaussian, sigma};
}

DensitySpec DensitySpec::powerlaw(double beta) {
    if (!(beta > 1)) throw std::invalid_argument("DensitySpec: beta must exceed 1");
    return {Kind::powerlaw, beta};
}

double DensitySpec::phi(double t) const {
    t = std::fabs(t);
    switch (kind) {
    case Kind::flat: return 1;
    case Kind::exponential: return std::exp(-param * t);
    case Kind::gaussian: return std::exp(-t * t / (2 * param * param));
    case Kind::powerlaw: return std::pow(1 + t, -param);
    }
    return 1;
}

double DensitySpec::cdf(double x) const {
    if (x < 0) throw std::invalid_argument("DensitySpec::cdf: negative argument");
    switch (kind) {
    case Kind::flat: return x;
    case Kind::exponential: return (1 - std::exp(-param * x)) / param;
    case Kind::gaussian:
        return param * std::sqrt(std::atan(1.0) * 2) * std::erf(x / (param * std::sqrt(2.0)));
    case Kind::powerlaw: return (1 - std::pow(1 + x, 1 - param)) / (param - 1);
    }
    return x;
}

std::string DensitySpec::str() const {
    switch (kind) {
    case Kind::flat: return "flat";
    case Kind::exponential: return "exp:" + trim_zeros(param);
    case Kind::gaussian: return "gauss:" + trim_zeros(param);
    case Kind::powerlaw: return "pow:" + trim_zeros(param);
    }
    return "flat";
}

ProductMeasure::ProductMeasure(std::vector<DensitySpec> cs)
    : n((int)cs.size()), coords(std::move(cs)) {
    if (coords.empty()) throw std::invalid_argument("ProductMeasure: no coordinates");
}

double ProductMeasure::phi(const std::vector<double>& x) const {
    if ((int)x.size() != n) throw std::invalid_argument("ProductMeasure: dimension mismatch");
    double p = 1;
    for (int i = 0; i < n; ++i) p *= coords[i].phi(x[i]);
    return p;
}

ProductMeasure ProductMeasure::sub(const CoordSubspace& E) const {
    if (E.ambient != n) throw std::invalid_argument("ProductMeasure::sub: dimension mismatch");
    std::vector<DensitySpec> cs;
    for (int c : E.coords) cs.push_back(coords[c]);
    return ProductMeasure(std::move(cs));
}

ProductMeasure ProductMeasure::flat(int n) {
    if (n < 1) throw std::invalid_argument("ProductMeasure::flat: need n >= 1");
    return ProductMeasure(std::vector<DensitySpec>(static_cast<std::size_t>(n), DensitySpec::flat()));
}

bool ProductMeasure::is_flat() const {
    for (const DensitySpec& d : coords)
        if (d.kind != DensitySpec::Kind::flat) return false;
    return true;
}

std::string ProductMeasure::str() const {
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (i) out += ",";
        out += coords[i].str();
    }
    return out;
}

ProductMeasure parse_measure(const std::string& text) {
    std::vector<DensitySpec> cs;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        std::string kind = token;
        double param = 0;
        bool has_param = false;
        if (size_t colon = token.find(':'); colon != std::string::npos) {
            kind = token.substr(0, colon);
            size_t used = 0;
            param = std::stod(token.substr(colon + 1), &used);
            if (used != token.size() - colon - 1)
                throw std::invalid_argument("parse_measure: malformed parameter in '" + token + "'");
            has_param = true;
        }
        if (kind == "flat" && !has_param) cs.push_back(DensitySpec::flat());
        else if ((kind == "exp" || kind == "exponential") && has_param)
            cs.push_back(DensitySpec::exponential(param));
        else if ((kind == "gauss" || kind == "gaussian") && has_param)
            cs.push_back(DensitySpec::gaussian(param));
        else if ((kind == "pow" || kind == "powerlaw") && has_param)
            cs.push_back(DensitySpec::powerlaw(param));
        else throw std::invalid_argument("parse_measure: unknown density '" + token + "'");
    }
    if (cs.empty()) throw std::invalid_argument("parse_measure: empty specification");
    return ProductMeasure(std::move(cs));
}

VolumeEstimate mu_mc(const OracleBody& K, const ProductMeasure& mu, long samples, uint64_t seed) {
    if (mu.n != K.n) throw std::invalid_argument("mu_mc: measure dimension mismatch");
    if (samples < 1) throw std::invalid_argument("mu_mc: sample count must be positive");
    const int n = K.n;
    std::vector<double> lo(n), span(n);
    double boxvol = 1;
    for (int i = 0; i < n; ++i) {
        lo[i] = to_double(K.box.lo[i]);
        span[i] = to_double(K.box.hi[i]) - lo[i];
        boxvol *= span[i];
    }
    double sum = 0, sumsq = 0;
    std::vector<double> x(n);
    for (int shard = 0; shard < kShards; ++shard) {
        long count = samples / kShards + (shard < samples % kShards ? 1 : 0);
        Rng rng(seed, (uint64_t)shard);
        for (long s = 0; s < count; ++s) {
            for (int i = 0; i < n; ++i) x[i] = lo[i] + span[i] * rng.next_unit();
            if (K.member(x, 1e-9)) {
                double w = mu.phi(x);
                sum += w;
                sumsq += w * w;
            }
        }
    }
    double mean = sum / double(samples);
    double var = std::max(0.0, sumsq / double(samples) - mean * mean);
    VolumeEstimate est;
    est.value = boxvol * mean;
    est.std_err = boxvol * std::sqrt(var / double(samples));
    est.samples = samples;
    est.method = VolumeEstimate::Method::mc;
    est.seed = seed;
    return est;
}

VolumeEstimate mu_mc(const AntiBlockingBody& K, const ProductMeasure& mu, long samples,
                     uint64_t seed) {
    return mu_mc(oracle_of(K), mu, samples, seed);
}

VolumeEstimate mu_project(const AntiBlockingBody& K, const CoordSubspace& E,
                          const ProductMeasure& mu, long samples, uint64_t seed) {
    if (E.ambient != K.n) throw std::invalid_argument("mu_project: dimension mismatch");
    if (mu.n != K.n) throw std::invalid_argument("mu_project: measure dimension mismatch");
    if (E.dim() == 0) {
        VolumeEstimate est;
        est.value = 1;
        est.samples = samples;
        est.seed = seed;
        return est;
    }
    if (E.dim() == K.n) return mu_mc(K, mu, samples, seed);
    return mu_mc(oracle_of(project(K, E)), mu.sub(E), samples, seed);
}

CheckReport mu_bt_check(const AntiBlockingBody& K, const UniformCover& c, const ProductMeasure& mu,
                        long samples, uint64_t seed) {
    return mu_bt_impl(K, K.n, c, mu, samples, seed);
}

CheckReport mu_bt_check(const VPolytope& K, const UniformCover& c, const ProductMeasure& mu,
                        long samples, uint64_t seed) {
    return mu_bt_impl(K, K.n, c, mu, samples, seed);
}

CheckReport mu_llw_check(const AntiBlockingBody& K, const UniformCover& c,
                         const ProductMeasure& mu, long samples, uint64_t seed) {
    return mu_llw_impl(K, K.n, c, mu, samples, seed);
}

CheckReport mu_llw_check(const VPolytope& K, const UniformCover& c, const ProductMeasure& mu,
                         long samples, uint64_t seed) {
    return mu_llw_impl(K, K.n, c, mu, samples, seed);
}

CheckReport mu_ratio_check(const AntiBlockingBody& A, const AntiBlockingBody& B,
                           const CoordSubspace& E, const ProductMeasure& mu, long samples,
                           uint64_t seed) {
    const int n = A.n;
    if (B.n != n || E.ambient != n || mu.n != n)
        throw std::invalid_argument("mu_ratio_check: dimension mismatch");
    const int i = E.dim();
    if (i < 1 || i >= n)
        throw std::invalid_argument("mu_ratio_check: subspace must be proper and nonzero");
    ConstantResult rc = r_const(n, i);
    if (mu.is_flat()) {
        CheckReport r = ratio_lp_check(A, B, LpParam::one(), E, 0, 0);
        retag(r, "measure.proj.ratio-sum", mu);
        return r;
    }
    AntiBlockingBody PA = project(A, E), PB = project(B, E);
    ProductMeasure muE = mu.sub(E);
    Est ea = div(est_of(mu_mc(A, mu, samples, sub_seed(seed, 0))),
                 est_of(mu_mc(PA, muE, samples, sub_seed(seed, 1))));
    Est eb = div(est_of(mu_mc(B, mu, samples, sub_seed(seed, 2))),
                 est_of(mu_mc(PB, muE, samples, sub_seed(seed, 3))));
    Est lhs{ea.v + eb.v, std::hypot(ea.s, eb.s)};
    Est diff = est_of(mu_mc(lp_diff_oracle(A, B, LpParam::one()), mu, samples, sub_seed(seed, 4)));
    Est pdiff =
        est_of(mu_mc(lp_diff_oracle(PA, PB, LpParam::one()), muE, samples, sub_seed(seed, 5)));
    Est rhs = mul({rc.approx, 0}, div(diff, pdiff));
    CheckReport r;
    r.theorem_id = "measure.proj.ratio-sum";
    std::ostringstream os;
    os << "n=" << n << " i=" << i << " E=" << E.mask() << " mu=" << mu.str()
       << " samples=" << samples << " seed=" << seed;
    r.instance = os.str();
    r.constant = rc.approx;
    finish_mc(r, lhs, rhs);
    return r;
}

CheckReport mu_shift_check(const AntiBlockingBody& A, const AntiBlockingBody& B, int axis,
                           const ProductMeasure& mu, long samples, uint64_t seed) {
    const int n = A.n;
    if (B.n != n || mu.n != n) throw std::invalid_argument("mu_shift_check: dimension mismatch");
    if (axis < 0 || axis >= n) throw std::invalid_argument("mu_shift_check: axis out of range");
    CheckReport r;
    r.theorem_id = "measure.steiner.shift";
    std::ostringstream os;
    os << "n=" << n << " axis=" << axis << " mu=" << mu.str() << " samples=" << samples
       << " seed=" << seed;
    r.instance = os.str();
    if (mu.is_flat()) {
        // Lebesgue measure is exactly preserved by the shift
        Rat vol = diff_volume_decomp(A, B);
        r.lhs = to_double(vol);
        r.rhs = r.lhs;
        r.method = "exact";
        r.margin = 0;
        r.pass = true;
        return r;
    }
    OracleBody D = lp_diff_oracle(A, B, LpParam::one());
    OracleBody S = steiner_shift(D, axis);
    Est lhs = est_of(mu_mc(S, mu, samples, sub_seed(seed, 0)));
    Est rhs = est_of(mu_mc(D, mu, samples, sub_seed(seed, 1)));
    finish_mc(r, lhs, rhs);
    return r;
}

CheckReport mu_diff_sum_check(const AntiBlockingBody& A, const AntiBlockingBody& B,
                              const ProductMeasure& mu, long samples, uint64_t seed) {
    const int n = A.n;
    if (B.n != n || mu.n != n)
        throw std::invalid_argument("mu_diff_sum_check: dimension mismatch");
    if (mu.is_flat()) {
        CheckReport r = rk_lp_check(A, B, LpParam::one(), 0, 0);
        retag(r, "measure.kleitman.reverse", mu);
        return r;
    }
    Est lhs = est_of(mu_mc(minkowski_sum(A, B), mu, samples, sub_seed(seed, 0)));
    Est rhs = est_of(mu_mc(lp_diff_oracle(A, B, LpParam::one()), mu, samples, sub_seed(seed, 1)));
    CheckReport r;
    r.theorem_id = "measure.kleitman.reverse";
    std::ostringstream os;
    os << "n=" << n << " mu=" << mu.str() << " samples=" << samples << " seed=" << seed;
    r.instance = os.str();
    finish_mc(r, lhs, rhs);
    return r;
}

CheckReport mu_plun_check(const AntiBlockingBody& A, const std::vector<AntiBlockingBody>& Bs,
                          const std::vector<int>& signs, const ProductMeasure& mu, long samples,
                          uint64_t seed) {
    const int n = A.n;
    const int m = (int)Bs.size();
    if (m < 1) throw std::invalid_argument("mu_plun_check: need at least one summand");
    if ((int)signs.size() != m) throw std::invalid_argument("mu_plun_check: one sign per body");
    if (mu.n != n) throw std::invalid_argument("mu_plun_check: measure dimension mismatch");
    for (const AntiBlockingBody& B : Bs)
        if (B.n != n) throw std::invalid_argument("mu_plun_check: dimension mismatch");
    bool have_minus = false;
    AntiBlockingBody plus = A, minus;
    for (int i = 0; i < m; ++i) {
        if (signs[i] == 1) plus = minkowski_sum(plus, Bs[i]);
        else if (signs[i] == -1) {
            minus = have_minus ? minkowski_sum(minus, Bs[i]) : Bs[i];
            have_minus = true;
        } else throw std::invalid_argument("mu_plun_check: signs must be +1 or -1");
    }
    ConstantResult z = zeta(n, m);
    std::ostringstream sign_str;
    for (int i = 0; i < m; ++i) sign_str << (signs[i] == 1 ? '+' : '-');

    CheckReport r;
    r.theorem_id = "measure.sum.diff-bound";
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " signs=" << sign_str.str() << " mu=" << mu.str()
       << " samples=" << samples << " seed=" << seed;
    r.instance = os.str();
    r.constant = z.approx;
    if (mu.is_flat()) {
        Rat body = have_minus ? diff_volume_decomp(plus, minus) : ab_volume(plus);
        Rat lhs = rat_pow(ab_volume(A), m - 1) * body;
        Rat rhs = *z.exact;
        for (const AntiBlockingBody& B : Bs) rhs *= diff_volume_decomp(A, B);
        r.lhs = to_double(lhs);
        r.rhs = to_double(rhs);
        r.method = "exact";
        r.margin = to_double(rhs - lhs);
        r.pass = lhs <= rhs;
        return r;
    }
    Est ea = est_of(mu_mc(A, mu, samples, sub_seed(seed, 0)));
    Est body = have_minus
                   ? est_of(mu_mc(lp_diff_oracle(plus, minus, LpParam::one()), mu, samples,
                                  sub_seed(seed, 1)))
                   : est_of(mu_mc(plus, mu, samples, sub_seed(seed, 1)));
    Est lhs = mul(powe(ea, m - 1), body);
    Est rhs{z.approx, 0};
    for (int i = 0; i < m; ++i)
        rhs = mul(rhs, est_of(mu_mc(lp_diff_oracle(A, Bs[i], LpParam::one()), mu, samples,
                                    sub_seed(seed, 2 + i))));
    finish_mc(r, lhs, rhs);
    return r;
}

} // namespace abgeo
