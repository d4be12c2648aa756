#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abgeo/bodies.hpp"
#include "abgeo/constants.hpp"
#include "abgeo/covers.hpp"
#include "abgeo/lp_param.hpp"
#include "abgeo/measures.hpp"
#include "abgeo/report.hpp"

namespace abgeo {

// k generators with strictly positive dyadic coordinates (denominator 2^16),
// pruned to the maximal ones.  Positive entries keep every seeded body
// full-dimensional.  Pure function of (n, k, seed): identical across runs,
// machines, and thread counts.
AntiBlockingBody random_antiblocking(int n, int k, uint64_t seed);

// Body text forms used by the CLI and the scripting layer:
//   "box:1,2"        axis-aligned box with the given sides,
//   "simplex:1,1,2"  corner simplex x/s_1 + ... + x/s_n <= 1,
//   "hanner:0110"    positive part of the Hanner polytope, mask over coords,
//   "gens:1/2,1;3/4,1/4"  explicit generator rows (rationals "p/q" or ints),
//   "random:3x4:42"  random_antiblocking(3, 4, seed 42).
AntiBlockingBody parse_body(const std::string& text);

// "sigma=1,2,3;parts=12|23|13;lambda=2" with 1-based coordinate labels;
// lambda defaults to 1 when omitted.
UniformCover parse_cover(const std::string& text);

// Knobs for a single registered check.  Explicit bodies, cover, or measure
// override the seeded random instances; everything else is derived
// deterministically from (params, seed).
struct CheckParams {
    int n = 3;
    LpParam p = LpParam::one();
    int i = 1;       // projection dimension, where the statement has one
    int m = 2;       // number of summands / cover parts, where applicable
    long samples = 10000;
    std::string measure; // density tokens; empty means exp:1 per coordinate
    std::optional<AntiBlockingBody> body_a, body_b, body_c;
    std::optional<UniformCover> cover;
};

struct RegistryEntry {
    std::string id;
    std::string statement; // what the inequality says, in words
    bool uses_p = false;
    bool uses_measure = false;
    bool exact = false; // rational arithmetic end to end at default params
};

// Stable listing of every registered check, in canonical id order.
const std::vector<RegistryEntry>& check_registry();

// Run one registered check on a deterministic instance.  Throws
// std::invalid_argument for an unknown id or inconsistent parameters.
CheckReport run_check(const std::string& theorem_id, const CheckParams& params, uint64_t seed);

// Witness-family ratio of a sharp constant at scales t = 2^-j, j = 0..8.
// The family shrinks one body toward the origin exactly as the equality
// analysis does (the companion bodies are degenerate unit cubes); the ratio
// sequence climbs toward the constant.  Ratios are exact rationals at
// p in {1, inf} and deterministic doubles otherwise.
struct ProbePoint {
    Rat t;
    double ratio = 0;
    std::optional<Rat> exact_ratio;
};
struct ProbeResult {
    std::string constant_id; // "zeta", "r", "nu", or "b"
    ConstantResult constant;
    std::string family; // descriptor of the witness bodies
    std::vector<ProbePoint> points;
};
// "zeta" and "r" are Minkowski-sum constants: p is ignored (taken as 1).
// "r" and "nu" need the projection dimension i; "zeta" and "b" ignore it.
ProbeResult sharpness_probe(const std::string& constant_id, int n, const LpParam& p, int i);

struct CampaignConfig {
    std::vector<int> dims = {2, 3};
    int trials = 25;
    uint64_t seed = 1;
    long samples = 10000;
    std::string filter;      // regex, partial match over theorem ids
    std::string output_path; // JSON-lines file; empty writes no file
    int jobs = 1;            // worker threads; the report bytes never depend on it
};

struct TheoremTally {
    long runs = 0;
    long failures = 0;
};

struct CampaignSummary {
    long total = 0;
    long failed = 0;
    long mc_reports = 0;
    // One-sided 3-sigma acceptance implies a known false-failure budget:
    // mc_reports * P(Z > 3) with independent checks (Bonferroni-style note).
    double expected_false_failures = 0;
    std::map<std::string, TheoremTally> per_theorem;
    std::vector<CheckReport> reports; // sorted by (theorem_id, seed, instance)
};

// Runs every registered check that matches the filter over each dim and
// trial.  Deterministic: identical config (including any jobs value) yields
// byte-identical report lines.  I/O failures carry the path in the message.
CampaignSummary campaign(const CampaignConfig& cfg);

// One JSON object per report, fixed key order, shortest round-trip doubles.
std::string report_json_line(const CheckReport& r);
// CSV with the same fields; the header row and one line per report.
std::string report_csv_header();
std::string report_csv_line(const CheckReport& r);

} // namespace abgeo
