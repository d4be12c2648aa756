#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abgeo/harness.hpp"

#include "abgeo/bodies.hpp"
#include "abgeo/constants.hpp"
#include "abgeo/covers.hpp"
#include "abgeo/volume.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace abgeo;

namespace {

RVec rv(std::initializer_list<long> xs) {
  RVec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(bool(in));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

} // namespace

TEST_CASE("random anti-blocking bodies are deterministic and well-formed") {
  AntiBlockingBody a = random_antiblocking(3, 5, 42);
  AntiBlockingBody b = random_antiblocking(3, 5, 42);
  CHECK(a == b);
  CHECK(a.n == 3);
  CHECK(!a.gens.empty());
  CHECK(a.gens.size() <= 5);
  for (const auto& row : a.gens)
    for (const auto& x : row) {
      CHECK(x > 0);
      CHECK(x <= 1);
    }
  // already pruned and sorted: rebuilding from the same generators is a no-op
  CHECK(make_antiblocking(a.n, a.gens) == a);
  CHECK(ab_volume(a) > 0);
  CHECK(sign_orbit(a).n == 3);
  CHECK(antiblocking_check(sign_orbit(a), 64, 7));

  AntiBlockingBody c = random_antiblocking(3, 5, 43);
  CHECK(a != c);

  CHECK_THROWS_AS(random_antiblocking(0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_antiblocking(2, 0, 1), std::invalid_argument);
}

TEST_CASE("parse_body understands every documented form") {
  CHECK(parse_body("box:1,2") == ab_box(rv({1, 2})));
  CHECK(parse_body("simplex:1,1,2") == ab_simplex(rv({1, 1, 2})));
  CHECK(parse_body("hanner:011") == hanner_pos(3, {1, 2}));
  AntiBlockingBody g = parse_body("gens:1/2,1;3/4,1/4");
  CHECK(g == make_antiblocking(2, {{Rat(1, 2), Rat(1)}, {Rat(3, 4), Rat(1, 4)}}));
  CHECK(parse_body("random:3x4:42") == random_antiblocking(3, 4, 42));

  CHECK_THROWS_AS(parse_body("box"), std::invalid_argument);
  CHECK_THROWS_AS(parse_body("blob:1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_body("box:1,zap"), std::invalid_argument);
  CHECK_THROWS_AS(parse_body("box:1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_body("gens:1,2;3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_body("hanner:01x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_body("hanner:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_body("random:3x4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_body("random:3x4:-1"), std::invalid_argument);
}

TEST_CASE("parse_cover round-trips through the canonical instance string") {
  UniformCover c = parse_cover("sigma=1,2;parts=1|2");
  CHECK(c.sigma == std::vector<int>{0, 1});
  CHECK(c.parts == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(c.lambda == 1);
  CHECK(cover_instance(c) == "sigma=1,2;parts=1|2;lambda=1");

  UniformCover two = parse_cover("sigma=1,2,3;parts=12|23|13;lambda=2");
  CHECK(two.lambda == 2);
  CHECK(two.parts == std::vector<std::vector<int>>{{0, 1}, {1, 2}, {0, 2}});
  CHECK(validate_cover(two));
  // the canonical instance string uses the comma form; both parse to the same cover
  CHECK(cover_instance(two) == "sigma=1,2,3;parts=1,2|2,3|1,3;lambda=2");
  CHECK(parse_cover(cover_instance(two)) == two);

  CHECK_THROWS_AS(parse_cover("parts=1|2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cover("sigma=1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cover("sigma=1;parts=2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cover("sigma=0,1;parts=01"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cover("sigma=1,2;parts=1|2;lambda=0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cover("sigma=1,2;parts=1|2;zap=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cover("sigma=1,2;parts=1|x"), std::invalid_argument);
}

TEST_CASE("the check registry is canonical and complete") {
  const auto& reg = check_registry();
  CHECK(reg.size() == 17);
  std::set<std::string> ids;
  for (size_t k = 0; k < reg.size(); ++k) {
    CHECK(!reg[k].statement.empty());
    ids.insert(reg[k].id);
    if (k > 0) CHECK(reg[k - 1].id < reg[k].id);
  }
  CHECK(ids.size() == reg.size());
  CHECK(ids.count("cover.bt") == 1);
  CHECK(ids.count("volint") == 1);
  for (const auto& e : reg) {
    if (e.id.rfind("measure.", 0) == 0) CHECK(e.uses_measure);
    if (e.id.rfind("lp.", 0) == 0) CHECK(e.uses_p);
    if (e.id.rfind("cover.", 0) == 0) CHECK(e.exact);
  }
}

TEST_CASE("run_check covers every registered id with a passing default instance") {
  CheckParams P;
  P.n = 3;
  P.samples = 4000;
  for (const auto& e : check_registry()) {
    CAPTURE(e.id);
    CheckReport r = run_check(e.id, P, 11);
    CHECK(r.theorem_id == e.id);
    CHECK(!r.instance.empty());
    CHECK(r.pass);
    if (e.exact) CHECK(r.method == "exact");
    // same id, same params, same seed: byte-identical report
    CheckReport r2 = run_check(e.id, P, 11);
    CHECK(report_json_line(r2) == report_json_line(r));
  }
}

TEST_CASE("run_check honours explicit bodies, covers, and measures") {
  CheckParams P;
  P.n = 2;
  P.p = LpParam::one();
  P.body_a = ab_simplex(rv({1, 1}));
  P.body_b = ab_simplex(rv({1, 1}));

  // |A + B| = 2 and |A - B| = 3 for the standard triangle
  CheckReport rk = run_check("lp.kleitman.reverse", P, 5);
  CHECK(rk.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rk.rhs == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(rk.method == "exact");
  CHECK(rk.pass);

  // splitting bound for the same pair: 1/2 + 1/2 + 1 + 1 = 3 over four splittings
  CheckReport ss = run_check("cover.sum-split", P, 5);
  CHECK(ss.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ss.rhs == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(ss.method == "exact");
  CHECK(ss.pass);

  // three triangles: |3T| = 4.5 against 3 * 1/2 + 6 * 1 = 7.5 over nine splittings
  CheckParams P3 = P;
  P3.m = 3;
  P3.body_c = ab_simplex(rv({1, 1}));
  CheckReport s3 = run_check("cover.sum-split", P3, 5);
  CHECK(s3.lhs == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(s3.rhs == doctest::Approx(7.5).epsilon(1e-12));
  CHECK(s3.pass);

  CheckParams Q;
  Q.n = 3;
  Q.i = 2;
  Q.body_a = ab_box(rv({1, 1, 1}));
  Q.cover = parse_cover("sigma=1,2,3;parts=12|23|13;lambda=2");
  CheckReport bt = run_check("cover.bt", Q, 5);
  CHECK(bt.instance.find("sigma=1,2,3") != std::string::npos);
  CHECK(bt.pass);

  CheckReport sf = run_check("const.sharp-forms", Q, 5);
  CHECK(sf.instance.find("zeta=4/3") != std::string::npos);
  CHECK(sf.instance.find("r=4/3") != std::string::npos);
  CHECK(sf.pass);

  Q.measure = "exp:1,exp:1,exp:1";
  CheckReport mu = run_check("measure.kleitman.reverse", Q, 5);
  CHECK(mu.instance.find("mu=exp:1,exp:1,exp:1") != std::string::npos);
  CHECK(mu.pass);

  // dimension mismatches and bad parameters surface as invalid_argument
  CheckParams bad;
  bad.n = 3;
  bad.body_a = ab_box(rv({1, 1}));
  CHECK_THROWS_AS(run_check("cover.bt", bad, 1), std::invalid_argument);
  CheckParams badi;
  badi.n = 3;
  badi.i = 3;
  CHECK_THROWS_AS(run_check("lp.proj.ratio-sum", badi, 1), std::invalid_argument);
  CheckParams badp;
  badp.n = 2;
  badp.p = LpParam::inf();
  CHECK_THROWS_AS(run_check("volint", badp, 1), std::invalid_argument);
  CheckParams badmu;
  badmu.n = 3;
  badmu.measure = "exp:1,exp:1";
  CHECK_THROWS_AS(run_check("measure.bt", badmu, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_check("nope.nope", P, 1), std::invalid_argument);
}

TEST_CASE("sharpness probes climb to the constants they certify") {
  SUBCASE("difference-body constant, n = 3") {
    ProbeResult z = sharpness_probe("zeta", 3, LpParam::one(), 1);
    REQUIRE(z.constant.exact.has_value());
    CHECK(*z.constant.exact == Rat(4, 3));
    REQUIRE(z.points.size() == 9);
    CHECK(z.points.front().t == 1);
    CHECK(z.points.back().t == Rat(1, 256));
    for (size_t k = 0; k < z.points.size(); ++k) {
      REQUIRE(z.points[k].exact_ratio.has_value());
      CHECK(*z.points[k].exact_ratio <= *z.constant.exact);
      if (k > 0) CHECK(*z.points[k].exact_ratio >= *z.points[k - 1].exact_ratio);
    }
    CHECK(to_double(*z.points.back().exact_ratio) >= 0.95 * z.constant.approx);
  }

  SUBCASE("projection-ratio constant, n = 3, i = 2") {
    ProbeResult r = sharpness_probe("r", 3, LpParam::one(), 2);
    REQUIRE(r.constant.exact.has_value());
    CHECK(*r.constant.exact == Rat(4, 3));
    for (size_t k = 1; k < r.points.size(); ++k)
      CHECK(*r.points[k].exact_ratio >= *r.points[k - 1].exact_ratio);
    CHECK(to_double(*r.points.back().exact_ratio) >= 0.95 * r.constant.approx);

    // the Firey ratio constant at p = 1 is the same number, same family
    ProbeResult nu = sharpness_probe("nu", 3, LpParam::one(), 2);
    CHECK(nu.constant.approx == doctest::Approx(r.constant.approx).epsilon(1e-12));
    REQUIRE(nu.points.size() == r.points.size());
    for (size_t k = 0; k < r.points.size(); ++k)
      CHECK(*nu.points[k].exact_ratio == *r.points[k].exact_ratio);
  }

  SUBCASE("triangle-bound constant at both endpoints") {
    ProbeResult b1 = sharpness_probe("b", 3, LpParam::one(), 1);
    ConstantResult z = zeta(3, 2);
    CHECK(b1.constant.approx == doctest::Approx(z.approx).epsilon(1e-12));
    CHECK(to_double(*b1.points.back().exact_ratio) >= 0.95 * b1.constant.approx);

    ProbeResult binf = sharpness_probe("b", 3, LpParam::inf(), 1);
    CHECK(binf.constant.approx == doctest::Approx(3.0).epsilon(1e-12));
    for (size_t k = 0; k < binf.points.size(); ++k) {
      REQUIRE(binf.points[k].exact_ratio.has_value());
      if (k > 0) CHECK(*binf.points[k].exact_ratio >= *binf.points[k - 1].exact_ratio);
    }
    CHECK(to_double(*binf.points.back().exact_ratio) >= 0.95 * 3.0);
  }

  SUBCASE("finite exponents probe deterministically without exact ratios") {
    ProbeResult nu = sharpness_probe("nu", 3, LpParam::finite(2), 1);
    CHECK(nu.constant.approx > 0);
    REQUIRE(nu.points.size() == 9);
    for (size_t k = 0; k < nu.points.size(); ++k) {
      CHECK(!nu.points[k].exact_ratio.has_value());
      CHECK(nu.points[k].ratio <= nu.constant.approx * (1 + 1e-9));
      if (k > 0) CHECK(nu.points[k].ratio >= nu.points[k - 1].ratio - 1e-12);
    }
    CHECK(nu.points.back().ratio >= 0.95 * nu.constant.approx);

    ProbeResult b2 = sharpness_probe("b", 3, LpParam::finite(1.5), 1);
    CHECK(b2.points.back().ratio >= 0.95 * b2.constant.approx);
    CHECK(b2.points.back().ratio <= b2.constant.approx * (1 + 1e-9));
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_AS(sharpness_probe("xi", 3, LpParam::one(), 1), std::invalid_argument);
    CHECK_THROWS_AS(sharpness_probe("r", 3, LpParam::one(), 3), std::invalid_argument);
    CHECK_THROWS_AS(sharpness_probe("nu", 3, LpParam::one(), 0), std::invalid_argument);
    CHECK_THROWS_AS(sharpness_probe("zeta", 1, LpParam::one(), 1), std::invalid_argument);
  }
}

TEST_CASE("campaigns are deterministic, filterable, and byte-stable across jobs") {
  CampaignConfig cfg;
  cfg.dims = {2, 3};
  cfg.trials = 3;
  cfg.samples = 2000;
  cfg.seed = 7;

  CampaignSummary s = campaign(cfg);
  CHECK(s.total == 2 * 3 * 17);
  CHECK(s.failed == 0);
  CHECK(s.mc_reports > 0);
  CHECK(s.reports.size() == size_t(s.total));
  CHECK(s.per_theorem.size() == 17);
  CHECK(s.per_theorem.at("cover.bt").runs == 6);
  CHECK(s.per_theorem.at("cover.bt").failures == 0);
  CHECK(s.expected_false_failures ==
        doctest::Approx(s.mc_reports * 0.001349898).epsilon(1e-4));
  for (size_t k = 1; k < s.reports.size(); ++k)
    CHECK(s.reports[k - 1].theorem_id <= s.reports[k].theorem_id);

  // thread count must not change a single byte of the report stream
  CampaignConfig cfg3 = cfg;
  cfg3.jobs = 3;
  CampaignSummary s3 = campaign(cfg3);
  REQUIRE(s3.reports.size() == s.reports.size());
  for (size_t k = 0; k < s.reports.size(); ++k)
    CHECK(report_json_line(s3.reports[k]) == report_json_line(s.reports[k]));

  SUBCASE("filters select by regex over ids") {
    CampaignConfig f = cfg;
    f.dims = {2};
    f.trials = 1;
    f.filter = "^measure\\.";
    CampaignSummary sm = campaign(f);
    CHECK(sm.total == 6);
    for (const auto& r : sm.reports) CHECK(r.theorem_id.rfind("measure.", 0) == 0);
    f.filter = "kleitman";
    CampaignSummary sk = campaign(f);
    CHECK(sk.total == 2);
  }

  SUBCASE("report files hold one JSON object per line") {
    CampaignConfig f = cfg;
    f.dims = {2};
    f.trials = 2;
    f.output_path = "harness_campaign_test.jsonl";
    CampaignSummary sf = campaign(f);
    auto lines = read_lines(f.output_path);
    REQUIRE(lines.size() == size_t(sf.total));
    for (size_t k = 0; k < lines.size(); ++k)
      CHECK(lines[k] == report_json_line(sf.reports[k]));
    std::remove(f.output_path.c_str());
  }

  SUBCASE("configuration errors are invalid_argument, write errors carry the path") {
    CampaignConfig bad = cfg;
    bad.filter = "(";
    CHECK_THROWS_AS(campaign(bad), std::invalid_argument);
    bad = cfg;
    bad.dims = {1};
    CHECK_THROWS_AS(campaign(bad), std::invalid_argument);
    bad = cfg;
    bad.dims.clear();
    CHECK_THROWS_AS(campaign(bad), std::invalid_argument);
    bad = cfg;
    bad.trials = 0;
    CHECK_THROWS_AS(campaign(bad), std::invalid_argument);
    bad = cfg;
    bad.dims = {2};
    bad.trials = 1;
    bad.filter = "volint";
    bad.output_path = "no-such-dir/report.jsonl";
    try {
      campaign(bad);
      CHECK(false);
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("no-such-dir/report.jsonl") != std::string::npos);
    }
  }
}

TEST_CASE("report serialization uses fixed key order and shortest doubles") {
  CheckReport r;
  r.theorem_id = "cover.bt";
  r.instance = "n=2, says \"hi\"";
  r.lhs = 0.5;
  r.lhs_stderr = 0;
  r.rhs = 2;
  r.rhs_stderr = 0.25;
  r.constant = 1;
  r.margin = -0.125;
  r.pass = true;
  r.method = "exact";
  CHECK(report_json_line(r) ==
        "{\"theorem_id\":\"cover.bt\",\"instance\":\"n=2, says \\\"hi\\\"\","
        "\"lhs\":0.5,\"lhs_stderr\":0,\"rhs\":2,\"rhs_stderr\":0.25,"
        "\"constant\":1,\"margin\":-0.125,\"pass\":true,\"method\":\"exact\"}");
  CHECK(report_csv_header() ==
        "theorem_id,instance,lhs,lhs_stderr,rhs,rhs_stderr,constant,margin,pass,method");
  CHECK(report_csv_line(r) ==
        "cover.bt,\"n=2, says \"\"hi\"\"\",0.5,0,2,0.25,1,-0.125,true,exact");

  r.pass = false;
  r.lhs = 1.0 / 3.0;
  std::string line = report_json_line(r);
  CHECK(line.find("\"lhs\":0.3333333333333333,") != std::string::npos);
  CHECK(line.find("\"pass\":false") != std::string::npos);

  // the sixteen significant digits above round-trip to the same double
  CHECK(std::stod("0.3333333333333333") == 1.0 / 3.0);
}
