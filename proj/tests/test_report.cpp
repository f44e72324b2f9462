// fanstalk tests: the report pipelines — JSON shape, verdicts and exit
// codes, determinism, the text rendering, and the embedded oracle battery.
// Distributed under the MIT license; see LICENSE.

#include <catch2/catch_amalgamated.hpp>

#include "fanstalk/fanstalk.hpp"

using namespace fanstalk;

namespace {

const std::string kPair = "vars: x y\nx^2 - y^3\nx^2 - y^5\n";
const std::string kTwisted = "vars: x y\nx - 1\ny - 1\nx*y^5 - 1\n";
const std::string kTriple = "vars: x y\nx - 1\ny - 1\nx*y - 1\n";
const std::string kAxes = "vars: x1 x2\nx1\nx2\n";

} // namespace

TEST_CASE("input digest matches the reference vectors", "[report]") {
  CHECK(input_digest("") == "cbf29ce484222325");
  CHECK(input_digest("a") == "af63dc4c8601ec8c");
  CHECK(input_digest("fanstalk").size() == 16);
  CHECK(input_digest("a") != input_digest("b"));
}

TEST_CASE("JSON integers are range checked", "[report]") {
  CHECK(json_int(Int(5)) == 5);
  CHECK(json_int(Int(-7)) == -7);
  CHECK_THROWS_MATCHES(json_int(Int(1) << 70), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::NumberOverflow;
                       }));
}

TEST_CASE("resolve pipeline on the plane-curve pair", "[report]") {
  PipelineOptions opts;
  RunResult r = run_resolve(kPair, opts);
  REQUIRE(r.exit_code == 0);
  const Json& j = r.report;
  CHECK(j["schema"] == 1);
  CHECK(j["tool"] == "fanstalk");
  CHECK(j["command"] == "resolve");
  CHECK(j["input_hash"].get<std::string>().size() == 16);
  CHECK(j["characteristic"] == 0);
  CHECK(j["variables"] == Json::array({"x", "y"}));
  CHECK(j["members"].size() == 2);

  CHECK(j["newton_polyhedron"]["vertices"] ==
        Json::array({Json::array({0, 8}), Json::array({2, 3}),
                     Json::array({4, 0})}));
  CHECK(j["stacky_fan"]["m"] == 2);
  CHECK(j["stacky_fan"]["n"] == 4);
  CHECK(j["stacky_fan"]["M"][0] == Json::array({1, 0, 3, 5}));
  CHECK(j["stacky_fan"]["M"][1] == Json::array({0, 1, 2, 2}));

  // The pullback data is chart independent; every chart reports it.
  REQUIRE(j["transform"].size() == 3);
  for (const Json& chart : j["transform"]) {
    const Json& f = chart["members"][0];
    CHECK(f["member"] == 1);
    CHECK(f["kind"] == "pure");
    CHECK(f["W"] == Json::array({0, 0, 6, 6}));
    CHECK(f["U"] == Json::array({2, 0, 0, 4}));
    CHECK(f["V"] == Json::array({0, 3, 0, 0}));
    CHECK(f["lambda"] == "1");
    CHECK(f["multiplicity"] == 1);
    CHECK(f["schoen"] == true);
    const Json& g = chart["members"][1];
    CHECK(g["W"] == Json::array({0, 0, 6, 10}));
    CHECK(g["U"] == Json::array({2, 0, 0, 0}));
    CHECK(g["V"] == Json::array({0, 5, 4, 0}));
    CHECK(g["schoen"] == true);
    CHECK(chart["snc"] == true);
  }
  CHECK(j["schoen"] == true);
  CHECK(j["snc"] == true);
  CHECK(j["primes"] == Json::array({2})); // det of the exponent rows is -4
  CHECK(!j["arrangement"].is_null());
  CHECK(j["verdict"]["ok"] == true);
  CHECK(j["verdict"]["reasons"] == Json::array());

  // Byte-identical determinism, JSON and text alike.
  RunResult again = run_resolve(kPair, opts);
  CHECK(r.report.dump(2) == again.report.dump(2));
  CHECK(r.text == again.text);

  CHECK(r.report.dump(2).rfind("{\n  \"schema\": 1,\n  \"tool\": \"fanstalk\"",
                               0) == 0);
  CHECK(r.text.rfind("schema: 1\ntool: fanstalk", 0) == 0);
  CHECK(r.text.find("- [1, 0, 3, 5]") != std::string::npos);
  CHECK(r.text.find("verdict:") != std::string::npos);
}

TEST_CASE("problematic prime verdicts", "[report]") {
  PipelineOptions opts;
  RunResult rp = run_primes(kTwisted, opts);
  REQUIRE(rp.exit_code == 0);
  CHECK(rp.report["primes"] == Json::array({5}));

  PipelineOptions at5 = opts;
  at5.characteristic = 5;
  RunResult bad = run_primes(kTwisted, at5);
  CHECK(bad.exit_code == 2);
  CHECK(bad.report["verdict"]["ok"] == false);
  CHECK(!bad.report["verdict"]["reasons"].empty());

  RunResult resolve5 = run_resolve(kTwisted, at5);
  CHECK(resolve5.exit_code == 2);
  CHECK(resolve5.report["arrangement"].is_null()); // skipped at a bad prime

  // At a good prime the arrangement is computed and simple; the verdict still
  // flags the chart-level triple point, which is what the schedule repairs.
  PipelineOptions at7 = opts;
  at7.characteristic = 7;
  RunResult resolve7 = run_resolve(kTwisted, at7);
  CHECK(resolve7.exit_code == 2);
  REQUIRE(!resolve7.report["arrangement"].is_null());
  CHECK(resolve7.report["arrangement"]["simple"] == true);
  CHECK(!resolve7.report["arrangement"]["schedule"].is_null());
  CHECK(run_primes(kTwisted, at7).exit_code == 0);
}

TEST_CASE("triple point verdicts", "[report]") {
  PipelineOptions opts;
  RunResult r = run_resolve(kTriple, opts);
  CHECK(r.exit_code == 2);
  const Json& j = r.report;
  CHECK(j["schoen"] == true);
  CHECK(j["snc"] == false);
  REQUIRE(j["transform"].size() == 1);
  CHECK(j["transform"][0]["failing_subsets"] ==
        Json::array({Json::array({1, 2, 3})}));
  // The arrangement itself is simple: the staged schedule still exists.
  CHECK(j["arrangement"]["simple"] == true);
  CHECK(j["arrangement"]["poset"]["nodes"].size() == 4);
  CHECK(j["arrangement"]["schedule"].size() == 2);
  CHECK(j["verdict"]["ok"] == false);
}

TEST_CASE("monomial-only input short-circuits", "[report]") {
  PipelineOptions opts;
  RunResult r = run_resolve("vars: x y\nx^2*y\n", opts);
  CHECK(r.exit_code == 0);
  CHECK(r.report["primes"] == Json::array());
  CHECK(r.report.contains("note"));
  CHECK(r.report["arrangement"].is_null());
  CHECK(r.report["snc"] == true);
}

TEST_CASE("ideal pipeline on the coordinate axes", "[report]") {
  PipelineOptions opts;
  opts.oracle_verify = true;
  RunResult r = run_ideal(kAxes, opts);
  REQUIRE(r.exit_code == 0);
  const Json& j = r.report;
  CHECK(j["command"] == "ideal");
  CHECK(j["fan"]["rays"].size() == 3);
  REQUIRE(j["decomposition"].size() == 2);
  for (const Json& chart : j["decomposition"]) {
    CHECK(chart["strata"].size() == 3);
    CHECK(chart["simple_normal_position"] == true);
  }
  CHECK(j["simple_normal_position"] == true);
  CHECK(j["minimality_checked"] == false);
  REQUIRE(j.contains("oracle"));
  for (const Json& c : j["oracle"]) CHECK(c["status"] == "pass");
}

TEST_CASE("oracle battery statuses", "[report]") {
  PipelineOptions opts;
  RunResult r = run_oracle(kPair, opts);
  REQUIRE(r.exit_code == 0);
  REQUIRE(!r.report["checks"].empty());
  for (const Json& c : r.report["checks"]) {
    CHECK((c["status"] == "pass" || c["status"] == "skip"));
    CHECK(c.contains("name"));
    CHECK(c.contains("detail"));
  }

  PipelineOptions verif;
  verif.oracle_verify = true;
  RunResult rr = run_resolve(kPair, verif);
  CHECK(rr.exit_code == 0);
  REQUIRE(rr.report.contains("oracle"));
  for (const Json& c : rr.report["oracle"])
    CHECK((c["status"] == "pass" || c["status"] == "skip"));
  CHECK(run_fan(kPair, verif).exit_code == 0);
}

TEST_CASE("star subdivision keeps the verdicts", "[report]") {
  PipelineOptions star;
  star.star_subdivide = true;
  RunResult r = run_resolve(kPair, star);
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["fan"].contains("vertices"));
  CHECK(r.report["fan"]["vertices"].size() ==
        r.report["fan"]["maximal_cones"].size());
  CHECK(r.report["schoen"] == true);
  CHECK(r.report["snc"] == true);

  RunResult ideal = run_ideal(kAxes, star);
  CHECK(ideal.exit_code == 0);
  CHECK(ideal.report["simple_normal_position"] == true);
}

TEST_CASE("subset cap configuration", "[report]") {
  PipelineOptions tiny;
  tiny.max_subset_size = 2;
  CHECK_THROWS_MATCHES(run_resolve(kTwisted, tiny), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::TooManyMembers;
                       }));
}

TEST_CASE("fan pipeline reports the dual fan", "[report]") {
  PipelineOptions opts;
  RunResult r = run_fan(kPair, opts);
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["command"] == "fan");
  CHECK(r.report["fan"]["rays"].size() == 4);
  CHECK(r.report["fan"]["maximal_cones"].size() == 3);
  CHECK(r.report["newton_polyhedron"]["vertices"].size() == 3);
  CHECK(r.report["verdict"]["ok"] == true);
}
