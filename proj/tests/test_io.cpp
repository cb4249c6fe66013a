#include <doctest.h>

#include <stdexcept>
#include <string>

#include "uq/fixtures.hpp"
#include "uq/report.hpp"
#include "uq/scenario_io.hpp"
#include "uq/schemes.hpp"

using namespace uq;

TEST_CASE("scenario files round-trip byte-identically") {
  ScenarioFile sf;
  sf.scenario = gen_random(12, 8, 2, 1.0, true).scenario;
  sf.scenario.target_time = 3.5;
  sf.scheme.kind = SchemeKind::bucket_refined;
  sf.scheme.x = 8;
  sf.scheme.params["t0"] = 1.25;
  sf.report.windows = 6;
  const std::string text = serialize_scenario(sf);
  const ScenarioFile back = parse_scenario(text);
  CHECK(serialize_scenario(back) == text);
  CHECK(back.scenario.size() == 8);
  CHECK(back.scheme.kind == SchemeKind::bucket_refined);
  CHECK(back.scheme.params.at("t0") == doctest::Approx(1.25));
  CHECK(*back.scenario.target_time == doctest::Approx(3.5));
  CHECK(back.report.windows == 6);
}

TEST_CASE("schema errors name the offending field") {
  const std::string bad = R"({
    "dim": 1, "rho": 0.0, "enforce_disjoint": false, "horizon": 2.0,
    "entities": [
      {"id": 0, "waypoints": [[0.0, [1.0]], [1.0, "oops"]]}
    ]
  })";
  try {
    parse_scenario(bad);
    FAIL("expected a schema error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("entities[0].waypoints[1]") !=
          std::string::npos);
  }
}

TEST_CASE("missing required fields and bad ids are rejected") {
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"dim": 1})"), doctest::Contains("rho"),
                       std::runtime_error);
  const std::string bad_id = R"({
    "dim": 1, "rho": 0.0, "enforce_disjoint": false, "horizon": 1.0,
    "entities": [{"id": 1, "waypoints": [[0.0, [0.0]]]}]
  })";
  CHECK_THROWS_WITH_AS(parse_scenario(bad_id), doctest::Contains("id"),
                       std::runtime_error);
  CHECK_THROWS(parse_scenario("not json"));
}

TEST_CASE("csv emission is deterministic and well-formed") {
  const Fixture fx = gen_pairs_fixture(8);
  const QueryTrace tr = pairs_deadline_trace(8, 8.0);
  SchemeConfig scheme;
  scheme.kind = SchemeKind::clairvoyant;
  scheme.x = 1;
  ReportConfig rc;
  rc.sample_dt = 0.5;
  const CongestionReport a = build_report(fx.scenario, tr, scheme, rc);
  const CongestionReport b = build_report(fx.scenario, tr, scheme, rc);
  CHECK(report_csv(a) == report_csv(b));
  CHECK(windows_csv(a) == windows_csv(b));
  CHECK(trace_csv(tr).substr(0, 4) == "time");
  CHECK(report_csv(a).find("degree") != std::string::npos);
  CHECK(report_svg(a).find("<svg") != std::string::npos);
}
