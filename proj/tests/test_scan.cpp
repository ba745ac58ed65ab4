#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ptdomain/errors.hpp"
#include "ptdomain/scan.hpp"

using namespace ptdomain;

TEST_CASE("csv fields are quoted only when needed") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(csv_field("") == "");
}

TEST_CASE("numbers round-trip through format_number") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 12345678.9, 1e300}) {
    CHECK(std::stod(format_number(x)) == x);
  }
}

TEST_CASE("axis ranges") {
  const auto r = parse_axis_range("-1.5:1.5:301");
  CHECK(r.steps == 301);
  CHECK(r.at(0) == -1.5);
  CHECK(r.at(300) == 1.5);
  CHECK(r.at(150) == doctest::Approx(0.0));
  const auto pinned = parse_axis_range("0.25");
  CHECK(pinned.steps == 1);
  CHECK(pinned.at(0) == 0.25);
  CHECK_THROWS_AS(parse_axis_range("1:0:3"), InvalidInput);
  CHECK_THROWS_AS(parse_axis_range("0:1:0"), InvalidInput);
  CHECK_THROWS_AS(parse_axis_range("0:1"), InvalidInput);
  CHECK_THROWS_AS(parse_axis_range("a:1:2"), InvalidInput);
}

TEST_CASE("N = 2 grid is inside exactly for |g| < 1") {
  ScanConfig config;
  config.dimension = 2;
  config.grid = {parse_axis_range("-1.5:1.5:301")};
  const auto records = run_scan(config);
  REQUIRE(records.size() == 301);
  for (const auto& r : records) {
    const double g = r.couplings.at(0);
    CHECK_FALSE(r.mismatch);
    if (std::abs(g) < 1.0 - 1e-6) {
      CHECK(r.verdict == "inside");
    } else if (std::abs(g) > 1.0 + 1e-6) {
      CHECK(r.verdict == "outside");
    } else {
      CHECK(r.verdict != "inside");
    }
  }
}

TEST_CASE("grid order: last axis fastest") {
  ScanConfig config;
  config.dimension = 4;
  config.grid = {parse_axis_range("0:1:2"), parse_axis_range("0:2:3")};
  const auto points = scan_points(config);
  REQUIRE(points.size() == 6);
  CHECK(points[0].couplings() == std::vector<double>{0.0, 0.0});
  CHECK(points[1].couplings() == std::vector<double>{0.0, 1.0});
  CHECK(points[3].couplings() == std::vector<double>{1.0, 0.0});
}

TEST_CASE("random scans are reproducible and agree with the oracle") {
  for (int n : {3, 5, 8, 11}) {
    ScanConfig config;
    config.dimension = n;
    config.random_points = 300;
    config.seed = 11;
    config.threads = 3;
    config.spectrum = true;
    std::ostringstream a, b;
    const auto first = run_scan(config);
    write_csv(a, first);
    config.threads = 1;
    write_csv(b, run_scan(config));
    CHECK(a.str() == b.str());
    for (const auto& r : first) {
      CHECK_FALSE(r.mismatch);
      CHECK(r.min_root.has_value());
    }
  }
}

TEST_CASE("random box points stay in the box") {
  const auto points = random_box_points(7, 200, 5);
  REQUIRE(points.size() == 200);
  for (const auto& p : points) {
    for (int k = 1; k <= 3; ++k) {
      const auto& sq = p.squares()[static_cast<std::size_t>(k - 1)];
      CHECK(sq >= 0);
      CHECK(sq <= Rational(6 * (7 - k) * k) / 5);
    }
  }
  CHECK(random_box_points(7, 3, 5)[2].squares() == points[2].squares());
}

TEST_CASE("scan modes") {
  const auto c = CouplingVector::from_couplings(4, {0.5, 0.5});
  const auto crit = evaluate_point(c, ScanMode::Criteria, {}, false);
  CHECK(crit.verdict == "inside");
  CHECK(crit.oracle_verdict.empty());
  const auto orac = evaluate_point(c, ScanMode::Oracle, {}, false);
  CHECK(orac.verdict == "inside");
  const auto both = evaluate_point(c, ScanMode::Both, {}, true);
  CHECK(both.oracle_verdict == "inside");
  CHECK(both.min_root_gap.has_value());
  CHECK(parse_scan_mode("oracle") == ScanMode::Oracle);
  CHECK_THROWS_AS(parse_scan_mode("fast"), InvalidInput);
}

TEST_CASE("json config") {
  const auto doc = nlohmann::json::parse(R"({
    "N": 6,
    "grid": [{"min": 0, "max": 1, "steps": 3}, {"min": 0, "max": 1, "steps": 2}, {"min": 0.5, "max": 0.5, "steps": 1}],
    "mode": "criteria",
    "epsilon": 1e-8,
    "output": {"path": "out.json", "format": "json"},
    "seed": 42,
    "threads": 2
  })");
  const auto config = config_from_json(doc);
  CHECK(config.dimension == 6);
  CHECK(config.grid.size() == 3);
  CHECK(config.mode == ScanMode::Criteria);
  CHECK(config.epsilon == 1e-8);
  CHECK(config.output == "out.json");
  CHECK(config.format == OutputFormat::Json);
  CHECK(config.seed == 42);
  CHECK(scan_points(config).size() == 6);

  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"N": "six"})")), InvalidInput);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"([1, 2])")), InvalidInput);
  ScanConfig wrong;
  wrong.dimension = 6;
  wrong.grid = {parse_axis_range("0:1:2")};
  CHECK_THROWS_AS(validate(wrong), InvalidInput);
  wrong.dimension = 13;
  CHECK_THROWS_AS(run_scan(wrong), UnsupportedDimension);
}

TEST_CASE("boundary campaign records failures per ray") {
  ScanConfig config;
  config.dimension = 4;
  config.rays = {{1.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}};
  const auto records = run_boundary(config);
  REQUIRE(records.size() == 3);
  REQUIRE(records[0].point.has_value());
  CHECK(records[0].point->radius == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_FALSE(records[1].point.has_value());
  CHECK_FALSE(records[1].error.empty());
  REQUIRE(records[2].point.has_value());
  CHECK(records[2].point->inside_radius <= records[2].point->outside_radius);

  std::ostringstream csv;
  write_csv(csv, records);
  const std::string text = csv.str();
  CHECK(text.rfind("index,N,direction,radius,couplings,inside_radius,outside_radius,root_gap,error\n", 0) == 0);
  std::ostringstream js;
  write_json(js, records);
  CHECK(nlohmann::json::parse(js.str()).size() == 3);
}

TEST_CASE("positive rays") {
  const auto two = positive_rays(4, 5, 0);
  REQUIRE(two.size() == 5);
  CHECK(two.front()[1] == doctest::Approx(0.0));
  CHECK(two.back()[0] == doctest::Approx(0.0));
  for (const auto& d : positive_rays(10, 20, 3)) {
    double norm = 0;
    for (double x : d) {
      CHECK(x >= 0);
      norm += x * x;
    }
    CHECK(norm == doctest::Approx(1.0));
  }
}
