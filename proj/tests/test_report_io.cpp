#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sga/report_io.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <sstream>

using namespace sga;
using namespace sga::report_io;

TEST_CASE("number formatting") {
  CHECK(format_fixed17(0.1) == "0.10000000000000001");
  CHECK(format_fixed17(1.0 / 3.0) == "0.33333333333333331");
  // Trailing zeros are dropped, as with %.17g.
  CHECK(format_fixed17(1e-10) == "1e-10");
  CHECK(format_fixed17(1.5e-12) == "1.5000000000000001e-12");
  CHECK(format_fixed17(2.0) == "2");
  CHECK(format_shortest(0.1) == "0.1");
  CHECK(format_shortest(-2.5) == "-2.5");
  CHECK(format_fixed17(std::numeric_limits<double>::infinity()) == "null");
  CHECK(format_shortest(std::nan("")) == "null");
}

TEST_CASE("shortest form reads back exactly") {
  for (double v : {M_PI, 1.0 / 3.0, 6.02214076e23, -1e-300, 0.0})
    CHECK(std::stod(format_shortest(v)) == v);
}

TEST_CASE("check JSON has a fixed field order") {
  auto c = verify::make_result("commutator[M12,M13]", 1.5e-12, 1e-10, std::pair<int, int>{0, 4});
  const auto s = check_to_json(c);
  CHECK(s.find("{\"check\":") == 0);
  CHECK(s.find("\"residual\"") < s.find("\"tolerance\""));
  CHECK(s.find("\"tolerance\"") < s.find("\"pass\""));
  CHECK(s.find("\"pass\"") < s.find("\"levels\""));
  CHECK(s.find("\"levels\"") < s.find("\"seconds\""));
  const auto j = nlohmann::json::parse(s);
  CHECK(j["pass"] == true);
  CHECK(j["levels"][1] == 4);
  CHECK(j["seconds"].is_null());
  c.seconds = 0.25;
  CHECK(nlohmann::json::parse(check_to_json(c))["seconds"] == 0.25);
}

TEST_CASE("report JSON parses and carries the summary") {
  verify::VerificationReport r;
  r.max_level = 6;
  r.dimension = 140;
  r.checks.push_back(verify::make_result("a", 0.0, 1e-10));
  r.checks.push_back(verify::make_result("b", 1.0, 1e-10));
  const auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["pass"] == false);
  CHECK(j["failures"] == 1);
  CHECK(j["checks"].size() == 2);
  CHECK(j["checks"][1]["check"] == "b");
  const auto text = report_to_text(r);
  CHECK(text.find("FAIL b") != std::string::npos);
  CHECK(text.find("1 of 2 checks failed") != std::string::npos);
}

TEST_CASE("trajectory CSV columns") {
  classical::PhaseState s{{1, 0, 0, 0}, {0, 1, 0, 0}};
  const auto traj = classical::sample_analytic(s, 1.0, 0.5);
  const auto csv = trajectory_to_csv(traj);
  std::istringstream in(csv);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "t,x1,x2,x3,x4,p1,p2,p3,p4,H,J12,J13,J14,J23,J24,J34");
  CHECK(first == "0,1,0,0,0,0,1,0,0,1,1,0,0,0,0,0");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    ++rows;
  CHECK(rows == 2);
  const auto j = nlohmann::json::parse(trajectory_to_json(traj));
  CHECK(j["method"] == "analytic");
  CHECK(j["samples"].size() == 3);
  CHECK(j["samples"][0]["J12"] == 1.0);
}
