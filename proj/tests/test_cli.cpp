#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string &args) {
  const std::string cmd = std::string(SGA_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe))
    out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path tmp(const std::string &name) {
  const auto dir = fs::temp_directory_path() / "sga_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

} // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("verify --level 1").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("nonsense").code == 2);
  CHECK(run("verify --level 3 --tol bogus=1").code == 2);
  CHECK(run("verify --level 3 --format xml").code == 2);
  CHECK(run("eigenstates --level 2 --indices 1,2").code == 2);
  CHECK(run("eigenstates --level 3 --indices 7").code == 2);
  CHECK(run("simulate --dt 0.5 --out /dev/null").code == 2);
  CHECK(run("simulate --x0 1,0,0 --out /dev/null").code == 2);
  CHECK(run("verify --level 2 --out /nonexistent-dir/r.json").code == 2);
}

TEST_CASE("verify: pass, report schema and byte-identical output") {
  const auto a = tmp("a.json"), b = tmp("b.json");
  CHECK(run("verify --level 3 --out " + a.string()).code == 0);
  CHECK(run("verify --level 3 --out " + b.string()).code == 0);
  const auto sa = slurp(a);
  CHECK(!sa.empty());
  CHECK(sa == slurp(b));
  const auto j = nlohmann::json::parse(sa);
  CHECK(j["pass"] == true);
  CHECK(j["max_level"] == 3);
  // The parsed object sorts keys; field order is checked on the raw text.
  CHECK(sa.find("{\"check\":") != std::string::npos);
  CHECK(sa.find("\"residual\":") < sa.find("\"tolerance\":"));
}

TEST_CASE("verify: negative control with c = 0 fails") {
  const auto r = run("verify --level 3 --c 0");
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == false);
  bool tensor_failed = false;
  for (const auto &c : j["checks"])
    if (c["check"].get<std::string>().rfind("restrictive.T~[", 0) == 0 && c["pass"] == false)
      tensor_failed = true;
  CHECK(tensor_failed);
}

TEST_CASE("verify: an impossible tolerance fails honestly") {
  CHECK(run("verify --level 2 --tol default=0").code == 1);
}

TEST_CASE("spectrum table") {
  const auto r = run("spectrum --level 3 --format json");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 4);
  const int E[] = {0, 3, 8, 15}, d[] = {1, 4, 9, 16};
  for (int n = 0; n < 4; ++n) {
    CHECK(j[n]["E"] == E[n]);
    CHECK(j[n]["degeneracy"] == d[n]);
  }
  const auto r0 = run("spectrum --level 0 --format json");
  CHECK(nlohmann::json::parse(r0.out).size() == 1);
}

TEST_CASE("eigenstates") {
  const auto r = run("eigenstates --level 3 --indices 1,2");
  CHECK(r.code == 0);
  CHECK(r.out.find("x1*x2") != std::string::npos);
}

TEST_CASE("simulate") {
  const auto csv = tmp("traj.csv"), rep = tmp("traj.json");
  CHECK(run("simulate --x0 1,0,0,0 --p0 0,1,0,0 --periods 10 --out " + csv.string() +
            " --report " + rep.string())
            .code == 0);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  CHECK(header == "t,x1,x2,x3,x4,p1,p2,p3,p4,H,J12,J13,J14,J23,J24,J34");
  const auto j = nlohmann::json::parse(slurp(rep));
  for (const auto &c : j)
    CHECK(c["pass"] == true);

  // Off-surface start is projected, not rejected.
  CHECK(run("simulate --x0 2,0,0,0 --p0 0.3,1,0,0 --periods 2 --out /dev/null").code == 0);

  // p0 = 0 is a fixed point.
  const auto rest = tmp("rest.json");
  CHECK(run("simulate --p0 0,0,0,0 --out /dev/null --report " + rest.string()).code == 0);
  CHECK(slurp(rest).find("degenerate") != std::string::npos);

  const auto traj_json = run("simulate --p0 0,2,0,0 --periods 1 --format json");
  CHECK(traj_json.code == 0);
  CHECK(nlohmann::json::parse(traj_json.out)["method"] == "rk4");
}

TEST_CASE("bracket oracle") {
  const auto r = run("bracket-oracle --seed 4 --format json");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).size() == 5);
  CHECK(run("bracket-oracle --count 0").code == 2);
}
