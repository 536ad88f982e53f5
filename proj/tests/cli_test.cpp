// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line binary: grammar, output formats,
// exit codes, byte determinism, and the replay round-trip.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_binary;

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, got);
  const int rc = ::pclose(p);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

}  // namespace

TEST_CASE("atypical continuant enumeration for theta = 2 is exact and deterministic") {
  const std::string args =
      "atypical --theta rational:2/1 --limit 1e15 --method continuant "
      "--format json --no-timestamp";
  const RunResult a = run(args);
  CHECK(a.status == 0);
  const auto j = nlohmann::json::parse(a.out);
  REQUIRE(j.at("members").size() == 2);
  CHECK(j["members"][0] == "1");
  CHECK(j["members"][1] == "777451915729368");
  CHECK(j["complete"] == true);
  // Identical invocation, identical bytes.
  const RunResult b = run(args);
  CHECK(a.out == b.out);
}

TEST_CASE("emitted reports replay cleanly; tampered ones fail") {
  const RunResult a = run(
      "atypical --theta rational:2/1 --limit 1e15 --method continuant "
      "--format json --no-timestamp");
  REQUIRE(a.status == 0);
  const char* path = "/tmp/fproots_report_test.json";
  {
    std::ofstream f(path);
    f << a.out;
  }
  const RunResult r = run(std::string("replay --file ") + path);
  CHECK(r.status == 0);
  CHECK(r.out.find("2 ok") != std::string::npos);

  auto j = nlohmann::json::parse(a.out);
  j["certificates"][1]["atypical"] = false;
  {
    std::ofstream f(path);
    f << j.dump(2);
  }
  const RunResult bad = run(std::string("replay --file ") + path);
  CHECK(bad.status == 4);
}

TEST_CASE("mtheta rows and the exp-rational example") {
  // n = 1 sits below log2(theta) for theta = e^3, so M (via the fractional
  // part of theta itself) and M' legitimately differ: M' = 0, typical -1.
  const RunResult r = run("mtheta --theta exp-rational:3/1 --n 1 --format csv");
  CHECK(r.status == 0);
  CHECK(r.out.find("1,11,0,-1,true,ok") != std::string::npos);
  // Negative range shows the symmetry.
  const RunResult s =
      run("mtheta --theta \"exp-quadratic:(0+1*sqrt(2))/1\" --n=-3..3 --format csv");
  CHECK(s.status == 0);
  CHECK(s.out.find("-1,-,-2,-,-,ok") != std::string::npos);
  CHECK(s.out.find("0,-,-,-,-,undefined") != std::string::npos);
}

TEST_CASE("atypical scans: sqrt2 empty, rational bound spot check") {
  const RunResult empty = run(
      "atypical --theta \"exp-quadratic:(0+1*sqrt(2))/1\" --limit 1e6 "
      "--method continuant --format csv");
  CHECK(empty.status == 0);
  CHECK(empty.out == "n\n");

  const RunResult e10 =
      run("atypical --theta exp-rational:10/1 --limit 1000 --method direct --format csv");
  CHECK(e10.status == 0);
  // All members below 100/6 < 17.
  std::istringstream lines(e10.out);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    CHECK(std::stol(line) < 17);
  }
}

TEST_CASE("cf command pins B_35 and the halved expansion") {
  const RunResult r = run(
      "cf --value \"2/log(rational:2/1)\" --terms 36 --format json --no-timestamp");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("rows").size() == 37);
  CHECK(j["rows"][35]["B"] == "777451915729368");

  const RunResult h = run(
      "cf --value \"1/log(from-cf:[0;2,period(4)])\" --terms 5 --format json "
      "--no-timestamp");
  CHECK(h.status == 0);
  const auto hj = nlohmann::json::parse(h.out);
  CHECK(hj["rows"][0]["a"] == "0");
  CHECK(hj["rows"][1]["a"] == "4");
  CHECK(hj["rows"][2]["a"] == "2");
  CHECK(hj["rows"][3]["a"] == "8");
}

TEST_CASE("verify scenarios and exit codes") {
  CHECK(run("verify --case log2-endpoints").status == 0);
  CHECK(run("verify --case family-infinite --params c=4 --depth 8").status == 0);
  CHECK(run("verify --case family-empty --params c=1 --depth 8 --limit 500").status == 0);
  CHECK(run("verify --case rational-bound --params p=10,q=1").status == 0);
  CHECK(run("verify --case no-such-case").status == 2);
  CHECK(run("atypical --theta rational:1/2 --limit 10").status == 2);
  CHECK(run("atypical --theta exp-rational:2/1 --limit 10 --method continuant").status == 2);
}

TEST_CASE("stats: deterministic CSV with a forced family sample") {
  const std::string args =
      "stats --samples 3 --seed 42 --limit 1e6 "
      "--include-theta \"exp-quadratic:(-1+1*sqrt(5))/1\"";
  const RunResult a = run(args);
  CHECK(a.status == 0);
  // Forced theta = e^(sqrt5 - 1) has an empty atypical set.
  CHECK(a.out.find("exp-quadratic:(-1+1*sqrt(5))/1,1000000,0,") != std::string::npos);
  CHECK(a.out.find("aggregate,") != std::string::npos);
  const RunResult b = run(args);
  CHECK(a.out == b.out);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-fproots-binary>\n");
    return 2;
  }
  g_binary = argv[1];
  doctest::Context ctx;
  return ctx.run();
}
