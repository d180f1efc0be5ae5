// Copyright 2026 The monoest authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = 0;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(MONOEST_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (fgets(buf, sizeof(buf), pipe) != nullptr) output += buf;
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

const char* kDemoCsv =
    "key,v1,v2,v3\n"
    "a,0.95,0.15,0.25\n"
    "b,0,0.44,0\n"
    "c,0.23,0,0\n"
    "d,0.70,0.80,0.10\n"
    "e,0.10,0.05,0\n"
    "f,0.42,0.50,0.22\n"
    "g,0,0.20,0\n"
    "h,0.32,0,0\n";

const char* kDemoSeeds =
    "{\"a\":0.32,\"b\":0.21,\"c\":0.04,\"d\":0.23,"
    "\"e\":0.84,\"f\":0.70,\"g\":0.15,\"h\":0.64}";

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("sample command reproduces the injected-seed outcomes byte for byte") {
  write_file("/tmp/monoest_demo.csv", kDemoCsv);
  write_file("/tmp/monoest_seeds.json", kDemoSeeds);
  const auto r1 = run_cli(
      "sample --input /tmp/monoest_demo.csv --output /tmp/monoest_s1.jsonl "
      "--tau 1 --salt s1 --inject-seeds /tmp/monoest_seeds.json");
  REQUIRE(r1.exit_code == 0);
  const auto r2 = run_cli(
      "sample --input /tmp/monoest_demo.csv --output /tmp/monoest_s2.jsonl "
      "--tau 1 --salt s1 --inject-seeds /tmp/monoest_seeds.json");
  REQUIRE(r2.exit_code == 0);
  const std::string f1 = read_file("/tmp/monoest_s1.jsonl");
  CHECK(f1 == read_file("/tmp/monoest_s2.jsonl"));
  // Outcome of item a: first instance sampled at 0.95, others bounded by 0.32.
  CHECK(f1.find("\"sampled\":{\"1\":0.95}") != std::string::npos);
  CHECK(f1.find("\"bounds\":{\"2\":0.32,\"3\":0.32}") != std::string::npos);
}

TEST_CASE("degenerate rate is rejected") {
  write_file("/tmp/monoest_demo.csv", kDemoCsv);
  const auto r = run_cli(
      "sample --input /tmp/monoest_demo.csv --output /tmp/monoest_bad.jsonl --tau 0 --salt s");
  CHECK(r.exit_code != 0);
}

TEST_CASE("full-rate round trip reproduces the exact query values") {
  write_file("/tmp/monoest_demo.csv", kDemoCsv);
  const auto s = run_cli(
      "sample --input /tmp/monoest_demo.csv --output /tmp/monoest_full.jsonl "
      "--tau 1e-9 --salt full");
  REQUIRE(s.exit_code == 0);

  const auto check_query = [](const std::string& args, double want, double tol) {
    const auto r = run_cli("--json estimate --samples /tmp/monoest_full.jsonl " + args);
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["estimate"].get<double>() == doctest::Approx(want).epsilon(tol));
  };
  // Exact sums from the dataset: 0.44+0.23+0.05 and 0.23+0.05.
  check_query("--query lpp --p 1 --keys b,c,e", 0.72, 1e-6);
  check_query("--query lpplus --p 1 --keys b,c,e", 0.28, 1e-6);
  check_query("--query lpp --p 2 --keys c,f,h", 0.1617, 1e-6);
  check_query("--query lp --p 2 --keys c,f,h", 0.402119, 1e-5);
  // Threads must not change the result.
  const auto threaded = run_cli(
      "--json --threads 4 estimate --samples /tmp/monoest_full.jsonl --query lpp --p 1 "
      "--keys b,c,e");
  const auto j = nlohmann::json::parse(threaded.output);
  CHECK(j["estimate"].get<double>() == doctest::Approx(0.72).epsilon(1e-9));
}

TEST_CASE("estimate output is deterministic and notes the biased root") {
  write_file("/tmp/monoest_demo.csv", kDemoCsv);
  run_cli("sample --input /tmp/monoest_demo.csv --output /tmp/monoest_e.jsonl --tau 1 --salt s7");
  const std::string args =
      "--json estimate --samples /tmp/monoest_e.jsonl --query lp --p 2 --keys c,f,h";
  const auto r1 = run_cli(args);
  const auto r2 = run_cli(args);
  CHECK(r1.output == r2.output);
  const auto j = nlohmann::json::parse(r1.output);
  CHECK(j.contains("note"));
  CHECK(j["items"] == 3);
}

TEST_CASE("empty domain estimates to zero") {
  write_file("/tmp/monoest_one.csv", "key,v1,v2\nx,0.5,0.25\n");
  run_cli("sample --input /tmp/monoest_one.csv --output /tmp/monoest_one.jsonl --tau 1 --salt s");
  const auto r = run_cli(
      "--json estimate --samples /tmp/monoest_one.jsonl --query lpp --p 1 --keys \"\"");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["estimate"].get<double>() == 0.0);
  CHECK(j["items"] == 0);
  // A bogus key errors out instead of silently skipping.
  const auto bad = run_cli(
      "--json estimate --samples /tmp/monoest_one.jsonl --query lpp --p 1 --keys nope");
  CHECK(bad.exit_code != 0);
}

TEST_CASE("sampling a large synthetic dataset completes") {
  // Throughput smoke: one million rows in, one sample line out per key.
  {
    std::ofstream out("/tmp/monoest_big.csv");
    out << "key,v1,v2\n";
    for (int i = 0; i < 1000000; ++i) {
      out << "k" << i << "," << (i % 97) / 96.0 << "," << (i % 89) / 88.0 << "\n";
    }
  }
  const auto r = run_cli(
      "sample --input /tmp/monoest_big.csv --output /tmp/monoest_big.jsonl --tau 1 --salt big");
  REQUIRE(r.exit_code == 0);
  std::ifstream in("/tmp/monoest_big.jsonl");
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 1000001);  // header plus one record per key
  std::remove("/tmp/monoest_big.csv");
  std::remove("/tmp/monoest_big.jsonl");
}

TEST_CASE("derive writes the expected tables") {
  write_file("/tmp/monoest_domain.csv", [] {
    std::string rows;
    for (int i = 0; i <= 3; ++i) {
      for (int j = 0; j <= 3; ++j) {
        rows += std::to_string(i) + "," + std::to_string(j) + "\n";
      }
    }
    return rows;
  }());
  const auto lo = run_cli(
      "derive --domain /tmp/monoest_domain.csv --thresholds 1/4,1/2,3/4 "
      "--function rgplus --p 1 --order lstar --output /tmp/monoest_lo.json");
  REQUIRE(lo.exit_code == 0);
  const auto lo_json = nlohmann::json::parse(read_file("/tmp/monoest_lo.json"));
  bool found_10 = false;
  for (const auto& cell : lo_json["cells"]) {
    if (cell["interval"] == 0 && cell["sampled"].size() == 1 &&
        cell["sampled"].value("1", "") == "1") {
      CHECK(cell["value"] == "4");
      found_10 = true;
    }
  }
  CHECK(found_10);

  const auto hi = run_cli(
      "derive --domain /tmp/monoest_domain.csv --thresholds 1/4,1/2,3/4 "
      "--function rgplus --p 1 --order ustar --output /tmp/monoest_hi.json");
  REQUIRE(hi.exit_code == 0);
  CHECK(hi.output.find("outcome") != std::string::npos);

  // Custom chains from a file reproduce the difference-two priority.
  write_file("/tmp/monoest_order.json",
             "[[[3,1],[3,2],[3,0]],[[2,0],[2,1]]]");
  const auto custom = run_cli(
      "--json derive --domain /tmp/monoest_domain.csv --thresholds 1/4,1/2,3/4 "
      "--function rgplus --p 1 --order /tmp/monoest_order.json");
  REQUIRE(custom.exit_code == 0);
  const auto table = nlohmann::json::parse(custom.output);
  bool found_32 = false;
  for (const auto& cell : table["cells"]) {
    if (cell["interval"] == 1 && cell["sampled"].size() == 2 &&
        cell["sampled"].value("1", "") == "3" && cell["sampled"].value("2", "") == "2") {
      CHECK(cell["value"] == "2/3");
      found_32 = true;
    }
  }
  CHECK(found_32);

  // Incomplete order errors out.
  write_file("/tmp/monoest_bad_order.json", "[[[3,1],[3,2],[3,0]]]");
  const auto bad = run_cli(
      "derive --domain /tmp/monoest_domain.csv --thresholds 1/4,1/2,3/4 "
      "--function rgplus --p 1 --order /tmp/monoest_bad_order.json");
  CHECK(bad.exit_code != 0);
}

TEST_CASE("verify exits zero on a clean grid") {
  const auto r = run_cli("verify --function rgplus --p 1 --grid 8 --seeds 4");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("max lstar ratio") != std::string::npos);
}

TEST_CASE("verify exits nonzero when the cap is set below the true ratio") {
  const auto r = run_cli("verify --function rgplus --p 1 --grid 8 --seeds 4 --ratio-cap 1.1");
  CHECK(r.exit_code == 1);
}

TEST_CASE("verify writes plot-ready csv") {
  const auto r = run_cli(
      "verify --function rgplus --p 1 --grid 5 --seeds 3 --csv /tmp/monoest_trace.csv "
      "--trace 0.6,0.2");
  REQUIRE(r.exit_code == 0);
  const std::string csv = read_file("/tmp/monoest_trace.csv");
  CHECK(csv.rfind("u,lstar,ustar,ht,vopt", 0) == 0);
  const auto grid = run_cli(
      "verify --function rgplus --p 1 --grid 5 --seeds 3 --csv /tmp/monoest_grid.csv");
  REQUIRE(grid.exit_code == 0);
  CHECK(read_file("/tmp/monoest_grid.csv").rfind("v1,v2,lstar_ratio", 0) == 0);
}

TEST_CASE("bench family output") {
  const auto r = run_cli("bench --family tight --p 0.25");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("(2, 5.33333, 2.66667)") != std::string::npos);
  const auto bad = run_cli("bench --family tight --p 0.6");
  CHECK(bad.exit_code != 0);
}
