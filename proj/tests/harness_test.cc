// Copyright 2026 The TopoTune Authors.
//
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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "topotune/benchobj.h"
#include "topotune/harness.h"

using namespace topotune;
namespace fs = std::filesystem;

namespace {

struct Cli {
  int code = 0;
  std::string out, err;
};

Cli cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Cli r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("topotune_harness_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(nlohmann::json::parse(line));
  return rows;
}

std::vector<std::vector<std::string>> csv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cells.back() += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cells.back() += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        cells.emplace_back();
      } else {
        cells.back() += c;
      }
    }
    rows.push_back(cells);
  }
  return rows;
}

TrialLog synthetic_log(std::vector<double> fitness) {
  TrialLog log;
  double best = 0;
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    best = std::max(best, fitness[i]);
    log.trials.push_back({i + 1, {}, fitness[i], best, double(i)});
  }
  return log;
}

}  // namespace

TEST_CASE("trials-to-fraction and summary statistics") {
  auto a = synthetic_log({1, 5, 9, 10});
  auto b = synthetic_log({2, 2, 4});
  CHECK(trials_to_fraction(a, 0.95) == 4);
  CHECK(trials_to_fraction(a, 0.9) == 3);
  CHECK(trials_to_fraction(b, 0.95) == 3);
  std::vector<TrialLog> runs = {a, b};
  auto row = summarize(runs);
  CHECK(row.seeds == 2);
  CHECK(row.mean_best == 7.0);
  CHECK(row.std_best == 3.0);
  CHECK(row.mean_trials_to_95 == 3.5);
  CHECK(row.mean_wall_ms == 2.5);

  auto curve = mean_curve(runs, 5);
  REQUIRE(curve.size() == 5);
  CHECK(curve[0].mean_best == 1.5);
  CHECK(curve[2].mean_best == 6.5);
  CHECK(curve[4].mean_best == 7.0);
  CHECK(curve[4].std_best == 3.0);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].mean_best >= curve[i - 1].mean_best);

  std::vector<TrialLog> one = {a};
  CHECK(summarize(one).std_best == 0.0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({"tune", "--operator", "matmul:8,8,8", "--q", "1.5"}).code == kExitUsage);
  CHECK(cli({"tune", "--operator", "matmul:8,8,8", "--lambda", "0"}).code == kExitUsage);
  CHECK(cli({"tune", "--operator", "matmul:8,8,8", "--algo", "nope"}).code == kExitUsage);
  CHECK(cli({"tune"}).code == kExitUsage);
  CHECK(cli({"spaces", "--operator", "fft:8,8"}).code == kExitUsage);
  CHECK(cli({"sweep", "--operator", "matmul:8,8,8", "--q-grid", ""}).code == kExitUsage);
  CHECK(cli({"sweep", "--operator", "matmul:8,8,8", "--lambda-grid", ","}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"exact-dist", "--param-json", R"({"kind":"factorization","product":1024,"arity":4})",
             "--start", "[1024,1,1,1]", "--q", "0.5", "--cap", "100"})
            .code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("tune writes a JSONL log and a final report") {
  auto r = cli({"tune", "--operator", "matmul:8,8,8", "--algo", "opevo", "--budget", "200",
                "--seed", "1"});
  REQUIRE(r.code == kExitOk);
  auto rows = json_lines(r.out);
  REQUIRE(rows.size() >= 2);
  CHECK(rows.size() - 1 <= 200);
  const auto& report = rows.back();
  CHECK(report.contains("best_fitness"));
  double best = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i]["trial"] == i + 1);
    best = std::max(best, rows[i]["fitness"].get<double>());
  }
  CHECK(report["best_fitness"].get<double>() == best);

  auto again = cli({"tune", "--operator", "matmul:8,8,8", "--algo", "opevo", "--budget", "200",
                    "--seed", "1"});
  auto rows2 = json_lines(again.out);
  REQUIRE(rows2.size() == rows.size());
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) CHECK(rows[i]["config"] == rows2[i]["config"]);
}

TEST_CASE("tune honours the seed environment variable") {
  setenv("TOPO_TUNE_SEED", "7", 1);
  auto a = json_lines(cli({"tune", "--operator", "matmul:8,8,8", "--algo", "random", "--budget", "20"}).out);
  auto b = json_lines(cli({"tune", "--operator", "matmul:8,8,8", "--algo", "random", "--budget", "20",
                           "--seed", "7"}).out);
  unsetenv("TOPO_TUNE_SEED");
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i + 1 < a.size(); ++i) CHECK(a[i]["config"] == b[i]["config"]);
}

TEST_CASE("external evaluator failures are zero fitness, spawn failures exit 3") {
  auto dir = scratch("external");
  {
    std::ofstream space(dir / "space.json");
    space << R"([{"name":"tile","kind":"factorization","product":16,"arity":2},)"
          << R"({"name":"mode","kind":"categorical","labels":["a","b"]}])";
    std::ofstream eval(dir / "eval.sh");
    eval << "#!/bin/sh\ncat >/dev/null\nexit 1\n";
  }
  fs::permissions(dir / "eval.sh", fs::perms::owner_all);
  auto r = cli({"tune", "--space", (dir / "space.json").string(), "--objective-cmd",
                (dir / "eval.sh").string(), "--budget", "6", "--lambda", "2", "--rho", "2",
                "--out", (dir / "logs").string()});
  REQUIRE(r.code == kExitOk);
  auto report = json_lines(r.out).back();
  std::ifstream in(report["log"].get<std::string>());
  std::stringstream ss;
  ss << in.rdbuf();
  auto rows = json_lines(ss.str());
  CHECK(rows.size() == 6);
  for (const auto& row : rows) CHECK(row["fitness"].get<double>() == 0.0);

  auto missing = cli({"tune", "--space", (dir / "space.json").string(), "--objective-cmd",
                      (dir / "missing.sh").string(), "--budget", "4", "--lambda", "2"});
  CHECK(missing.code == kExitSpawn);
  fs::remove_all(dir);
}

TEST_CASE("exact-dist output") {
  auto r = cli({"exact-dist", "--param-json", R"({"kind":"factorization","product":8,"arity":3})",
                "--start", "[8,1,1]", "--q", "0.5"});
  REQUIRE(r.code == kExitOk);
  auto rows = json_lines(r.out);
  REQUIRE(rows.size() == 11);
  double sum = 0;
  std::map<std::string, double> p;
  for (std::size_t i = 0; i < 10; ++i) {
    sum += rows[i]["probability"].get<double>();
    p[rows[i]["value"].dump()] = rows[i]["probability"].get<double>();
    if (i) CHECK(rows[i]["probability"] <= rows[i - 1]["probability"]);
  }
  CHECK(std::abs(sum - 1.0) < 1e-9);
  CHECK(std::abs(rows[10]["sum"].get<double>() - 1.0) < 1e-9);
  CHECK(p["[2,2,2]"] > p["[2,1,4]"]);
  CHECK(p["[2,2,2]"] > p["[2,4,1]"]);

  auto zero = json_lines(cli({"exact-dist", "--param-json",
                              R"({"kind":"factorization","product":8,"arity":3})", "--start",
                              "[8,1,1]", "--q", "0"})
                             .out);
  REQUIRE(zero.size() == 2);
  CHECK(zero[0]["probability"] == 1.0);

  auto path = json_lines(cli({"exact-dist", "--param-json", R"({"kind":"discrete","values":[1,2,3]})",
                              "--start", "1", "--q", "0.5"})
                             .out);
  REQUIRE(path.size() == 4);
  CHECK(std::abs(path[0]["probability"].get<double>() - 7.0 / 12) < 1e-12);
  CHECK(std::abs(path[1]["probability"].get<double>() - 1.0 / 3) < 1e-12);
  CHECK(std::abs(path[2]["probability"].get<double>() - 1.0 / 12) < 1e-12);
}

TEST_CASE("spaces reports per-parameter sizes") {
  auto c1 = cli({"spaces", "--operator", "conv2d:512,3,227,227,64,11,11,4,0"});
  REQUIRE(c1.code == kExitOk);
  auto j = nlohmann::json::parse(c1.out);
  CHECK(j["parameters"].size() == 8);
  auto mm1 = nlohmann::json::parse(cli({"spaces", "--operator", "matmul:512,1024,1024"}).out);
  auto space = operator_space(parse_operator("matmul:512,1024,1024"));
  CHECK(mm1["size"].get<std::uint64_t>() == space.size());
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(mm1["parameters"][i]["size"].get<std::uint64_t>() == space.param(i).space.size());
}

TEST_CASE("bench writes logs, summary and curves") {
  auto dir = scratch("bench");
  auto r = cli({"bench", "--operator", "matmul:8,8,8", "--algo", "opevo,random,sa,gbfs", "--seeds",
                "1,2", "--budget", "60", "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  auto summary = csv(dir / "summary.csv");
  REQUIRE(summary.size() == 5);
  CHECK(summary[0][0] == "algorithm");
  CHECK(summary[1][1] == "matmul:8,8,8");
  auto curves = csv(dir / "curves.csv");
  CHECK(curves.size() == 1 + 4 * 60);
  for (std::size_t i = 2; i < curves.size(); ++i)
    if (curves[i][0] == curves[i - 1][0]) CHECK(std::stod(curves[i][5]) >= std::stod(curves[i - 1][5]));
  CHECK(fs::exists(dir / "opevo_seed1.jsonl"));
  CHECK(fs::exists(dir / "gbfs_seed2.jsonl"));

  auto single = scratch("bench_single");
  r = cli({"bench", "--operator", "matmul:8,8,8", "--algo", "random", "--seeds", "3", "--budget", "10",
           "--out", single.string()});
  REQUIRE(r.code == kExitOk);
  auto s = csv(single / "summary.csv");
  REQUIRE(s.size() == 2);
  CHECK(std::stod(s[1][7]) == 0.0);
  fs::remove_all(dir);
  fs::remove_all(single);
}
