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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.h"
#include "topotune/baselines.h"
#include "topotune/benchobj.h"
#include "topotune/engine.h"
#include "topotune/harness.h"
#include "topotune/qrw.h"

using namespace topotune;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const std::vector<double> kQGrid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

std::vector<std::pair<std::string, ParameterSpace>> graph_suite() {
  std::vector<double> path200;
  for (int i = 0; i < 200; ++i) path200.push_back(i);
  return {
      {"factorization(8,3)", ParameterSpace::factorization(8, 3)},
      {"factorization(12,3)", ParameterSpace::factorization(12, 3)},
      {"factorization(36,2)", ParameterSpace::factorization(36, 2)},
      {"factorization(30,4)", ParameterSpace::factorization(30, 4)},
      {"factorization(64,3)", ParameterSpace::factorization(64, 3)},
      {"factorization(1,3)", ParameterSpace::factorization(1, 3)},
      {"permutation(3)", ParameterSpace::permutation({"a", "b", "c"})},
      {"permutation(4)", ParameterSpace::permutation({"a", "b", "c", "d"})},
      {"permutation(5)", ParameterSpace::permutation({"a", "b", "c", "d", "e"})},
      {"discrete(4)", ParameterSpace::discrete({1, 2, 3, 4})},
      {"discrete(1)", ParameterSpace::discrete({7})},
      {"discrete(200)", ParameterSpace::discrete(path200)},
      {"categorical(6)", ParameterSpace::categorical({"a", "b", "c", "d", "e", "f"})},
      {"categorical(2)", ParameterSpace::categorical({"a", "b"})},
  };
}

std::vector<std::size_t> starts_for(std::size_t n) {
  std::vector<std::size_t> s;
  if (n <= 40) {
    for (std::size_t i = 0; i < n; ++i) s.push_back(i);
  } else {
    s = {0, n / 3, n / 2, n - 1};
  }
  return s;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double brute_force_optimum(const OperatorSpec& spec) {
  const auto space = operator_space(spec);
  double best = 0;
  for (std::uint64_t r = 0; r < space.size(); ++r)
    best = std::max(best, synthetic_cost(spec, space.unrank(r)));
  return best;
}

std::vector<std::string> csv_cells(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted && c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
      cells.back() += '"';
      ++i;
    } else if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  return cells;
}

std::string canonical_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------

Outcome exact_three_path() {
  auto g = build_graph(ParameterSpace::discrete({1, 2, 3}));
  const auto t0 = Clock::now();
  auto d = qrw_exact_distribution(g, 0, 0.5).probabilities;
  const double ms = seconds_since(t0) * 1e3;
  const double err = std::max({std::abs(d[0] - 7.0 / 12), std::abs(d[1] - 1.0 / 3),
                               std::abs(d[2] - 1.0 / 12)});
  return {err <= 1e-12 && ms < 1.0, "max error " + fmt("%.3g", err) + ", " + fmt("%.3f", ms) + " ms"};
}

Outcome distribution_grid() {
  const auto t0 = Clock::now();
  double worst_sum = 0, most_negative = 0;
  std::size_t solves = 0;
  for (const auto& [name, space] : graph_suite()) {
    auto g = build_graph(space);
    for (double q : kQGrid)
      for (std::size_t s : starts_for(g.vertex_count())) {
        auto d = qrw_exact_distribution(g, s, q).probabilities;
        double sum = 0;
        for (double p : d) {
          sum += p;
          most_negative = std::min(most_negative, p);
        }
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        ++solves;
      }
  }
  const double secs = seconds_since(t0);
  return {worst_sum <= 1e-9 && most_negative >= 0.0 && secs < 10.0,
          std::to_string(solves) + " solves, max |sum-1| " + fmt("%.3g", worst_sum) +
              ", min p " + fmt("%.3g", most_negative) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome column_sums() {
  double worst = 0;
  for (const auto& [name, space] : graph_suite()) {
    auto g = build_graph(space);
    for (double q : kQGrid) worst = std::max(worst, column_sum_check(g, q));
  }
  return {worst <= 1e-9, "max deviation from 1/(1-q) " + fmt("%.3g", worst)};
}

Outcome sampler_fidelity() {
  const auto t0 = Clock::now();
  double worst = 0;
  std::string worst_at;
  std::size_t graphs = 0;
  Rng rng(2024);
  for (const auto& [name, space] : graph_suite()) {
    if (space.size() > 20) continue;
    ++graphs;
    auto g = build_graph(space);
    std::vector<std::size_t> starts = {0, g.vertex_count() - 1};
    for (double q : {0.3, 0.5, 0.7})
      for (std::size_t s : starts) {
        auto exact = qrw_exact_distribution(g, s, q).probabilities;
        std::vector<double> emp(g.vertex_count(), 0.0);
        const int n = 100000;
        for (int i = 0; i < n; ++i)
          emp[space.rank(qrw_sample(space, g.vertices[s], QrwParams(q), rng))] += 1.0 / n;
        const double tv = oracle::total_variation(emp, exact);
        if (tv > worst) {
          worst = tv;
          worst_at = name + " q=" + canonical_number(q);
        }
      }
  }
  const double secs = seconds_since(t0);
  return {worst < 0.02 && secs < 30.0, std::to_string(graphs) + " graphs, max TV " + fmt("%.4f", worst) +
                                           " (" + worst_at + "), " + fmt("%.1f", secs) + " s"};
}

Outcome degree_claim() {
  auto space = ParameterSpace::factorization(8, 3);
  auto g = build_graph(space);
  auto idx = [&](std::vector<std::int64_t> f) { return space.rank(FactorTuple{std::move(f)}); };
  const auto start = idx({8, 1, 1});
  auto d5 = qrw_exact_distribution(g, start, 0.5).probabilities;
  auto d7 = qrw_exact_distribution(g, start, 0.7).probabilities;
  const double p222 = d5[idx({2, 2, 2})], p214 = d5[idx({2, 1, 4})], p241 = d5[idx({2, 4, 1})];
  const bool ok = p222 > p214 && p222 > p241 && d7[start] < d5[start];
  return {ok, "P(2,2,2)=" + fmt("%.5f", p222) + " P(2,1,4)=" + fmt("%.5f", p214) + " P(2,4,1)=" +
                  fmt("%.5f", p241) + "; S(start) q=0.5 " + fmt("%.4f", d5[start]) + " q=0.7 " +
                  fmt("%.4f", d7[start])};
}

Outcome recombination_marginals() {
  SearchSpace space({{"x", ParameterSpace::categorical({"p1", "p2"})},
                     {"y", ParameterSpace::discrete({1, 2})},
                     {"z", ParameterSpace::factorization(4, 2)}});
  Configuration a{{std::string("p1"), 1.0, FactorTuple{{1, 4}}}};
  Configuration b{{std::string("p2"), 2.0, FactorTuple{{4, 1}}}};
  Rng rng(99);
  const int n = 100000;
  std::vector<Individual> weighted = {{a, 3.0}, {b, 1.0}};
  std::vector<int> from_a(3, 0);
  for (int i = 0; i < n; ++i) {
    auto c = recombine(weighted, space, rng);
    for (std::size_t p = 0; p < 3; ++p) from_a[p] += c.values[p] == a.values[p];
  }
  double worst = 0;
  for (int k : from_a) worst = std::max(worst, std::abs(k / double(n) - 0.75));
  std::vector<Individual> with_zero = {{a, 0.0}, {b, 1.0}};
  long zero_params = 0;
  for (int i = 0; i < n; ++i) {
    auto c = recombine(with_zero, space, rng);
    for (std::size_t p = 0; p < 3; ++p) zero_params += c.values[p] == a.values[p];
  }
  return {worst <= 0.01 && zero_params == 0,
          "max |rate-0.75| " + fmt("%.4f", worst) + ", zero-fitness parameters inherited " +
              std::to_string(zero_params)};
}

Outcome no_resample_determinism() {
  auto spec = parse_operator("matmul:8,8,8");
  auto space = operator_space(spec);
  auto objective = synthetic_objective(spec);
  EngineConfig c;
  c.seed = 42;
  c.budget = 500;
  auto r1 = run(space, c, objective);
  auto r2 = run(space, c, objective);
  std::set<std::string> keys;
  for (const auto& t : r1.log.trials) keys.insert(space.canonical_key(t.config));
  const bool distinct = keys.size() == r1.log.trials.size();
  auto strip = [&](const TrialLog& log) {
    std::ostringstream os;
    log.write_jsonl(os, space);
    std::istringstream in(os.str());
    std::string line, out;
    while (std::getline(in, line)) {
      auto j = nlohmann::json::parse(line);
      j.erase("elapsed_ms");
      out += j.dump() + "\n";
    }
    return out;
  };
  const bool same = strip(r1.log) == strip(r2.log);
  return {distinct && same && r1.log.trials.size() == 500,
          std::to_string(r1.log.trials.size()) + " trials, " + std::to_string(keys.size()) +
              " distinct, logs " + (same ? "identical" : "differ")};
}

Outcome exhaustion() {
  SearchSpace space({{"f", ParameterSpace::factorization(8, 3)},
                     {"c", ParameterSpace::categorical({"a", "b", "c"})},
                     {"d", ParameterSpace::discrete({1, 2})}});
  auto objective = [](const Configuration& c) {
    const auto& f = std::get<FactorTuple>(c.values[0]).factors;
    return double(f[1]) + std::get<double>(c.values[2]) +
           (std::get<std::string>(c.values[1]) == "b" ? 0.5 : 0.0);
  };
  const std::size_t n = space.size();
  const std::size_t budget = 500;
  std::string detail = "size " + std::to_string(n);
  bool ok = n <= 64;
  auto check = [&](const std::string& name, const RunResult& r) {
    std::set<std::string> keys;
    for (const auto& t : r.log.trials) keys.insert(space.canonical_key(t.config));
    const bool good = r.log.trials.size() == n && keys.size() == n && r.exhausted;
    ok &= good;
    detail += ", " + name + " " + std::to_string(r.log.trials.size()) + " trials";
  };
  EngineConfig c;
  c.budget = budget;
  c.seed = 5;
  check("opevo", run(space, c, objective));
  check("random", random_search(space, budget, 5, objective));
  check("gbfs", greedy_bfs(space, {}, budget, 5, objective));
  return {ok, detail};
}

Outcome comparative() {
  const auto t0 = Clock::now();
  const std::vector<std::string> ops = {"matmul:8,8,8", "batchmatmul:4,4,4,4",
                                        "conv2d:1,4,8,8,8,3,3,1,1"};
  bool ok = true;
  std::string detail;
  for (const auto& id : ops) {
    auto spec = parse_operator(id);
    auto space = operator_space(spec);
    auto objective = synthetic_objective(spec);
    const double golden = brute_force_optimum(spec);
    std::vector<double> evo, rnd;
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      EngineConfig c;
      c.seed = seed;
      c.budget = 500;
      auto r = run(space, c, objective);
      evo.push_back(r.best.fitness);
      if (r.best.fitness >= 0.99 * golden) ++hits;
      rnd.push_back(random_search(space, 500, seed, objective).best.fitness);
    }
    const double me = median(evo), mr = median(rnd);
    ok &= me >= mr;
    if (id == "matmul:8,8,8") ok &= hits >= 8;
    detail += id + " opevo " + fmt("%.6g", me) + " random " + fmt("%.6g", mr) + " opt " +
              fmt("%.6g", golden) + " hits " + std::to_string(hits) + "/10; ";
  }
  const double secs = seconds_since(t0);
  ok &= secs < 300;
  return {ok, detail + fmt("%.1f", secs) + " s"};
}

Outcome invalid_handling() {
  const fs::path dir = fs::temp_directory_path() / "topotune_acceptance_invalid";
  fs::remove_all(dir);
  bool ok = true;
  std::string detail;
  for (int seed = 1; seed <= 5; ++seed) {
    std::ostringstream out, err;
    const int code = cmd_tune({"--operator", "matmul:512,1024,1024", "--algo", "opevo", "--budget",
                               "500", "--seed", std::to_string(seed), "--out", dir.string()},
                              out, err);
    std::istringstream lines(out.str());
    std::string last, line;
    while (std::getline(lines, line))
      if (!line.empty()) last = line;
    auto rep = nlohmann::json::parse(last);
    std::ifstream log(rep["log"].get<std::string>());
    int zeros = 0, trials = 0;
    double best = 0;
    while (std::getline(log, line)) {
      auto j = nlohmann::json::parse(line);
      const double f = j["fitness"].get<double>();
      zeros += f == 0.0;
      best = std::max(best, f);
      ++trials;
    }
    ok &= code == 0 && zeros > 0 && best > 0 && trials == 500 &&
          rep["best_fitness"].get<double>() == best;
    detail += "seed " + std::to_string(seed) + ": exit " + std::to_string(code) + ", " +
              std::to_string(zeros) + " zero, best " + fmt("%.4g", best) + "; ";
  }
  fs::remove_all(dir);
  return {ok, detail};
}

Outcome sweep_summary() {
  const fs::path dir = fs::temp_directory_path() / "topotune_acceptance_sweep";
  fs::remove_all(dir);
  std::ostringstream out, err;
  const int code = cmd_sweep({"--operator", "matmul:8,8,8", "--q-grid", "0.3,0.5,0.7",
                              "--lambda-grid", "4,8,16", "--seeds", "1,2,3,4,5", "--budget", "500",
                              "--out", dir.string()},
                             out, err);
  if (code != 0) return {false, "exit " + std::to_string(code) + ": " + err.str()};
  std::ifstream summary(dir / "summary.csv");
  std::string line;
  std::getline(summary, line);
  const auto header = csv_cells(line);
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(summary, line)) {
    if (line.empty()) continue;
    auto cells = csv_cells(line);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
    rows.push_back(row);
  }
  double worst = 0;
  for (const auto& row : rows) {
    std::vector<double> bests, t95, wall;
    for (int seed = 1; seed <= 5; ++seed) {
      const std::string name = "opevo_q" + row.at("q") + "_lambda" + row.at("lambda") + "_rho" +
                               row.at("rho") + "_seed" + std::to_string(seed) + ".jsonl";
      std::ifstream log(dir / name);
      if (!log) return {false, "missing log " + name};
      std::vector<double> fitness, elapsed;
      while (std::getline(log, line)) {
        auto j = nlohmann::json::parse(line);
        fitness.push_back(j["fitness"].get<double>());
        elapsed.push_back(j["elapsed_ms"].get<double>());
      }
      const double best = *std::max_element(fitness.begin(), fitness.end());
      double running = 0;
      std::size_t hit = fitness.size();
      for (std::size_t i = 0; i < fitness.size(); ++i) {
        running = std::max(running, fitness[i]);
        if (running >= 0.95 * best) {
          hit = i + 1;
          break;
        }
      }
      bests.push_back(best);
      t95.push_back(double(hit));
      wall.push_back(elapsed.back());
    }
    auto mean = [](const std::vector<double>& v) {
      double s = 0;
      for (double x : v) s += x;
      return s / v.size();
    };
    const double m = mean(bests);
    double var = 0;
    for (double b : bests) var += (b - m) * (b - m);
    const double sd = std::sqrt(var / bests.size());
    worst = std::max({worst, std::abs(std::stod(row.at("mean_best")) - m),
                      std::abs(std::stod(row.at("std_best")) - sd),
                      std::abs(std::stod(row.at("mean_trials_to_95")) - mean(t95)),
                      std::abs(std::stod(row.at("mean_wall_ms")) - mean(wall))});
  }
  fs::remove_all(dir);
  return {rows.size() == 9 && worst <= 1e-9,
          std::to_string(rows.size()) + " rows, max recomputation error " + fmt("%.3g", worst)};
}

}  // namespace

int main() {
  report(1, "exact distribution on the 3-path", exact_three_path);
  report(2, "exact distributions are probability vectors", distribution_grid);
  report(3, "column sums equal 1/(1-q)", column_sums);
  report(4, "sampler matches the exact distribution", sampler_fidelity);
  report(5, "degree effect and spread in q", degree_claim);
  report(6, "fitness-proportional recombination", recombination_marginals);
  report(7, "no resampling and seed determinism", no_resample_determinism);
  report(8, "exhaustion of a small space", exhaustion);
  report(9, "comparative behavior on synthetic benchmarks", comparative);
  report(10, "invalid configurations at MM1 scale", invalid_handling);
  report(11, "hyperparameter sweep summary", sweep_summary);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
