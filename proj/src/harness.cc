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

#include "topotune/harness.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <type_traits>

#include "CLI11.hpp"
#include "topotune/baselines.h"
#include "topotune/benchobj.h"
#include "topotune/engine.h"
#include "topotune/errors.h"
#include "topotune/qrw.h"

namespace topotune {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

std::size_t trials_to_fraction(const TrialLog& log, double fraction) {
  if (log.trials.empty()) return 0;
  const double target = fraction * log.trials.back().best_so_far;
  for (const auto& t : log.trials)
    if (t.best_so_far >= target) return t.trial;
  return log.trials.back().trial;
}

namespace {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.std = std::sqrt(ss / static_cast<double>(xs.size()));
  return r;
}

}  // namespace

SummaryRow summarize(std::span<const TrialLog> runs) {
  SummaryRow row;
  row.seeds = runs.size();
  std::vector<double> best, to95, wall;
  for (const auto& log : runs) {
    best.push_back(log.trials.empty() ? 0.0 : log.trials.back().best_so_far);
    to95.push_back(static_cast<double>(trials_to_fraction(log, 0.95)));
    wall.push_back(log.trials.empty() ? 0.0 : log.trials.back().elapsed_ms);
  }
  const auto b = mean_std(best);
  row.mean_best = b.mean;
  row.std_best = b.std;
  row.mean_trials_to_95 = mean_std(to95).mean;
  row.mean_wall_ms = mean_std(wall).mean;
  return row;
}

std::vector<CurvePoint> mean_curve(std::span<const TrialLog> runs,
                                   std::size_t length) {
  std::vector<CurvePoint> curve;
  for (std::size_t t = 1; t <= length; ++t) {
    std::vector<double> at;
    for (const auto& log : runs) {
      if (log.trials.empty()) continue;
      at.push_back(log.trials[std::min(t, log.trials.size()) - 1].best_so_far);
    }
    const auto s = mean_std(at);
    curve.push_back({t, s.mean, s.std});
  }
  return curve;
}

namespace {

// Shortest text that parses back to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
std::string optional_cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

}  // namespace

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "algorithm,space,q,lambda,rho,seeds,mean_best,std_best,"
         "mean_trials_to_95,mean_wall_ms\n";
  const auto precision = out.precision(17);
  for (const auto& r : rows) {
    out << csv_field(r.algorithm) << ',' << csv_field(r.space_id) << ',' << optional_cell(r.q) << ','
        << optional_cell(r.parents) << ',' << optional_cell(r.offspring) << ','
        << r.seeds << ',' << r.mean_best << ',' << r.std_best << ','
        << r.mean_trials_to_95 << ',' << r.mean_wall_ms << '\n';
  }
  out.precision(precision);
}

// ---------------------------------------------------------------------------
// Shared option handling
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string> kAlgorithms = {"opevo", "random", "sa", "gbfs"};

struct Options {
  std::string op;
  std::string space_file;
  std::string objective_cmd;
  long long timeout_ms = 10000;
  std::size_t concurrency = 1;
  std::size_t budget = 500;
  double q = 0.5;
  std::size_t lambda = 8;
  std::size_t rho = 8;
  std::size_t retry_cap = 64;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> seeds;
  std::string out_dir;
  std::optional<double> sa_t0;
  double sa_cooling = 0.95;
  std::size_t sa_moves = 10;
  std::size_t gbfs_pool = 5;

  CLI::Option* seed_opt = nullptr;
};

void add_problem_options(CLI::App& app, Options& o) {
  app.add_option("--operator", o.op,
                 "Operator spec, e.g. matmul:8,8,8 or "
                 "conv2d:B,Cin,H,W,Cout,Hk,Wk,S,P");
  app.add_option("--space", o.space_file, "JSON search space declaration");
  app.add_option("--objective-cmd", o.objective_cmd,
                 "External evaluator run through /bin/sh");
  app.add_option("--timeout-ms", o.timeout_ms, "External evaluator timeout")
      ->check(CLI::PositiveNumber);
}

void add_run_options(CLI::App& app, Options& o) {
  add_problem_options(app, o);
  app.add_option("--budget", o.budget, "Objective evaluations per run")
      ->check(CLI::PositiveNumber);
  app.add_option("--q", o.q, "OpEvo mutation rate in [0, 1)");
  app.add_option("--lambda", o.lambda, "OpEvo parent count");
  app.add_option("--rho", o.rho, "OpEvo offspring count");
  app.add_option("--retry-cap", o.retry_cap, "OpEvo re-mutation limit");
  o.seed_opt = app.add_option("--seed", o.seed, "Random seed")
                   ->envname("TOPO_TUNE_SEED");
  app.add_option("--concurrency", o.concurrency, "Parallel evaluations")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", o.out_dir, "Output directory");
  app.add_option("--sa-t0", o.sa_t0,
                 "SA initial temperature (default: warmup calibration)");
  app.add_option("--sa-cooling", o.sa_cooling, "SA geometric cooling factor");
  app.add_option("--sa-moves", o.sa_moves, "SA proposals per temperature");
  app.add_option("--gbfs-pool", o.gbfs_pool, "G-BFS neighbors per expansion");
}

struct Problem {
  std::string id;
  SearchSpace space;
  Objective objective;
};

SearchSpace load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open space file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
  return SearchSpace::from_json(j);
}

std::pair<std::string, SearchSpace> load_declared_space(const Options& o) {
  if (!o.op.empty() && !o.space_file.empty())
    throw ConfigError("give either --operator or --space, not both");
  if (!o.op.empty()) {
    const auto spec = parse_operator(o.op);
    return {operator_id(spec), operator_space(spec)};
  }
  if (!o.space_file.empty())
    return {fs::path(o.space_file).stem().string(),
            load_space_file(o.space_file)};
  throw ConfigError("a search space is required: --operator or --space");
}

Problem make_problem(const Options& o) {
  auto [id, space] = load_declared_space(o);
  Objective objective;
  if (!o.objective_cmd.empty()) {
    objective = external_objective(o.objective_cmd, space,
                                   std::chrono::milliseconds(o.timeout_ms));
  } else if (!o.op.empty()) {
    objective = synthetic_objective(parse_operator(o.op));
  } else {
    throw ConfigError(
        "--space needs --objective-cmd (synthetic costs exist only for "
        "--operator)");
  }
  return Problem{std::move(id), std::move(space), std::move(objective)};
}

struct Algorithm {
  std::string name;
  double q = 0.5;
  std::size_t lambda = 8;
  std::size_t rho = 8;
};

void validate_algorithm(const Algorithm& a, const Options& o) {
  if (std::find(kAlgorithms.begin(), kAlgorithms.end(), a.name) ==
      kAlgorithms.end())
    throw ConfigError("unknown algorithm '" + a.name +
                      "' (expected opevo, random, sa or gbfs)");
  EngineConfig cfg;
  cfg.parents = a.lambda;
  cfg.offspring = a.rho;
  cfg.mutation_rate = a.q;
  cfg.budget = o.budget;
  cfg.retry_cap = o.retry_cap;
  cfg.validate();
  if (a.name == "opevo" && o.budget < a.lambda)
    throw ConfigError("budget must be at least lambda");
  SaConfig sa;
  sa.initial_temperature = o.sa_t0;
  sa.cooling = o.sa_cooling;
  sa.moves_per_temperature = o.sa_moves;
  sa.validate();
  GbfsConfig gbfs;
  gbfs.pool_size = o.gbfs_pool;
  gbfs.validate();
}

RunResult run_algorithm(const Problem& p, const Options& o, const Algorithm& a,
                        std::uint64_t seed) {
  if (a.name == "opevo") {
    EngineConfig cfg;
    cfg.parents = a.lambda;
    cfg.offspring = a.rho;
    cfg.mutation_rate = a.q;
    cfg.budget = o.budget;
    cfg.seed = seed;
    cfg.retry_cap = o.retry_cap;
    return run(p.space, cfg, p.objective, o.concurrency);
  }
  if (a.name == "random")
    return random_search(p.space, o.budget, seed, p.objective, o.concurrency);
  if (a.name == "sa") {
    SaConfig sa;
    sa.initial_temperature = o.sa_t0;
    sa.cooling = o.sa_cooling;
    sa.moves_per_temperature = o.sa_moves;
    return simulated_annealing(p.space, sa, o.budget, seed, p.objective);
  }
  GbfsConfig gbfs;
  gbfs.pool_size = o.gbfs_pool;
  return greedy_bfs(p.space, gbfs, o.budget, seed, p.objective);
}

std::string run_file_name(const Algorithm& a, bool tag_settings,
                          std::uint64_t seed) {
  std::ostringstream os;
  os << a.name;
  if (tag_settings)
    os << "_q" << format_double(a.q) << "_lambda" << a.lambda << "_rho" << a.rho;
  os << "_seed" << seed << ".jsonl";
  return os.str();
}

void write_log(const fs::path& path, const TrialLog& log,
               const SearchSpace& space) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  log.write_jsonl(f, space);
}

// Parses `args` into `app`, runs `body` and maps exceptions to exit codes.
template <typename Body>
int guarded(CLI::App& app, const std::vector<std::string>& args,
            std::ostream& out, std::ostream& err, Body body) {
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return body();
  } catch (const EvaluatorSpawnError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSpawn;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

std::vector<std::uint64_t> seed_list(const Options& o) {
  if (!o.seeds.empty()) return o.seeds;
  if (o.seed_opt && o.seed_opt->count() > 0) return {o.seed};
  return {1, 2, 3, 4, 5};
}

struct Cell {
  Algorithm algorithm;
  std::vector<TrialLog> logs;
};

// Runs every (algorithm x seed) cell and writes the per-run logs,
// summary.csv and curves.csv under o.out_dir.
int run_cells(const Problem& problem, const Options& o,
              const std::vector<Algorithm>& algorithms, bool tag_settings,
              std::ostream& out, std::ostream& err) {
  const auto seeds = seed_list(o);
  const fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
  fs::create_directories(dir);

  std::vector<Cell> cells;
  int status = kExitOk;
  for (const auto& a : algorithms) {
    Cell cell{a, {}};
    for (std::uint64_t seed : seeds) {
      const std::string name = run_file_name(a, tag_settings, seed);
      try {
        auto result = run_algorithm(problem, o, a, seed);
        write_log(dir / name, result.log, problem.space);
        cell.logs.push_back(std::move(result.log));
      } catch (const EvaluatorSpawnError& e) {
        err << "cell " << name << " failed: " << e.what() << '\n';
        status = kExitSpawn;
      } catch (const std::exception& e) {
        err << "cell " << name << " failed: " << e.what() << '\n';
        if (status == kExitOk) status = kExitInternal;
      }
    }
    cells.push_back(std::move(cell));
  }

  std::vector<SummaryRow> rows;
  std::ofstream curves(dir / "curves.csv");
  curves << "algorithm,q,lambda,rho,trial,mean_best,std_best\n"
         << std::setprecision(17);
  for (const auto& cell : cells) {
    SummaryRow row = summarize(cell.logs);
    row.algorithm = cell.algorithm.name;
    row.space_id = problem.id;
    if (cell.algorithm.name == "opevo") {
      row.q = cell.algorithm.q;
      row.parents = cell.algorithm.lambda;
      row.offspring = cell.algorithm.rho;
    }
    for (const auto& p : mean_curve(cell.logs, o.budget))
      curves << cell.algorithm.name << ',' << optional_cell(row.q) << ','
             << optional_cell(row.parents) << ','
             << optional_cell(row.offspring) << ',' << p.trial << ','
             << p.mean_best << ',' << p.std_best << '\n';
    rows.push_back(std::move(row));
  }
  std::ofstream summary(dir / "summary.csv");
  write_summary_csv(summary, rows);
  write_summary_csv(out, rows);
  return status;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ','))
    if (!item.empty()) items.push_back(item);
  return items;
}

double parse_number(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(std::string("bad ") + what + " value '" + s + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_tune(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Run one algorithm on one objective for one seed", "tune"};
  Options o;
  std::string algo = "opevo";
  add_run_options(app, o);
  app.add_option("--algo", algo, "opevo | random | sa | gbfs");
  return guarded(app, args, out, err, [&] {
    const Algorithm a{algo, o.q, o.lambda, o.rho};
    validate_algorithm(a, o);
    const Problem problem = make_problem(o);
    const auto result = run_algorithm(problem, o, a, o.seed);
    fs::path log_path;
    if (!o.out_dir.empty()) {
      fs::create_directories(o.out_dir);
      log_path = fs::path(o.out_dir) / run_file_name(a, false, o.seed);
      write_log(log_path, result.log, problem.space);
    } else {
      result.log.write_jsonl(out, problem.space);
    }
    nlohmann::ordered_json report;
    report["algorithm"] = a.name;
    report["space"] = problem.id;
    report["seed"] = o.seed;
    report["trials"] = result.log.trials.size();
    report["exhausted"] = result.exhausted;
    report["best_fitness"] = result.best.fitness;
    report["best"] = problem.space.config_to_json(result.best.config);
    if (!log_path.empty()) report["log"] = log_path.string();
    out << report.dump() << '\n';
    return kExitOk;
  });
}

int cmd_bench(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) {
  CLI::App app{"Compare algorithms over several seeds", "bench"};
  Options o;
  std::vector<std::string> algos;
  add_run_options(app, o);
  app.add_option("--seeds", o.seeds, "Comma-separated seeds")->delimiter(',');
  app.add_option("--algo", algos, "Algorithms (comma-separated)")
      ->delimiter(',');
  return guarded(app, args, out, err, [&] {
    if (algos.empty()) algos = kAlgorithms;
    std::vector<Algorithm> list;
    for (const auto& name : algos) {
      list.push_back({name, o.q, o.lambda, o.rho});
      validate_algorithm(list.back(), o);
    }
    const Problem problem = make_problem(o);
    if (o.out_dir.empty()) o.out_dir = "bench_out";
    return run_cells(problem, o, list, false, out, err);
  });
}

int cmd_sweep(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) {
  CLI::App app{"Sweep OpEvo hyperparameters over a grid", "sweep"};
  Options o;
  std::optional<std::string> q_grid, lambda_grid;
  add_run_options(app, o);
  app.add_option("--seeds", o.seeds, "Comma-separated seeds")->delimiter(',');
  app.add_option("--q-grid", q_grid, "Comma-separated mutation rates");
  app.add_option("--lambda-grid", lambda_grid, "Comma-separated parent counts");
  return guarded(app, args, out, err, [&] {
    std::vector<double> qs{o.q};
    std::vector<std::size_t> lambdas{o.lambda};
    if (q_grid) {
      qs.clear();
      for (const auto& s : split_list(*q_grid))
        qs.push_back(parse_number(s, "q"));
      if (qs.empty()) throw ConfigError("--q-grid is empty");
    }
    if (lambda_grid) {
      lambdas.clear();
      for (const auto& s : split_list(*lambda_grid)) {
        const double v = parse_number(s, "lambda");
        if (v < 1 || v != std::floor(v))
          throw ConfigError("lambda values must be positive integers");
        lambdas.push_back(static_cast<std::size_t>(v));
      }
      if (lambdas.empty()) throw ConfigError("--lambda-grid is empty");
    }
    std::vector<Algorithm> list;
    for (double q : qs) {
      for (std::size_t l : lambdas) {
        list.push_back({"opevo", q, l, o.rho});
        validate_algorithm(list.back(), o);
      }
    }
    const Problem problem = make_problem(o);
    if (o.out_dir.empty()) o.out_dir = "sweep_out";
    return run_cells(problem, o, list, true, out, err);
  });
}

int cmd_exact_dist(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Print the exact q-random-walk distribution", "exact-dist"};
  std::string space_file, param_json, param_name, start_json;
  double q = 0.5;
  std::uint64_t cap = 4096;
  app.add_option("--space", space_file, "JSON search space declaration");
  app.add_option("--param-json", param_json,
                 "Inline parameter declaration, e.g. "
                 "{\"kind\":\"discrete\",\"values\":[1,2,3]}");
  app.add_option("--param", param_name, "Parameter name within --space");
  app.add_option("--start", start_json, "Start value as JSON")->required();
  app.add_option("--q", q, "Mutation rate in [0, 1)")->required();
  app.add_option("--cap", cap, "Largest graph to solve densely");
  return guarded(app, args, out, err, [&] {
    std::optional<ParameterSpace> param;
    if (!param_json.empty() && !space_file.empty())
      throw ConfigError("give either --space or --param-json, not both");
    if (!param_json.empty()) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(param_json);
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad --param-json: ") + e.what());
      }
      param = parameter_from_json(j);
    } else if (!space_file.empty()) {
      const auto space = load_space_file(space_file);
      if (!param_name.empty())
        param = space.param(space.index_of(param_name)).space;
      else if (space.dimension() == 1)
        param = space.param(0).space;
      else
        throw ConfigError("--param is required for multi-parameter spaces");
    } else {
      throw ConfigError("a parameter is required: --space or --param-json");
    }
    const QrwParams rate(q);
    nlohmann::json start;
    try {
      start = nlohmann::json::parse(start_json);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("bad --start: ") + e.what());
    }
    const ParamValue start_value = param->value_from_json(start);
    const auto graph = build_graph(*param, cap);
    const auto start_index =
        static_cast<std::size_t>(param->rank(start_value));
    const auto dist = qrw_exact_distribution(graph, start_index, rate.q());

    std::vector<std::size_t> order(graph.vertex_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return dist.probabilities[a] > dist.probabilities[b];
    });
    double sum = 0.0;
    for (double p : dist.probabilities) sum += p;
    for (std::size_t i : order) {
      if (!(dist.probabilities[i] > 0.0)) continue;
      nlohmann::ordered_json row;
      row["value"] = param->value_to_json(graph.vertices[i]);
      row["probability"] = dist.probabilities[i];
      out << row.dump() << '\n';
    }
    nlohmann::ordered_json total;
    total["sum"] = sum;
    out << total.dump() << '\n';
    return kExitOk;
  });
}

int cmd_spaces(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Describe a search space", "spaces"};
  Options o;
  std::uint64_t cap = 100'000;
  add_problem_options(app, o);
  app.add_option("--cap", cap, "Largest parameter to enumerate for degrees");
  return guarded(app, args, out, err, [&] {
    const auto [id, space] = load_declared_space(o);
    nlohmann::ordered_json report;
    report["space"] = id;
    if (space.rankable())
      report["size"] = space.size();
    else
      report["size"] = nullptr;
    report["parameters"] = nlohmann::ordered_json::array();
    for (const auto& p : space.params()) {
      nlohmann::ordered_json j;
      j["name"] = p.name;
      const auto decl = parameter_to_json(p.space);
    for (const auto& [k, v] : decl.items()) j[k] = v;
      j["size"] = p.space.size();
      if (p.space.size() <= cap) {
        std::size_t lo = SIZE_MAX, hi = 0, total = 0;
        for (const auto& v : p.space.enumerate(cap)) {
          const std::size_t d = p.space.neighbors(v).size();
          lo = std::min(lo, d);
          hi = std::max(hi, d);
          total += d;
        }
        nlohmann::ordered_json degree;
        degree["min"] = lo;
        degree["max"] = hi;
        degree["mean"] =
            static_cast<double>(total) / static_cast<double>(p.space.size());
        j["degree"] = std::move(degree);
      }
      report["parameters"].push_back(std::move(j));
    }
    out << report.dump(2) << '\n';
    return kExitOk;
  });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  static const char* kUsage =
      "usage: topotune <tune|bench|sweep|exact-dist|spaces> [options]\n"
      "       topotune <command> --help\n";
  if (args.empty()) {
    err << kUsage;
    return kExitUsage;
  }
  const std::string& command = args.front();
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  if (command == "tune") return cmd_tune(rest, out, err);
  if (command == "bench") return cmd_bench(rest, out, err);
  if (command == "sweep") return cmd_sweep(rest, out, err);
  if (command == "exact-dist") return cmd_exact_dist(rest, out, err);
  if (command == "spaces") return cmd_spaces(rest, out, err);
  if (command == "--help" || command == "-h" || command == "help") {
    out << kUsage;
    return kExitOk;
  }
  err << "unknown command '" << command << "'\n" << kUsage;
  return kExitUsage;
}

}  // namespace topotune
