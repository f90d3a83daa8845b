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

#ifndef TOPOTUNE_HARNESS_H_
#define TOPOTUNE_HARNESS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topotune/trial_log.h"

namespace topotune {

// Process exit codes of the command-line harness.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSpawn = 3;

// Aggregate over the seeds of one (algorithm, settings) cell.
struct SummaryRow {
  std::string algorithm;
  std::string space_id;
  // OpEvo settings; unset for the baselines.
  std::optional<double> q;
  std::optional<std::size_t> parents;
  std::optional<std::size_t> offspring;
  std::size_t seeds = 0;
  double mean_best = 0.0;
  double std_best = 0.0;  // population formula
  double mean_trials_to_95 = 0.0;
  double mean_wall_ms = 0.0;
};

// First 1-based trial whose running best reaches `fraction` of the final
// best. 0 for an empty log.
std::size_t trials_to_fraction(const TrialLog& log, double fraction);

SummaryRow summarize(std::span<const TrialLog> runs);

// Per trial index: mean and population std of the running best over runs.
// Runs that stopped early carry their final best forward.
struct CurvePoint {
  std::size_t trial = 0;
  double mean_best = 0.0;
  double std_best = 0.0;
};
std::vector<CurvePoint> mean_curve(std::span<const TrialLog> runs,
                                   std::size_t length);

// Header: algorithm,space,q,lambda,rho,seeds,mean_best,std_best,
//         mean_trials_to_95,mean_wall_ms
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

// Subcommands. `args` excludes the program and subcommand names.
int cmd_tune(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);
int cmd_bench(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err);
int cmd_sweep(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err);
int cmd_exact_dist(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err);
int cmd_spaces(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

// `args` starts with the subcommand name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace topotune

#endif  // TOPOTUNE_HARNESS_H_
