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

#ifndef TOPOTUNE_TRIAL_LOG_H_
#define TOPOTUNE_TRIAL_LOG_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "topotune/random.h"
#include "topotune/space.h"

namespace topotune {

// Maps a configuration to a non-negative fitness. Throwing marks the
// configuration invalid (fitness 0), except for EvaluatorSpawnError, which
// aborts the run.
using Objective = std::function<double(const Configuration&)>;

struct Individual {
  Configuration config;
  double fitness = 0.0;
};

struct TrialRecord {
  std::size_t trial = 0;  // 1-based
  Configuration config;
  double fitness = 0.0;
  double best_so_far = 0.0;
  double elapsed_ms = 0.0;
};

struct TrialLog {
  std::vector<TrialRecord> trials;

  // One JSON object per line:
  // {"trial", "config", "fitness", "best_so_far", "elapsed_ms"}.
  void write_jsonl(std::ostream& out, const SearchSpace& space) const;
  static TrialLog read_jsonl(std::istream& in, const SearchSpace& space);
};

struct RunResult {
  Individual best;
  TrialLog log;
  // True when the search stopped because no unvisited configuration was
  // left to propose.
  bool exhausted = false;
};

// Set of configurations already evaluated or proposed, keyed by canonical
// form.
class VisitedSet {
 public:
  explicit VisitedSet(const SearchSpace& space) : space_(&space) {}

  bool contains(const Configuration& config) const;
  // Returns false when already present.
  bool insert(const Configuration& config);
  std::size_t count() const { return keys_.size(); }
  bool full() const;

  // Uniformly random configuration not in the set: `tries` rounds of
  // rejection sampling, then exact selection by rank. std::nullopt when the
  // space is exhausted.
  std::optional<Configuration> draw_unvisited(Rng& rng, std::size_t tries) const;

 private:
  const SearchSpace* space_;
  std::unordered_set<std::string> keys_;
  std::vector<std::uint64_t> ranks_;  // only when the space is rankable
};

// Evaluates configurations through an Objective, appending to a TrialLog
// and tracking the best individual.
class TrialRecorder {
 public:
  TrialRecorder(const Objective& objective, std::size_t budget);

  std::size_t remaining() const { return budget_ - log_.trials.size(); }
  std::size_t used() const { return log_.trials.size(); }

  double evaluate(const Configuration& config);
  // Evaluates with up to `concurrency` workers; records in input order.
  std::vector<double> evaluate_batch(std::span<const Configuration> configs,
                                     std::size_t concurrency);

  const std::optional<Individual>& best() const { return best_; }
  RunResult finish(bool exhausted) &&;

 private:
  double call_objective(const Configuration& config) const;
  void record(const Configuration& config, double fitness);

  const Objective& objective_;
  std::size_t budget_;
  std::chrono::steady_clock::time_point start_;
  TrialLog log_;
  std::optional<Individual> best_;
};

}  // namespace topotune

#endif  // TOPOTUNE_TRIAL_LOG_H_
