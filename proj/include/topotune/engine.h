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

#ifndef TOPOTUNE_ENGINE_H_
#define TOPOTUNE_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "topotune/qrw.h"
#include "topotune/random.h"
#include "topotune/space.h"
#include "topotune/trial_log.h"

namespace topotune {

struct EngineConfig {
  std::size_t parents = 8;    // lambda
  std::size_t offspring = 8;  // rho
  double mutation_rate = 0.5;
  std::size_t budget = 500;
  std::uint64_t seed = 0;
  std::size_t retry_cap = 64;

  // Throws ConfigError naming the first invalid field.
  void validate() const;
};

// All evaluated individuals, best first. Ties keep insertion order.
class Archive {
 public:
  explicit Archive(const SearchSpace& space) : space_(&space) {}

  // Throws ProtocolError if the configuration is already archived.
  void insert(Individual individual);
  bool contains(const Configuration& config) const;

  std::size_t size() const { return ranked_.size(); }
  bool empty() const { return ranked_.empty(); }
  const std::vector<Individual>& ranked() const { return ranked_; }
  // The best min(k, size()) individuals.
  std::span<const Individual> top(std::size_t k) const;

 private:
  const SearchSpace* space_;
  std::vector<Individual> ranked_;
  std::unordered_set<std::string> keys_;
};

// Either a batch of novel configurations or the exhaustion signal.
struct AskResult {
  std::vector<Configuration> batch;
  bool exhausted = false;
};

enum class EngineState { kInit, kRunning };

// The evolutionary search loop as an ask/tell state machine: the first ask
// draws `parents` random configurations; every later ask recombines the
// top-`parents` archive members into `offspring` children and mutates each
// child with a q-random walk per parameter. No configuration is ever
// proposed twice.
//
// Single owner; every asked configuration must be told before the next ask.
class Engine {
 public:
  Engine(SearchSpace space, EngineConfig config);

  // At most `limit` configurations.
  AskResult ask(std::size_t limit = std::numeric_limits<std::size_t>::max());
  void tell(std::span<const Individual> results);

  // Throws ProtocolError before the first tell.
  const Individual& best() const;

  EngineState state() const { return state_; }
  const Archive& archive() const { return archive_; }
  const SearchSpace& space() const { return *space_; }
  const EngineConfig& config() const { return config_; }
  std::size_t pending() const { return pending_.size(); }

 private:
  std::optional<Configuration> initial_candidate();
  std::optional<Configuration> child_candidate(
      std::span<const Individual> parents);

  std::shared_ptr<const SearchSpace> space_;
  EngineConfig config_;
  QrwParams qrw_;
  Rng rng_;
  Archive archive_;
  VisitedSet proposed_;  // archived plus pending
  std::unordered_map<std::string, Configuration> pending_;
  EngineState state_ = EngineState::kInit;
};

// Per parameter, copies the value of parent j with probability
// f_j / sum(f); uniform when every parent has fitness 0.
Configuration recombine(std::span<const Individual> parents,
                        const SearchSpace& space, Rng& rng);

// Replaces every parameter with a q-random-walk sample started from it.
Configuration mutate(const Configuration& child, const SearchSpace& space,
                     QrwParams params, Rng& rng);

// Drives ask/tell until the budget is spent or the space is exhausted.
// Requires config.budget >= config.parents.
RunResult run(const SearchSpace& space, const EngineConfig& config,
              const Objective& objective, std::size_t concurrency = 1);

}  // namespace topotune

#endif  // TOPOTUNE_ENGINE_H_
