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

#ifndef TOPOTUNE_BASELINES_H_
#define TOPOTUNE_BASELINES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "topotune/random.h"
#include "topotune/space.h"
#include "topotune/trial_log.h"

namespace topotune {

// Uniform sampling without replacement.
RunResult random_search(const SearchSpace& space, std::size_t budget,
                        std::uint64_t seed, const Objective& objective,
                        std::size_t concurrency = 1);

struct SaConfig {
  // When unset, calibrated to the population standard deviation of
  // `warmup_samples` uniform draws (which count against the budget).
  std::optional<double> initial_temperature;
  double cooling = 0.95;
  std::size_t moves_per_temperature = 10;
  std::size_t warmup_samples = 20;

  void validate() const;
};

// Simulated annealing over the parameter topologies. A move replaces one
// uniformly chosen (non-isolated) parameter with a uniform neighbor.
// Revisited configurations are served from a cache and do not consume
// budget.
RunResult simulated_annealing(const SearchSpace& space, const SaConfig& config,
                              std::size_t budget, std::uint64_t seed,
                              const Objective& objective);

// Metropolis rule for maximization: always accept an improvement, otherwise
// accept with probability exp((proposed - current) / temperature). At
// temperature 0 only non-worsening moves are accepted.
bool metropolis_accept(double current, double proposed, double temperature,
                       Rng& rng);

// Standard deviation with divisor n.
double population_stddev(std::span<const double> values);

struct GbfsConfig {
  std::size_t pool_size = 5;
  // Uniformly sampled when unset.
  std::optional<Configuration> start;

  void validate() const;
};

// Greedy best-first search. The frontier holds evaluated configurations by
// fitness; each step takes the best one and evaluates up to `pool_size` of
// its unvisited neighbors, chosen uniformly. A configuration stays on the
// frontier until all of its neighbors are visited. Stops on budget or an
// empty frontier.
RunResult greedy_bfs(const SearchSpace& space, const GbfsConfig& config,
                     std::size_t budget, std::uint64_t seed,
                     const Objective& objective);

}  // namespace topotune

#endif  // TOPOTUNE_BASELINES_H_
