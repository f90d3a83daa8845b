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

#include "topotune/baselines.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "topotune/errors.h"

namespace topotune {

namespace {

constexpr std::size_t kRejectionTries = 64;

// SA gives up after this many consecutive proposals served from the cache.
constexpr std::size_t kMaxConsecutiveCacheHits = 100'000;

}  // namespace

RunResult random_search(const SearchSpace& space, std::size_t budget,
                        std::uint64_t seed, const Objective& objective,
                        std::size_t concurrency) {
  if (budget < 1) throw ConfigError("trial budget must be >= 1");
  Rng rng(seed);
  VisitedSet visited(space);
  TrialRecorder recorder(objective, budget);
  const std::size_t batch_size = std::max<std::size_t>(concurrency, 1);
  bool exhausted = false;
  while (recorder.remaining() > 0 && !exhausted) {
    std::vector<Configuration> batch;
    while (batch.size() < std::min(batch_size, recorder.remaining())) {
      auto c = visited.draw_unvisited(rng, kRejectionTries);
      if (!c) {
        exhausted = true;
        break;
      }
      visited.insert(*c);
      batch.push_back(std::move(*c));
    }
    recorder.evaluate_batch(batch, concurrency);
  }
  return std::move(recorder).finish(exhausted || visited.full());
}

// ---------------------------------------------------------------------------

void SaConfig::validate() const {
  if (initial_temperature && !(*initial_temperature > 0.0))
    throw ConfigError("initial temperature must be positive");
  if (!(cooling > 0.0 && cooling < 1.0))
    throw ConfigError("cooling factor must lie in (0, 1)");
  if (moves_per_temperature < 1)
    throw ConfigError("moves per temperature must be >= 1");
  if (!initial_temperature && warmup_samples < 1)
    throw ConfigError("temperature calibration needs at least one warmup sample");
}

bool metropolis_accept(double current, double proposed, double temperature,
                       Rng& rng) {
  if (proposed >= current) return true;
  if (temperature <= 0.0) return false;
  return uniform01(rng) < std::exp((proposed - current) / temperature);
}

double population_stddev(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

RunResult simulated_annealing(const SearchSpace& space, const SaConfig& config,
                              std::size_t budget, std::uint64_t seed,
                              const Objective& objective) {
  config.validate();
  if (budget < 1) throw ConfigError("trial budget must be >= 1");
  Rng rng(seed);
  VisitedSet visited(space);
  TrialRecorder recorder(objective, budget);
  std::unordered_map<std::string, double> cache;

  auto evaluate = [&](const Configuration& c) {
    const double f = recorder.evaluate(c);
    visited.insert(c);
    cache.emplace(space.canonical_key(c), f);
    return f;
  };

  Configuration current;
  double current_fitness = 0.0;
  double temperature = 0.0;
  if (config.initial_temperature) {
    temperature = *config.initial_temperature;
    current = space.sample_uniform(rng);
    current_fitness = evaluate(current);
  } else {
    std::vector<double> warmup;
    const std::size_t n = std::min(config.warmup_samples, budget);
    for (std::size_t i = 0; i < n; ++i) {
      auto c = visited.draw_unvisited(rng, kRejectionTries);
      if (!c) break;
      const double f = evaluate(*c);
      if (warmup.empty() || f > current_fitness) {
        current = *c;
        current_fitness = f;
      }
      warmup.push_back(f);
    }
    temperature = population_stddev(warmup);
    // A flat warmup gives no scale; fall back to unit temperature.
    if (!(temperature > 0.0)) temperature = 1.0;
  }

  std::vector<std::size_t> movable;
  for (std::size_t i = 0; i < space.dimension(); ++i)
    if (space.param(i).space.size() > 1) movable.push_back(i);

  std::size_t proposals = 0;
  std::size_t cache_streak = 0;
  while (recorder.remaining() > 0 && !movable.empty() && !visited.full() &&
         cache_streak < kMaxConsecutiveCacheHits) {
    const std::size_t i = movable[uniform_below(rng, movable.size())];
    auto options = space.param(i).space.neighbors(current.values[i]);
    Configuration proposal = current;
    proposal.values[i] = std::move(options[uniform_below(rng, options.size())]);

    double f = 0.0;
    if (auto hit = cache.find(space.canonical_key(proposal)); hit != cache.end()) {
      f = hit->second;
      ++cache_streak;
    } else {
      f = evaluate(proposal);
      cache_streak = 0;
    }
    if (metropolis_accept(current_fitness, f, temperature, rng)) {
      current = std::move(proposal);
      current_fitness = f;
    }
    if (++proposals % config.moves_per_temperature == 0)
      temperature *= config.cooling;
  }
  return std::move(recorder).finish(visited.full());
}

// ---------------------------------------------------------------------------

void GbfsConfig::validate() const {
  if (pool_size < 1) throw ConfigError("G-BFS pool size must be >= 1");
}

RunResult greedy_bfs(const SearchSpace& space, const GbfsConfig& config,
                     std::size_t budget, std::uint64_t seed,
                     const Objective& objective) {
  config.validate();
  if (budget < 1) throw ConfigError("trial budget must be >= 1");
  if (config.start && !space.contains(*config.start))
    throw DomainError("G-BFS start configuration is not in the search space");
  Rng rng(seed);
  VisitedSet visited(space);
  TrialRecorder recorder(objective, budget);

  // Ordered by decreasing fitness, then by evaluation order.
  struct Entry {
    double fitness;
    std::size_t order;
    Configuration config;
    bool operator<(const Entry& o) const {
      if (fitness != o.fitness) return fitness > o.fitness;
      return order < o.order;
    }
  };
  std::set<Entry> frontier;
  std::size_t order = 0;
  auto evaluate = [&](Configuration c) {
    const double f = recorder.evaluate(c);
    visited.insert(c);
    frontier.insert(Entry{f, order++, std::move(c)});
  };

  evaluate(config.start ? *config.start : space.sample_uniform(rng));
  while (recorder.remaining() > 0 && !frontier.empty()) {
    auto top = frontier.begin();
    std::vector<Configuration> fresh;
    for (auto& n : space.neighbors(top->config))
      if (!visited.contains(n)) fresh.push_back(std::move(n));
    const bool drained = fresh.size() <= config.pool_size;
    if (drained) frontier.erase(top);
    const std::size_t take = std::min(fresh.size(), config.pool_size);
    for (std::size_t k = 0; k < take && recorder.remaining() > 0; ++k) {
      // Partial Fisher-Yates: a uniform subset in uniform order.
      std::swap(fresh[k], fresh[k + uniform_below(rng, fresh.size() - k)]);
      evaluate(std::move(fresh[k]));
    }
  }
  return std::move(recorder).finish(visited.full());
}

}  // namespace topotune
