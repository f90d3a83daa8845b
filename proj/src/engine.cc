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

#include "topotune/engine.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "topotune/errors.h"

namespace topotune {

void EngineConfig::validate() const {
  if (parents < 1) throw ConfigError("parents (lambda) must be >= 1");
  if (offspring < 1) throw ConfigError("offspring (rho) must be >= 1");
  if (!(mutation_rate >= 0.0 && mutation_rate < 1.0))
    throw ConfigError("mutation rate q must lie in [0, 1), got " +
                      std::to_string(mutation_rate));
  if (budget < 1) throw ConfigError("trial budget must be >= 1");
  if (retry_cap < 1) throw ConfigError("mutation retry cap must be >= 1");
}

// ---------------------------------------------------------------------------

void Archive::insert(Individual individual) {
  if (!keys_.insert(space_->canonical_key(individual.config)).second)
    throw ProtocolError("configuration " +
                        space_->canonical_key(individual.config) +
                        " is already archived");
  auto pos = std::upper_bound(
      ranked_.begin(), ranked_.end(), individual.fitness,
      [](double f, const Individual& i) { return f > i.fitness; });
  ranked_.insert(pos, std::move(individual));
}

bool Archive::contains(const Configuration& config) const {
  return keys_.contains(space_->canonical_key(config));
}

std::span<const Individual> Archive::top(std::size_t k) const {
  return std::span<const Individual>(ranked_).first(std::min(k, ranked_.size()));
}

// ---------------------------------------------------------------------------

Configuration recombine(std::span<const Individual> parents,
                        const SearchSpace& space, Rng& rng) {
  if (parents.empty()) throw ProtocolError("recombine needs at least one parent");
  double total = 0.0;
  for (const auto& p : parents) total += p.fitness;
  Configuration child;
  child.values.reserve(space.dimension());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    std::size_t chosen = 0;
    if (total > 0.0) {
      const double u = uniform01(rng) * total;
      double cumulative = 0.0;
      chosen = parents.size();
      for (std::size_t j = 0; j < parents.size(); ++j) {
        cumulative += parents[j].fitness;
        if (u < cumulative) {
          chosen = j;
          break;
        }
      }
      if (chosen == parents.size()) {
        // Rounding put u at the very top; take the last positive parent.
        chosen = parents.size() - 1;
        while (parents[chosen].fitness <= 0.0) --chosen;
      }
    } else {
      chosen = uniform_below(rng, parents.size());
    }
    child.values.push_back(parents[chosen].config.values.at(i));
  }
  return child;
}

Configuration mutate(const Configuration& child, const SearchSpace& space,
                     QrwParams params, Rng& rng) {
  Configuration out;
  out.values.reserve(child.values.size());
  for (std::size_t i = 0; i < space.dimension(); ++i)
    out.values.push_back(
        qrw_sample(space.param(i).space, child.values.at(i), params, rng));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

EngineConfig validated(EngineConfig config) {
  config.validate();
  return config;
}

}  // namespace

Engine::Engine(SearchSpace space, EngineConfig config)
    : space_(std::make_shared<const SearchSpace>(std::move(space))),
      config_(validated(config)),
      qrw_(config_.mutation_rate),
      rng_(config_.seed),
      archive_(*space_),
      proposed_(*space_) {}

std::optional<Configuration> Engine::initial_candidate() {
  for (std::size_t attempt = 0; attempt < config_.retry_cap; ++attempt) {
    auto c = space_->sample_uniform(rng_);
    if (!proposed_.contains(c)) return c;
  }
  return proposed_.draw_unvisited(rng_, 0);
}

std::optional<Configuration> Engine::child_candidate(
    std::span<const Individual> parents) {
  const Configuration child = recombine(parents, *space_, rng_);
  for (std::size_t attempt = 0; attempt < config_.retry_cap; ++attempt) {
    auto mutated = mutate(child, *space_, qrw_, rng_);
    if (!proposed_.contains(mutated)) return mutated;
  }
  return proposed_.draw_unvisited(rng_, config_.retry_cap);
}

AskResult Engine::ask(std::size_t limit) {
  if (!pending_.empty())
    throw ProtocolError("ask called with " + std::to_string(pending_.size()) +
                        " configurations not yet told");
  if (limit == 0) throw ProtocolError("ask limit must be positive");
  const bool init = state_ == EngineState::kInit;
  const std::size_t wanted =
      std::min(init ? config_.parents : config_.offspring, limit);
  const auto parents = archive_.top(config_.parents);

  AskResult result;
  while (result.batch.size() < wanted && !proposed_.full()) {
    auto c = init ? initial_candidate() : child_candidate(parents);
    if (!c) break;
    proposed_.insert(*c);
    pending_.emplace(space_->canonical_key(*c), *c);
    result.batch.push_back(std::move(*c));
  }
  result.exhausted = result.batch.empty();
  return result;
}

void Engine::tell(std::span<const Individual> results) {
  std::unordered_set<std::string> seen;
  for (const auto& r : results) {
    if (!space_->contains(r.config))
      throw ProtocolError("told configuration is not in the search space");
    const auto key = space_->canonical_key(r.config);
    if (!pending_.contains(key))
      throw ProtocolError("configuration " + key +
                          " was not handed out by the pending ask");
    if (!seen.insert(key).second)
      throw ProtocolError("configuration " + key + " told twice");
    if (!(r.fitness >= 0.0) || !std::isfinite(r.fitness))
      throw ProtocolError("fitness must be a finite non-negative number");
  }
  for (const auto& r : results) {
    pending_.erase(space_->canonical_key(r.config));
    archive_.insert(r);
  }
  if (!results.empty()) state_ = EngineState::kRunning;
}

const Individual& Engine::best() const {
  if (archive_.empty()) throw ProtocolError("best() called before any tell");
  return archive_.ranked().front();
}

RunResult run(const SearchSpace& space, const EngineConfig& config,
              const Objective& objective, std::size_t concurrency) {
  config.validate();
  if (config.budget < config.parents)
    throw ConfigError("trial budget must be at least the parent count");
  Engine engine(space, config);
  TrialRecorder recorder(objective, config.budget);
  bool exhausted = false;
  while (recorder.remaining() > 0) {
    auto asked = engine.ask(recorder.remaining());
    if (asked.exhausted) {
      exhausted = true;
      break;
    }
    const auto fitness = recorder.evaluate_batch(asked.batch, concurrency);
    std::vector<Individual> told;
    told.reserve(asked.batch.size());
    for (std::size_t i = 0; i < asked.batch.size(); ++i)
      told.push_back({std::move(asked.batch[i]), fitness[i]});
    engine.tell(told);
  }
  if (!exhausted && engine.space().rankable() &&
      engine.archive().size() >= engine.space().size())
    exhausted = true;
  return std::move(recorder).finish(exhausted);
}

}  // namespace topotune
