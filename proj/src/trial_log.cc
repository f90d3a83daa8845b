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

#include "topotune/trial_log.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "topotune/errors.h"

namespace topotune {

void TrialLog::write_jsonl(std::ostream& out, const SearchSpace& space) const {
  for (const auto& t : trials) {
    nlohmann::ordered_json j;
    j["trial"] = t.trial;
    j["config"] = space.config_to_json(t.config);
    j["fitness"] = t.fitness;
    j["best_so_far"] = t.best_so_far;
    j["elapsed_ms"] = t.elapsed_ms;
    out << j.dump() << '\n';
  }
}

TrialLog TrialLog::read_jsonl(std::istream& in, const SearchSpace& space) {
  TrialLog log;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    TrialRecord t;
    t.trial = j.at("trial").get<std::size_t>();
    t.config = space.config_from_json(j.at("config"));
    t.fitness = j.at("fitness").get<double>();
    t.best_so_far = j.at("best_so_far").get<double>();
    t.elapsed_ms = j.at("elapsed_ms").get<double>();
    log.trials.push_back(std::move(t));
  }
  return log;
}

// ---------------------------------------------------------------------------

bool VisitedSet::contains(const Configuration& config) const {
  return keys_.contains(space_->canonical_key(config));
}

bool VisitedSet::insert(const Configuration& config) {
  if (!keys_.insert(space_->canonical_key(config)).second) return false;
  if (space_->rankable()) ranks_.push_back(space_->rank(config));
  return true;
}

bool VisitedSet::full() const {
  return space_->rankable() && keys_.size() >= space_->size();
}

std::optional<Configuration> VisitedSet::draw_unvisited(
    Rng& rng, std::size_t tries) const {
  if (full()) return std::nullopt;
  for (std::size_t i = 0; i < tries; ++i) {
    auto c = space_->sample_uniform(rng);
    if (!contains(c)) return c;
  }
  if (!space_->rankable()) {
    // More than 2^64 configurations: rejection cannot keep failing.
    for (std::size_t i = 0; i < 1'000'000; ++i) {
      auto c = space_->sample_uniform(rng);
      if (!contains(c)) return c;
    }
    throw std::logic_error("rejection sampling failed on an unbounded space");
  }
  // k-th unvisited rank: skip over every visited rank at or below it.
  auto sorted = ranks_;
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t r = uniform_below(rng, space_->size() - sorted.size());
  for (std::uint64_t v : sorted) {
    if (v > r) break;
    ++r;
  }
  return space_->unrank(r);
}

// ---------------------------------------------------------------------------

TrialRecorder::TrialRecorder(const Objective& objective, std::size_t budget)
    : objective_(objective),
      budget_(budget),
      start_(std::chrono::steady_clock::now()) {}

double TrialRecorder::call_objective(const Configuration& config) const {
  double f = 0.0;
  try {
    f = objective_(config);
  } catch (const EvaluatorSpawnError&) {
    throw;
  } catch (...) {
    return 0.0;
  }
  return std::isfinite(f) && f > 0.0 ? f : 0.0;
}

void TrialRecorder::record(const Configuration& config, double fitness) {
  if (!best_ || fitness > best_->fitness) best_ = Individual{config, fitness};
  TrialRecord t;
  t.trial = log_.trials.size() + 1;
  t.config = config;
  t.fitness = fitness;
  t.best_so_far = best_->fitness;
  t.elapsed_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start_)
                     .count();
  log_.trials.push_back(std::move(t));
}

double TrialRecorder::evaluate(const Configuration& config) {
  if (remaining() == 0) throw std::logic_error("trial budget exhausted");
  const double f = call_objective(config);
  record(config, f);
  return f;
}

std::vector<double> TrialRecorder::evaluate_batch(
    std::span<const Configuration> configs, std::size_t concurrency) {
  if (configs.size() > remaining())
    throw std::logic_error("batch exceeds the remaining trial budget");
  std::vector<double> fitness(configs.size(), 0.0);
  const std::size_t workers = std::min(std::max<std::size_t>(concurrency, 1),
                                       configs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < configs.size(); ++i)
      fitness[i] = call_objective(configs[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
          try {
            fitness[i] = call_objective(configs[i]);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  for (std::size_t i = 0; i < configs.size(); ++i)
    record(configs[i], fitness[i]);
  return fitness;
}

RunResult TrialRecorder::finish(bool exhausted) && {
  if (!best_) throw std::logic_error("run finished without any trial");
  return RunResult{std::move(*best_), std::move(log_), exhausted};
}

}  // namespace topotune
