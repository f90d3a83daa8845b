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

#ifndef TOPOTUNE_BENCHOBJ_H_
#define TOPOTUNE_BENCHOBJ_H_

#include <chrono>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "topotune/space.h"
#include "topotune/trial_log.h"

namespace topotune {

struct MatMulShape {
  std::int64_t n = 1, m = 1, k = 1;
};

struct BatchMatMulShape {
  std::int64_t batch = 1, n = 1, m = 1, k = 1;
};

struct Conv2DShape {
  std::int64_t batch = 1;
  std::int64_t in_channels = 1, in_height = 1, in_width = 1;
  std::int64_t out_channels = 1, kernel_height = 1, kernel_width = 1;
  std::int64_t stride = 1, padding = 0;

  std::int64_t out_height() const;
  std::int64_t out_width() const;
};

using OperatorSpec = std::variant<MatMulShape, BatchMatMulShape, Conv2DShape>;

// "matmul:N,M,K", "batchmatmul:B,N,M,K" or
// "conv2d:B,Cin,Hin,Win,Cout,Hk,Wk,S,P". Throws ConfigError.
OperatorSpec parse_operator(std::string_view text);
std::string operator_id(const OperatorSpec& spec);

// Tile factorizations n, m (arity 4) and k (arity 3).
SearchSpace matmul_space(const OperatorSpec& spec);
// As matmul with a leading batch split b (arity 2).
SearchSpace batchmatmul_space(const OperatorSpec& spec);
// c_out, h_out, w_out (arity 4); c_in, h_k, w_k (arity 2); explicit_unroll
// (categorical on/off); max_unroll_step (discrete).
SearchSpace conv2d_space(const OperatorSpec& spec);
SearchSpace operator_space(const OperatorSpec& spec);

inline const char* const kUnrollOn = "explicit_unroll_on";
inline const char* const kUnrollOff = "explicit_unroll_off";

// Synthetic GPU performance surrogate. Not a hardware model: it provides a
// hierarchical landscape with an invalid region for benchmarking search.
struct CostModelParams {
  std::int64_t max_threads_per_block = 1024;
  std::int64_t shared_capacity = 12288;  // elements
  std::int64_t occupancy_sweet_spot = 256;
  double register_saturation = 16.0;
  std::set<std::int64_t> preferred_inner = {4, 8, 16};
  double off_preferred_penalty = 0.7;
  std::int64_t grid_saturation = 60;
  double base_scale = 10.0;

  void validate() const;
};

// Deterministic score; 0 for configurations over the thread or shared
// buffer limits. Throws DomainError for configurations outside the
// operator's space.
double synthetic_cost(const OperatorSpec& spec, const Configuration& config,
                      const CostModelParams& params = {});

Objective synthetic_objective(const OperatorSpec& spec,
                              CostModelParams params = {});

// Runs `command` through /bin/sh with {"params": {...}} on stdin and reads
// one non-negative number from stdout. Nonzero exit, unparsable output or
// timeout yield 0. Throws EvaluatorSpawnError when the program cannot be
// started (including shell exit status 126/127).
double external_evaluate(const std::string& command, const SearchSpace& space,
                         const Configuration& config,
                         std::chrono::milliseconds timeout);

Objective external_objective(std::string command, const SearchSpace& space,
                             std::chrono::milliseconds timeout);

}  // namespace topotune

#endif  // TOPOTUNE_BENCHOBJ_H_
