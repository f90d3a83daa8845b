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

#ifndef TOPOTUNE_QRW_H_
#define TOPOTUNE_QRW_H_

#include <cstddef>
#include <vector>

#include "topotune/random.h"
#include "topotune/space.h"

namespace topotune {

// Mutation rate of the q-random walk. Admits q = 0 (no mutation); rejects
// q >= 1, where the walk does not terminate almost surely.
class QrwParams {
 public:
  explicit QrwParams(double q);
  double q() const { return q_; }

 private:
  double q_;
};

// Hard per-walk step limit. Expected length is q / (1 - q).
inline constexpr std::size_t kMaxWalkSteps = 1'000'000;

// Killed random walk: at each vertex stop with probability 1 - q, otherwise
// step to a uniformly chosen neighbor. Isolated vertices stop immediately.
// Neighbors are queried lazily, so the feasible set is never materialized.
ParamValue qrw_sample(const ParameterSpace& space, const ParamValue& start,
                      QrwParams params, Rng& rng);

// Stopping distribution of the walk, indexed by graph vertex.
struct ExactDistribution {
  std::vector<double> probabilities;
};

// Solves (I - Q) x = e_start with Q[v][u] = q / deg(u) for each edge, and
// returns (1 - q) x.
ExactDistribution qrw_exact_distribution(const TopologyGraph& graph,
                                         std::size_t start, double q);

// Column sums of (I - Q)^-1; each equals 1 / (1 - q).
std::vector<double> inverse_column_sums(const TopologyGraph& graph, double q);

// max_j |column_sum_j - 1 / (1 - q)|.
double column_sum_check(const TopologyGraph& graph, double q);

}  // namespace topotune

#endif  // TOPOTUNE_QRW_H_
