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

#include "topotune/qrw.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "topotune/errors.h"

namespace topotune {

namespace {

void require_rate(double q) {
  if (!(q >= 0.0 && q < 1.0))
    throw DomainError("mutation rate q must lie in [0, 1), got " +
                      std::to_string(q));
}

// Dense LU factorization with partial pivoting, row-major.
class DenseLu {
 public:
  explicit DenseLu(std::vector<double> a, std::size_t n)
      : n_(n), lu_(std::move(a)), perm_(n) {
    for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t pivot = k;
      for (std::size_t i = k + 1; i < n_; ++i)
        if (std::abs(at(i, k)) > std::abs(at(pivot, k))) pivot = i;
      if (at(pivot, k) == 0.0)
        throw std::logic_error("singular matrix in q-walk solver");
      if (pivot != k) {
        for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(pivot, j));
        std::swap(perm_[k], perm_[pivot]);
      }
      const double diag = at(k, k);
      for (std::size_t i = k + 1; i < n_; ++i) {
        const double f = at(i, k) / diag;
        at(i, k) = f;
        if (f == 0.0) continue;
        for (std::size_t j = k + 1; j < n_; ++j) at(i, j) -= f * at(k, j);
      }
    }
  }

  std::vector<double> solve(const std::vector<double>& b) const {
    std::vector<double> x(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = b[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) s -= at(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t i = n_; i-- > 0;) {
      double s = x[i];
      for (std::size_t j = i + 1; j < n_; ++j) s -= at(i, j) * x[j];
      x[i] = s / at(i, i);
    }
    return x;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return lu_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return lu_[i * n_ + j]; }

  std::size_t n_;
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;
};

// I - Q, where column u of Q spreads mass q evenly over u's neighbors. An
// isolated vertex keeps its mass (self-loop), matching the sampler.
DenseLu factor_walk_matrix(const TopologyGraph& graph, double q) {
  const std::size_t n = graph.vertex_count();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 1.0;
  for (std::size_t u = 0; u < n; ++u) {
    const auto& adj = graph.adjacency[u];
    if (adj.empty()) {
      a[u * n + u] -= q;
      continue;
    }
    const double w = q / static_cast<double>(adj.size());
    for (std::size_t v : adj) a[v * n + u] -= w;
  }
  return DenseLu(std::move(a), n);
}

}  // namespace

QrwParams::QrwParams(double q) : q_(q) { require_rate(q); }

ParamValue qrw_sample(const ParameterSpace& space, const ParamValue& start,
                      QrwParams params, Rng& rng) {
  if (!space.contains(start))
    throw DomainError("q-random walk start value is infeasible");
  ParamValue current = start;
  if (params.q() == 0.0) return current;
  for (std::size_t step = 0; step < kMaxWalkSteps; ++step) {
    if (uniform01(rng) >= params.q()) return current;
    auto next = space.neighbors(current);
    if (next.empty()) return current;
    current = std::move(next[uniform_below(rng, next.size())]);
  }
  throw std::logic_error("q-random walk exceeded " +
                         std::to_string(kMaxWalkSteps) + " steps");
}

ExactDistribution qrw_exact_distribution(const TopologyGraph& graph,
                                         std::size_t start, double q) {
  require_rate(q);
  const std::size_t n = graph.vertex_count();
  if (start >= n)
    throw DomainError("start vertex " + std::to_string(start) +
                      " out of range for a graph with " + std::to_string(n) +
                      " vertices");
  std::vector<double> one_hot(n, 0.0);
  one_hot[start] = 1.0;
  ExactDistribution dist{factor_walk_matrix(graph, q).solve(one_hot)};
  for (double& p : dist.probabilities) p *= 1.0 - q;
  return dist;
}

std::vector<double> inverse_column_sums(const TopologyGraph& graph, double q) {
  require_rate(q);
  const std::size_t n = graph.vertex_count();
  const DenseLu lu = factor_walk_matrix(graph, q);
  std::vector<double> sums(n, 0.0);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    for (double x : lu.solve(e)) sums[j] += x;
    e[j] = 0.0;
  }
  return sums;
}

double column_sum_check(const TopologyGraph& graph, double q) {
  const double expected = 1.0 / (1.0 - q);
  double worst = 0.0;
  for (double s : inverse_column_sums(graph, q))
    worst = std::max(worst, std::abs(s - expected));
  return worst;
}

}  // namespace topotune
