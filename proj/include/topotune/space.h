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

#ifndef TOPOTUNE_SPACE_H_
#define TOPOTUNE_SPACE_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "topotune/random.h"

namespace topotune {

// Default refusal threshold for materializing a feasible set.
inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// Returned by size() when the exact count does not fit in 64 bits.
inline constexpr std::uint64_t kUnboundedSize = UINT64_MAX;

// Ordered tuple of tile factors whose product is fixed.
struct FactorTuple {
  std::vector<std::int64_t> factors;
  auto operator<=>(const FactorTuple&) const = default;
};

// An arrangement of the labels of a permutation parameter.
struct Ordering {
  std::vector<std::string> labels;
  auto operator<=>(const Ordering&) const = default;
};

// One component of a configuration. The alternative must match the kind of
// the ParameterSpace it is used with: FactorTuple for factorization, Ordering
// for permutation, double for discrete, std::string for categorical.
using ParamValue = std::variant<FactorTuple, Ordering, double, std::string>;

enum class ParamKind { kFactorization, kPermutation, kDiscrete, kCategorical };

const char* kind_name(ParamKind kind);

// The feasible set of one tunable dimension together with the adjacency
// relation that turns it into an undirected graph.
//
//   factorization  ordered `arity`-tuples of positive integers with product
//                  `product`; adjacent when one prime factor moves between
//                  two positions.
//   permutation    all orderings of `items`; adjacent when they differ by a
//                  single transposition.
//   discrete       strictly increasing reals; adjacent when consecutive.
//   categorical    distinct labels; every pair adjacent.
//
// Canonical order (used by enumerate/rank/unrank) is lexicographic on
// factor tuples, lexicographic on item indices for orderings, and
// declaration order for discrete and categorical values.
class ParameterSpace {
 public:
  static ParameterSpace factorization(std::int64_t product, int arity);
  // Supports at most 20 items so that n! fits in 64 bits.
  static ParameterSpace permutation(std::vector<std::string> items);
  static ParameterSpace discrete(std::vector<double> values);
  static ParameterSpace categorical(std::vector<std::string> labels);

  ParamKind kind() const { return kind_; }

  std::int64_t product() const { return product_; }
  int arity() const { return arity_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& values() const { return values_; }

  bool contains(const ParamValue& value) const;

  // Sorted in canonical order, without duplicates. Throws DomainError when
  // `value` is infeasible.
  std::vector<ParamValue> neighbors(const ParamValue& value) const;

  // Exact cardinality. Factorizations whose count would not fit in 64 bits
  // are rejected at construction.
  std::uint64_t size() const;

  // Throws DomainError (carrying the size) when size() exceeds `cap`.
  std::vector<ParamValue> enumerate(
      std::uint64_t cap = kDefaultEnumerationCap) const;

  // Position of a feasible value in canonical order.
  std::uint64_t rank(const ParamValue& value) const;
  ParamValue unrank(std::uint64_t rank) const;

  // Uniform over the feasible set.
  ParamValue sample_uniform(Rng& rng) const;

  nlohmann::ordered_json value_to_json(const ParamValue& value) const;
  // Throws DomainError for a JSON value that is not a feasible value.
  ParamValue value_from_json(const nlohmann::json& json) const;

  friend bool operator==(const ParameterSpace&,
                         const ParameterSpace&) = default;

 private:
  ParameterSpace() = default;

  // Factorization helpers: values are handled as exponent vectors over the
  // distinct primes of product_.
  using Exponents = std::vector<int>;
  std::int64_t from_exponents(const Exponents& e) const;
  std::vector<std::pair<std::int64_t, Exponents>> divisors_of(
      const Exponents& e) const;
  std::uint64_t count_tuples(const Exponents& e, int positions) const;
  Exponents exponents_of(std::int64_t value) const;
  void require_feasible(const ParamValue& value) const;
  std::size_t label_index(const std::string& label) const;

  ParamKind kind_ = ParamKind::kDiscrete;
  std::int64_t product_ = 1;
  int arity_ = 0;
  std::vector<std::int64_t> primes_;
  Exponents prime_exponents_;
  std::vector<std::string> labels_;
  std::vector<double> values_;
};

struct NamedParameter {
  std::string name;
  ParameterSpace space;
};

// An ordered tuple of parameter values, one per SearchSpace parameter.
struct Configuration {
  std::vector<ParamValue> values;
  auto operator<=>(const Configuration&) const = default;
};

// Cartesian product of named parameter spaces.
class SearchSpace {
 public:
  // Throws ConfigError on an empty list or duplicate names.
  explicit SearchSpace(std::vector<NamedParameter> params);

  std::size_t dimension() const { return params_.size(); }
  const NamedParameter& param(std::size_t i) const { return params_[i]; }
  const std::vector<NamedParameter>& params() const { return params_; }
  // Throws ConfigError for an unknown name.
  std::size_t index_of(const std::string& name) const;

  // Product of parameter sizes, or kUnboundedSize on overflow.
  std::uint64_t size() const { return size_; }
  bool rankable() const { return size_ != kUnboundedSize; }

  bool contains(const Configuration& config) const;
  Configuration sample_uniform(Rng& rng) const;

  // Mixed-radix position with the last parameter varying fastest. Only
  // valid when rankable().
  std::uint64_t rank(const Configuration& config) const;
  Configuration unrank(std::uint64_t rank) const;

  // Configurations differing from `config` in exactly one parameter by one
  // edge of that parameter's graph.
  std::vector<Configuration> neighbors(const Configuration& config) const;

  // Identical for equal configurations across processes; used for dedup.
  std::string canonical_key(const Configuration& config) const;

  // {"<name>": value, ...} in declaration order.
  nlohmann::ordered_json config_to_json(const Configuration& config) const;
  Configuration config_from_json(const nlohmann::json& json) const;

  // Declaration list: [{"name":..., "kind":..., ...}, ...].
  static SearchSpace from_json(const nlohmann::json& json);
  nlohmann::ordered_json to_json() const;

 private:
  std::vector<NamedParameter> params_;
  std::uint64_t size_ = 1;
};

// Parses one parameter declaration object (without requiring "name").
ParameterSpace parameter_from_json(const nlohmann::json& json);
nlohmann::ordered_json parameter_to_json(const ParameterSpace& space);

// Explicit graph over a parameter's feasible set. Vertex i is the value of
// canonical rank i; adjacency lists are sorted.
struct TopologyGraph {
  std::vector<ParamValue> vertices;
  std::vector<std::vector<std::size_t>> adjacency;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t degree(std::size_t v) const { return adjacency[v].size(); }
};

TopologyGraph build_graph(const ParameterSpace& space,
                          std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace topotune

#endif  // TOPOTUNE_SPACE_H_
