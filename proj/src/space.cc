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

#include "topotune/space.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "topotune/errors.h"

namespace topotune {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(p);
}

// binomial(n, r), or UINT64_MAX when it does not fit.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // result is binomial(n - r + i - 1, i - 1) here; the division is exact.
    result = result * (n - r + i) / i;
    if (result > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::string describe(const ParamValue& value) {
  struct {
    std::string operator()(const FactorTuple& t) const {
      std::ostringstream os;
      os << '(';
      for (std::size_t i = 0; i < t.factors.size(); ++i)
        os << (i ? "," : "") << t.factors[i];
      os << ')';
      return os.str();
    }
    std::string operator()(const Ordering& o) const {
      std::string s = "(";
      for (std::size_t i = 0; i < o.labels.size(); ++i)
        s += (i ? "," : "") + o.labels[i];
      return s + ")";
    }
    std::string operator()(double d) const {
      std::ostringstream os;
      os << d;
      return os.str();
    }
    std::string operator()(const std::string& s) const { return s; }
  } visitor;
  return std::visit(visitor, value);
}

void require_distinct(const std::vector<std::string>& labels,
                      const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second)
      throw ConfigError(std::string(what) + " label '" + l +
                        "' appears more than once");
  }
}

}  // namespace

const char* kind_name(ParamKind kind) {
  switch (kind) {
    case ParamKind::kFactorization:
      return "factorization";
    case ParamKind::kPermutation:
      return "permutation";
    case ParamKind::kDiscrete:
      return "discrete";
    case ParamKind::kCategorical:
      return "categorical";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

ParameterSpace ParameterSpace::factorization(std::int64_t product, int arity) {
  if (product < 1)
    throw ConfigError("factorization product must be >= 1, got " +
                      std::to_string(product));
  if (arity < 1)
    throw ConfigError("factorization arity must be >= 1, got " +
                      std::to_string(arity));
  ParameterSpace s;
  s.kind_ = ParamKind::kFactorization;
  s.product_ = product;
  s.arity_ = arity;
  std::int64_t rest = product;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    s.primes_.push_back(p);
    s.prime_exponents_.push_back(e);
  }
  if (rest > 1) {
    s.primes_.push_back(rest);
    s.prime_exponents_.push_back(1);
  }
  if (s.count_tuples(s.prime_exponents_, arity) == UINT64_MAX)
    throw ConfigError("factorization of " + std::to_string(product) +
                      " into " + std::to_string(arity) +
                      " factors has too many tuples to index");
  return s;
}

ParameterSpace ParameterSpace::permutation(std::vector<std::string> items) {
  if (items.empty()) throw ConfigError("permutation needs at least one item");
  if (items.size() > 20)
    throw ConfigError("permutation supports at most 20 items, got " +
                      std::to_string(items.size()));
  require_distinct(items, "permutation");
  ParameterSpace s;
  s.kind_ = ParamKind::kPermutation;
  s.labels_ = std::move(items);
  return s;
}

ParameterSpace ParameterSpace::discrete(std::vector<double> values) {
  if (values.empty()) throw ConfigError("discrete needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw ConfigError("discrete values must be finite");
    if (i > 0 && !(values[i - 1] < values[i]))
      throw ConfigError("discrete values must be strictly increasing");
  }
  ParameterSpace s;
  s.kind_ = ParamKind::kDiscrete;
  s.values_ = std::move(values);
  return s;
}

ParameterSpace ParameterSpace::categorical(std::vector<std::string> labels) {
  if (labels.empty()) throw ConfigError("categorical needs at least one label");
  require_distinct(labels, "categorical");
  ParameterSpace s;
  s.kind_ = ParamKind::kCategorical;
  s.labels_ = std::move(labels);
  return s;
}

// ---------------------------------------------------------------------------
// Factorization arithmetic over exponent vectors
// ---------------------------------------------------------------------------

std::int64_t ParameterSpace::from_exponents(const Exponents& e) const {
  std::int64_t v = 1;
  for (std::size_t i = 0; i < primes_.size(); ++i)
    for (int k = 0; k < e[i]; ++k) v *= primes_[i];
  return v;
}

ParameterSpace::Exponents ParameterSpace::exponents_of(
    std::int64_t value) const {
  // Caller guarantees value divides product_.
  Exponents e(primes_.size(), 0);
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    while (value % primes_[i] == 0) {
      value /= primes_[i];
      ++e[i];
    }
  }
  return e;
}

std::vector<std::pair<std::int64_t, ParameterSpace::Exponents>>
ParameterSpace::divisors_of(const Exponents& e) const {
  std::vector<std::pair<std::int64_t, Exponents>> out;
  Exponents cur(e.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == e.size()) {
      out.emplace_back(from_exponents(cur), cur);
      return;
    }
    for (int k = 0; k <= e[i]; ++k) {
      cur[i] = k;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::uint64_t ParameterSpace::count_tuples(const Exponents& e,
                                           int positions) const {
  if (positions == 0)
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; }) ? 1
                                                                          : 0;
  std::uint64_t n = 1;
  for (int x : e)
    n = saturating_mul(n, binomial(static_cast<std::uint64_t>(x + positions - 1),
                                   static_cast<std::uint64_t>(positions - 1)));
  return n;
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

std::size_t ParameterSpace::label_index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? labels_.size()
                             : static_cast<std::size_t>(it - labels_.begin());
}

bool ParameterSpace::contains(const ParamValue& value) const {
  switch (kind_) {
    case ParamKind::kFactorization: {
      const auto* t = std::get_if<FactorTuple>(&value);
      if (!t || t->factors.size() != static_cast<std::size_t>(arity_))
        return false;
      std::int64_t rest = product_;
      for (std::int64_t f : t->factors) {
        if (f < 1 || rest % f != 0) return false;
        rest /= f;
      }
      return rest == 1;
    }
    case ParamKind::kPermutation: {
      const auto* o = std::get_if<Ordering>(&value);
      if (!o || o->labels.size() != labels_.size()) return false;
      auto a = o->labels;
      auto b = labels_;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      return a == b;
    }
    case ParamKind::kDiscrete: {
      const auto* d = std::get_if<double>(&value);
      return d && std::binary_search(values_.begin(), values_.end(), *d);
    }
    case ParamKind::kCategorical: {
      const auto* s = std::get_if<std::string>(&value);
      return s && label_index(*s) < labels_.size();
    }
  }
  return false;
}

void ParameterSpace::require_feasible(const ParamValue& value) const {
  if (contains(value)) return;
  std::string why;
  switch (kind_) {
    case ParamKind::kFactorization:
      why = "expected " + std::to_string(arity_) +
            " positive factors with product " + std::to_string(product_);
      break;
    case ParamKind::kPermutation:
      why = "expected an arrangement of the " +
            std::to_string(labels_.size()) + " permutation items";
      break;
    case ParamKind::kDiscrete:
      why = "expected one of the declared discrete values";
      break;
    case ParamKind::kCategorical:
      why = "expected one of the declared categorical labels";
      break;
  }
  throw DomainError(std::string(kind_name(kind_)) + " value " +
                    describe(value) + " is infeasible: " + why);
}

// ---------------------------------------------------------------------------
// Adjacency
// ---------------------------------------------------------------------------

std::vector<ParamValue> ParameterSpace::neighbors(
    const ParamValue& value) const {
  require_feasible(value);
  std::vector<ParamValue> out;
  switch (kind_) {
    case ParamKind::kFactorization: {
      const auto& f = std::get<FactorTuple>(value).factors;
      std::set<FactorTuple> found;
      for (std::size_t n = 0; n < f.size(); ++n) {
        for (std::int64_t p : primes_) {
          if (f[n] % p != 0) continue;
          for (std::size_t m = 0; m < f.size(); ++m) {
            if (m == n) continue;
            FactorTuple moved{f};
            moved.factors[n] /= p;
            moved.factors[m] *= p;
            found.insert(std::move(moved));
          }
        }
      }
      for (auto& t : found) out.emplace_back(t);
      break;
    }
    case ParamKind::kPermutation: {
      const auto& labels = std::get<Ordering>(value).labels;
      std::vector<std::pair<std::uint64_t, Ordering>> swapped;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
          Ordering o{labels};
          std::swap(o.labels[i], o.labels[j]);
          swapped.emplace_back(rank(o), std::move(o));
        }
      }
      std::sort(swapped.begin(), swapped.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [r, o] : swapped) out.emplace_back(std::move(o));
      break;
    }
    case ParamKind::kDiscrete: {
      auto it = std::lower_bound(values_.begin(), values_.end(),
                                 std::get<double>(value));
      auto i = static_cast<std::size_t>(it - values_.begin());
      if (i > 0) out.emplace_back(values_[i - 1]);
      if (i + 1 < values_.size()) out.emplace_back(values_[i + 1]);
      break;
    }
    case ParamKind::kCategorical: {
      const auto& s = std::get<std::string>(value);
      for (const auto& l : labels_)
        if (l != s) out.emplace_back(l);
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counting, ranking, enumeration
// ---------------------------------------------------------------------------

std::uint64_t ParameterSpace::size() const {
  switch (kind_) {
    case ParamKind::kFactorization:
      return count_tuples(prime_exponents_, arity_);
    case ParamKind::kPermutation:
      return factorial(static_cast<int>(labels_.size()));
    case ParamKind::kDiscrete:
      return values_.size();
    case ParamKind::kCategorical:
      return labels_.size();
  }
  return 0;
}

std::uint64_t ParameterSpace::rank(const ParamValue& value) const {
  require_feasible(value);
  switch (kind_) {
    case ParamKind::kFactorization: {
      const auto& f = std::get<FactorTuple>(value).factors;
      Exponents rest = prime_exponents_;
      std::uint64_t r = 0;
      for (int pos = 0; pos + 1 < arity_; ++pos) {
        for (const auto& [d, de] : divisors_of(rest)) {
          if (d >= f[pos]) break;
          Exponents left = rest;
          for (std::size_t i = 0; i < left.size(); ++i) left[i] -= de[i];
          r += count_tuples(left, arity_ - pos - 1);
        }
        Exponents fe = exponents_of(f[pos]);
        for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= fe[i];
      }
      return r;
    }
    case ParamKind::kPermutation: {
      const auto& labels = std::get<Ordering>(value).labels;
      const int n = static_cast<int>(labels.size());
      std::vector<bool> used(labels_.size(), false);
      std::uint64_t r = 0;
      for (int i = 0; i < n; ++i) {
        std::size_t idx = label_index(labels[i]);
        std::uint64_t smaller = 0;
        for (std::size_t k = 0; k < idx; ++k)
          if (!used[k]) ++smaller;
        used[idx] = true;
        r += smaller * factorial(n - 1 - i);
      }
      return r;
    }
    case ParamKind::kDiscrete: {
      auto it = std::lower_bound(values_.begin(), values_.end(),
                                 std::get<double>(value));
      return static_cast<std::uint64_t>(it - values_.begin());
    }
    case ParamKind::kCategorical:
      return label_index(std::get<std::string>(value));
  }
  return 0;
}

ParamValue ParameterSpace::unrank(std::uint64_t r) const {
  if (r >= size())
    throw DomainError("rank " + std::to_string(r) + " out of range for " +
                      kind_name(kind_) + " space of size " +
                      std::to_string(size()));
  switch (kind_) {
    case ParamKind::kFactorization: {
      FactorTuple t;
      Exponents rest = prime_exponents_;
      for (int pos = 0; pos + 1 < arity_; ++pos) {
        for (const auto& [d, de] : divisors_of(rest)) {
          Exponents left = rest;
          for (std::size_t i = 0; i < left.size(); ++i) left[i] -= de[i];
          std::uint64_t c = count_tuples(left, arity_ - pos - 1);
          if (r < c) {
            t.factors.push_back(d);
            rest = std::move(left);
            break;
          }
          r -= c;
        }
      }
      t.factors.push_back(from_exponents(rest));
      return t;
    }
    case ParamKind::kPermutation: {
      const int n = static_cast<int>(labels_.size());
      std::vector<std::size_t> pool(labels_.size());
      std::iota(pool.begin(), pool.end(), 0);
      Ordering o;
      for (int i = 0; i < n; ++i) {
        std::uint64_t f = factorial(n - 1 - i);
        auto k = static_cast<std::size_t>(r / f);
        r %= f;
        o.labels.push_back(labels_[pool[k]]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
      }
      return o;
    }
    case ParamKind::kDiscrete:
      return values_[r];
    case ParamKind::kCategorical:
      return labels_[r];
  }
  return {};
}

std::vector<ParamValue> ParameterSpace::enumerate(std::uint64_t cap) const {
  const std::uint64_t n = size();
  if (n > cap)
    throw DomainError(std::string(kind_name(kind_)) + " space has " +
                      std::to_string(n) + " values, above the enumeration cap " +
                      std::to_string(cap));
  std::vector<ParamValue> out;
  out.reserve(n);
  switch (kind_) {
    case ParamKind::kFactorization: {
      std::vector<std::int64_t> prefix;
      std::function<void(const Exponents&)> rec = [&](const Exponents& rest) {
        if (static_cast<int>(prefix.size()) + 1 == arity_) {
          auto full = prefix;
          full.push_back(from_exponents(rest));
          out.emplace_back(FactorTuple{std::move(full)});
          return;
        }
        for (const auto& [d, de] : divisors_of(rest)) {
          Exponents left = rest;
          for (std::size_t i = 0; i < left.size(); ++i) left[i] -= de[i];
          prefix.push_back(d);
          rec(left);
          prefix.pop_back();
        }
      };
      rec(prime_exponents_);
      break;
    }
    case ParamKind::kPermutation: {
      std::vector<std::size_t> idx(labels_.size());
      std::iota(idx.begin(), idx.end(), 0);
      do {
        Ordering o;
        for (std::size_t i : idx) o.labels.push_back(labels_[i]);
        out.emplace_back(std::move(o));
      } while (std::next_permutation(idx.begin(), idx.end()));
      break;
    }
    case ParamKind::kDiscrete:
      for (double v : values_) out.emplace_back(v);
      break;
    case ParamKind::kCategorical:
      for (const auto& l : labels_) out.emplace_back(l);
      break;
  }
  return out;
}

ParamValue ParameterSpace::sample_uniform(Rng& rng) const {
  return unrank(uniform_below(rng, size()));
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

nlohmann::ordered_json ParameterSpace::value_to_json(
    const ParamValue& value) const {
  require_feasible(value);
  switch (kind_) {
    case ParamKind::kFactorization:
      return std::get<FactorTuple>(value).factors;
    case ParamKind::kPermutation:
      return std::get<Ordering>(value).labels;
    case ParamKind::kDiscrete:
      return std::get<double>(value);
    case ParamKind::kCategorical:
      return std::get<std::string>(value);
  }
  return nullptr;
}

ParamValue ParameterSpace::value_from_json(const nlohmann::json& json) const {
  ParamValue v;
  try {
    switch (kind_) {
      case ParamKind::kFactorization:
        v = FactorTuple{json.get<std::vector<std::int64_t>>()};
        break;
      case ParamKind::kPermutation:
        v = Ordering{json.get<std::vector<std::string>>()};
        break;
      case ParamKind::kDiscrete:
        v = json.get<double>();
        break;
      case ParamKind::kCategorical:
        v = json.get<std::string>();
        break;
    }
  } catch (const nlohmann::json::exception&) {
    throw DomainError(std::string("cannot read a ") + kind_name(kind_) +
                      " value from " + json.dump());
  }
  require_feasible(v);
  return v;
}

ParameterSpace parameter_from_json(const nlohmann::json& json) {
  try {
    if (!json.is_object())
      throw ConfigError("parameter declaration must be an object: " +
                        json.dump());
    const auto kind = json.at("kind").get<std::string>();
    if (kind == "factorization")
      return ParameterSpace::factorization(json.at("product").get<std::int64_t>(),
                                           json.at("arity").get<int>());
    if (kind == "permutation")
      return ParameterSpace::permutation(
          json.at("items").get<std::vector<std::string>>());
    if (kind == "discrete")
      return ParameterSpace::discrete(
          json.at("values").get<std::vector<double>>());
    if (kind == "categorical")
      return ParameterSpace::categorical(
          json.at("labels").get<std::vector<std::string>>());
    throw ConfigError("unknown parameter kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad parameter declaration ") + json.dump() +
                      ": " + e.what());
  }
}

nlohmann::ordered_json parameter_to_json(const ParameterSpace& space) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(space.kind());
  switch (space.kind()) {
    case ParamKind::kFactorization:
      j["product"] = space.product();
      j["arity"] = space.arity();
      break;
    case ParamKind::kPermutation:
      j["items"] = space.labels();
      break;
    case ParamKind::kDiscrete:
      j["values"] = space.values();
      break;
    case ParamKind::kCategorical:
      j["labels"] = space.labels();
      break;
  }
  return j;
}

// ---------------------------------------------------------------------------
// SearchSpace
// ---------------------------------------------------------------------------

SearchSpace::SearchSpace(std::vector<NamedParameter> params)
    : params_(std::move(params)) {
  if (params_.empty())
    throw ConfigError("a search space needs at least one parameter");
  std::unordered_set<std::string> names;
  for (const auto& p : params_) {
    if (p.name.empty()) throw ConfigError("parameter names must be non-empty");
    if (!names.insert(p.name).second)
      throw ConfigError("duplicate parameter name '" + p.name + "'");
    size_ = saturating_mul(size_, p.space.size());
  }
}

std::size_t SearchSpace::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (params_[i].name == name) return i;
  throw ConfigError("no parameter named '" + name + "'");
}

bool SearchSpace::contains(const Configuration& config) const {
  if (config.values.size() != params_.size()) return false;
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (!params_[i].space.contains(config.values[i])) return false;
  return true;
}

Configuration SearchSpace::sample_uniform(Rng& rng) const {
  Configuration c;
  c.values.reserve(params_.size());
  for (const auto& p : params_) c.values.push_back(p.space.sample_uniform(rng));
  return c;
}

std::uint64_t SearchSpace::rank(const Configuration& config) const {
  if (!rankable())
    throw DomainError("search space is too large to rank configurations");
  if (config.values.size() != params_.size())
    throw DomainError("configuration has " +
                      std::to_string(config.values.size()) +
                      " values, space has " + std::to_string(params_.size()) +
                      " parameters");
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < params_.size(); ++i)
    r = r * params_[i].space.size() + params_[i].space.rank(config.values[i]);
  return r;
}

Configuration SearchSpace::unrank(std::uint64_t r) const {
  if (!rankable() || r >= size_)
    throw DomainError("configuration rank " + std::to_string(r) +
                      " out of range");
  Configuration c;
  c.values.resize(params_.size());
  for (std::size_t i = params_.size(); i-- > 0;) {
    const std::uint64_t n = params_[i].space.size();
    c.values[i] = params_[i].space.unrank(r % n);
    r /= n;
  }
  return c;
}

std::vector<Configuration> SearchSpace::neighbors(
    const Configuration& config) const {
  if (config.values.size() != params_.size())
    throw DomainError("configuration arity does not match the search space");
  std::vector<Configuration> out;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    for (auto& v : params_[i].space.neighbors(config.values[i])) {
      Configuration n = config;
      n.values[i] = std::move(v);
      out.push_back(std::move(n));
    }
  }
  return out;
}

std::string SearchSpace::canonical_key(const Configuration& config) const {
  if (config.values.size() != params_.size())
    throw DomainError("configuration arity does not match the search space");
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < params_.size(); ++i)
    arr.push_back(params_[i].space.value_to_json(config.values[i]));
  return arr.dump();
}

nlohmann::ordered_json SearchSpace::config_to_json(
    const Configuration& config) const {
  if (config.values.size() != params_.size())
    throw DomainError("configuration arity does not match the search space");
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < params_.size(); ++i)
    j[params_[i].name] = params_[i].space.value_to_json(config.values[i]);
  return j;
}

Configuration SearchSpace::config_from_json(const nlohmann::json& json) const {
  if (!json.is_object())
    throw DomainError("configuration must be a JSON object: " + json.dump());
  if (json.size() != params_.size())
    throw DomainError("configuration names " + std::to_string(json.size()) +
                      " parameters, space has " +
                      std::to_string(params_.size()));
  Configuration c;
  for (const auto& p : params_) {
    auto it = json.find(p.name);
    if (it == json.end())
      throw DomainError("configuration is missing parameter '" + p.name + "'");
    c.values.push_back(p.space.value_from_json(*it));
  }
  return c;
}

SearchSpace SearchSpace::from_json(const nlohmann::json& json) {
  if (!json.is_array())
    throw ConfigError("search space declaration must be a JSON array");
  std::vector<NamedParameter> params;
  for (const auto& item : json) {
    if (!item.is_object() || !item.contains("name") ||
        !item.at("name").is_string())
      throw ConfigError("every parameter needs a string \"name\": " +
                        item.dump());
    params.push_back({item.at("name").get<std::string>(),
                      parameter_from_json(item)});
  }
  return SearchSpace(std::move(params));
}

nlohmann::ordered_json SearchSpace::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& p : params_) {
    nlohmann::ordered_json j;
    j["name"] = p.name;
    const auto decl = parameter_to_json(p.space);
    for (const auto& [k, v] : decl.items()) j[k] = v;
    arr.push_back(std::move(j));
  }
  return arr;
}

// ---------------------------------------------------------------------------
// Graph materialization
// ---------------------------------------------------------------------------

TopologyGraph build_graph(const ParameterSpace& space, std::uint64_t cap) {
  TopologyGraph g;
  g.vertices = space.enumerate(cap);
  g.adjacency.resize(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    auto& adj = g.adjacency[i];
    for (const auto& n : space.neighbors(g.vertices[i]))
      adj.push_back(static_cast<std::size_t>(space.rank(n)));
    std::sort(adj.begin(), adj.end());
  }
  return g;
}

}  // namespace topotune
