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

#include "topotune/benchobj.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "topotune/errors.h"

namespace topotune {

namespace {

std::vector<std::int64_t> parse_dims(std::string_view text) {
  std::vector<std::int64_t> dims;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw ConfigError("operator dimension '" + item + "' is not an integer");
    dims.push_back(v);
  }
  return dims;
}

void require_positive(std::int64_t v, const char* what) {
  if (v < 1)
    throw ConfigError(std::string(what) + " must be >= 1, got " +
                      std::to_string(v));
}

const std::vector<std::int64_t>& factors_at(const Configuration& config,
                                            std::size_t i, std::int64_t product,
                                            int arity) {
  const auto* t = i < config.values.size()
                      ? std::get_if<FactorTuple>(&config.values[i])
                      : nullptr;
  if (!t || t->factors.size() != static_cast<std::size_t>(arity))
    throw DomainError("parameter " + std::to_string(i) + " must be a " +
                      std::to_string(arity) + "-factor tuple");
  std::int64_t rest = product;
  for (std::int64_t f : t->factors) {
    if (f < 1 || rest % f != 0)
      throw DomainError("parameter " + std::to_string(i) +
                        " does not factorize " + std::to_string(product));
    rest /= f;
  }
  if (rest != 1)
    throw DomainError("parameter " + std::to_string(i) +
                      " does not factorize " + std::to_string(product));
  return t->factors;
}

// Thread-block shape and resource use extracted from a configuration.
struct KernelShape {
  std::int64_t threads = 1;        // per block
  std::int64_t register_tile = 1;  // elements per thread
  std::int64_t grid = 1;           // blocks
  std::int64_t shared = 1;         // shared-buffer elements
  std::int64_t inner = 1;          // innermost reduction split
  double multiplier = 1.0;
};

KernelShape matmul_shape(const Configuration& c, std::size_t offset,
                         std::int64_t n, std::int64_t m, std::int64_t k) {
  const auto& nf = factors_at(c, offset, n, 4);
  const auto& mf = factors_at(c, offset + 1, m, 4);
  const auto& kf = factors_at(c, offset + 2, k, 3);
  KernelShape s;
  s.threads = nf[2] * mf[2];
  s.register_tile = nf[3] * mf[3];
  s.grid = nf[0] * mf[0];
  s.shared = (nf[2] * nf[3] + mf[2] * mf[3]) * kf[2];
  s.inner = kf[2];
  return s;
}

KernelShape kernel_shape(const OperatorSpec& spec, const Configuration& c) {
  if (const auto* mm = std::get_if<MatMulShape>(&spec)) {
    if (c.values.size() != 3)
      throw DomainError("matmul configurations have 3 parameters");
    return matmul_shape(c, 0, mm->n, mm->m, mm->k);
  }
  if (const auto* bmm = std::get_if<BatchMatMulShape>(&spec)) {
    if (c.values.size() != 4)
      throw DomainError("batchmatmul configurations have 4 parameters");
    const auto& bf = factors_at(c, 0, bmm->batch, 2);
    KernelShape s = matmul_shape(c, 1, bmm->n, bmm->m, bmm->k);
    s.grid *= bf[0];
    return s;
  }
  const auto& conv = std::get<Conv2DShape>(spec);
  if (c.values.size() != 8)
    throw DomainError("conv2d configurations have 8 parameters");
  const auto& co = factors_at(c, 0, conv.out_channels, 4);
  const auto& ho = factors_at(c, 1, conv.out_height(), 4);
  const auto& wo = factors_at(c, 2, conv.out_width(), 4);
  const auto& ci = factors_at(c, 3, conv.in_channels, 2);
  const auto& hk = factors_at(c, 4, conv.kernel_height, 2);
  const auto& wk = factors_at(c, 5, conv.kernel_width, 2);
  const auto* unroll = std::get_if<std::string>(&c.values[6]);
  if (!unroll || (*unroll != kUnrollOn && *unroll != kUnrollOff))
    throw DomainError("explicit_unroll must be a declared label");
  const auto* step = std::get_if<double>(&c.values[7]);
  static const std::vector<double> kSteps = {0, 16, 64, 512, 1500};
  if (!step || std::find(kSteps.begin(), kSteps.end(), *step) == kSteps.end())
    throw DomainError("max_unroll_step must be a declared value");

  KernelShape s;
  s.threads = co[2] * ho[2] * wo[2];
  s.register_tile = co[3] * ho[3] * wo[3];
  s.grid = co[0] * ho[0] * wo[0];
  s.shared = (co[2] * co[3] + ci[1]) * hk[1] * wk[1] * 8;
  s.inner = hk[1] * wk[1];
  s.multiplier = (*unroll == kUnrollOn && *step >= 64.0) ? 1.05 : 1.0;
  return s;
}

}  // namespace

std::int64_t Conv2DShape::out_height() const {
  const std::int64_t span = in_height + 2 * padding - kernel_height;
  return span < 0 ? 0 : span / stride + 1;
}

std::int64_t Conv2DShape::out_width() const {
  const std::int64_t span = in_width + 2 * padding - kernel_width;
  return span < 0 ? 0 : span / stride + 1;
}

OperatorSpec parse_operator(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ConfigError("operator must look like kind:d1,d2,...; got '" +
                      std::string(text) + "'");
  const std::string kind(text.substr(0, colon));
  const auto d = parse_dims(text.substr(colon + 1));
  auto expect = [&](std::size_t n) {
    if (d.size() != n)
      throw ConfigError(kind + " takes " + std::to_string(n) +
                        " dimensions, got " + std::to_string(d.size()));
  };
  OperatorSpec spec;
  if (kind == "matmul") {
    expect(3);
    spec = MatMulShape{d[0], d[1], d[2]};
  } else if (kind == "batchmatmul" || kind == "bmm") {
    expect(4);
    spec = BatchMatMulShape{d[0], d[1], d[2], d[3]};
  } else if (kind == "conv2d") {
    expect(9);
    spec = Conv2DShape{d[0], d[1], d[2], d[3], d[4], d[5], d[6], d[7], d[8]};
  } else {
    throw ConfigError("unknown operator kind '" + kind + "'");
  }
  // Validates dimensions.
  operator_space(spec);
  return spec;
}

std::string operator_id(const OperatorSpec& spec) {
  std::ostringstream os;
  if (const auto* mm = std::get_if<MatMulShape>(&spec)) {
    os << "matmul:" << mm->n << ',' << mm->m << ',' << mm->k;
  } else if (const auto* b = std::get_if<BatchMatMulShape>(&spec)) {
    os << "batchmatmul:" << b->batch << ',' << b->n << ',' << b->m << ','
       << b->k;
  } else {
    const auto& c = std::get<Conv2DShape>(spec);
    os << "conv2d:" << c.batch << ',' << c.in_channels << ',' << c.in_height
       << ',' << c.in_width << ',' << c.out_channels << ','
       << c.kernel_height << ',' << c.kernel_width << ',' << c.stride << ','
       << c.padding;
  }
  return os.str();
}

SearchSpace matmul_space(const OperatorSpec& spec) {
  const auto* mm = std::get_if<MatMulShape>(&spec);
  if (!mm) throw ConfigError("matmul_space needs a matmul operator");
  require_positive(mm->n, "N");
  require_positive(mm->m, "M");
  require_positive(mm->k, "K");
  return SearchSpace({{"n", ParameterSpace::factorization(mm->n, 4)},
                      {"m", ParameterSpace::factorization(mm->m, 4)},
                      {"k", ParameterSpace::factorization(mm->k, 3)}});
}

SearchSpace batchmatmul_space(const OperatorSpec& spec) {
  const auto* b = std::get_if<BatchMatMulShape>(&spec);
  if (!b) throw ConfigError("batchmatmul_space needs a batchmatmul operator");
  require_positive(b->batch, "B");
  require_positive(b->n, "N");
  require_positive(b->m, "M");
  require_positive(b->k, "K");
  return SearchSpace({{"b", ParameterSpace::factorization(b->batch, 2)},
                      {"n", ParameterSpace::factorization(b->n, 4)},
                      {"m", ParameterSpace::factorization(b->m, 4)},
                      {"k", ParameterSpace::factorization(b->k, 3)}});
}

SearchSpace conv2d_space(const OperatorSpec& spec) {
  const auto* c = std::get_if<Conv2DShape>(&spec);
  if (!c) throw ConfigError("conv2d_space needs a conv2d operator");
  require_positive(c->batch, "batch");
  require_positive(c->in_channels, "C_in");
  require_positive(c->in_height, "H_in");
  require_positive(c->in_width, "W_in");
  require_positive(c->out_channels, "C_out");
  require_positive(c->kernel_height, "H_k");
  require_positive(c->kernel_width, "W_k");
  require_positive(c->stride, "stride");
  if (c->padding < 0) throw ConfigError("padding must be >= 0");
  if (c->out_height() < 1 || c->out_width() < 1)
    throw ConfigError("convolution output is empty (H_out=" +
                      std::to_string(c->out_height()) +
                      ", W_out=" + std::to_string(c->out_width()) + ")");
  return SearchSpace({
      {"c_out", ParameterSpace::factorization(c->out_channels, 4)},
      {"h_out", ParameterSpace::factorization(c->out_height(), 4)},
      {"w_out", ParameterSpace::factorization(c->out_width(), 4)},
      {"c_in", ParameterSpace::factorization(c->in_channels, 2)},
      {"h_k", ParameterSpace::factorization(c->kernel_height, 2)},
      {"w_k", ParameterSpace::factorization(c->kernel_width, 2)},
      {"explicit_unroll", ParameterSpace::categorical({kUnrollOn, kUnrollOff})},
      {"max_unroll_step", ParameterSpace::discrete({0, 16, 64, 512, 1500})},
  });
}

SearchSpace operator_space(const OperatorSpec& spec) {
  switch (spec.index()) {
    case 0:
      return matmul_space(spec);
    case 1:
      return batchmatmul_space(spec);
    default:
      return conv2d_space(spec);
  }
}

void CostModelParams::validate() const {
  if (max_threads_per_block < 1 || shared_capacity < 1 ||
      occupancy_sweet_spot < 1 || !(register_saturation > 0.0) ||
      grid_saturation < 1 || !(base_scale > 0.0))
    throw ConfigError("cost model parameters must be positive");
  if (!(off_preferred_penalty > 0.0 && off_preferred_penalty <= 1.0))
    throw ConfigError("off-preferred penalty must lie in (0, 1]");
}

double synthetic_cost(const OperatorSpec& spec, const Configuration& config,
                      const CostModelParams& params) {
  const KernelShape s = kernel_shape(spec, config);
  if (s.threads > params.max_threads_per_block ||
      s.shared > params.shared_capacity)
    return 0.0;

  const double sweet = static_cast<double>(params.occupancy_sweet_spot);
  const double t = static_cast<double>(s.threads);
  const double occupancy =
      (std::min(t, sweet) / sweet) * std::sqrt(sweet / std::max(t, sweet));
  const double r = static_cast<double>(s.register_tile);
  const double reuse = r / (r + params.register_saturation);
  const double vector =
      params.preferred_inner.contains(s.inner) ? 1.0 : params.off_preferred_penalty;
  const double g = static_cast<double>(params.grid_saturation);
  const double grid = std::min(static_cast<double>(s.grid), g) / g;
  return params.base_scale * occupancy * reuse * vector * grid * s.multiplier;
}

Objective synthetic_objective(const OperatorSpec& spec,
                              CostModelParams params) {
  params.validate();
  return [spec, params = std::move(params)](const Configuration& c) {
    return synthetic_cost(spec, c, params);
  };
}

Objective external_objective(std::string command, const SearchSpace& space,
                             std::chrono::milliseconds timeout) {
  auto owned = std::make_shared<const SearchSpace>(space);
  return [command = std::move(command), owned, timeout](const Configuration& c) {
    return external_evaluate(command, *owned, c, timeout);
  };
}

}  // namespace topotune
