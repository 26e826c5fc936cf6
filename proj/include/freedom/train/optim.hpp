// Copyright 2026 The freedom-rec Authors.
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


#pragma once

#include <cmath>
#include <vector>

#include "freedom/core/matrix.hpp"
#include "freedom/core/random.hpp"

namespace freedom {

// Glorot/Xavier uniform: U(-a, a) with a = sqrt(6 / (fan_in + fan_out)). As with a
// PyTorch weight of shape (rows, cols), fan_in = cols and fan_out = rows.
inline DenseMatrix xavier_init(std::size_t rows, std::size_t cols, Rng& rng) {
  if (rows == 0 || cols == 0) throw DomainError("xavier_init: dimensions must be positive");
  const double a = std::sqrt(6.0 / static_cast<double>(rows + cols));
  DenseMatrix m(rows, cols);
  for (double& v : m.values()) v = rng.uniform(-a, a);
  return m;
}

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias-corrected moments, one (m, v) pair per parameter tensor.
class AdamState {
 public:
  AdamState(const std::vector<const DenseMatrix*>& params, AdamOptions opt) : opt_(opt) {
    for (const DenseMatrix* p : params) {
      first_.emplace_back(p->rows(), p->cols());
      second_.emplace_back(p->rows(), p->cols());
    }
  }

  void step(const std::vector<DenseMatrix*>& params, const std::vector<DenseMatrix>& grads) {
    if (params.size() != first_.size() || grads.size() != first_.size()) {
      throw DimensionError("AdamState::step: parameter count changed");
    }
    ++t_;
    const double c1 = 1.0 - std::pow(opt_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(opt_.beta2, static_cast<double>(t_));
    for (std::size_t p = 0; p < params.size(); ++p) {
      auto& w = params[p]->values();
      const auto& g = grads[p].values();
      auto& m = first_[p].values();
      auto& v = second_[p].values();
      if (g.size() != w.size() || m.size() != w.size()) {
        throw DimensionError("AdamState::step: gradient shape differs from parameter");
      }
      for (std::size_t k = 0; k < w.size(); ++k) {
        m[k] = opt_.beta1 * m[k] + (1.0 - opt_.beta1) * g[k];
        v[k] = opt_.beta2 * v[k] + (1.0 - opt_.beta2) * g[k] * g[k];
        w[k] -= opt_.lr * (m[k] / c1) / (std::sqrt(v[k] / c2) + opt_.eps);
      }
    }
  }

  std::size_t steps() const { return t_; }
  const std::vector<DenseMatrix>& first_moments() const { return first_; }
  const std::vector<DenseMatrix>& second_moments() const { return second_; }

 private:
  AdamOptions opt_;
  std::size_t t_ = 0;
  std::vector<DenseMatrix> first_;
  std::vector<DenseMatrix> second_;
};

}  // namespace freedom
