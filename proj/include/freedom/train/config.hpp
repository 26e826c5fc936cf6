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

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "freedom/core/errors.hpp"
#include "freedom/graph/interaction_graph.hpp"

namespace freedom {

// Weights the edge sampler draws with.
enum class EdgeWeighting {
  degree_sensitive,  // 1 / sqrt(w_i w_j)
  uniform,           // random edge dropout
};

inline std::string_view to_string(EdgeWeighting w) {
  return w == EdgeWeighting::degree_sensitive ? "degree" : "uniform";
}

inline EdgeWeighting parse_edge_weighting(std::string_view s) {
  if (s == "degree") return EdgeWeighting::degree_sensitive;
  if (s == "uniform") return EdgeWeighting::uniform;
  throw DomainError("unknown edge weighting '" + std::string(s) + "'");
}

struct TrainConfig {
  double lr = 1e-3;
  double lambda = 1e-3;  // weight of the modality BPR terms
  double rho = 0.8;      // fraction of user-item edges pruned each epoch
  double alpha_v = 0.1;
  std::size_t k = 10;
  std::size_t d = 64;
  std::size_t layers_ui = 2;
  std::size_t layers_ii = 1;
  std::size_t batch_size = 2048;
  std::size_t max_epochs = 1000;
  std::size_t patience = 20;
  std::uint64_t seed = 2023;
  bool weighted_item_graph = false;
  EdgeWeighting edge_weighting = EdgeWeighting::degree_sensitive;
  SamplingMode sampling = SamplingMode::without_replacement;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;

  void validate() const {
    if (!(lr > 0.0)) throw DomainError("config: lr must be positive");
    if (!(lambda >= 0.0)) throw DomainError("config: lambda must be >= 0");
    EdgePruner::checked_rho(rho);
    if (!(alpha_v >= 0.0 && alpha_v <= 1.0)) throw DomainError("config: alpha_v outside [0,1]");
    if (k < 1) throw DomainError("config: k must be >= 1");
    if (d < 1) throw DomainError("config: d must be >= 1");
    if (batch_size < 1) throw DomainError("config: batch_size must be >= 1");
    if (max_epochs < 1) throw DomainError("config: max_epochs must be >= 1");
  }

  // (key, value) pairs in a fixed order; values printed with round-trip precision.
  std::vector<std::pair<std::string, std::string>> entries() const {
    auto num = [](double v) {
      std::ostringstream os;
      os << std::setprecision(17) << v;
      return os.str();
    };
    return {
        {"lr", num(lr)},
        {"lambda", num(lambda)},
        {"rho", num(rho)},
        {"alpha_v", num(alpha_v)},
        {"k", std::to_string(k)},
        {"d", std::to_string(d)},
        {"L_ui", std::to_string(layers_ui)},
        {"L_ii", std::to_string(layers_ii)},
        {"batch_size", std::to_string(batch_size)},
        {"max_epochs", std::to_string(max_epochs)},
        {"patience", std::to_string(patience)},
        {"seed", std::to_string(seed)},
        {"weighted_item_graph", weighted_item_graph ? "true" : "false"},
        {"edge_weighting", std::string(to_string(edge_weighting))},
        {"sampling", std::string(to_string(sampling))},
        {"adam_beta1", num(adam_beta1)},
        {"adam_beta2", num(adam_beta2)},
        {"adam_eps", num(adam_eps)},
    };
  }

  std::string canonical() const {
    std::string s;
    for (const auto& [k, v] : entries()) s += k + "=" + v + "\n";
    return s;
  }

  bool operator==(const TrainConfig&) const = default;
};

// Keys whose values differ between two configs.
inline std::vector<std::string> config_diff(const TrainConfig& a, const TrainConfig& b) {
  std::vector<std::string> out;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) {
    if (ea[k].second != eb[k].second) out.push_back(ea[k].first);
  }
  return out;
}

// 64-bit FNV-1a of the canonical config text, as 16 hex digits.
inline std::string config_hash(const TrainConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : c.canonical()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace freedom
