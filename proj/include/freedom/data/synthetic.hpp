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
#include <numbers>
#include <vector>

#include "freedom/core/random.hpp"
#include "freedom/eval/split.hpp"
#include "freedom/graph/modality_graph.hpp"

namespace freedom {

inline double standard_normal(Rng& rng) {
  // Box-Muller on the library's own uniforms keeps samples toolchain independent.
  const double u1 = rng.uniform_open01();
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

struct BlockDatasetOptions {
  std::size_t num_users = 200;
  std::size_t num_items = 100;
  std::size_t num_blocks = 4;
  double interaction_prob = 0.3;
  double feature_noise = 0.1;
  std::size_t min_user_interactions = 3;
};

struct BlockDataset {
  ItemSets history;
  std::vector<FeatureMatrix> features;  // visual, textual
  std::vector<std::size_t> user_block;
  std::vector<std::size_t> item_block;
};

// Users and items are split into contiguous equal-size blocks; a user interacts with
// each item of its own block with the given probability (a user row is redrawn until
// it has min_user_interactions). Each modality's features are the item's block
// one-hot plus N(0, noise^2) per coordinate.
inline BlockDataset make_block_dataset(const BlockDatasetOptions& opt, Rng& rng) {
  BlockDataset out;
  out.history.resize(opt.num_users);
  out.user_block.resize(opt.num_users);
  out.item_block.resize(opt.num_items);
  for (std::size_t i = 0; i < opt.num_items; ++i) out.item_block[i] = i * opt.num_blocks / opt.num_items;
  for (std::size_t u = 0; u < opt.num_users; ++u) {
    const std::size_t b = u * opt.num_blocks / opt.num_users;
    out.user_block[u] = b;
    do {
      out.history[u].clear();
      for (std::size_t i = 0; i < opt.num_items; ++i) {
        if (out.item_block[i] == b && rng.uniform01() < opt.interaction_prob) {
          out.history[u].push_back(static_cast<Index>(i));
        }
      }
    } while (out.history[u].size() < opt.min_user_interactions);
  }
  for (Modality m : {Modality::visual, Modality::textual}) {
    DenseMatrix x(opt.num_items, opt.num_blocks);
    for (std::size_t i = 0; i < opt.num_items; ++i) {
      for (std::size_t c = 0; c < opt.num_blocks; ++c) {
        x(i, c) = (c == out.item_block[i] ? 1.0 : 0.0) + opt.feature_noise * standard_normal(rng);
      }
    }
    out.features.push_back({m, std::move(x)});
  }
  return out;
}

}  // namespace freedom
