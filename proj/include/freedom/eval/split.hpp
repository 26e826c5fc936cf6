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

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "freedom/core/random.hpp"
#include "freedom/graph/interaction_graph.hpp"

namespace freedom {

using ItemSets = std::vector<std::vector<Index>>;

struct SplitDataset {
  InteractionMatrix train;
  ItemSets val;   // per user, sorted
  ItemSets test;  // per user, sorted
  std::size_t num_users = 0;
  std::size_t num_items = 0;

  std::size_t total_interactions() const {
    std::size_t n = train.num_interactions();
    for (const auto& s : val) n += s.size();
    for (const auto& s : test) n += s.size();
    return n;
  }
};

struct SplitCounts {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
};

// Per-user 80/10/10 partition: train = round(0.8 n) clipped to [1, n-1], then
// val = round(0.1 n) capped so at least one interaction is left for test.
inline SplitCounts split_counts(std::size_t n, double train_ratio = 0.8, double val_ratio = 0.1) {
  if (n < 3) throw DatasetError("split_dataset: a user needs at least 3 interactions");
  SplitCounts c;
  c.train = static_cast<std::size_t>(std::llround(train_ratio * static_cast<double>(n)));
  c.train = std::clamp<std::size_t>(c.train, 1, n - 1);
  const std::size_t rest = n - c.train;
  c.val = std::min<std::size_t>(
      static_cast<std::size_t>(std::llround(val_ratio * static_cast<double>(n))), rest - 1);
  c.test = rest - c.val;
  return c;
}

// `history[u]` lists the distinct items of user u. Each history is shuffled with
// `rng` and cut according to split_counts.
inline SplitDataset split_dataset(const ItemSets& history, std::size_t num_items, Rng& rng,
                                  double train_ratio = 0.8, double val_ratio = 0.1) {
  SplitDataset out;
  out.num_users = history.size();
  out.num_items = num_items;
  out.val.resize(history.size());
  out.test.resize(history.size());
  std::vector<std::pair<Index, Index>> train_pairs;
  for (std::size_t u = 0; u < history.size(); ++u) {
    std::vector<Index> items = history[u];
    const SplitCounts c = split_counts(items.size(), train_ratio, val_ratio);
    rng.shuffle(items);
    for (std::size_t k = 0; k < c.train; ++k) train_pairs.emplace_back(static_cast<Index>(u), items[k]);
    out.val[u].assign(items.begin() + static_cast<std::ptrdiff_t>(c.train),
                      items.begin() + static_cast<std::ptrdiff_t>(c.train + c.val));
    out.test[u].assign(items.begin() + static_cast<std::ptrdiff_t>(c.train + c.val), items.end());
    std::sort(out.val[u].begin(), out.val[u].end());
    std::sort(out.test[u].begin(), out.test[u].end());
  }
  out.train = InteractionMatrix::from_pairs(history.size(), num_items, train_pairs);
  return out;
}

}  // namespace freedom
