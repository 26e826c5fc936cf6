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
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "freedom/eval/split.hpp"
#include "freedom/model/model.hpp"

namespace freedom {

// Per-user top-K item ids, best first.
using RankedList = std::vector<std::vector<Index>>;

// Top-K of one score row with `masked` items excluded; ties go to the smaller id.
inline std::vector<Index> top_k(std::span<const double> scores, std::span<const Index> masked,
                                std::size_t k) {
  std::vector<Index> candidates;
  candidates.reserve(scores.size());
  std::size_t m = 0;
  for (Index i = 0; i < scores.size(); ++i) {
    while (m < masked.size() && masked[m] < i) ++m;
    if (m < masked.size() && masked[m] == i) continue;
    candidates.push_back(i);
  }
  const std::size_t keep = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), [&](Index a, Index b) {
                      return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
                    });
  candidates.resize(keep);
  return candidates;
}

// All-ranking: score every item for every user by h_u . h_i, hide training items,
// keep the top K.
inline RankedList rank_all(const FusedRepresentations& reps, const InteractionMatrix& train,
                           std::size_t k) {
  const std::size_t m = reps.user.rows();
  const std::size_t n = reps.item.rows();
  if (train.num_users() != m || train.num_items() != n) {
    throw DimensionError("rank_all: training matrix does not match representations");
  }
  if (k > n) throw DomainError("rank_all: K exceeds the number of items");
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> users(reps.user.values().data(), m, reps.user.cols());
  const Eigen::Map<const RowMajor> items(reps.item.values().data(), n, reps.item.cols());

  RankedList out(m);
  constexpr std::size_t kBlock = 512;
  RowMajor scores;
  for (std::size_t begin = 0; begin < m; begin += kBlock) {
    const std::size_t rows = std::min(kBlock, m - begin);
    scores.noalias() = users.middleRows(begin, rows) * items.transpose();
    for (std::size_t r = 0; r < rows; ++r) {
      out[begin + r] = top_k({scores.row(r).data(), n}, train.items_of(begin + r), k);
    }
  }
  return out;
}

inline RankedList rank_all(const ModelState& state, const PropagationGraphs& graphs,
                           const InteractionMatrix& train, std::size_t k) {
  ForwardTrace t = forward(state, graphs);
  return rank_all(FusedRepresentations{std::move(t.final_user), std::move(t.final_item)}, train, k);
}

namespace detail {

inline std::size_t count_hits(const std::vector<Index>& list, std::size_t k,
                              const std::vector<Index>& relevant) {
  std::size_t hits = 0;
  for (std::size_t r = 0; r < std::min(k, list.size()); ++r) {
    if (std::binary_search(relevant.begin(), relevant.end(), list[r])) ++hits;
  }
  return hits;
}

}  // namespace detail

// Mean over users with a non-empty relevant set of |hits in top-K| / |relevant|.
// `relevant[u]` must be sorted.
inline double recall_at_k(const RankedList& lists, const ItemSets& relevant, std::size_t k) {
  double sum = 0.0;
  std::size_t users = 0;
  for (std::size_t u = 0; u < relevant.size(); ++u) {
    if (relevant[u].empty()) continue;
    sum += static_cast<double>(detail::count_hits(lists[u], k, relevant[u])) /
           static_cast<double>(relevant[u].size());
    ++users;
  }
  return users == 0 ? 0.0 : sum / static_cast<double>(users);
}

// Binary-relevance NDCG with a log2(rank+1) discount and the ideal DCG truncated at
// min(K, |relevant|).
inline double ndcg_at_k(const RankedList& lists, const ItemSets& relevant, std::size_t k) {
  double sum = 0.0;
  std::size_t users = 0;
  for (std::size_t u = 0; u < relevant.size(); ++u) {
    if (relevant[u].empty()) continue;
    double dcg = 0.0;
    for (std::size_t r = 0; r < std::min(k, lists[u].size()); ++r) {
      if (std::binary_search(relevant[u].begin(), relevant[u].end(), lists[u][r])) {
        dcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
      }
    }
    double idcg = 0.0;
    for (std::size_t r = 0; r < std::min(k, relevant[u].size()); ++r) {
      idcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
    }
    sum += dcg / idcg;
    ++users;
  }
  return users == 0 ? 0.0 : sum / static_cast<double>(users);
}

struct TopKMetrics {
  double recall10 = 0.0;
  double recall20 = 0.0;
  double ndcg10 = 0.0;
  double ndcg20 = 0.0;
};

inline TopKMetrics evaluate_lists(const RankedList& lists, const ItemSets& relevant) {
  return {recall_at_k(lists, relevant, 10), recall_at_k(lists, relevant, 20),
          ndcg_at_k(lists, relevant, 10), ndcg_at_k(lists, relevant, 20)};
}

// Items ranked by training popularity (ties by id), training items masked per user.
inline RankedList popularity_ranking(const InteractionMatrix& train, std::size_t k) {
  std::vector<double> pop(train.num_items(), 0.0);
  for (Index i : train.matrix().col_idx()) pop[i] += 1.0;
  RankedList out(train.num_users());
  for (std::size_t u = 0; u < train.num_users(); ++u) out[u] = top_k(pop, train.items_of(u), k);
  return out;
}

}  // namespace freedom
