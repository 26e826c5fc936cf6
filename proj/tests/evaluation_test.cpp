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


#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "freedom/eval/ranking.hpp"
#include "freedom/eval/split.hpp"
#include "test_util.hpp"

namespace freedom {
namespace {

ItemSets random_histories(std::size_t users, std::size_t items, std::size_t min_len,
                          std::size_t max_len, Rng& rng) {
  ItemSets h(users);
  for (auto& s : h) {
    std::vector<Index> all(items);
    std::iota(all.begin(), all.end(), 0);
    rng.shuffle(all);
    const std::size_t len = min_len + rng.below(max_len - min_len + 1);
    s.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(len));
  }
  return h;
}

TEST(SplitCounts, TenInteractions) {
  const SplitCounts c = split_counts(10);
  EXPECT_EQ(c.train, 8u);
  EXPECT_EQ(c.val, 1u);
  EXPECT_EQ(c.test, 1u);
}

TEST(SplitCounts, FiveInteractions) {
  const SplitCounts c = split_counts(5);
  EXPECT_EQ(c.train, 4u);
  EXPECT_EQ(c.val, 0u);
  EXPECT_EQ(c.test, 1u);
}

TEST(SplitCounts, AlwaysKeepsTrainAndTest) {
  for (std::size_t n = 3; n < 200; ++n) {
    const SplitCounts c = split_counts(n);
    EXPECT_EQ(c.train + c.val + c.test, n);
    EXPECT_GE(c.train, 1u);
    EXPECT_GE(c.test, 1u);
  }
  EXPECT_THROW(split_counts(2), DatasetError);
}

TEST(SplitDataset, PartitionsEachHistory) {
  Rng rng(1);
  const ItemSets h = random_histories(50, 40, 3, 30, rng);
  const SplitDataset s = split_dataset(h, 40, rng);
  std::size_t total = 0;
  for (std::size_t u = 0; u < h.size(); ++u) {
    std::vector<Index> train(s.train.items_of(u).begin(), s.train.items_of(u).end());
    std::set<Index> all(train.begin(), train.end());
    for (Index i : s.val[u]) EXPECT_TRUE(all.insert(i).second);
    for (Index i : s.test[u]) EXPECT_TRUE(all.insert(i).second);
    EXPECT_EQ(all, std::set<Index>(h[u].begin(), h[u].end()));
    const SplitCounts c = split_counts(h[u].size());
    EXPECT_EQ(train.size(), c.train);
    EXPECT_EQ(s.val[u].size(), c.val);
    EXPECT_EQ(s.test[u].size(), c.test);
    EXPECT_TRUE(std::is_sorted(s.test[u].begin(), s.test[u].end()));
    total += h[u].size();
  }
  EXPECT_EQ(s.total_interactions(), total);
}

TEST(SplitDataset, ShortHistoryIsRejected) {
  Rng rng(2);
  EXPECT_THROW(split_dataset({{0, 1, 2}, {0, 1}}, 3, rng), DatasetError);
}

TEST(SplitDataset, SeededIsReproducible) {
  Rng a(3), b(3), h(4);
  const ItemSets hist = random_histories(20, 30, 5, 15, h);
  const SplitDataset x = split_dataset(hist, 30, a), y = split_dataset(hist, 30, b);
  EXPECT_EQ(x.train.matrix(), y.train.matrix());
  EXPECT_EQ(x.val, y.val);
  EXPECT_EQ(x.test, y.test);
}

TEST(RankAll, TrainingItemsNeverRanked) {
  Rng rng(5);
  FusedRepresentations reps{testing::random_dense(3, 4, rng), testing::random_dense(10, 4, rng)};
  // make item 7 the best for everyone
  for (std::size_t c = 0; c < 4; ++c) reps.item(7, c) = 100.0 * (reps.user(0, c) > 0 ? 1 : -1);
  const InteractionMatrix train = InteractionMatrix::from_pairs(3, 10, {{0, 7}, {1, 2}});
  const RankedList lists = rank_all(reps, train, 10);
  EXPECT_EQ(lists[0].size(), 9u);
  EXPECT_EQ(std::count(lists[0].begin(), lists[0].end(), 7u), 0);
  EXPECT_EQ(lists[0][0] == 7u, false);
  EXPECT_EQ(std::count(lists[1].begin(), lists[1].end(), 2u), 0);
  EXPECT_EQ(lists[2].size(), 10u);
}

TEST(RankAll, ZeroEmbeddingsFallBackToIdOrder) {
  const FusedRepresentations reps{DenseMatrix(2, 3), DenseMatrix(8, 3)};
  const InteractionMatrix train = InteractionMatrix::from_pairs(2, 8, {{0, 0}, {0, 2}, {1, 1}});
  const RankedList lists = rank_all(reps, train, 4);
  EXPECT_EQ(lists[0], (std::vector<Index>{1, 3, 4, 5}));
  EXPECT_EQ(lists[1], (std::vector<Index>{0, 2, 3, 4}));
}

TEST(RankAll, MatchesFullSortOracle) {
  Rng rng(6);
  const std::size_t m = 700, n = 30;  // more users than one scoring block
  const FusedRepresentations reps{testing::random_dense(m, 5, rng), testing::random_dense(n, 5, rng)};
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<std::set<Index>> masked(m);
  for (Index u = 0; u < m; ++u)
    for (Index i = 0; i < n; ++i)
      if (rng.uniform01() < 0.2) {
        pairs.emplace_back(u, i);
        masked[u].insert(i);
      }
  const InteractionMatrix train = InteractionMatrix::from_pairs(m, n, pairs);
  const RankedList lists = rank_all(reps, train, 20);
  for (std::size_t u = 0; u < m; ++u) {
    ASSERT_EQ(lists[u], testing::oracle_top_k(reps.user, reps.item, u, masked[u], 20)) << "user " << u;
  }
}

TEST(RankAll, InvariantUnderPositiveRescaling) {
  Rng rng(7);
  FusedRepresentations reps{testing::random_dense(12, 4, rng), testing::random_dense(25, 4, rng)};
  const InteractionMatrix train = InteractionMatrix::from_pairs(12, 25, {{0, 3}, {5, 9}});
  const RankedList before = rank_all(reps, train, 10);
  reps.user *= 3.5;
  reps.item *= 0.25;
  EXPECT_EQ(rank_all(reps, train, 10), before);
}

TEST(RankAll, KLargerThanCatalogIsRejected) {
  const FusedRepresentations reps{DenseMatrix(1, 2), DenseMatrix(3, 2)};
  EXPECT_THROW(rank_all(reps, InteractionMatrix::from_pairs(1, 3, {}), 4), DomainError);
}

TEST(Recall, WorkedExamples) {
  const RankedList lists{{4, 1, 7}, {2, 3, 0}};
  EXPECT_DOUBLE_EQ(recall_at_k(lists, {{1, 9}, {}}, 3), 0.5);
  EXPECT_DOUBLE_EQ(recall_at_k(lists, {{}, {0, 2}}, 3), 1.0);
  EXPECT_DOUBLE_EQ(recall_at_k(lists, {{1, 9}, {0, 2}}, 3), 0.75);
  EXPECT_DOUBLE_EQ(recall_at_k(lists, {{1, 9}, {0, 2}}, 1), 0.25);
  EXPECT_EQ(recall_at_k(lists, {{}, {}}, 3), 0.0);
}

TEST(Ndcg, WorkedExamples) {
  EXPECT_DOUBLE_EQ(ndcg_at_k({{5, 1}}, {{5}}, 2), 1.0);
  EXPECT_NEAR(ndcg_at_k({{5, 1}}, {{1}}, 2), 0.6309297535714575, 1e-15);
  EXPECT_EQ(ndcg_at_k({{5, 1}}, {{1}}, 1), 0.0);
}

TEST(Metrics, MatchOraclesOnRandomInstances) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t users = 40, items = 50;
    RankedList lists = random_histories(users, items, 20, 20, rng);
    ItemSets rel = random_histories(users, items, 0, 8, rng);
    for (auto& s : rel) std::sort(s.begin(), s.end());
    for (std::size_t k : {1, 5, 10, 20}) {
      const double r = recall_at_k(lists, rel, k), n = ndcg_at_k(lists, rel, k);
      EXPECT_NEAR(r, testing::oracle_recall(lists, rel, k), 1e-12);
      EXPECT_NEAR(n, testing::oracle_ndcg(lists, rel, k), 1e-12);
      EXPECT_GE(r, 0.0);
      EXPECT_LE(r, 1.0);
      EXPECT_GE(n, 0.0);
      EXPECT_LE(n, 1.0 + 1e-12);
    }
    // user order does not matter
    std::vector<std::size_t> perm(users);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    RankedList l2(users);
    ItemSets r2(users);
    for (std::size_t u = 0; u < users; ++u) {
      l2[u] = lists[perm[u]];
      r2[u] = rel[perm[u]];
    }
    EXPECT_NEAR(recall_at_k(l2, r2, 10), recall_at_k(lists, rel, 10), 1e-12);
    EXPECT_NEAR(ndcg_at_k(l2, r2, 10), ndcg_at_k(lists, rel, 10), 1e-12);
  }
}

TEST(EvaluateLists, ReportsFourCutoffs) {
  RankedList lists{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19}};
  const TopKMetrics m = evaluate_lists(lists, {{3, 15}});
  EXPECT_DOUBLE_EQ(m.recall10, 0.5);
  EXPECT_DOUBLE_EQ(m.recall20, 1.0);
  EXPECT_NEAR(m.ndcg10, (1.0 / std::log2(5.0)) / (1.0 + 1.0 / std::log2(3.0)), 1e-15);
  EXPECT_NEAR(m.ndcg20, (1.0 / std::log2(5.0) + 1.0 / std::log2(17.0)) / (1.0 + 1.0 / std::log2(3.0)),
              1e-15);
}

TEST(PopularityRanking, OrdersByTrainingCountThenId) {
  const InteractionMatrix train = InteractionMatrix::from_pairs(
      3, 5, {{0, 2}, {1, 2}, {2, 2}, {0, 4}, {1, 4}, {2, 1}});
  const RankedList lists = popularity_ranking(train, 3);
  EXPECT_EQ(lists[0], (std::vector<Index>{1, 0, 3}));
  EXPECT_EQ(lists[1], (std::vector<Index>{1, 0, 3}));
  EXPECT_EQ(lists[2], (std::vector<Index>{4, 0, 3}));
}

}  // namespace
}  // namespace freedom
