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
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "freedom/eval/ranking.hpp"
#include "freedom/graph/interaction_graph.hpp"
#include "freedom/graph/modality_graph.hpp"
#include "freedom/train/bpr.hpp"
#include "freedom/train/config.hpp"
#include "freedom/train/optim.hpp"

namespace freedom {

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double loss = 0.0;
  double val_recall20 = 0.0;
  double val_ndcg20 = 0.0;
};

struct FitResult {
  ModelState state;  // parameters of the best validation epoch
  std::vector<EpochRecord> log;
  std::size_t best_epoch = 0;
  TopKMetrics val;   // at best_epoch
  TopKMetrics test;  // at best_epoch
};

inline ModelState init_model(std::size_t num_users, std::size_t num_items,
                             const std::vector<FeatureMatrix>& features, const TrainConfig& cfg,
                             Rng& rng) {
  ModelState s;
  s.user_emb = xavier_init(num_users, cfg.d, rng);
  s.item_emb = xavier_init(num_items, cfg.d, rng);
  for (const auto& f : features) {
    s.projectors.push_back({f.modality, xavier_init(f.dim(), cfg.d, rng), DenseMatrix(1, cfg.d)});
  }
  s.layers_ui = cfg.layers_ui;
  s.layers_ii = cfg.layers_ii;
  return s;
}

// Everything built once before training: the frozen item-item graph, the training
// bipartite adjacency, its edge sampler and the un-pruned normalized adjacency.
struct TrainingGraphs {
  ItemItemGraph item_item;
  CsrMatrix item_item_t;
  BipartiteAdjacency adjacency;
  EdgePruner pruner;
  CsrMatrix full_ui;

  static TrainingGraphs build(const SplitDataset& data, const std::vector<FeatureMatrix>& features,
                              const TrainConfig& cfg) {
    ItemItemGraph ii = build_frozen_graph(features, cfg.k, cfg.alpha_v, cfg.weighted_item_graph);
    if (ii.num_items() != data.num_items) {
      throw DimensionError("feature files cover " + std::to_string(ii.num_items()) +
                           " items but the dataset has " + std::to_string(data.num_items));
    }
    CsrMatrix ii_t = transpose(ii.matrix());
    BipartiteAdjacency adj = build_adjacency(data.train);
    EdgePruner pruner = cfg.edge_weighting == EdgeWeighting::degree_sensitive
                            ? EdgePruner::degree_sensitive(adj, cfg.rho, cfg.sampling)
                            : EdgePruner::uniform(adj, cfg.rho, cfg.sampling);
    CsrMatrix full = full_normalized(adj);
    return {std::move(ii), std::move(ii_t), std::move(adj), std::move(pruner), std::move(full)};
  }

  // Inference graphs; the normalized adjacency is symmetric so it is its own transpose.
  PropagationGraphs inference() const {
    return {&item_item.matrix(), &item_item_t, &full_ui, &full_ui};
  }
};

inline TopKMetrics evaluate(const ModelState& state, const TrainingGraphs& graphs,
                            const InteractionMatrix& train, const ItemSets& relevant) {
  const std::size_t k = std::min<std::size_t>(20, state.num_items());
  return evaluate_lists(rank_all(state, graphs.inference(), train, k), relevant);
}

using EpochCallback = std::function<void(const EpochRecord&)>;

// BPR training with per-epoch edge pruning, Adam, and early stopping on validation
// Recall@20. Returns the parameters of the best validation epoch.
inline FitResult fit(const SplitDataset& data, const std::vector<FeatureMatrix>& features,
                     const TrainConfig& cfg, const EpochCallback& on_epoch = {}) {
  cfg.validate();
  check_negative_sampling(data.train);
  const TrainingGraphs graphs = TrainingGraphs::build(data, features, cfg);

  Rng rng(cfg.seed);
  ModelState state = init_model(data.num_users, data.num_items, features, cfg, rng);
  AdamState adam(std::as_const(state).parameters(),
                 {cfg.lr, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps});

  FitResult result;
  result.state = state;
  double best = -1.0;
  std::size_t since_best = 0;
  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    const CsrMatrix pruned = cfg.rho == 0.0
                                 ? graphs.full_ui
                                 : prune_and_normalize(graphs.adjacency, graphs.pruner, rng);
    const PropagationGraphs train_graphs{&graphs.item_item.matrix(), &graphs.item_item_t, &pruned,
                                         &pruned};
    const std::vector<TrainTriple> triples = sample_triples(data.train, rng);

    double loss_sum = 0.0;
    for (std::size_t begin = 0; begin < triples.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(triples.size(), begin + cfg.batch_size);
      const std::vector<TrainTriple> batch(triples.begin() + static_cast<std::ptrdiff_t>(begin),
                                           triples.begin() + static_cast<std::ptrdiff_t>(end));
      const ForwardTrace trace = forward(state, train_graphs);
      ModelGradients g = gradients(batch, trace, train_graphs, state, features, cfg.lambda);
      if (!std::isfinite(g.loss)) {
        std::ostringstream os;
        os << "training diverged at epoch " << epoch << ", batch starting at triple " << begin
           << ": loss is " << g.loss << " (lr=" << cfg.lr << ", lambda=" << cfg.lambda << ")";
        throw TrainingDiverged(os.str());
      }
      loss_sum += g.loss * static_cast<double>(batch.size());
      adam.step(state.parameters(), g.tensors);
    }

    const TopKMetrics val = evaluate(state, graphs, data.train, data.val);
    EpochRecord rec{epoch, loss_sum / static_cast<double>(triples.size()), val.recall20,
                    val.ndcg20};
    result.log.push_back(rec);
    if (on_epoch) on_epoch(rec);

    if (val.recall20 > best) {
      best = val.recall20;
      since_best = 0;
      result.best_epoch = epoch;
      result.state = state;
      result.val = val;
    } else if (++since_best >= cfg.patience) {
      break;
    }
  }
  result.test = evaluate(result.state, graphs, data.train, data.test);
  return result;
}

// One line per epoch, "epoch,loss,val_recall20,val_ndcg20" header first.
inline std::string epoch_log_csv(const std::vector<EpochRecord>& log) {
  std::string out = "epoch,loss,val_recall20,val_ndcg20\n";
  char line[160];
  for (const auto& r : log) {
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", r.epoch, r.loss, r.val_recall20,
                  r.val_ndcg20);
    out += line;
  }
  return out;
}

}  // namespace freedom
