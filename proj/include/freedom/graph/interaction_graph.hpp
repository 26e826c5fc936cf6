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
#include <iostream>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freedom/core/random.hpp"
#include "freedom/core/sparse_ops.hpp"

namespace freedom {

// Binary user-item matrix R (M users x N items).
class InteractionMatrix {
 public:
  InteractionMatrix() = default;

  // Pairs may arrive in any order; duplicates are rejected.
  static InteractionMatrix from_pairs(std::size_t num_users, std::size_t num_items,
                                      const std::vector<std::pair<Index, Index>>& pairs) {
    std::vector<Triplet> t;
    t.reserve(pairs.size());
    for (const auto& [u, i] : pairs) t.push_back({u, i, 1.0});
    CsrMatrix r = CsrMatrix::from_triplets(num_users, num_items, std::move(t));
    if (r.nnz() != pairs.size()) throw DatasetError("InteractionMatrix: duplicate (user, item) pair");
    InteractionMatrix out;
    out.r_ = std::move(r);
    return out;
  }

  const CsrMatrix& matrix() const { return r_; }
  std::size_t num_users() const { return r_.rows(); }
  std::size_t num_items() const { return r_.cols(); }
  std::size_t num_interactions() const { return r_.nnz(); }
  std::span<const Index> items_of(std::size_t u) const { return r_.row_cols(u); }
  bool contains(std::size_t u, Index i) const {
    const auto items = items_of(u);
    return std::binary_search(items.begin(), items.end(), i);
  }

 private:
  CsrMatrix r_;
};

// Undirected edge between node `a` (a user, index < M) and node `b` (an item, index >= M).
struct Edge {
  Index a;
  Index b;
};

// Symmetric (M+N) x (M+N) adjacency [[0, R], [R^T, 0]]. Users occupy nodes [0, M),
// items [M, M+N).
struct BipartiteAdjacency {
  CsrMatrix matrix;
  std::size_t num_users = 0;
  std::size_t num_items = 0;
  std::vector<Edge> edges;  // each undirected edge once, a < b

  std::size_t num_nodes() const { return num_users + num_items; }
};

namespace detail {

inline CsrMatrix symmetric_from_edges(std::size_t num_nodes, const std::vector<Edge>& edges) {
  std::vector<Triplet> t;
  t.reserve(2 * edges.size());
  for (const auto& e : edges) {
    t.push_back({e.a, e.b, 1.0});
    t.push_back({e.b, e.a, 1.0});
  }
  return CsrMatrix::from_triplets(num_nodes, num_nodes, std::move(t));
}

}  // namespace detail

inline BipartiteAdjacency build_adjacency(const InteractionMatrix& r) {
  BipartiteAdjacency adj;
  adj.num_users = r.num_users();
  adj.num_items = r.num_items();
  adj.edges.reserve(r.num_interactions());
  const auto m = static_cast<Index>(adj.num_users);
  for (std::size_t u = 0; u < r.num_users(); ++u) {
    for (Index i : r.items_of(u)) adj.edges.push_back({static_cast<Index>(u), m + i});
  }
  adj.matrix = detail::symmetric_from_edges(adj.num_nodes(), adj.edges);
  return adj;
}

// 1 / (sqrt(w_a) sqrt(w_b)) per edge, aligned with adj.edges.
inline std::vector<double> edge_probabilities(const BipartiteAdjacency& adj) {
  const DegreeVector deg = DegreeVector::of(adj.matrix);
  std::vector<double> p(adj.edges.size());
  for (std::size_t e = 0; e < adj.edges.size(); ++e) {
    p[e] = 1.0 / (std::sqrt(deg[adj.edges[e].a]) * std::sqrt(deg[adj.edges[e].b]));
  }
  return p;
}

// How the n retained edges are drawn.
enum class SamplingMode {
  // n distinct edges, successive draws proportional to the remaining weights
  without_replacement,
  // n multinomial draws with replacement, duplicates collapsed (may keep < n edges)
  with_replacement_dedup,
};

inline std::string_view to_string(SamplingMode m) {
  return m == SamplingMode::without_replacement ? "without_replacement" : "with_replacement_dedup";
}

inline SamplingMode parse_sampling_mode(std::string_view s) {
  if (s == "without_replacement") return SamplingMode::without_replacement;
  if (s == "with_replacement_dedup") return SamplingMode::with_replacement_dedup;
  throw DomainError("unknown sampling mode '" + std::string(s) + "'");
}

// Fixed per-edge sampling weights plus the pruning ratio.
struct EdgePruner {
  std::vector<double> probs;
  double rho = 0.0;
  SamplingMode mode = SamplingMode::without_replacement;

  static EdgePruner degree_sensitive(const BipartiteAdjacency& adj, double rho,
                                     SamplingMode mode = SamplingMode::without_replacement) {
    const double r = checked_rho(rho);  // before any member is built
    return EdgePruner{edge_probabilities(adj), r, mode};
  }

  // Random edge dropout: every edge equally likely.
  static EdgePruner uniform(const BipartiteAdjacency& adj, double rho,
                            SamplingMode mode = SamplingMode::without_replacement) {
    const double r = checked_rho(rho);
    return EdgePruner{std::vector<double>(adj.edges.size(), 1.0), r, mode};
  }

  static double checked_rho(double rho) {
    if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("EdgePruner: rho must lie in [0, 1)");
    return rho;
  }
};

// n = ceil(|E| (1 - rho)). The epsilon absorbs representation error in 1 - rho
// (e.g. 1 - 0.7 = 0.30000000000000004).
inline std::size_t retained_edge_count(std::size_t num_edges, double rho) {
  const double exact = static_cast<double>(num_edges) * (1.0 - rho);
  const auto n = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  return std::min(n, num_edges);
}

// Indices (ascending) of the edges kept in one pruning round.
inline std::vector<std::size_t> sample_edges(const EdgePruner& pruner, Rng& rng) {
  const std::size_t total = pruner.probs.size();
  const std::size_t n = retained_edge_count(total, pruner.rho);
  std::vector<std::size_t> kept;
  if (n == 0) return kept;
  if (n == total) {
    kept.resize(total);
    std::iota(kept.begin(), kept.end(), std::size_t{0});
    return kept;
  }
  if (pruner.mode == SamplingMode::without_replacement) {
    // Exponential-key method: the n largest log(u)/w keys are distributed as n
    // successive draws proportional to the remaining weights.
    std::vector<std::pair<double, std::size_t>> keys(total);
    for (std::size_t e = 0; e < total; ++e) {
      keys[e] = {std::log(rng.uniform_open01()) / pruner.probs[e], e};
    }
    std::nth_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(n), keys.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    kept.reserve(n);
    for (std::size_t t = 0; t < n; ++t) kept.push_back(keys[t].second);
  } else {
    std::vector<double> cdf(total);
    std::partial_sum(pruner.probs.begin(), pruner.probs.end(), cdf.begin());
    std::vector<bool> hit(total, false);
    for (std::size_t t = 0; t < n; ++t) {
      const double u = rng.uniform01() * cdf.back();
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      hit[std::min<std::size_t>(it - cdf.begin(), total - 1)] = true;
    }
    for (std::size_t e = 0; e < total; ++e) {
      if (hit[e]) kept.push_back(e);
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

// Sampled subgraph A_rho, re-normalized with its own degrees.
inline CsrMatrix prune_and_normalize(const BipartiteAdjacency& adj, const EdgePruner& pruner,
                                     Rng& rng) {
  if (pruner.probs.size() != adj.edges.size()) {
    throw DimensionError("prune_and_normalize: pruner does not match adjacency");
  }
  const std::vector<std::size_t> kept = sample_edges(pruner, rng);
  if (kept.empty()) {
    std::cerr << "warning: edge pruning retained no edges; using an all-zero adjacency\n";
    return CsrMatrix(adj.num_nodes(), adj.num_nodes());
  }
  std::vector<Edge> sub;
  sub.reserve(kept.size());
  for (std::size_t e : kept) sub.push_back(adj.edges[e]);
  return normalize_sym(detail::symmetric_from_edges(adj.num_nodes(), sub));
}

// Un-pruned D^{-1/2} A D^{-1/2}, used at inference.
inline CsrMatrix full_normalized(const BipartiteAdjacency& adj) { return normalize_sym(adj.matrix); }

}  // namespace freedom
