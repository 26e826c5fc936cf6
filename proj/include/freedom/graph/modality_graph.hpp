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
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "freedom/core/sparse_ops.hpp"

namespace freedom {

enum class Modality { visual, textual };

inline std::string_view to_string(Modality m) {
  return m == Modality::visual ? "visual" : "textual";
}

inline Modality parse_modality(std::string_view s) {
  if (s == "visual" || s == "v") return Modality::visual;
  if (s == "textual" || s == "t") return Modality::textual;
  throw DomainError("unknown modality '" + std::string(s) + "'");
}

// Raw per-item features of one modality (N items x d_m).
struct FeatureMatrix {
  Modality modality = Modality::visual;
  DenseMatrix features;

  std::size_t num_items() const { return features.rows(); }
  std::size_t dim() const { return features.cols(); }
};

// Frozen fused item-item adjacency. There is no mutating member: once built it is
// only read by training and evaluation.
class ItemItemGraph {
 public:
  ItemItemGraph(CsrMatrix matrix, std::size_t k, double alpha_v, bool weighted)
      : matrix_(std::move(matrix)), k_(k), alpha_v_(alpha_v), weighted_(weighted) {}

  const CsrMatrix& matrix() const { return matrix_; }
  std::size_t k() const { return k_; }
  double alpha_v() const { return alpha_v_; }
  bool weighted() const { return weighted_; }
  std::size_t num_items() const { return matrix_.rows(); }

 private:
  CsrMatrix matrix_;
  std::size_t k_;
  double alpha_v_;
  bool weighted_;
};

namespace detail {

// Rows scaled to unit L2 norm; all-zero rows stay zero and are reported in `zero`.
inline Eigen::MatrixXd unit_rows(const DenseMatrix& x, std::vector<bool>& zero) {
  Eigen::MatrixXd out(x.rows(), x.cols());
  zero.assign(x.rows(), false);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    double norm = 0.0;
    for (double v : row) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) zero[i] = true;
    for (std::size_t c = 0; c < x.cols(); ++c) out(i, c) = norm == 0.0 ? 0.0 : row[c] / norm;
  }
  return out;
}

}  // namespace detail

// Cosine top-k graph of one modality, before normalization.
//
// Row i keeps the k columns with the largest cosine similarity to item i (the self
// column included, ties toward the smaller column). Entries are 1 for the
// unweighted graph and max(cos, 0) for the weighted one. An all-zero feature row
// yields a single self entry of 1; its cosine against any other row is taken as 0.
inline CsrMatrix knn_graph(const FeatureMatrix& x, std::size_t k, bool weighted) {
  if (k < 1) throw DomainError("knn_graph: k must be >= 1");
  const std::size_t n = x.num_items();
  if (n == 0) throw DomainError("knn_graph: need at least one item");
  if (!x.features.all_finite()) throw DomainError("knn_graph: non-finite feature value");
  const std::size_t keep = std::min(k, n);

  std::vector<bool> zero;
  const Eigen::MatrixXd unit = detail::unit_rows(x.features, zero);

  std::vector<std::size_t> ptr(n + 1, 0);
  std::vector<Index> idx;
  std::vector<double> val;
  idx.reserve(n * keep);
  val.reserve(n * keep);

  constexpr std::size_t kBlock = 256;
  std::vector<Index> order(n);
  std::vector<std::pair<Index, double>> picked;
  for (std::size_t begin = 0; begin < n; begin += kBlock) {
    const std::size_t rows = std::min(kBlock, n - begin);
    const Eigen::MatrixXd sim = unit.middleRows(begin, rows) * unit.transpose();
    for (std::size_t local = 0; local < rows; ++local) {
      const std::size_t i = begin + local;
      picked.clear();
      if (zero[i]) {
        picked.emplace_back(static_cast<Index>(i), 1.0);
      } else {
        auto score = [&](Index j) { return sim(local, j); };
        std::iota(order.begin(), order.end(), Index{0});
        std::partial_sort(order.begin(), order.begin() + keep, order.end(), [&](Index a, Index b) {
          const double sa = score(a), sb = score(b);
          return sa != sb ? sa > sb : a < b;
        });
        for (std::size_t t = 0; t < keep; ++t) {
          const Index j = order[t];
          picked.emplace_back(j, weighted ? std::max(score(j), 0.0) : 1.0);
        }
        std::sort(picked.begin(), picked.end());
      }
      for (const auto& [j, v] : picked) {
        idx.push_back(j);
        val.push_back(v);
      }
      ptr[i + 1] = idx.size();
    }
  }
  return CsrMatrix(n, n, std::move(ptr), std::move(idx), std::move(val));
}

// alpha_v * visual + (1 - alpha_v) * textual. A lone modality gets weight 1 and
// modalities whose weight is exactly zero are left out of the sum entirely.
inline CsrMatrix fuse_modalities(const std::map<Modality, CsrMatrix>& graphs, double alpha_v) {
  if (graphs.empty()) throw DomainError("fuse_modalities: no modality graphs");
  if (!(alpha_v >= 0.0 && alpha_v <= 1.0)) throw DomainError("fuse_modalities: alpha_v outside [0,1]");
  const std::size_t n = graphs.begin()->second.rows();
  for (const auto& [m, g] : graphs) {
    if (g.rows() != n || g.cols() != n) throw DimensionError("fuse_modalities: shape mismatch");
  }
  if (graphs.size() == 1) return graphs.begin()->second;

  std::vector<const CsrMatrix*> terms;
  std::vector<double> weights;
  for (const auto& [m, g] : graphs) {
    const double w = m == Modality::visual ? alpha_v : 1.0 - alpha_v;
    if (w == 0.0) continue;
    terms.push_back(&g);
    weights.push_back(w);
  }
  if (terms.size() == 1 && weights.front() == 1.0) return *terms.front();
  return weighted_sum(terms, weights);
}

// kNN -> symmetric normalization per modality, then fusion.
inline std::map<Modality, CsrMatrix> normalized_modality_graphs(
    const std::vector<FeatureMatrix>& features, std::size_t k, bool weighted) {
  if (features.empty()) throw DomainError("build_frozen_graph: at least one modality required");
  std::map<Modality, CsrMatrix> graphs;
  const std::size_t n = features.front().num_items();
  for (const auto& f : features) {
    if (f.num_items() != n) throw DimensionError("build_frozen_graph: modalities disagree on N");
    if (graphs.count(f.modality)) throw DomainError("build_frozen_graph: duplicate modality");
    graphs.emplace(f.modality, normalize_sym(knn_graph(f, k, weighted)));
  }
  return graphs;
}

inline ItemItemGraph build_frozen_graph(const std::vector<FeatureMatrix>& features, std::size_t k,
                                        double alpha_v, bool weighted) {
  auto graphs = normalized_modality_graphs(features, k, weighted);
  return ItemItemGraph(fuse_modalities(graphs, alpha_v), k, alpha_v, weighted);
}

}  // namespace freedom
