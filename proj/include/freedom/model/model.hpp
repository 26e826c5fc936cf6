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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freedom/core/sparse_ops.hpp"
#include "freedom/graph/modality_graph.hpp"

namespace freedom {

// Affine map x W + b sending one modality's raw features into the embedding space.
struct ModalityProjector {
  Modality modality = Modality::visual;
  DenseMatrix weight;  // d_m x d
  DenseMatrix bias;    // 1 x d
};

struct ModelState {
  DenseMatrix user_emb;  // M x d
  DenseMatrix item_emb;  // N x d
  std::vector<ModalityProjector> projectors;
  std::size_t layers_ui = 2;
  std::size_t layers_ii = 1;

  std::size_t num_users() const { return user_emb.rows(); }
  std::size_t num_items() const { return item_emb.rows(); }
  std::size_t dim() const { return user_emb.cols(); }

  // Every trainable tensor in a fixed order: users, items, then (W, b) per modality.
  std::vector<DenseMatrix*> parameters() {
    std::vector<DenseMatrix*> out{&user_emb, &item_emb};
    for (auto& p : projectors) {
      out.push_back(&p.weight);
      out.push_back(&p.bias);
    }
    return out;
  }
  std::vector<const DenseMatrix*> parameters() const {
    std::vector<const DenseMatrix*> out{&user_emb, &item_emb};
    for (const auto& p : projectors) {
      out.push_back(&p.weight);
      out.push_back(&p.bias);
    }
    return out;
  }
  std::vector<std::string> parameter_names() const {
    std::vector<std::string> out{"user_emb", "item_emb"};
    for (const auto& p : projectors) {
      out.push_back("W_" + std::string(to_string(p.modality)));
      out.push_back("b_" + std::string(to_string(p.modality)));
    }
    return out;
  }

  void validate() const {
    const std::size_t d = dim();
    if (item_emb.cols() != d) throw DimensionError("ModelState: user/item embedding widths differ");
    for (const auto& p : projectors) {
      if (p.weight.cols() != d || p.bias.cols() != d || p.bias.rows() != 1) {
        throw DimensionError("ModelState: projector width differs from embedding width");
      }
    }
  }
};

// Propagation matrices for one forward pass. `ui` is the pruned adjacency during
// training and the full normalized one at inference. The transposes feed backprop.
struct PropagationGraphs {
  const CsrMatrix* item_item = nullptr;
  const CsrMatrix* item_item_t = nullptr;
  const CsrMatrix* ui = nullptr;
  const CsrMatrix* ui_t = nullptr;
};

// h~ = S^L h~^0; only the last layer is kept.
inline DenseMatrix propagate_item_item(const CsrMatrix& s, const DenseMatrix& item_emb,
                                       std::size_t layers) {
  if (s.rows() != item_emb.rows() || s.cols() != item_emb.rows()) {
    throw DimensionError("propagate_item_item: graph is not N x N for the item table");
  }
  DenseMatrix h = item_emb;
  for (std::size_t l = 0; l < layers; ++l) h = spmm(s, h);
  return h;
}

namespace detail {

inline DenseMatrix stack_rows(const DenseMatrix& top, const DenseMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw DimensionError("stack_rows: widths differ");
  std::vector<double> v;
  v.reserve(top.size() + bottom.size());
  v.insert(v.end(), top.values().begin(), top.values().end());
  v.insert(v.end(), bottom.values().begin(), bottom.values().end());
  return DenseMatrix(top.rows() + bottom.rows(), top.cols(), std::move(v));
}

inline std::pair<DenseMatrix, DenseMatrix> split_rows(const DenseMatrix& m, std::size_t first) {
  const auto mid = m.values().begin() + static_cast<std::ptrdiff_t>(first * m.cols());
  return {DenseMatrix(first, m.cols(), std::vector<double>(m.values().begin(), mid)),
          DenseMatrix(m.rows() - first, m.cols(), std::vector<double>(mid, m.values().end()))};
}

// mean_{l=0..L} A^l h^0
inline DenseMatrix mean_readout(const CsrMatrix& a, DenseMatrix h, std::size_t layers) {
  DenseMatrix acc = h;
  for (std::size_t l = 0; l < layers; ++l) {
    h = spmm(a, h);
    acc += h;
  }
  acc *= 1.0 / static_cast<double>(layers + 1);
  return acc;
}

}  // namespace detail

// LightGCN-style propagation over the bipartite graph with a mean readout over
// layers 0..L. Returns (user_rep, item_rep).
inline std::pair<DenseMatrix, DenseMatrix> propagate_user_item(const CsrMatrix& a_hat,
                                                               const DenseMatrix& user_emb,
                                                               const DenseMatrix& item_emb,
                                                               std::size_t layers) {
  const std::size_t nodes = user_emb.rows() + item_emb.rows();
  if (a_hat.rows() != nodes || a_hat.cols() != nodes) {
    throw DimensionError("propagate_user_item: adjacency is not (M+N) x (M+N)");
  }
  return detail::split_rows(
      detail::mean_readout(a_hat, detail::stack_rows(user_emb, item_emb), layers),
      user_emb.rows());
}

struct FusedRepresentations {
  DenseMatrix user;
  DenseMatrix item;
};

// h_u = user_rep; h_i = item_mm + item_rep.
inline FusedRepresentations fuse_representations(const DenseMatrix& item_mm,
                                                 const DenseMatrix& user_rep,
                                                 const DenseMatrix& item_rep) {
  return {user_rep, item_mm + item_rep};
}

// h^m = X W + b, row-wise.
inline DenseMatrix project_modality(const DenseMatrix& x, const DenseMatrix& weight,
                                    const DenseMatrix& bias) {
  if (x.cols() != weight.rows()) throw DimensionError("project_modality: X and W do not conform");
  if (bias.rows() != 1 || bias.cols() != weight.cols()) {
    throw DimensionError("project_modality: bias must be 1 x d");
  }
  DenseMatrix out = matmul(x, weight);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t c = 0; c < out.cols(); ++c) row[c] += bias(0, c);
  }
  return out;
}

inline double score(std::span<const double> user, std::span<const double> item) {
  return dot(user, item);
}

struct ForwardTrace {
  DenseMatrix item_mm;      // item-item view, last layer
  DenseMatrix user_rep;     // user-item view, mean readout
  DenseMatrix item_rep_ui;  // user-item view, mean readout
  DenseMatrix final_user;
  DenseMatrix final_item;
};

// ID-embedding path only; projected modality features never reach the scores.
inline ForwardTrace forward(const ModelState& state, const PropagationGraphs& graphs) {
  ForwardTrace t;
  t.item_mm = propagate_item_item(*graphs.item_item, state.item_emb, state.layers_ii);
  auto [u, i] = propagate_user_item(*graphs.ui, state.user_emb, state.item_emb, state.layers_ui);
  t.user_rep = std::move(u);
  t.item_rep_ui = std::move(i);
  auto fused = fuse_representations(t.item_mm, t.user_rep, t.item_rep_ui);
  t.final_user = std::move(fused.user);
  t.final_item = std::move(fused.item);
  return t;
}

}  // namespace freedom
