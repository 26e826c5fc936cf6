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

#include "freedom/core/random.hpp"
#include "freedom/graph/interaction_graph.hpp"
#include "freedom/graph/modality_graph.hpp"
#include "freedom/model/model.hpp"

namespace freedom {

// (user, positive item, negative item) with R[u,i] == 1 and R[u,j] == 0.
struct TrainTriple {
  Index u;
  Index i;
  Index j;

  bool operator==(const TrainTriple&) const = default;
};

// Every user needs a positive and at least one item left over to be a negative.
inline void check_negative_sampling(const InteractionMatrix& r) {
  for (std::size_t u = 0; u < r.num_users(); ++u) {
    const std::size_t n = r.items_of(u).size();
    if (n == 0) throw DatasetError("user " + std::to_string(u) + " has no training interaction");
    if (n >= r.num_items()) {
      throw DatasetError("user " + std::to_string(u) + " interacted with every item; no negative exists");
    }
  }
}

inline Index sample_negative(const InteractionMatrix& r, Index u, Rng& rng) {
  while (true) {
    const auto j = static_cast<Index>(rng.below(r.num_items()));
    if (!r.contains(u, j)) return j;
  }
}

// One epoch of triples: each training interaction once, in shuffled order, paired
// with a uniformly drawn non-interacted item.
inline std::vector<TrainTriple> sample_triples(const InteractionMatrix& r, Rng& rng) {
  check_negative_sampling(r);
  std::vector<TrainTriple> out;
  out.reserve(r.num_interactions());
  for (std::size_t u = 0; u < r.num_users(); ++u) {
    for (Index i : r.items_of(u)) out.push_back({static_cast<Index>(u), i, 0});
  }
  rng.shuffle(out);
  for (auto& t : out) t.j = sample_negative(r, t.u, rng);
  return out;
}

// -log(sigmoid(x)), evaluated without overflow.
inline double neg_log_sigmoid(double x) {
  return x > 0.0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Raw features each projector reads, in projector order.
inline void check_modal_inputs(const ModelState& state, const std::vector<FeatureMatrix>& features) {
  if (features.size() != state.projectors.size()) {
    throw DimensionError("modality inputs do not match the model's projectors");
  }
  for (std::size_t m = 0; m < features.size(); ++m) {
    const auto& p = state.projectors[m];
    if (features[m].modality != p.modality || features[m].dim() != p.weight.rows() ||
        features[m].num_items() != state.num_items()) {
      throw DimensionError("feature matrix for " + std::string(to_string(p.modality)) +
                           " does not match its projector");
    }
  }
}

namespace detail {

// (x_i - x_j) W, the difference of two projected rows; the bias cancels.
inline void projected_difference(const DenseMatrix& x, Index i, Index j, const DenseMatrix& w,
                                 std::vector<double>& diff, std::vector<double>& out) {
  const std::size_t dm = x.cols();
  const std::size_t d = w.cols();
  diff.resize(dm);
  out.assign(d, 0.0);
  const auto xi = x.row(i);
  const auto xj = x.row(j);
  for (std::size_t k = 0; k < dm; ++k) {
    diff[k] = xi[k] - xj[k];
    if (diff[k] == 0.0) continue;
    const double* wr = w.row(k).data();
    for (std::size_t c = 0; c < d; ++c) out[c] += diff[k] * wr[c];
  }
}

inline double score_gap(const ForwardTrace& trace, const TrainTriple& t) {
  const auto hu = trace.final_user.row(t.u);
  const auto hi = trace.final_item.row(t.i);
  const auto hj = trace.final_item.row(t.j);
  double s = 0.0;
  for (std::size_t c = 0; c < hu.size(); ++c) s += hu[c] * (hi[c] - hj[c]);
  return s;
}

}  // namespace detail

// Mean over the batch of
//   -log s(h_u.h_i - h_u.h_j) + lambda * sum_m -log s(h_u.h_i^m - h_u.h_j^m)
// where h^m = x^m W_m + b_m. With lambda == 0 the modality terms are skipped.
inline double bpr_loss(const std::vector<TrainTriple>& batch, const ForwardTrace& trace,
                       const ModelState& state, const std::vector<FeatureMatrix>& features,
                       double lambda) {
  if (batch.empty()) return 0.0;
  check_modal_inputs(state, features);
  std::vector<double> diff, proj;
  double total = 0.0;
  for (const auto& t : batch) {
    total += neg_log_sigmoid(detail::score_gap(trace, t));
    if (lambda == 0.0) continue;
    const auto hu = trace.final_user.row(t.u);
    for (std::size_t m = 0; m < features.size(); ++m) {
      detail::projected_difference(features[m].features, t.i, t.j, state.projectors[m].weight,
                                   diff, proj);
      total += lambda * neg_log_sigmoid(dot(hu, proj));
    }
  }
  return total / static_cast<double>(batch.size());
}

// Gradients of bpr_loss for every tensor of ModelState::parameters(), same order.
//
// The forward map is linear, so backprop only needs the transposed propagation
// matrices: dE_item gets (S^T)^L_ii G_item from the item-item view, and the stacked
// [dE_user; dE_item] gets mean_l (A^T)^l [G_user; G_item] from the mean readout.
struct ModelGradients {
  std::vector<DenseMatrix> tensors;
  double loss = 0.0;
};

inline ModelGradients gradients(const std::vector<TrainTriple>& batch, const ForwardTrace& trace,
                                const PropagationGraphs& graphs, const ModelState& state,
                                const std::vector<FeatureMatrix>& features, double lambda) {
  check_modal_inputs(state, features);
  const std::size_t d = state.dim();
  DenseMatrix g_user(state.num_users(), d);
  DenseMatrix g_item(state.num_items(), d);
  std::vector<DenseMatrix> g_w;
  std::vector<DenseMatrix> g_b;
  for (const auto& p : state.projectors) {
    g_w.emplace_back(p.weight.rows(), p.weight.cols());
    g_b.emplace_back(1, d);  // the bias cancels inside every score difference
  }

  ModelGradients out;
  if (batch.empty()) {
    out.tensors.push_back(std::move(g_user));
    out.tensors.push_back(std::move(g_item));
    for (std::size_t m = 0; m < g_w.size(); ++m) {
      out.tensors.push_back(std::move(g_w[m]));
      out.tensors.push_back(std::move(g_b[m]));
    }
    return out;
  }
  const double scale = 1.0 / static_cast<double>(batch.size());
  std::vector<double> diff, proj;
  double total = 0.0;
  for (const auto& t : batch) {
    const auto hu = trace.final_user.row(t.u);
    const auto hi = trace.final_item.row(t.i);
    const auto hj = trace.final_item.row(t.j);
    const double x = detail::score_gap(trace, t);
    total += neg_log_sigmoid(x);
    const double g = -sigmoid(-x) * scale;  // d/dx of -log s(x) is s(x) - 1
    auto gu = g_user.row(t.u);
    auto gi = g_item.row(t.i);
    auto gj = g_item.row(t.j);
    for (std::size_t c = 0; c < d; ++c) {
      gu[c] += g * (hi[c] - hj[c]);
      gi[c] += g * hu[c];
      gj[c] -= g * hu[c];
    }
    if (lambda == 0.0) continue;
    for (std::size_t m = 0; m < features.size(); ++m) {
      detail::projected_difference(features[m].features, t.i, t.j, state.projectors[m].weight,
                                   diff, proj);
      const double xm = dot(hu, proj);
      total += lambda * neg_log_sigmoid(xm);
      const double gm = -lambda * sigmoid(-xm) * scale;
      for (std::size_t c = 0; c < d; ++c) gu[c] += gm * proj[c];
      // dW += (x_i - x_j)^T (gm h_u)
      for (std::size_t k = 0; k < diff.size(); ++k) {
        if (diff[k] == 0.0) continue;
        double* row = g_w[m].row(k).data();
        const double a = gm * diff[k];
        for (std::size_t c = 0; c < d; ++c) row[c] += a * hu[c];
      }
    }
  }
  out.loss = total * scale;

  // adjoint of h_i = S^L e_i (item-item view)
  DenseMatrix d_item = propagate_item_item(*graphs.item_item_t, g_item, state.layers_ii);
  // adjoint of the mean readout over the user-item view
  DenseMatrix d_stack =
      detail::mean_readout(*graphs.ui_t, detail::stack_rows(g_user, g_item), state.layers_ui);
  auto [d_user, d_item_ui] = detail::split_rows(d_stack, state.num_users());
  d_item += d_item_ui;

  out.tensors.push_back(std::move(d_user));
  out.tensors.push_back(std::move(d_item));
  for (std::size_t m = 0; m < g_w.size(); ++m) {
    out.tensors.push_back(std::move(g_w[m]));
    out.tensors.push_back(std::move(g_b[m]));
  }
  return out;
}

}  // namespace freedom
