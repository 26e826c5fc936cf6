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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "freedom/core/power_iteration.hpp"
#include "freedom/graph/modality_graph.hpp"

namespace freedom {

// Quantities of the eigenvalue bound chain
//   lambda_max <= max_i sum_j s_ij <= n * max_ij s_ij
// for one normalized item-item matrix.
struct MatrixSpectrum {
  double lambda_max = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  double max_elem = 0.0;
  double row_sum_max = 0.0;
  double n_max_elem = 0.0;
  std::optional<double> dense_lambda;  // spectral radius from a dense solver, small n only
};

struct SpectralOptions {
  // tighter than the library default: the compared eigenvalues differ in the 2nd decimal
  // and small spectral gaps make plain power iteration slow to settle
  PowerIterationOptions power{1e-10, 200000, 0};
  std::size_t dense_check_limit = 100;  // run the dense cross-check when N <= this
};

// Spectral radius via a dense general eigensolver.
inline double dense_spectral_radius(const CsrMatrix& s) {
  const DenseMatrix d = s.to_dense();
  Eigen::MatrixXd m(d.rows(), d.cols());
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.cols(); ++c) m(r, c) = d(r, c);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  double best = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    best = std::max(best, std::abs(solver.eigenvalues()[k]));
  }
  return best;
}

inline MatrixSpectrum analyze_matrix(const CsrMatrix& s, const SpectralOptions& opt = {}) {
  MatrixSpectrum out;
  const EigenEstimate est = dominant_eigenvalue(s, opt.power);
  out.lambda_max = est.value;
  out.converged = est.converged;
  out.iterations = est.iterations;
  out.max_elem = max_element(s);
  out.row_sum_max = max_row_sum(s);
  out.n_max_elem = static_cast<double>(s.rows()) * out.max_elem;
  if (s.rows() <= opt.dense_check_limit) out.dense_lambda = dense_spectral_radius(s);
  return out;
}

struct ModalitySpectrum {
  MatrixSpectrum frozen;
  MatrixSpectrum weighted;
  double min_degree_frozen = 0.0;  // smallest row degree of the unnormalized 0/1 kNN graph
};

// Frozen (0/1 kNN) versus weighted (clamped-cosine kNN) item-item matrices built from
// the same features, both fused and per modality.
struct SpectralReport {
  std::size_t num_items = 0;
  std::size_t k = 0;
  double alpha_v = 0.0;
  MatrixSpectrum frozen;
  MatrixSpectrum weighted;
  std::map<Modality, ModalitySpectrum> per_modality;
};

inline SpectralReport spectral_report(const std::vector<FeatureMatrix>& features, std::size_t k,
                                      double alpha_v, const SpectralOptions& opt = {}) {
  const auto frozen = normalized_modality_graphs(features, k, /*weighted=*/false);
  const auto weighted = normalized_modality_graphs(features, k, /*weighted=*/true);
  SpectralReport r;
  r.num_items = features.front().num_items();
  r.k = k;
  r.alpha_v = alpha_v;
  r.frozen = analyze_matrix(fuse_modalities(frozen, alpha_v), opt);
  r.weighted = analyze_matrix(fuse_modalities(weighted, alpha_v), opt);
  for (const auto& f : features) {
    ModalitySpectrum ms;
    ms.frozen = analyze_matrix(frozen.at(f.modality), opt);
    ms.weighted = analyze_matrix(weighted.at(f.modality), opt);
    const DegreeVector deg = DegreeVector::of(knn_graph(f, k, false));
    ms.min_degree_frozen = *std::min_element(deg.degrees.begin(), deg.degrees.end());
    r.per_modality.emplace(f.modality, ms);
  }
  return r;
}

inline nlohmann::ordered_json to_json(const MatrixSpectrum& s) {
  nlohmann::ordered_json j;
  j["lambda_max"] = s.lambda_max;
  j["converged"] = s.converged;
  j["iterations"] = s.iterations;
  j["max_elem"] = s.max_elem;
  j["row_sum_max"] = s.row_sum_max;
  j["n_max_elem"] = s.n_max_elem;
  j["dense_lambda"] = s.dense_lambda ? nlohmann::ordered_json(*s.dense_lambda) : nullptr;
  return j;
}

inline nlohmann::ordered_json to_json(const SpectralReport& r) {
  nlohmann::ordered_json j;
  j["num_items"] = r.num_items;
  j["k"] = r.k;
  j["alpha_v"] = r.alpha_v;
  j["frozen"] = to_json(r.frozen);
  j["weighted"] = to_json(r.weighted);
  for (const auto& [m, ms] : r.per_modality) {
    auto& node = j["per_modality"][std::string(to_string(m))];
    node["frozen"] = to_json(ms.frozen);
    node["weighted"] = to_json(ms.weighted);
    node["min_degree_frozen"] = ms.min_degree_frozen;
  }
  return j;
}

// Two rows (frozen graph as FREEDOM, weighted graph as LATTICE) of the fused quantities.
inline std::string to_csv(const SpectralReport& r) {
  std::string out = "model,lambda_max,max_elem,row_sum_max,n_max_elem,converged\n";
  char line[256];
  auto row = [&](const char* name, const MatrixSpectrum& s) {
    std::snprintf(line, sizeof line, "%s,%.10f,%.10f,%.10f,%.10f,%d\n", name, s.lambda_max,
                  s.max_elem, s.row_sum_max, s.n_max_elem, s.converged ? 1 : 0);
    out += line;
  };
  row("FREEDOM", r.frozen);
  row("LATTICE", r.weighted);
  return out;
}

}  // namespace freedom
