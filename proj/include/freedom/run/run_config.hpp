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
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>

#include <json.hpp>

#include "freedom/core/errors.hpp"
#include "freedom/eval/ranking.hpp"
#include "freedom/train/config.hpp"

namespace freedom {

// Named model variants. Each one changes a single TrainConfig knob.
enum class Ablation {
  freedom,         // full model
  freedom_f,       // no edge pruning (rho = 0)
  freedom_r,       // random edge dropout instead of degree-sensitive pruning
  freedom_0,       // no modality loss (lambda = 0)
  lattice_frozen,  // weighted (clamped-cosine) frozen item-item graph
};

inline std::string_view to_string(Ablation a) {
  switch (a) {
    case Ablation::freedom: return "freedom";
    case Ablation::freedom_f: return "freedom_f";
    case Ablation::freedom_r: return "freedom_r";
    case Ablation::freedom_0: return "freedom_0";
    case Ablation::lattice_frozen: return "lattice_frozen";
  }
  return "freedom";
}

inline Ablation parse_ablation(std::string_view s) {
  for (Ablation a : {Ablation::freedom, Ablation::freedom_f, Ablation::freedom_r,
                     Ablation::freedom_0, Ablation::lattice_frozen}) {
    if (to_string(a) == s) return a;
  }
  throw DomainError("unknown ablation '" + std::string(s) + "'");
}

inline TrainConfig apply_ablation(TrainConfig cfg, Ablation a) {
  switch (a) {
    case Ablation::freedom: break;
    case Ablation::freedom_f: cfg.rho = 0.0; break;
    case Ablation::freedom_r: cfg.edge_weighting = EdgeWeighting::uniform; break;
    case Ablation::freedom_0: cfg.lambda = 0.0; break;
    case Ablation::lattice_frozen: cfg.weighted_item_graph = true; break;
  }
  return cfg;
}

struct RunConfig {
  TrainConfig train;
  std::string dataset_name = "dataset";
  std::string data_dir;
  std::string visual_features;
  std::string textual_features;
  std::string out_dir = "out";
  Ablation ablation = Ablation::freedom;

  // Training config with the ablation applied.
  TrainConfig effective() const { return apply_ablation(train, ablation); }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw DomainError("config key '" + key + "' expects true/false, got '" + v + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  T out{};
  const bool negative_unsigned = std::is_unsigned_v<T> && v.find('-') != std::string::npos;
  if (negative_unsigned || !(is >> out) || !is.eof()) {
    throw DomainError("config key '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

}  // namespace detail

// Sets one documented key. Unknown keys are an error so typos do not pass silently.
inline void set_config_value(RunConfig& rc, const std::string& key, const std::string& value) {
  TrainConfig& t = rc.train;
  using detail::parse_number;
  if (key == "lr") t.lr = parse_number<double>(key, value);
  else if (key == "lambda") t.lambda = parse_number<double>(key, value);
  else if (key == "rho") t.rho = parse_number<double>(key, value);
  else if (key == "alpha_v") t.alpha_v = parse_number<double>(key, value);
  else if (key == "k") t.k = parse_number<std::size_t>(key, value);
  else if (key == "d") t.d = parse_number<std::size_t>(key, value);
  else if (key == "L_ui") t.layers_ui = parse_number<std::size_t>(key, value);
  else if (key == "L_ii") t.layers_ii = parse_number<std::size_t>(key, value);
  else if (key == "batch_size") t.batch_size = parse_number<std::size_t>(key, value);
  else if (key == "max_epochs") t.max_epochs = parse_number<std::size_t>(key, value);
  else if (key == "patience") t.patience = parse_number<std::size_t>(key, value);
  else if (key == "seed") t.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "weighted_item_graph") t.weighted_item_graph = detail::parse_bool(key, value);
  else if (key == "edge_weighting") t.edge_weighting = parse_edge_weighting(value);
  else if (key == "sampling") t.sampling = parse_sampling_mode(value);
  else if (key == "adam_beta1") t.adam_beta1 = parse_number<double>(key, value);
  else if (key == "adam_beta2") t.adam_beta2 = parse_number<double>(key, value);
  else if (key == "adam_eps") t.adam_eps = parse_number<double>(key, value);
  else if (key == "dataset") rc.dataset_name = value;
  else if (key == "data_dir") rc.data_dir = value;
  else if (key == "visual_features") rc.visual_features = value;
  else if (key == "textual_features") rc.textual_features = value;
  else if (key == "out") rc.out_dir = value;
  else if (key == "ablation") rc.ablation = parse_ablation(value);
  else throw DomainError("unknown config key '" + key + "'");
}

// Flat "key = value" lines; '#' starts a comment.
inline void parse_config(std::istream& is, RunConfig& rc, const std::string& origin = "config") {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = detail::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw DomainError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      set_config_value(rc, detail::trim(body.substr(0, eq)), detail::trim(body.substr(eq + 1)));
    } catch (const DomainError& e) {
      throw DomainError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open config " + path);
  RunConfig rc;
  parse_config(is, rc, path);
  return rc;
}

inline nlohmann::ordered_json results_json(const std::string& dataset, const TrainConfig& cfg,
                                           const TopKMetrics& test,
                                           std::optional<std::size_t> best_epoch) {
  nlohmann::ordered_json j;
  j["dataset"] = dataset;
  j["config-hash"] = config_hash(cfg);
  j["R@10"] = test.recall10;
  j["R@20"] = test.recall20;
  j["N@10"] = test.ndcg10;
  j["N@20"] = test.ndcg20;
  j["best_epoch"] = best_epoch ? nlohmann::ordered_json(*best_epoch) : nullptr;
  return j;
}

}  // namespace freedom
