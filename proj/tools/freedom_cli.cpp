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


// Command-line front end: prepare, synth, train, eval, tune, spectral.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freedom/freedom.hpp"

namespace fs = std::filesystem;
using namespace freedom;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  if (!os) throw FormatError("failed writing " + path.string());
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

bool finite_metrics(const TopKMetrics& m) {
  return std::isfinite(m.recall10) && std::isfinite(m.recall20) && std::isfinite(m.ndcg10) &&
         std::isfinite(m.ndcg20);
}

// Options shared by the config-driven subcommands.
struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string ablation;
  std::string out;
  std::vector<std::string> overrides;  // key=value
};

void add_common(CLI::App* cmd, CommonOptions& o, bool config_required) {
  auto* c = cmd->add_option("-c,--config", o.config, "key = value config file");
  if (config_required) c->required();
  c->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "override the config seed");
  cmd->add_option("--ablation", o.ablation, "freedom, freedom_f, freedom_r, freedom_0, lattice_frozen");
  cmd->add_option("--out", o.out, "output directory (overrides the config 'out' key)");
  cmd->add_option("--set", o.overrides, "extra key=value config override (repeatable)");
}

// Relative paths inside a config file are taken relative to that file.
std::string resolve(const std::string& p, const fs::path& base) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (base / p).lexically_normal().string();
}

RunConfig load_run_config(const CommonOptions& o) {
  RunConfig rc;
  if (!o.config.empty()) {
    rc = load_config_file(o.config);
    const fs::path base = fs::path(o.config).parent_path();
    rc.data_dir = resolve(rc.data_dir, base);
    rc.visual_features = resolve(rc.visual_features, base);
    rc.textual_features = resolve(rc.textual_features, base);
    rc.out_dir = resolve(rc.out_dir, base);
  }
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw DomainError("--set expects key=value, got '" + kv + "'");
    set_config_value(rc, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed) rc.train.seed = *o.seed;
  if (!o.ablation.empty()) rc.ablation = parse_ablation(o.ablation);
  if (!o.out.empty()) rc.out_dir = o.out;
  rc.effective().validate();
  return rc;
}

std::vector<FeatureMatrix> load_features(const RunConfig& rc) {
  std::vector<FeatureMatrix> out;
  if (!rc.visual_features.empty()) out.push_back(io::read_features(rc.visual_features, Modality::visual));
  if (!rc.textual_features.empty()) out.push_back(io::read_features(rc.textual_features, Modality::textual));
  if (out.empty()) throw DomainError("config names no feature file (visual_features / textual_features)");
  return out;
}

SplitDataset load_dataset(const RunConfig& rc) {
  if (rc.data_dir.empty()) throw DomainError("config key 'data_dir' is required");
  return io::read_dataset(rc.data_dir);
}

// ---- prepare ---------------------------------------------------------------

struct PrepareOptions {
  std::string input;
  std::string out;
  std::uint64_t seed = 2023;
  std::size_t min_degree = 5;
};

int cmd_prepare(const PrepareOptions& o) {
  std::ifstream is(o.input);
  if (!is) throw FormatError("cannot open " + o.input);
  const RawInteractions raw = read_raw_interactions(is, o.input);
  const PreparedData p = prepare_interactions(raw, o.min_degree);
  Rng rng(o.seed);
  const SplitDataset data = split_dataset(p.history, p.item_names.size(), rng);
  io::write_dataset(o.out, data);
  io::write_id_map(o.out + "/user_map.tsv", p.user_names);
  io::write_id_map(o.out + "/item_map.tsv", p.item_names);
  std::printf("read %zu distinct interactions; kept %zu after %zu-core filtering\n", raw.pairs.size(),
              p.num_interactions, o.min_degree);
  std::printf("users=%zu items=%zu train=%zu val+test=%zu -> %s\n", data.num_users, data.num_items,
              data.train.num_interactions(), data.total_interactions() - data.train.num_interactions(),
              o.out.c_str());
  return 0;
}

// ---- synth -----------------------------------------------------------------

struct SynthOptions {
  std::string out;
  std::uint64_t seed = 7;
  BlockDatasetOptions data;
};

int cmd_synth(const SynthOptions& o) {
  Rng rng(o.seed);
  const BlockDataset ds = make_block_dataset(o.data, rng);
  fs::create_directories(o.out);
  {
    std::ofstream raw(fs::path(o.out) / "interactions.tsv");
    raw << "# user_id\titem_id\n";
    for (std::size_t u = 0; u < ds.history.size(); ++u) {
      for (Index i : ds.history[u]) raw << 'u' << u << "\ti" << i << '\n';
    }
  }
  const SplitDataset data = split_dataset(ds.history, o.data.num_items, rng);
  io::write_dataset((fs::path(o.out) / "data").string(), data);
  io::write_features((fs::path(o.out) / "visual.fmat").string(), ds.features[0]);
  io::write_features((fs::path(o.out) / "textual.fmat").string(), ds.features[1]);
  write_text(fs::path(o.out) / "synth.conf",
             "# generated by `freedom synth`; paths are relative to this file\n"
             "dataset = synthetic\n"
             "data_dir = data\n"
             "visual_features = visual.fmat\n"
             "textual_features = textual.fmat\n"
             "out = run\n"
             "max_epochs = 100\n");
  std::printf("users=%zu items=%zu interactions=%zu -> %s\n", data.num_users, data.num_items,
              data.total_interactions(), o.out.c_str());
  return 0;
}

// ---- train -----------------------------------------------------------------

int cmd_train(const CommonOptions& o, bool quiet) {
  const RunConfig rc = load_run_config(o);
  const TrainConfig cfg = rc.effective();
  const SplitDataset data = load_dataset(rc);
  const std::vector<FeatureMatrix> features = load_features(rc);

  const FitResult r = fit(data, features, cfg, [&](const EpochRecord& e) {
    if (!quiet) {
      std::printf("epoch %4zu  loss %.6f  val R@20 %.4f  N@20 %.4f\n", e.epoch, e.loss,
                  e.val_recall20, e.val_ndcg20);
      std::fflush(stdout);
    }
  });

  const fs::path out(rc.out_dir);
  fs::create_directories(out);
  io::write_checkpoint((out / "checkpoint.frdm").string(), r.state);
  write_text(out / "metrics.csv", epoch_log_csv(r.log));
  write_text(out / "config.txt", "# ablation=" + std::string(to_string(rc.ablation)) +
                                     " config-hash=" + config_hash(cfg) + "\n" + cfg.canonical());
  write_text(out / "results.json", dump(results_json(rc.dataset_name, cfg, r.test, r.best_epoch)));

  std::printf("best epoch %zu: test R@10 %.4f R@20 %.4f N@10 %.4f N@20 %.4f -> %s\n", r.best_epoch,
              r.test.recall10, r.test.recall20, r.test.ndcg10, r.test.ndcg20, out.string().c_str());
  if (!finite_metrics(r.test)) {
    std::fprintf(stderr, "error: non-finite test metric\n");
    return 1;
  }
  return 0;
}

// ---- eval ------------------------------------------------------------------

int cmd_eval(const CommonOptions& o, const std::string& checkpoint) {
  const RunConfig rc = load_run_config(o);
  const TrainConfig cfg = rc.effective();
  const SplitDataset data = load_dataset(rc);
  const std::vector<FeatureMatrix> features = load_features(rc);
  const ModelState state = io::read_checkpoint(checkpoint, cfg.layers_ui, cfg.layers_ii);
  if (state.num_users() != data.num_users || state.num_items() != data.num_items) {
    throw DimensionError("checkpoint shape does not match the dataset");
  }
  const TrainingGraphs graphs = TrainingGraphs::build(data, features, cfg);
  const TopKMetrics test = evaluate(state, graphs, data.train, data.test);
  const TopKMetrics val = evaluate(state, graphs, data.train, data.val);

  const fs::path out(rc.out_dir);
  fs::create_directories(out);
  write_text(out / "eval.json", dump(results_json(rc.dataset_name, cfg, test, std::nullopt)));
  std::printf("val  R@20 %.4f N@20 %.4f\n", val.recall20, val.ndcg20);
  std::printf("test R@10 %.4f R@20 %.4f N@10 %.4f N@20 %.4f -> %s\n", test.recall10, test.recall20,
              test.ndcg10, test.ndcg20, (out / "eval.json").string().c_str());
  return finite_metrics(test) ? 0 : 1;
}

// ---- tune ------------------------------------------------------------------

// Cartesian grid over key=v1,v2,... specs; picks the best validation R@20.
int cmd_tune(const CommonOptions& o, const std::vector<std::string>& grid_specs) {
  const RunConfig base = load_run_config(o);
  const SplitDataset data = load_dataset(base);
  const std::vector<FeatureMatrix> features = load_features(base);

  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& spec : grid_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw DomainError("--grid expects key=v1,v2,..., got '" + spec + "'");
    std::vector<std::string> values;
    std::stringstream ss(spec.substr(eq + 1));
    for (std::string v; std::getline(ss, v, ',');) values.push_back(v);
    if (values.empty()) throw DomainError("--grid '" + spec + "' lists no values");
    axes.emplace_back(spec.substr(0, eq), values);
  }
  if (axes.empty()) axes.push_back({"lr", {"1e-4", "1e-3", "1e-2"}});

  std::string csv;
  for (const auto& [k, v] : axes) csv += k + ",";
  csv += "best_epoch,val_recall20,test_recall20,test_ndcg20,config_hash\n";
  std::vector<std::size_t> pos(axes.size(), 0);
  double best = -1.0;
  std::string best_row;
  while (true) {
    RunConfig rc = base;
    std::string row;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      set_config_value(rc, axes[a].first, axes[a].second[pos[a]]);
      row += axes[a].second[pos[a]] + ",";
    }
    const TrainConfig cfg = rc.effective();
    const FitResult r = fit(data, features, cfg);
    char tail[160];
    std::snprintf(tail, sizeof tail, "%zu,%.17g,%.17g,%.17g,", r.best_epoch, r.val.recall20,
                  r.test.recall20, r.test.ndcg20);
    row += tail + config_hash(cfg);
    csv += row + "\n";
    std::printf("%s\n", row.c_str());
    if (r.val.recall20 > best) {
      best = r.val.recall20;
      best_row = row;
    }
    std::size_t a = 0;
    for (; a < axes.size(); ++a) {
      if (++pos[a] < axes[a].second.size()) break;
      pos[a] = 0;
    }
    if (a == axes.size()) break;
  }
  const fs::path out(base.out_dir);
  fs::create_directories(out);
  write_text(out / "tune.csv", csv);
  std::printf("best (val R@20): %s\n", best_row.c_str());
  return 0;
}

// ---- spectral --------------------------------------------------------------

struct SpectralCliOptions {
  std::optional<std::size_t> k;
  std::optional<double> alpha_v;
  std::size_t random_trials = 0;
  std::size_t items = 100;
  std::size_t dim = 16;
};

std::string trial_row(std::uint64_t seed, const SpectralReport& r) {
  auto chain = [](const MatrixSpectrum& s) {
    return s.lambda_max <= s.row_sum_max + 1e-8 && s.row_sum_max <= s.n_max_elem + 1e-8;
  };
  char line[512];
  std::snprintf(line, sizeof line, "%llu,%.10f,%.10f,%.10f,%.10f,%.10f,%.10f,%d,%d,%d\n",
                static_cast<unsigned long long>(seed), r.frozen.lambda_max, r.weighted.lambda_max,
                r.frozen.max_elem, r.weighted.max_elem, r.frozen.row_sum_max, r.weighted.row_sum_max,
                chain(r.frozen) ? 1 : 0, chain(r.weighted) ? 1 : 0,
                r.frozen.max_elem <= r.weighted.max_elem ? 1 : 0);
  return line;
}

int cmd_spectral(const CommonOptions& o, const SpectralCliOptions& s) {
  const RunConfig rc = load_run_config(o);
  const TrainConfig cfg = rc.effective();
  const std::size_t k = s.k.value_or(cfg.k);
  const double alpha_v = s.alpha_v.value_or(cfg.alpha_v);
  const fs::path out(rc.out_dir);
  fs::create_directories(out);

  if (s.random_trials > 0) {
    std::string csv =
        "seed,lambda_frozen,lambda_weighted,max_elem_frozen,max_elem_weighted,row_sum_max_frozen,"
        "row_sum_max_weighted,chain_frozen,chain_weighted,max_elem_order\n";
    std::size_t chain_ok = 0, order_ok = 0, lambda_order = 0;
    for (std::size_t t = 0; t < s.random_trials; ++t) {
      const std::uint64_t seed = cfg.seed + t;
      Rng rng(seed);
      std::vector<FeatureMatrix> f;
      for (Modality m : {Modality::visual, Modality::textual}) {
        DenseMatrix x(s.items, s.dim);
        for (double& v : x.values()) v = rng.uniform01();
        f.push_back({m, std::move(x)});
      }
      const SpectralReport r = spectral_report(f, k, alpha_v);
      csv += trial_row(seed, r);
      chain_ok += r.frozen.lambda_max <= r.frozen.row_sum_max + 1e-8 &&
                  r.frozen.row_sum_max <= r.frozen.n_max_elem + 1e-8 &&
                  r.weighted.lambda_max <= r.weighted.row_sum_max + 1e-8 &&
                  r.weighted.row_sum_max <= r.weighted.n_max_elem + 1e-8;
      order_ok += r.frozen.max_elem <= r.weighted.max_elem;
      lambda_order += r.frozen.lambda_max <= r.weighted.lambda_max;
    }
    write_text(out / "spectral_trials.csv", csv);
    std::printf("%zu trials: bound chain held in %zu, max_elem order in %zu, lambda order in %zu -> %s\n",
                s.random_trials, chain_ok, order_ok, lambda_order,
                (out / "spectral_trials.csv").string().c_str());
    return chain_ok == s.random_trials && order_ok == s.random_trials ? 0 : 1;
  }

  const std::vector<FeatureMatrix> features = load_features(rc);
  const SpectralReport r = spectral_report(features, k, alpha_v);
  nlohmann::ordered_json j = to_json(r);
  j["dataset"] = rc.dataset_name;
  j["config-hash"] = config_hash(cfg);
  write_text(out / "spectral.json", dump(j));
  write_text(out / "spectral.csv", to_csv(r));
  std::printf("%s", to_csv(r).c_str());
  const bool finite = std::isfinite(r.frozen.lambda_max) && std::isfinite(r.weighted.lambda_max);
  return finite ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frozen item-item graph multimodal recommender with degree-sensitive edge pruning"};
  app.require_subcommand(1);

  PrepareOptions prep;
  auto* prepare = app.add_subcommand("prepare", "5-core filter, densify ids and split raw interactions");
  prepare->add_option("--input", prep.input, "TSV of user_id<TAB>item_id[<TAB>...]")->required()->check(CLI::ExistingFile);
  prepare->add_option("--out", prep.out, "dataset directory to write")->required();
  prepare->add_option("--seed", prep.seed, "split seed");
  prepare->add_option("--min-degree", prep.min_degree, "core size (default 5)");

  SynthOptions syn;
  auto* synth = app.add_subcommand("synth", "write a small block-structured dataset with features");
  synth->add_option("--out", syn.out, "directory to write")->required();
  synth->add_option("--seed", syn.seed, "generator seed");
  synth->add_option("--users", syn.data.num_users);
  synth->add_option("--items", syn.data.num_items);
  synth->add_option("--blocks", syn.data.num_blocks);
  synth->add_option("--p", syn.data.interaction_prob, "within-block interaction probability");
  synth->add_option("--noise", syn.data.feature_noise, "feature noise standard deviation");

  CommonOptions train_opt;
  bool quiet = false;
  auto* train = app.add_subcommand("train", "train, then write checkpoint, metrics.csv and results.json");
  add_common(train, train_opt, true);
  train->add_flag("-q,--quiet", quiet, "no per-epoch output");

  CommonOptions eval_opt;
  std::string checkpoint;
  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint on the test split");
  add_common(eval, eval_opt, true);
  eval->add_option("--checkpoint", checkpoint, "checkpoint.frdm from `train`")->required()->check(CLI::ExistingFile);

  CommonOptions tune_opt;
  std::vector<std::string> grid;
  auto* tune = app.add_subcommand("tune", "grid search on validation R@20");
  add_common(tune, tune_opt, true);
  tune->add_option("--grid", grid, "key=v1,v2,... (repeatable; default lr=1e-4,1e-3,1e-2)");

  CommonOptions spec_opt;
  SpectralCliOptions spec_cli;
  auto* spectral = app.add_subcommand("spectral", "eigenvalue report of frozen vs weighted item graphs");
  add_common(spectral, spec_opt, false);
  spectral->add_option("--k", spec_cli.k, "kNN size (default: config k)");
  spectral->add_option("--alpha-v", spec_cli.alpha_v, "visual weight (default: config alpha_v)");
  spectral->add_option("--random-trials", spec_cli.random_trials,
                       "instead of feature files, sweep this many random non-negative feature sets");
  spectral->add_option("--items", spec_cli.items, "items per random trial");
  spectral->add_option("--dim", spec_cli.dim, "feature width per random trial");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*prepare) return cmd_prepare(prep);
    if (*synth) return cmd_synth(syn);
    if (*train) return cmd_train(train_opt, quiet);
    if (*eval) return cmd_eval(eval_opt, checkpoint);
    if (*tune) return cmd_tune(tune_opt, grid);
    if (*spectral) return cmd_spectral(spec_opt, spec_cli);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
