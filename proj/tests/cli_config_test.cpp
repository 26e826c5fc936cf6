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

#include <set>
#include <sstream>

#include "freedom/run/run_config.hpp"

namespace freedom {
namespace {

RunConfig parse(const std::string& text) {
  RunConfig rc;
  std::istringstream is(text);
  parse_config(is, rc, "test.conf");
  return rc;
}

TEST(ParseConfig, ReadsEveryDocumentedKey) {
  const RunConfig rc = parse(
      "# comment line\n"
      "lr = 0.01\nlambda=0.5\nrho = 0.9  # trailing comment\nalpha_v = 0.3\nk = 7\nd = 32\n"
      "L_ui = 3\nL_ii = 0\nbatch_size = 128\nmax_epochs = 50\npatience = 4\nseed = 99\n"
      "weighted_item_graph = true\nedge_weighting = uniform\nsampling = with_replacement_dedup\n"
      "adam_beta1 = 0.8\nadam_beta2 = 0.99\nadam_eps = 1e-6\n"
      "dataset = baby\ndata_dir = data/baby\nvisual_features = v.fmat\n"
      "textual_features = t.fmat\nout = runs/x\nablation = freedom_0\n\n");
  const TrainConfig& t = rc.train;
  EXPECT_EQ(t.lr, 0.01);
  EXPECT_EQ(t.lambda, 0.5);
  EXPECT_EQ(t.rho, 0.9);
  EXPECT_EQ(t.alpha_v, 0.3);
  EXPECT_EQ(t.k, 7u);
  EXPECT_EQ(t.d, 32u);
  EXPECT_EQ(t.layers_ui, 3u);
  EXPECT_EQ(t.layers_ii, 0u);
  EXPECT_EQ(t.batch_size, 128u);
  EXPECT_EQ(t.max_epochs, 50u);
  EXPECT_EQ(t.patience, 4u);
  EXPECT_EQ(t.seed, 99u);
  EXPECT_TRUE(t.weighted_item_graph);
  EXPECT_EQ(t.edge_weighting, EdgeWeighting::uniform);
  EXPECT_EQ(t.sampling, SamplingMode::with_replacement_dedup);
  EXPECT_EQ(t.adam_beta1, 0.8);
  EXPECT_EQ(t.adam_beta2, 0.99);
  EXPECT_EQ(t.adam_eps, 1e-6);
  EXPECT_EQ(rc.dataset_name, "baby");
  EXPECT_EQ(rc.data_dir, "data/baby");
  EXPECT_EQ(rc.visual_features, "v.fmat");
  EXPECT_EQ(rc.textual_features, "t.fmat");
  EXPECT_EQ(rc.out_dir, "runs/x");
  EXPECT_EQ(rc.ablation, Ablation::freedom_0);
  EXPECT_EQ(rc.effective().lambda, 0.0);
}

TEST(ParseConfig, EmptyTextKeepsDefaults) {
  EXPECT_EQ(parse("").train, TrainConfig{});
}

TEST(ParseConfig, RejectsBadInput) {
  EXPECT_THROW(parse("learning_rate = 0.1\n"), DomainError);
  EXPECT_THROW(parse("lr 0.1\n"), DomainError);
  EXPECT_THROW(parse("k = ten\n"), DomainError);
  EXPECT_THROW(parse("k = -3\n"), DomainError);
  EXPECT_THROW(parse("lr = 0.1x\n"), DomainError);
  EXPECT_THROW(parse("weighted_item_graph = maybe\n"), DomainError);
  EXPECT_THROW(parse("ablation = freedom_d\n"), DomainError);
  EXPECT_THROW(parse("edge_weighting = inverse\n"), DomainError);
}

TEST(ParseConfig, ErrorsCarryLineNumbers) {
  try {
    parse("lr = 0.1\n\nbogus = 1\n");
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("test.conf:3"), std::string::npos) << e.what();
  }
}

TEST(Ablation, NamesRoundTrip) {
  for (Ablation a : {Ablation::freedom, Ablation::freedom_f, Ablation::freedom_r,
                     Ablation::freedom_0, Ablation::lattice_frozen}) {
    EXPECT_EQ(parse_ablation(to_string(a)), a);
  }
}

TEST(ConfigHash, StableAndSensitive) {
  const TrainConfig base;
  EXPECT_EQ(config_hash(base), config_hash(TrainConfig{}));
  EXPECT_EQ(config_hash(base).size(), 16u);
  std::set<std::string> hashes{config_hash(base)};
  for (Ablation a : {Ablation::freedom_f, Ablation::freedom_r, Ablation::freedom_0,
                     Ablation::lattice_frozen}) {
    hashes.insert(config_hash(apply_ablation(base, a)));
  }
  TrainConfig seeded = base;
  seeded.seed = 7;
  hashes.insert(config_hash(seeded));
  EXPECT_EQ(hashes.size(), 6u);
}

TEST(ConfigHash, KnownFnvVector) {
  // FNV-1a 64 of the empty string is the offset basis; check the canonical text by hand
  const TrainConfig c;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : c.canonical()) {
    h = (h ^ ch) * 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  EXPECT_EQ(config_hash(c), buf);
  EXPECT_EQ(c.canonical().rfind("lr=0.001\nlambda=0.001\nrho=0.80000000000000004\n", 0), 0u);
}

TEST(ResultsJson, HasDocumentedKeysInOrder) {
  const TopKMetrics m{0.1, 0.2, 0.05, 0.07};
  const auto j = results_json("baby", TrainConfig{}, m, 12);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"dataset", "config-hash", "R@10", "R@20", "N@10", "N@20",
                                            "best_epoch"}));
  EXPECT_EQ(j["dataset"], "baby");
  EXPECT_EQ(j["R@20"], 0.2);
  EXPECT_EQ(j["best_epoch"], 12);
  EXPECT_TRUE(results_json("x", TrainConfig{}, m, std::nullopt)["best_epoch"].is_null());
}

}  // namespace
}  // namespace freedom
