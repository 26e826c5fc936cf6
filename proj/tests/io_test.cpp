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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "freedom/data/prepare.hpp"
#include "freedom/data/synthetic.hpp"
#include "freedom/io/checkpoint.hpp"
#include "freedom/io/dataset.hpp"
#include "freedom/io/feature_file.hpp"
#include "test_util.hpp"

namespace freedom {
namespace {

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("freedom_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write_bytes(const std::string& name, const std::string& bytes) const {
    std::ofstream(path(name), std::ios::binary) << bytes;
  }
  std::string read_bytes(const std::string& name) const {
    std::ifstream is(path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
  }

  fs::path dir_;
};

TEST_F(IoTest, FeatureFileRoundTripsAtFloatPrecision) {
  Rng rng(1);
  const FeatureMatrix f{Modality::visual, testing::random_dense(7, 5, rng, 0.0, 3.0)};
  io::write_features(path("v.fmat"), f);
  EXPECT_EQ(fs::file_size(path("v.fmat")), 12u + 7 * 5 * 4);
  const FeatureMatrix back = io::read_features(path("v.fmat"), Modality::textual);
  EXPECT_EQ(back.modality, Modality::textual);
  ASSERT_EQ(back.num_items(), 7u);
  ASSERT_EQ(back.dim(), 5u);
  for (std::size_t k = 0; k < f.features.size(); ++k) {
    EXPECT_EQ(back.features.values()[k], static_cast<double>(static_cast<float>(f.features.values()[k])));
  }
}

TEST_F(IoTest, FeatureFileErrors) {
  EXPECT_THROW(io::read_features(path("missing.fmat"), Modality::visual), FormatError);
  write_bytes("bad_magic.fmat", std::string("XMAT\1\0\0\0\1\0\0\0\0\0\0\0", 16));
  EXPECT_THROW(io::read_features(path("bad_magic.fmat"), Modality::visual), FormatError);
  write_bytes("short.fmat", std::string("FMAT\2\0\0\0\1\0\0\0\0\0\0\0", 16));
  EXPECT_THROW(io::read_features(path("short.fmat"), Modality::visual), FormatError);
  write_bytes("long.fmat", std::string("FMAT\1\0\0\0\1\0\0\0\0\0\0\0\0", 17));
  EXPECT_THROW(io::read_features(path("long.fmat"), Modality::visual), FormatError);
  // one float holding a quiet NaN
  write_bytes("nan.fmat", std::string("FMAT\1\0\0\0\1\0\0\0\0\0\xc0\x7f", 16));
  EXPECT_THROW(io::read_features(path("nan.fmat"), Modality::visual), FormatError);
}

ModelState random_state(Rng& rng) {
  ModelState s;
  s.user_emb = testing::random_dense(6, 4, rng);
  s.item_emb = testing::random_dense(9, 4, rng);
  s.projectors.push_back({Modality::visual, testing::random_dense(5, 4, rng), testing::random_dense(1, 4, rng)});
  s.projectors.push_back({Modality::textual, testing::random_dense(3, 4, rng), testing::random_dense(1, 4, rng)});
  return s;
}

TEST_F(IoTest, CheckpointRoundTripsExactly) {
  Rng rng(2);
  const ModelState s = random_state(rng);
  io::write_checkpoint(path("m.frdm"), s);
  const ModelState back = io::read_checkpoint(path("m.frdm"), 3, 0);
  EXPECT_EQ(back.user_emb, s.user_emb);
  EXPECT_EQ(back.item_emb, s.item_emb);
  ASSERT_EQ(back.projectors.size(), 2u);
  EXPECT_EQ(back.projectors[0].modality, Modality::visual);
  EXPECT_EQ(back.projectors[1].weight, s.projectors[1].weight);
  EXPECT_EQ(back.projectors[1].bias, s.projectors[1].bias);
  EXPECT_EQ(back.layers_ui, 3u);
  EXPECT_EQ(back.layers_ii, 0u);
  // header: magic, version 1, M, N, d
  const std::string bytes = read_bytes("m.frdm");
  EXPECT_EQ(bytes.substr(0, 4), "FRDM");
  EXPECT_EQ(bytes.substr(4, 16), std::string("\1\0\0\0\6\0\0\0\x09\0\0\0\4\0\0\0", 16));
}

TEST_F(IoTest, CheckpointErrors) {
  Rng rng(3);
  io::write_checkpoint(path("m.frdm"), random_state(rng));
  const std::string good = read_bytes("m.frdm");
  write_bytes("trunc.frdm", good.substr(0, good.size() - 3));
  EXPECT_THROW(io::read_checkpoint(path("trunc.frdm"), 2, 1), FormatError);
  std::string version = good;
  version[4] = 2;
  write_bytes("version.frdm", version);
  EXPECT_THROW(io::read_checkpoint(path("version.frdm"), 2, 1), FormatError);
  std::string dims = good;
  dims[8] = 7;  // header claims 7 users
  write_bytes("dims.frdm", dims);
  EXPECT_THROW(io::read_checkpoint(path("dims.frdm"), 2, 1), FormatError);
  write_bytes("magic.fmat", "FMAT" + good.substr(4));
  EXPECT_THROW(io::read_checkpoint(path("magic.fmat"), 2, 1), FormatError);
}

TEST_F(IoTest, DatasetDirectoryRoundTrips) {
  Rng rng(4);
  BlockDataset ds = make_block_dataset({}, rng);
  const SplitDataset data = split_dataset(ds.history, 100, rng);
  io::write_dataset(path("ds"), data);
  const SplitDataset back = io::read_dataset(path("ds"));
  EXPECT_EQ(back.num_users, data.num_users);
  EXPECT_EQ(back.num_items, data.num_items);
  EXPECT_EQ(back.train.matrix(), data.train.matrix());
  EXPECT_EQ(back.val, data.val);
  EXPECT_EQ(back.test, data.test);
}

TEST_F(IoTest, DatasetRejectsOutOfRangeIds) {
  fs::create_directories(path("ds"));
  std::ofstream(path("ds/meta.txt")) << "num_users=2\nnum_items=2\n";
  std::ofstream(path("ds/train.tsv")) << "0\t1\n1\t2\n";
  std::ofstream(path("ds/val.tsv")) << "";
  std::ofstream(path("ds/test.tsv")) << "";
  EXPECT_THROW(io::read_dataset(path("ds")), FormatError);
}

TEST(CoreFilter, MatchesFixpointOracle) {
  Rng rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t users = 5 + rng.below(30), items = 5 + rng.below(30);
    const double p = 0.05 + 0.4 * rng.uniform01();
    std::vector<IdPair> pairs;
    for (Index u = 0; u < users; ++u)
      for (Index i = 0; i < items; ++i)
        if (rng.uniform01() < p) pairs.emplace_back(u, i);
    rng.shuffle(pairs);
    const std::size_t k = 1 + rng.below(6);
    const auto kept = core_filter(pairs, k);
    EXPECT_EQ(std::set<IdPair>(kept.begin(), kept.end()),
              testing::oracle_core({pairs.begin(), pairs.end()}, k));
    // relative order of survivors is the input order
    std::size_t cursor = 0;
    for (const auto& p : kept) {
      while (cursor < pairs.size() && pairs[cursor] != p) ++cursor;
      ASSERT_LT(cursor, pairs.size());
    }
  }
}

TEST(CoreFilter, CascadingRemoval) {
  // item 5 has one user; dropping it leaves user 2 with one item, so user 2 goes too
  const std::vector<IdPair> pairs{{0, 0}, {0, 1}, {2, 1}, {1, 0}, {1, 1}, {2, 5}};
  EXPECT_EQ(core_filter(pairs, 2), (std::vector<IdPair>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  EXPECT_TRUE(core_filter(pairs, 3).empty());
  EXPECT_EQ(core_filter(pairs, 1), pairs);
}

TEST(PrepareInteractions, DensifiesAfterFiltering) {
  std::istringstream in(
      "# user\titem\n"
      "alice\tx\nalice\ty\nbob\tx\nbob\ty\ncarol\tz\nalice\tx\n"
      "bob\tq\r\n");
  const RawInteractions raw = read_raw_interactions(in, "mem");
  EXPECT_EQ(raw.pairs.size(), 6u);  // the repeated (alice, x) is dropped
  const PreparedData p = prepare_interactions(raw, 2);
  EXPECT_EQ(p.user_names, (std::vector<std::string>{"alice", "bob"}));
  EXPECT_EQ(p.item_names, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(p.history, (ItemSets{{0, 1}, {0, 1}}));
  EXPECT_EQ(p.num_interactions, 4u);
  EXPECT_THROW(prepare_interactions(raw, 3), DatasetError);
}

TEST(PrepareInteractions, MalformedLineIsReported) {
  std::istringstream in("a\tb\nonly-one-column\n");
  try {
    read_raw_interactions(in, "raw.tsv");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("raw.tsv:2"), std::string::npos);
  }
}

}  // namespace
}  // namespace freedom
