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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "freedom/eval/split.hpp"
#include "freedom/io/binary.hpp"

namespace freedom::io {

// Prepared dataset directory:
//   meta.txt               num_users=M / num_items=N
//   train.tsv val.tsv test.tsv   user \t item, dense 0-based ids
//   user_map.tsv item_map.tsv    dense \t raw id (written by `prepare`)
inline void write_pairs(const std::string& path, const ItemSets& sets) {
  auto os = open_out(path, false);
  for (std::size_t u = 0; u < sets.size(); ++u) {
    for (Index i : sets[u]) os << u << '\t' << i << '\n';
  }
}

inline ItemSets read_pairs(const std::string& path, std::size_t num_users, std::size_t num_items) {
  auto is = open_in(path, false);
  ItemSets sets(num_users);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    long long u = -1, i = -1;
    if (!(ls >> u >> i) || u < 0 || i < 0 || static_cast<std::size_t>(u) >= num_users ||
        static_cast<std::size_t>(i) >= num_items) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": bad or out-of-range user/item id");
    }
    sets[u].push_back(static_cast<Index>(i));
  }
  for (auto& s : sets) std::sort(s.begin(), s.end());
  return sets;
}

inline void write_dataset(const std::string& dir, const SplitDataset& data) {
  std::filesystem::create_directories(dir);
  {
    auto os = open_out(dir + "/meta.txt", false);
    os << "num_users=" << data.num_users << "\nnum_items=" << data.num_items << '\n';
  }
  ItemSets train(data.num_users);
  for (std::size_t u = 0; u < data.num_users; ++u) {
    const auto items = data.train.items_of(u);
    train[u].assign(items.begin(), items.end());
  }
  write_pairs(dir + "/train.tsv", train);
  write_pairs(dir + "/val.tsv", data.val);
  write_pairs(dir + "/test.tsv", data.test);
}

inline void write_id_map(const std::string& path, const std::vector<std::string>& names) {
  auto os = open_out(path, false);
  for (std::size_t k = 0; k < names.size(); ++k) os << k << '\t' << names[k] << '\n';
}

inline SplitDataset read_dataset(const std::string& dir) {
  std::size_t m = 0, n = 0;
  {
    auto is = open_in(dir + "/meta.txt", false);
    std::string line;
    while (std::getline(is, line)) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(0, eq);
      const std::size_t value = std::stoull(line.substr(eq + 1));
      if (key == "num_users") m = value;
      if (key == "num_items") n = value;
    }
  }
  if (m == 0 || n == 0) throw FormatError(dir + "/meta.txt: num_users and num_items required");
  SplitDataset data;
  data.num_users = m;
  data.num_items = n;
  const ItemSets train = read_pairs(dir + "/train.tsv", m, n);
  std::vector<std::pair<Index, Index>> pairs;
  for (std::size_t u = 0; u < m; ++u) {
    for (Index i : train[u]) pairs.emplace_back(static_cast<Index>(u), i);
  }
  data.train = InteractionMatrix::from_pairs(m, n, pairs);
  data.val = read_pairs(dir + "/val.tsv", m, n);
  data.test = read_pairs(dir + "/test.tsv", m, n);
  return data;
}

}  // namespace freedom::io
