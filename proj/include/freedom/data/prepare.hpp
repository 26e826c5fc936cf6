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
#include <cstdint>
#include <deque>
#include <istream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "freedom/eval/split.hpp"
#include "freedom/io/binary.hpp"

namespace freedom {

using IdPair = std::pair<Index, Index>;  // (user, item)

// Keeps the interactions whose user and item both have >= min_degree interactions,
// removing under-threshold nodes repeatedly until none is left (the k-core of the
// bipartite graph). Input pairs must be distinct; relative order is preserved.
inline std::vector<IdPair> core_filter(const std::vector<IdPair>& pairs, std::size_t min_degree) {
  std::size_t users = 0, items = 0;
  for (const auto& [u, i] : pairs) {
    users = std::max<std::size_t>(users, u + 1);
    items = std::max<std::size_t>(items, i + 1);
  }
  std::vector<std::vector<std::size_t>> by_user(users), by_item(items);
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    by_user[pairs[e].first].push_back(e);
    by_item[pairs[e].second].push_back(e);
  }
  std::vector<std::size_t> deg_u(users), deg_i(items);
  for (std::size_t u = 0; u < users; ++u) deg_u[u] = by_user[u].size();
  for (std::size_t i = 0; i < items; ++i) deg_i[i] = by_item[i].size();

  std::vector<bool> alive(pairs.size(), true), dead_u(users, false), dead_i(items, false);
  std::deque<std::pair<bool, std::size_t>> queue;  // (is_user, id)
  for (std::size_t u = 0; u < users; ++u) {
    if (deg_u[u] > 0 && deg_u[u] < min_degree) queue.emplace_back(true, u);
  }
  for (std::size_t i = 0; i < items; ++i) {
    if (deg_i[i] > 0 && deg_i[i] < min_degree) queue.emplace_back(false, i);
  }
  while (!queue.empty()) {
    const auto [is_user, id] = queue.front();
    queue.pop_front();
    auto& dead = is_user ? dead_u : dead_i;
    if (dead[id]) continue;
    dead[id] = true;
    for (std::size_t e : (is_user ? by_user : by_item)[id]) {
      if (!alive[e]) continue;
      alive[e] = false;
      const std::size_t other = is_user ? pairs[e].second : pairs[e].first;
      auto& other_deg = is_user ? deg_i : deg_u;
      auto& other_dead = is_user ? dead_i : dead_u;
      if (--other_deg[other] < min_degree && !other_dead[other]) queue.emplace_back(!is_user, other);
    }
  }
  std::vector<IdPair> out;
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    if (alive[e]) out.push_back(pairs[e]);
  }
  return out;
}

// Maps arbitrary string ids to dense 0-based ids in order of first appearance.
class IdMap {
 public:
  Index id_of(const std::string& raw) {
    auto [it, inserted] = index_.emplace(raw, static_cast<Index>(names_.size()));
    if (inserted) names_.push_back(raw);
    return it->second;
  }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

 private:
  std::unordered_map<std::string, Index> index_;
  std::vector<std::string> names_;
};

struct RawInteractions {
  std::vector<std::pair<std::string, std::string>> pairs;  // distinct, file order
};

// UTF-8 TSV: user_id \t item_id [\t timestamp]. Repeated (user, item) pairs keep the first.
inline RawInteractions read_raw_interactions(std::istream& is, const std::string& origin) {
  RawInteractions out;
  IdMap users, items;
  std::unordered_map<std::uint64_t, bool> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string u, i;
    if (!std::getline(ls, u, '\t') || !std::getline(ls, i, '\t') || u.empty() || i.empty()) {
      throw FormatError(origin + ":" + std::to_string(lineno) + ": expected user_id<TAB>item_id");
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(users.id_of(u)) << 32) | items.id_of(i);
    if (seen.emplace(key, true).second) out.pairs.emplace_back(std::move(u), std::move(i));
  }
  return out;
}

struct PreparedData {
  ItemSets history;  // per dense user, distinct dense items in input order
  std::vector<std::string> user_names;
  std::vector<std::string> item_names;
  std::size_t num_interactions = 0;
};

// k-core filtering followed by id densification (first appearance order).
inline PreparedData prepare_interactions(const RawInteractions& raw, std::size_t min_degree = 5) {
  IdMap users, items;
  std::vector<IdPair> ids;
  ids.reserve(raw.pairs.size());
  for (const auto& [u, i] : raw.pairs) ids.emplace_back(users.id_of(u), items.id_of(i));
  const std::vector<IdPair> kept = core_filter(ids, min_degree);
  if (kept.empty()) throw DatasetError("no interactions survive the " + std::to_string(min_degree) + "-core filter");

  PreparedData out;
  IdMap dense_u, dense_i;
  for (const auto& [u, i] : kept) {
    const Index du = dense_u.id_of(users.names()[u]);
    const Index di = dense_i.id_of(items.names()[i]);
    if (out.history.size() <= du) out.history.resize(du + 1);
    out.history[du].push_back(di);
  }
  out.user_names = dense_u.names();
  out.item_names = dense_i.names();
  out.num_interactions = kept.size();
  return out;
}

}  // namespace freedom
