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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "freedom/io/binary.hpp"
#include "freedom/model/model.hpp"

namespace freedom::io {

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Checkpoint: "FRDM", u32 version, u32 M, u32 N, u32 d, then tensors until EOF, each
// as u32 name length, name bytes, u32 rows, u32 cols, rows*cols float64.
inline void write_checkpoint(const std::string& path, const ModelState& state) {
  auto os = open_out(path, true);
  os.write("FRDM", 4);
  write_pod(os, kCheckpointVersion);
  write_pod(os, static_cast<std::uint32_t>(state.num_users()));
  write_pod(os, static_cast<std::uint32_t>(state.num_items()));
  write_pod(os, static_cast<std::uint32_t>(state.dim()));
  const auto names = state.parameter_names();
  const auto tensors = state.parameters();
  for (std::size_t t = 0; t < tensors.size(); ++t) {
    write_pod(os, static_cast<std::uint32_t>(names[t].size()));
    os.write(names[t].data(), static_cast<std::streamsize>(names[t].size()));
    write_pod(os, static_cast<std::uint32_t>(tensors[t]->rows()));
    write_pod(os, static_cast<std::uint32_t>(tensors[t]->cols()));
    for (double v : tensors[t]->values()) write_pod(os, v);
  }
  if (!os) throw FormatError("failed writing " + path);
}

// Restores embeddings and projectors; propagation depths come from the caller.
inline ModelState read_checkpoint(const std::string& path, std::size_t layers_ui,
                                  std::size_t layers_ii) {
  auto is = open_in(path, true);
  expect_magic(is, "FRDM", path);
  const auto version = read_pod<std::uint32_t>(is, "version");
  if (version != kCheckpointVersion) {
    throw FormatError(path + ": unsupported checkpoint version " + std::to_string(version));
  }
  const auto m = read_pod<std::uint32_t>(is, "M");
  const auto n = read_pod<std::uint32_t>(is, "N");
  const auto d = read_pod<std::uint32_t>(is, "d");

  std::map<std::string, DenseMatrix> tensors;
  std::vector<std::string> order;
  while (is.peek() != std::char_traits<char>::eof()) {
    const auto len = read_pod<std::uint32_t>(is, "tensor name length");
    if (len == 0 || len > 256) throw FormatError(path + ": implausible tensor name length");
    std::string name(len, '\0');
    is.read(name.data(), len);
    const auto rows = read_pod<std::uint32_t>(is, name + " rows");
    const auto cols = read_pod<std::uint32_t>(is, name + " cols");
    std::vector<double> v(static_cast<std::size_t>(rows) * cols);
    is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!is) throw FormatError(path + ": truncated tensor " + name);
    if (tensors.count(name)) throw FormatError(path + ": duplicate tensor " + name);
    order.push_back(name);
    tensors.emplace(name, DenseMatrix(rows, cols, std::move(v)));
  }

  auto take = [&](const std::string& name) {
    auto it = tensors.find(name);
    if (it == tensors.end()) throw FormatError(path + ": missing tensor " + name);
    return std::move(it->second);
  };
  ModelState s;
  s.user_emb = take("user_emb");
  s.item_emb = take("item_emb");
  s.layers_ui = layers_ui;
  s.layers_ii = layers_ii;
  for (const auto& name : order) {
    if (name.rfind("W_", 0) != 0) continue;
    const std::string mod = name.substr(2);
    s.projectors.push_back({parse_modality(mod), take(name), take("b_" + mod)});
  }
  if (s.user_emb.rows() != m || s.item_emb.rows() != n || s.dim() != d) {
    throw FormatError(path + ": header shape disagrees with stored tensors");
  }
  s.validate();
  for (const DenseMatrix* t : std::as_const(s).parameters()) {
    if (!t->all_finite()) throw FormatError(path + ": non-finite parameter value");
  }
  return s;
}

}  // namespace freedom::io
