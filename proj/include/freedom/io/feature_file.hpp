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

#include <string>

#include "freedom/graph/modality_graph.hpp"
#include "freedom/io/binary.hpp"

namespace freedom::io {

// Feature file: "FMAT", u32 N, u32 d_m, then N*d_m little-endian float32, row-major.
inline FeatureMatrix read_features(const std::string& path, Modality modality) {
  auto is = open_in(path, true);
  expect_magic(is, "FMAT", path);
  const auto n = read_pod<std::uint32_t>(is, "item count");
  const auto d = read_pod<std::uint32_t>(is, "feature dimension");
  std::vector<float> raw(static_cast<std::size_t>(n) * d);
  is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size() * sizeof(float)));
  if (!is) throw FormatError(path + ": truncated feature payload");
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError(path + ": trailing bytes");
  FeatureMatrix f{modality, DenseMatrix(n, d, std::vector<double>(raw.begin(), raw.end()))};
  if (!f.features.all_finite()) throw FormatError(path + ": NaN or Inf feature value");
  return f;
}

inline void write_features(const std::string& path, const FeatureMatrix& f) {
  auto os = open_out(path, true);
  os.write("FMAT", 4);
  write_pod(os, static_cast<std::uint32_t>(f.num_items()));
  write_pod(os, static_cast<std::uint32_t>(f.dim()));
  for (double v : f.features.values()) write_pod(os, static_cast<float>(v));
  if (!os) throw FormatError("failed writing " + path);
}

}  // namespace freedom::io
