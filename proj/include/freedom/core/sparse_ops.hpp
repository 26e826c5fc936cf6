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
#include <span>
#include <string>
#include <vector>

#include "freedom/core/matrix.hpp"

namespace freedom {

// result = S * X
inline DenseMatrix spmm(const CsrMatrix& s, const DenseMatrix& x) {
  if (s.cols() != x.rows()) {
    throw DimensionError("spmm: S is " + std::to_string(s.rows()) + "x" +
                         std::to_string(s.cols()) + " but X has " + std::to_string(x.rows()) +
                         " rows");
  }
  DenseMatrix out(s.rows(), x.cols());
  const std::size_t d = x.cols();
  for (std::size_t r = 0; r < s.rows(); ++r) {
    double* dst = out.row(r).data();
    const auto cols = s.row_cols(r);
    const auto vals = s.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const double w = vals[k];
      const double* src = x.row(cols[k]).data();
      for (std::size_t c = 0; c < d; ++c) dst[c] += w * src[c];
    }
  }
  return out;
}

inline CsrMatrix transpose(const CsrMatrix& s) {
  std::vector<std::size_t> ptr(s.cols() + 1, 0);
  for (Index c : s.col_idx()) ++ptr[c + 1];
  for (std::size_t c = 0; c < s.cols(); ++c) ptr[c + 1] += ptr[c];
  std::vector<Index> idx(s.nnz());
  std::vector<double> val(s.nnz());
  std::vector<std::size_t> cursor(ptr.begin(), ptr.end() - 1);
  // rows are visited in increasing order, so each output row comes out sorted
  for (std::size_t r = 0; r < s.rows(); ++r) {
    const auto cols = s.row_cols(r);
    const auto vals = s.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const std::size_t pos = cursor[cols[k]]++;
      idx[pos] = static_cast<Index>(r);
      val[pos] = vals[k];
    }
  }
  return CsrMatrix(s.cols(), s.rows(), std::move(ptr), std::move(idx), std::move(val));
}

// D^{-1/2} S D^{-1/2} with D the row-sum degree matrix. Rows of degree zero stay empty.
inline CsrMatrix normalize_sym(const CsrMatrix& s) {
  if (s.rows() != s.cols()) throw DimensionError("normalize_sym: matrix must be square");
  if (!s.is_non_negative()) throw DomainError("normalize_sym: negative entry");
  const DegreeVector deg = DegreeVector::of(s);
  std::vector<double> val(s.values());
  for (std::size_t r = 0; r < s.rows(); ++r) {
    for (std::size_t k = s.row_ptr()[r]; k < s.row_ptr()[r + 1]; ++k) {
      const double dd = deg[r] * deg[s.col_idx()[k]];
      // dd == 0 only for zero-valued entries of a non-negative matrix
      val[k] = dd > 0.0 ? val[k] / std::sqrt(dd) : 0.0;
    }
  }
  return CsrMatrix(s.rows(), s.cols(), s.row_ptr(), s.col_idx(), std::move(val));
}

// Σ weights[g] * terms[g] over the union sparsity pattern.
inline CsrMatrix weighted_sum(const std::vector<const CsrMatrix*>& terms,
                              const std::vector<double>& weights) {
  if (terms.empty() || terms.size() != weights.size()) {
    throw DimensionError("weighted_sum: need one weight per term and at least one term");
  }
  const std::size_t rows = terms.front()->rows();
  const std::size_t cols = terms.front()->cols();
  for (const CsrMatrix* t : terms) {
    if (t->rows() != rows || t->cols() != cols) {
      throw DimensionError("weighted_sum: operand shapes differ");
    }
  }
  std::vector<std::size_t> ptr(rows + 1, 0);
  std::vector<Index> idx;
  std::vector<double> val;
  std::vector<std::size_t> pos(terms.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t g = 0; g < terms.size(); ++g) pos[g] = terms[g]->row_ptr()[r];
    // k-way merge of the sorted rows
    while (true) {
      Index next = 0;
      bool any = false;
      for (std::size_t g = 0; g < terms.size(); ++g) {
        if (pos[g] < terms[g]->row_ptr()[r + 1]) {
          const Index c = terms[g]->col_idx()[pos[g]];
          if (!any || c < next) next = c;
          any = true;
        }
      }
      if (!any) break;
      double sum = 0.0;
      for (std::size_t g = 0; g < terms.size(); ++g) {
        if (pos[g] < terms[g]->row_ptr()[r + 1] && terms[g]->col_idx()[pos[g]] == next) {
          sum += weights[g] * terms[g]->values()[pos[g]];
          ++pos[g];
        }
      }
      idx.push_back(next);
      val.push_back(sum);
    }
    ptr[r + 1] = idx.size();
  }
  return CsrMatrix(rows, cols, std::move(ptr), std::move(idx), std::move(val));
}

// Largest stored value (0 for an empty matrix).
inline double max_element(const CsrMatrix& s) {
  double best = 0.0;
  for (double v : s.values()) best = std::max(best, v);
  return best;
}

inline double max_row_sum(const CsrMatrix& s) {
  const DegreeVector d = DegreeVector::of(s);
  double best = 0.0;
  for (double v : d.degrees) best = std::max(best, v);
  return best;
}

// Dense product A * B.
inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* dst = out.row(i).data();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double w = a(i, k);
      if (w == 0.0) continue;
      const double* src = b.row(k).data();
      for (std::size_t j = 0; j < b.cols(); ++j) dst[j] += w * src[j];
    }
  }
  return out;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: lengths differ");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace freedom
