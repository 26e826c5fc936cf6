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
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freedom/core/errors.hpp"

namespace freedom {

using Index = std::uint32_t;

// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) {
      throw DimensionError("DenseMatrix: value count does not match rows*cols");
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool all_finite() const {
    for (double v : values_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  DenseMatrix& operator+=(const DenseMatrix& other) {
    require_same_shape(other, "operator+=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& other) {
    require_same_shape(other, "operator-=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
  }
  DenseMatrix& operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, double s) { return a *= s; }
  friend DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  void require_same_shape(const DenseMatrix& other, const char* what) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw DimensionError(std::string("DenseMatrix::") + what + ": shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// (row, col, value) entry used when assembling sparse matrices.
struct Triplet {
  Index row;
  Index col;
  double value;
};

// Compressed sparse row matrix. Column indices are strictly increasing within a row.
class CsrMatrix {
 public:
  CsrMatrix() : row_ptr_(1, 0) {}

  // Empty (all-zero) matrix of the given shape.
  CsrMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

  // Takes ownership of raw CSR arrays and validates every structural invariant.
  CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
            std::vector<Index> col_idx, std::vector<double> values)
      : rows_(rows),
        cols_(cols),
        row_ptr_(std::move(row_ptr)),
        col_idx_(std::move(col_idx)),
        values_(std::move(values)) {
    validate();
  }

  static CsrMatrix identity(std::size_t n) {
    std::vector<std::size_t> ptr(n + 1);
    std::vector<Index> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
      ptr[i + 1] = i + 1;
      idx[i] = static_cast<Index>(i);
    }
    return CsrMatrix(n, n, std::move(ptr), std::move(idx), std::vector<double>(n, 1.0));
  }

  // Duplicates (same row and col) are summed.
  static CsrMatrix from_triplets(std::size_t rows, std::size_t cols,
                                 std::vector<Triplet> triplets);

  static CsrMatrix from_dense(const DenseMatrix& dense, bool keep_zeros = false) {
    std::vector<std::size_t> ptr(dense.rows() + 1, 0);
    std::vector<Index> idx;
    std::vector<double> val;
    for (std::size_t r = 0; r < dense.rows(); ++r) {
      for (std::size_t c = 0; c < dense.cols(); ++c) {
        const double v = dense(r, c);
        if (v != 0.0 || keep_zeros) {
          idx.push_back(static_cast<Index>(c));
          val.push_back(v);
        }
      }
      ptr[r + 1] = idx.size();
    }
    return CsrMatrix(dense.rows(), dense.cols(), std::move(ptr), std::move(idx), std::move(val));
  }

  DenseMatrix to_dense() const {
    DenseMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
        out(r, col_idx_[k]) = values_[k];
      }
    }
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<Index>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  std::span<const Index> row_cols(std::size_t r) const {
    return {col_idx_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }
  std::span<const double> row_values(std::size_t r) const {
    return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }
  std::size_t row_nnz(std::size_t r) const { return row_ptr_[r + 1] - row_ptr_[r]; }

  // Stored value at (r, c), or 0 when the entry is structurally absent.
  double at(std::size_t r, std::size_t c) const {
    const auto cols = row_cols(r);
    std::size_t lo = 0, hi = cols.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cols[mid] < c) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return (lo < cols.size() && cols[lo] == c) ? row_values(r)[lo] : 0.0;
  }

  bool is_non_negative() const {
    for (double v : values_) {
      if (v < 0.0) return false;
    }
    return true;
  }

  bool operator==(const CsrMatrix&) const = default;

 private:
  void validate() const {
    if (row_ptr_.size() != rows_ + 1) throw DimensionError("CsrMatrix: row_ptr length != rows+1");
    if (row_ptr_.front() != 0) throw DomainError("CsrMatrix: row_ptr[0] != 0");
    if (row_ptr_.back() != col_idx_.size() || col_idx_.size() != values_.size()) {
      throw DimensionError("CsrMatrix: row_ptr[rows] != nnz");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (row_ptr_[r] > row_ptr_[r + 1]) throw DomainError("CsrMatrix: row_ptr decreasing");
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
        if (col_idx_[k] >= cols_) throw DimensionError("CsrMatrix: column index out of range");
        if (k > row_ptr_[r] && col_idx_[k] <= col_idx_[k - 1]) {
          throw DomainError("CsrMatrix: column indices not strictly increasing");
        }
        if (!std::isfinite(values_[k])) throw DomainError("CsrMatrix: non-finite value");
      }
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<Index> col_idx_;
  std::vector<double> values_;
};

inline CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                          std::vector<Triplet> triplets) {
  std::vector<std::size_t> count(rows + 1, 0);
  for (const auto& t : triplets) {
    if (t.row >= rows || t.col >= cols) {
      throw DimensionError("CsrMatrix::from_triplets: entry outside matrix shape");
    }
    ++count[t.row + 1];
  }
  for (std::size_t r = 0; r < rows; ++r) count[r + 1] += count[r];

  // counting sort by row, then sort each row by column and merge duplicates
  std::vector<Index> idx(triplets.size());
  std::vector<double> val(triplets.size());
  {
    std::vector<std::size_t> cursor(count.begin(), count.end() - 1);
    for (const auto& t : triplets) {
      const std::size_t pos = cursor[t.row]++;
      idx[pos] = t.col;
      val[pos] = t.value;
    }
  }
  std::vector<std::size_t> ptr(rows + 1, 0);
  std::vector<Index> out_idx;
  std::vector<double> out_val;
  out_idx.reserve(idx.size());
  out_val.reserve(val.size());
  std::vector<std::pair<Index, double>> scratch;
  for (std::size_t r = 0; r < rows; ++r) {
    scratch.clear();
    for (std::size_t k = count[r]; k < count[r + 1]; ++k) scratch.emplace_back(idx[k], val[k]);
    std::stable_sort(scratch.begin(), scratch.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [c, v] : scratch) {
      if (!out_idx.empty() && out_idx.size() > ptr[r] && out_idx.back() == c) {
        out_val.back() += v;
      } else {
        out_idx.push_back(c);
        out_val.push_back(v);
      }
    }
    ptr[r + 1] = out_idx.size();
  }
  return CsrMatrix(rows, cols, std::move(ptr), std::move(out_idx), std::move(out_val));
}

// Row sums of a sparse matrix; D_ii in D^{-1/2} S D^{-1/2}.
struct DegreeVector {
  std::vector<double> degrees;

  static DegreeVector of(const CsrMatrix& s) {
    DegreeVector d{std::vector<double>(s.rows(), 0.0)};
    for (std::size_t r = 0; r < s.rows(); ++r) {
      double sum = 0.0;
      for (double v : s.row_values(r)) sum += v;
      d.degrees[r] = sum;
    }
    return d;
  }

  std::size_t size() const { return degrees.size(); }
  double operator[](std::size_t i) const { return degrees[i]; }
};

}  // namespace freedom
