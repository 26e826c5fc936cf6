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
#include <limits>
#include <cstdint>
#include <vector>

#include "freedom/core/random.hpp"
#include "freedom/core/sparse_ops.hpp"

namespace freedom {

struct EigenEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct PowerIterationOptions {
  double tol = 1e-8;
  std::size_t max_iter = 1000;
  std::uint64_t seed = 0;
};

// Dominant (Perron) eigenvalue of a non-negative square matrix.
//
// Iterates x <- (S + I) x / |(S + I) x| from a seeded positive start vector. The unit
// shift leaves the Perron root dominant while breaking the magnitude tie with
// other peripheral eigenvalues (e.g. -1 for [[0,1],[1,0]]), so periodic matrices
// converge too. The raw estimate is the Rayleigh quotient x'Sx / x'x.
//
// For a non-symmetric S the Rayleigh quotient can land outside [0, rho(S)], so for
// non-negative S it is clamped into the Collatz-Wielandt bracket
//   min_i (Sx)_i / x_i <= rho(S) <= max_i (Sx)_i / x_i       (x > 0)
// further capped by the max row and column sums. Iteration stops once the residual
// |Sx - lambda x| or the width of that bracket drops below tol.
inline EigenEstimate dominant_eigenvalue(const CsrMatrix& s, const PowerIterationOptions& opt = {}) {
  if (s.rows() != s.cols()) throw DimensionError("dominant_eigenvalue: matrix must be square");
  if (!(opt.tol > 0.0)) throw DomainError("dominant_eigenvalue: tol must be positive");
  const std::size_t n = s.rows();
  EigenEstimate est;
  if (n == 0) {
    est.converged = true;
    return est;
  }

  const bool non_negative = s.is_non_negative();
  double norm_cap = max_row_sum(s);
  if (non_negative) {
    std::vector<double> col(n, 0.0);
    for (std::size_t k = 0; k < s.nnz(); ++k) col[s.col_idx()[k]] += s.values()[k];
    norm_cap = std::min(norm_cap, *std::max_element(col.begin(), col.end()));
  }

  Rng rng(opt.seed);
  DenseMatrix x(n, 1);
  for (std::size_t i = 0; i < n; ++i) x(i, 0) = 0.5 + rng.uniform01();
  auto normalize = [](DenseMatrix& v) {
    double norm = 0.0;
    for (double e : v.values()) norm += e * e;
    norm = std::sqrt(norm);
    if (norm > 0.0) v *= 1.0 / norm;
    return norm;
  };
  normalize(x);

  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    DenseMatrix sx = spmm(s, x);
    const auto& xv = x.values();
    const auto& sv = sx.values();
    double lambda = dot(xv, sv);  // |x| == 1
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += (sv[i] - lambda * xv[i]) * (sv[i] - lambda * xv[i]);
    residual = std::sqrt(residual);

    bool bracket_closed = false;
    if (non_negative) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (xv[i] > 0.0) {
          const double r = sv[i] / xv[i];
          lo = std::min(lo, r);
          hi = std::max(hi, r);
        } else {
          hi = std::numeric_limits<double>::infinity();
        }
      }
      hi = std::min(hi, norm_cap);
      lo = std::min(std::max(lo, 0.0), hi);
      lambda = std::clamp(lambda, lo, hi);
      bracket_closed = hi - lo < opt.tol;
    }
    est.value = lambda;
    est.iterations = it;
    if (residual < opt.tol || bracket_closed) {
      est.converged = true;
      return est;
    }
    sx += x;
    if (normalize(sx) == 0.0) {  // nilpotent direction; cannot happen with the shift
      est.converged = true;
      return est;
    }
    x = std::move(sx);
  }
  return est;
}

}  // namespace freedom
