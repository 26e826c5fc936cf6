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

#include "freedom/spectral/spectral.hpp"
#include "test_util.hpp"

namespace freedom {
namespace {

std::vector<FeatureMatrix> random_nonneg_features(std::size_t n, Rng& rng) {
  return {{Modality::visual, testing::random_dense(n, 8, rng, 0.0, 1.0)},
          {Modality::textual, testing::random_dense(n, 5, rng, 0.0, 1.0)}};
}

void expect_same(const MatrixSpectrum& a, const MatrixSpectrum& b) {
  EXPECT_NEAR(a.lambda_max, b.lambda_max, 1e-12);
  EXPECT_NEAR(a.max_elem, b.max_elem, 1e-15);
  EXPECT_NEAR(a.row_sum_max, b.row_sum_max, 1e-15);
  EXPECT_NEAR(a.n_max_elem, b.n_max_elem, 1e-13);
  EXPECT_EQ(a.converged, b.converged);
}

TEST(SpectralReport, IdenticalRowsMakeBothVariantsEqual) {
  DenseMatrix x(12, 3);
  for (std::size_t r = 0; r < 12; ++r) x.row(r)[0] = x.row(r)[1] = x.row(r)[2] = 0.5;
  const SpectralReport r =
      spectral_report({{Modality::visual, x}, {Modality::textual, x}}, 4, 0.1);
  expect_same(r.frozen, r.weighted);
  for (const auto& [m, ms] : r.per_modality) expect_same(ms.frozen, ms.weighted);
}

TEST(SpectralReport, BoundChainHolds) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 20 + rng.below(60);
    const SpectralReport r = spectral_report(random_nonneg_features(n, rng), 10, 0.1);
    for (const MatrixSpectrum* s : {&r.frozen, &r.weighted}) {
      EXPECT_TRUE(s->converged);
      EXPECT_LE(s->lambda_max, s->row_sum_max + 1e-8);
      EXPECT_LE(s->row_sum_max, s->n_max_elem + 1e-8);
    }
  }
}

TEST(SpectralReport, FrozenMaxElementIsInverseMinimumDegree) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralReport r = spectral_report(random_nonneg_features(40, rng), 10, 0.1);
    for (const auto& [m, ms] : r.per_modality) {
      EXPECT_NEAR(ms.frozen.max_elem, 1.0 / ms.min_degree_frozen, 1e-15);
      EXPECT_LE(ms.frozen.max_elem, ms.weighted.max_elem + 1e-15);
    }
    EXPECT_LE(r.frozen.max_elem, r.weighted.max_elem + 1e-15);
  }
}

TEST(SpectralReport, PowerIterationAgreesWithDenseSolver) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const SpectralReport r = spectral_report(random_nonneg_features(60, rng), 10, 0.1);
    for (const MatrixSpectrum* s : {&r.frozen, &r.weighted}) {
      ASSERT_TRUE(s->dense_lambda.has_value());
      EXPECT_NEAR(s->lambda_max, *s->dense_lambda, 1e-6);
    }
  }
}

TEST(SpectralReport, DenseCheckOnlyForSmallCatalogs) {
  Rng rng(4);
  SpectralOptions opt;
  opt.dense_check_limit = 30;
  const SpectralReport r = spectral_report(random_nonneg_features(31, rng), 5, 0.1, opt);
  EXPECT_FALSE(r.frozen.dense_lambda.has_value());
}

TEST(AnalyzeMatrix, KnownSpectra) {
  // [[2,1],[1,2]] has eigenvalues 3 and 1
  const MatrixSpectrum s = analyze_matrix(CsrMatrix::from_dense(DenseMatrix(2, 2, {2, 1, 1, 2})));
  EXPECT_NEAR(s.lambda_max, 3.0, 1e-8);
  EXPECT_EQ(s.max_elem, 2.0);
  EXPECT_EQ(s.row_sum_max, 3.0);
  EXPECT_EQ(s.n_max_elem, 4.0);
  EXPECT_NEAR(*s.dense_lambda, 3.0, 1e-12);
}

TEST(SpectralReport, JsonAndCsvLayout) {
  Rng rng(5);
  const SpectralReport r = spectral_report(random_nonneg_features(20, rng), 5, 0.1);
  const auto j = to_json(r);
  EXPECT_EQ(j["num_items"], 20);
  EXPECT_EQ(j["k"], 5);
  for (const char* key : {"lambda_max", "max_elem", "row_sum_max", "n_max_elem", "converged"}) {
    EXPECT_TRUE(j["frozen"].contains(key)) << key;
    EXPECT_TRUE(j["weighted"].contains(key)) << key;
  }
  EXPECT_TRUE(j["per_modality"].contains("visual"));
  EXPECT_TRUE(j["per_modality"].contains("textual"));
  const std::string csv = to_csv(r);
  EXPECT_EQ(csv.rfind("model,lambda_max,max_elem,row_sum_max,n_max_elem,converged\nFREEDOM,", 0), 0u);
  EXPECT_NE(csv.find("\nLATTICE,"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

}  // namespace
}  // namespace freedom
