// Copyright 2026 The gchar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gchar/analysis.hpp"
#include "gchar/channels.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace gchar {
namespace {

using Subset = std::vector<int>;

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

Matrix linear_cluster(int m) {
  Matrix g = Matrix::Zero(m, m);
  for (int k = 0; k + 1 < m; ++k) g(k, k + 1) = g(k + 1, k) = 1.0;
  return g;
}

TEST(ConjugatePairs, PairsOppositeEnds) {
  const auto p = conjugate_pairs(16);
  ASSERT_EQ(p.size(), 8u);
  EXPECT_EQ(p[0], std::make_pair(0, 15));
  EXPECT_EQ(p[7], std::make_pair(7, 8));
  EXPECT_THROW(conjugate_pairs(3), DimensionError);
}

TEST(TwoModeSqueezer, Examples) {
  EXPECT_LT(max_diff(two_mode_squeezer(0.0, 0, 1, 2).amp(), Matrix::Identity(4, 4)), 1e-15);
  const auto ch = two_mode_squeezer(0.5, 0, 1, 2);
  EXPECT_NEAR(ch.amp()(0, 1), 0.5211, 1e-4);
  EXPECT_NEAR(ch.amp()(2, 3), -0.5211, 1e-4);
  EXPECT_NEAR(ch.amp()(0, 0), std::cosh(0.5), 1e-15);
  EXPECT_NEAR(physicality_margin(ch), 0.0, 1e-10);
  const Matrix v = apply_channel(ch, vacuum_state(2)).cov();
  EXPECT_NEAR(ppt_min_eigenvalue(v, Subset{1}), std::exp(-1.0) - 1.0, 1e-10);
  EXPECT_NEAR(ppt_min_eigenvalue(v, Subset{1}), -0.632, 1e-3);
}

TEST(TwoModeSqueezer, Errors) {
  EXPECT_THROW(two_mode_squeezer(0.5, 0, 0, 2), DimensionError);
  EXPECT_THROW(two_mode_squeezer(0.5, 0, 2, 2), DimensionError);
  EXPECT_THROW(two_mode_squeezer(0.5, -1, 1, 2), DimensionError);
}

TEST(SingleModeSqueezer, IsSymplectic) {
  const auto ch = single_mode_squeezer(0.3, 1, 3);
  EXPECT_NEAR(ch.amp()(1, 1), std::exp(0.3), 1e-15);
  EXPECT_NEAR(ch.amp()(4, 4), std::exp(-0.3), 1e-15);
  EXPECT_NEAR(physicality_margin(ch), 0.0, 1e-10);
}

TEST(DfgArray, SixteenModeSignPattern) {
  const double r = 0.4;
  const auto ch = dfg_array(uniform_dfg(16, r));
  const Matrix& a = ch.amp();
  for (int m = 0; m < 16; ++m) {
    const int c = 15 - m;
    EXPECT_NEAR(a(m, c), std::sinh(r), 1e-14);
    EXPECT_NEAR(a(16 + m, 16 + c), -std::sinh(r), 1e-14);
    EXPECT_NEAR(a(m, m), std::cosh(r), 1e-14);
  }
  EXPECT_NEAR(physicality_margin(ch), 0.0, 1e-10);
  const auto st = apply_channel(ch, vacuum_state(16));
  for (int m = 0; m < 8; ++m) {
    EXPECT_GT(st.cov()(m, 15 - m), 0.0);
    EXPECT_LT(st.cov()(16 + m, 31 - m), 0.0);
  }
  for (double e : pair_ppt_eigenvalues(st)) EXPECT_NEAR(e, std::exp(-2 * r) - 1.0, 1e-10);
}

TEST(DfgArray, TwoModesReducesToSqueezer) {
  EXPECT_LT(max_diff(dfg_array(uniform_dfg(2, 0.3)).amp(), two_mode_squeezer(0.3, 0, 1, 2).amp()),
            1e-15);
  EXPECT_THROW(dfg_array(DfgSpec{3, {0.1}}), DimensionError);
  EXPECT_THROW(dfg_array(DfgSpec{4, {0.1}}), DimensionError);
}

TEST(LossChannel, Examples) {
  const auto id = loss_channel({{1.0, 1.0}, std::nullopt});
  EXPECT_LT(max_diff(id.amp(), Matrix::Identity(4, 4)), 1e-15);
  EXPECT_LT(id.noise().cwiseAbs().maxCoeff(), 1e-15);
  const auto plain = loss_channel({{1.0, 0.5}, std::nullopt});
  Vector diag(4);
  diag << 0, 0.5, 0, 0.5;
  EXPECT_LT(max_diff(plain.noise(), diag.asDiagonal().toDenseMatrix()), 1e-15);
}

TEST(LossChannel, RotatedBasisHasCorrelatedNoise) {
  const Matrix r = beamsplitter_rotation(M_PI / 4, 0, 1, 2);
  const auto ch = loss_channel({{1.0, 0.5}, r});
  EXPECT_GT(std::abs(ch.noise()(0, 1)), 0.2);
  EXPECT_NEAR(physicality_margin(ch), 0.0, 1e-10);
  const auto eig = noise_eigendecomposition(ch.noise());
  EXPECT_NEAR(eig.values(0), 0.5, 1e-12);
  EXPECT_NEAR(eig.values(1), 0.5, 1e-12);
  EXPECT_NEAR(eig.values(2), 0.0, 1e-12);
  EXPECT_NEAR(eig.values(3), 0.0, 1e-12);
  // The lossy directions are the rotated images of mode 2's x and p.
  Matrix lossy(4, 2);
  lossy << r.col(1), r.col(3);
  const Matrix proj = eig.vectors.leftCols(2).transpose() * lossy;
  EXPECT_NEAR(proj.squaredNorm(), 2.0, 1e-10);
}

TEST(LossChannel, SpectrumIndependentOfRotation) {
  std::mt19937_64 rng(41);
  const std::vector<double> eta = {0.9, 0.6, 0.3};
  for (int t = 0; t < 10; ++t) {
    const Matrix r = passive_rotation(testing::random_unitary(rng, 3));
    const auto eig = noise_eigendecomposition(loss_channel({eta, r}).noise());
    const std::vector<double> expect = {0.7, 0.7, 0.4, 0.4, 0.1, 0.1};
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(eig.values(k), expect[k], 1e-10);
  }
}

TEST(LossChannel, Errors) {
  EXPECT_THROW(loss_channel({{1.2}, std::nullopt}), ParameterError);
  EXPECT_THROW(loss_channel({{-0.1}, std::nullopt}), ParameterError);
  EXPECT_THROW(loss_channel({{0.5}, Matrix::Identity(4, 4)}), DimensionError);
  Matrix sq = Matrix::Identity(2, 2);
  sq(0, 0) = 2.0;
  sq(1, 1) = 0.5;
  EXPECT_THROW(loss_channel({{0.5}, sq}), ParameterError);
}

TEST(ClusterChannel, EmptyGraphIsIdentity) {
  const auto ch = cluster_channel({Matrix::Zero(3, 3), 0.0});
  EXPECT_LT(max_diff(ch.amp(), Matrix::Identity(6, 6)), 1e-15);
}

TEST(ClusterChannel, TwoNodeNullifierDecreasesWithSqueeze) {
  const Matrix g = linear_cluster(2);
  double prev = 1e9;
  for (double r : {0.0, 0.3, 0.6, 1.0, 1.5}) {
    const auto ch = cluster_channel({g, r});
    EXPECT_NEAR(physicality_margin(ch), 0.0, 1e-9);
    const Vector null = nullifier_variances(apply_channel(ch, vacuum_state(2)).cov(), g);
    EXPECT_LT(null(0), prev);
    prev = null(0);
  }
}

TEST(ClusterChannel, LinearClusterNullifiersEqualAndSqueezed) {
  const Matrix g = linear_cluster(4);
  const Vector null = nullifier_variances(apply_channel(cluster_channel({g, 0.5}), vacuum_state(4)).cov(), g);
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(null(k), null(0), 1e-12);
    EXPECT_LT(null(k), 1.0);
  }
}

TEST(ClusterChannel, Errors) {
  Matrix bad = linear_cluster(3);
  bad(0, 1) = 0.5;
  EXPECT_THROW(cluster_channel({bad, 0.1}), ParameterError);
  Matrix diag = Matrix::Identity(2, 2);
  EXPECT_THROW(cluster_channel({diag, 0.1}), ParameterError);
}

TEST(QuantumNoiseChannel, ZeroSqueezeIsUniformLoss) {
  const auto qn = quantum_noise_channel(0.4, 0.0, 4);
  const auto loss = loss_channel({{0.4, 0.4, 0.4, 0.4}, std::nullopt});
  EXPECT_LT(max_diff(qn.amp(), loss.amp()), 1e-15);
  EXPECT_LT(max_diff(qn.noise(), loss.noise()), 1e-15);
}

TEST(QuantumNoiseChannel, PhysicalOverGrid) {
  for (double eta = 0.1; eta < 0.95; eta += 0.1) {
    for (double r = 0.0; r <= 1.0001; r += 0.25) {
      EXPECT_GE(physicality_margin(quantum_noise_channel(eta, r, 2)), -1e-9)
          << "eta=" << eta << " r=" << r;
    }
  }
  EXPECT_THROW(quantum_noise_channel(1.5, 0.1, 2), ParameterError);
  EXPECT_THROW(quantum_noise_channel(0.5, -0.1, 2), ParameterError);
}

TEST(QuantumNoiseChannel, CalibratedNegativity) {
  const double s = calibrate_quantum_noise_squeeze(0.1, -0.37);
  const auto out = apply_channel(quantum_noise_channel(0.1, s, 2), vacuum_state(2));
  EXPECT_NEAR(ppt_min_eigenvalue(out.cov(), Subset{1}), -0.37, 1e-8);
  EXPECT_THROW(calibrate_quantum_noise_squeeze(0.1, -0.95), ParameterError);
  EXPECT_THROW(calibrate_quantum_noise_squeeze(0.1, 0.1), ParameterError);
}

TEST(LossyDfgCalibration, MatchesAnalyticForm) {
  const std::vector<double> targets = {-0.27, -0.24};
  const auto r = calibrate_lossy_dfg_squeeze(0.9, targets);
  ASSERT_EQ(r.size(), 2u);
  for (std::size_t k = 0; k < r.size(); ++k) {
    EXPECT_NEAR(0.9 * (std::exp(-2 * r[k]) - 1.0), targets[k], 1e-8);
  }
}

TEST(ClassicalNoise, Examples) {
  EXPECT_LT(classical_noise_channel(Matrix::Zero(2, 2)).noise().cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(physicality_margin(classical_noise_channel(0.2 * Matrix::Identity(4, 4))), 0.2,
              1e-12);
  std::mt19937_64 rng(43);
  const Matrix g = testing::random_gaussian_matrix(rng, 4, 4);
  EXPECT_GE(physicality_margin(classical_noise_channel(g * g.transpose())), -1e-9);
}

TEST(Constructors, LosslessOnesAreSymplectic) {
  EXPECT_NEAR(physicality_margin(dfg_array({6, {0.1, 0.5, 0.9}})), 0.0, 1e-10);
  EXPECT_NEAR(physicality_margin(cluster_channel({linear_cluster(5), 0.7})), 0.0, 1e-9);
  EXPECT_NEAR(physicality_margin(loss_channel({{1, 1, 1}, std::nullopt})), 0.0, 1e-10);
  EXPECT_NEAR(physicality_margin(quantum_noise_channel(1.0, 0.5, 2)), 0.0, 1e-10);
}

}  // namespace
}  // namespace gchar
