// Copyright 2026 The wsub Authors.
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

#include <cmath>

#include "gtest/gtest.h"
#include "wsub/datagen.hpp"
#include "wsub/objective.hpp"
#include "wsub/parallel.hpp"

namespace wsub {
namespace {

double lag1_correlation(const Matrix<double>& X) {
  double num = 0, den = 0;
  for (Index i = 0; i < X.rows(); ++i) {
    for (Index j = 0; j + 1 < X.cols(); ++j) num += X(i, j) * X(i, j + 1);
    for (Index j = 0; j < X.cols(); ++j) den += X(i, j) * X(i, j);
  }
  return num / den * static_cast<double>(X.cols()) / static_cast<double>(X.cols() - 1);
}

TEST(Ar1DesignTest, IndependentWhenAlphaIsZero) {
  const auto X = ar1_design(600, 200, 0.0, 5.0, 1);
  EXPECT_LT(std::abs(lag1_correlation(X)), 0.05);
  EXPECT_NEAR(X.array().square().mean(), 5.0, 0.1);
}

TEST(Ar1DesignTest, LagOneCorrelationMatchesAlpha) {
  for (double sigma2 : {5.0, 1e-4}) {
    const auto X = ar1_design(600, 200, 0.3, sigma2, 2);
    EXPECT_NEAR(lag1_correlation(X), 0.3, 0.02);
    // Stationary marginal variance sigma2 / (1 - alpha^2) in every column.
    const double marginal = sigma2 / (1 - 0.09);
    EXPECT_NEAR(X.col(0).squaredNorm() / 600.0 / marginal, 1.0, 0.15);
    EXPECT_NEAR(X.col(199).squaredNorm() / 600.0 / marginal, 1.0, 0.15);
  }
}

TEST(Ar1DesignTest, DeterministicAndThreadIndependent) {
  set_num_threads(1);
  const auto a = ar1_design(50, 20, 0.3, 5.0, 9);
  set_num_threads(8);
  const auto b = ar1_design(50, 20, 0.3, 5.0, 9);
  set_num_threads(0);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, ar1_design(50, 20, 0.3, 5.0, 10));
  EXPECT_THROW(ar1_design(5, 5, 1.0, 5.0, 0), ValidationError);
  EXPECT_THROW(ar1_design(5, 5, 0.3, 0.0, 0), ValidationError);
}

TEST(RademacherBetaTest, StructureAndScale) {
  const auto b = rademacher_sparse_beta(200, 50, 5.0, 3);
  EXPECT_EQ(b.nonzeros(), 50);
  EXPECT_EQ(b.support().size(), 50);
  EXPECT_NEAR(b.beta().squaredNorm(), 5.0, 1e-12);
  for (Index j : b.support()) EXPECT_NEAR(std::abs(b.beta()[j]), std::sqrt(0.1), 1e-15);
  const auto full = rademacher_sparse_beta(10, 10, 10.0, 4);
  for (Index j = 0; j < 10; ++j) EXPECT_EQ(std::abs(full.beta()[j]), 1.0);
  EXPECT_EQ(b, rademacher_sparse_beta(200, 50, 5.0, 3));
  EXPECT_THROW(rademacher_sparse_beta(5, 6, 1.0, 0), ValidationError);
}

TEST(RademacherBetaTest, SignsAreBalanced) {
  int positive = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto b = rademacher_sparse_beta(100, 50, 5.0, seed);
    for (Index j : b.support()) positive += b.beta()[j] > 0;
  }
  EXPECT_NEAR(positive / 2000.0, 0.5, 0.05);
}

TEST(ResponsesTest, Logistic) {
  const auto X = ar1_design(600, 5, 0.3, 1.0, 5);
  const auto zero = ParamVector<double>::zeros(5);
  const auto y = logistic_responses(X, zero, 6);
  EXPECT_NEAR(y.mean(), 0.5, 0.05);
  for (Index i = 0; i < y.size(); ++i) EXPECT_TRUE(y[i] == 0.0 || y[i] == 1.0);
  EXPECT_EQ(y, logistic_responses(X, zero, 6));
  const Matrix<double> ones = Matrix<double>::Ones(100, 1);
  const ParamVector<double> big(Vector<double>::Constant(1, 20.0), Support{0});
  EXPECT_EQ(logistic_responses(ones, big, 7), Vector<double>::Ones(100));
  EXPECT_THROW(logistic_responses(X, ParamVector<double>::zeros(4), 1), ValidationError);
}

TEST(ResponsesTest, Linear) {
  const auto X = ar1_design(50, 4, 0.0, 1.0, 8);
  const auto b = rademacher_sparse_beta(4, 2, 2.0, 9);
  EXPECT_EQ(linear_responses(X, b, 0.0, 1), X * b.beta());
  const auto noise =
      linear_responses(Matrix<double>::Zero(10000, 1), ParamVector<double>::zeros(1), 2.0, 3);
  const double var = (noise.array() - noise.mean()).square().sum() / 9999.0;
  EXPECT_NEAR(var / 4.0, 1.0, 0.1);
  EXPECT_EQ(noise, linear_responses(Matrix<double>::Zero(10000, 1),
                                    ParamVector<double>::zeros(1), 2.0, 3));
  EXPECT_THROW(linear_responses(X, b, -1.0, 1), ValidationError);
}

TEST(GaussianDesignTest, SampleCovariance) {
  const auto X = gaussian_design(20000, 3, CovarianceModel::identity_plus_ones(), 11);
  const Matrix<double> S = X.transpose() * X / 20000.0;
  const Matrix<double> target = population_covariance(3, CovarianceModel::identity_plus_ones());
  EXPECT_LT((S - target).cwiseAbs().maxCoeff(), 0.1);
  const auto iid = gaussian_design(20000, 3, CovarianceModel::spiked(0.0), 12);
  EXPECT_LT((iid.transpose() * iid / 20000.0 - Matrix<double>::Identity(3, 3))
                .cwiseAbs().maxCoeff(), 0.05);
  const auto spiked = gaussian_design(20000, 4, CovarianceModel::spiked(0.6), 13);
  EXPECT_LT((spiked.transpose() * spiked / 20000.0 -
             population_covariance(4, CovarianceModel::spiked(0.6))).cwiseAbs().maxCoeff(),
            0.1);
  EXPECT_EQ(X, gaussian_design(20000, 3, CovarianceModel::identity_plus_ones(), 11));
  EXPECT_THROW(gaussian_design(5, 3, CovarianceModel::spiked(1.0), 0), ValidationError);
  EXPECT_THROW(gaussian_design(5, 3, CovarianceModel::spiked(-0.1), 0), ValidationError);
}

TEST(GreedyTrapInstanceTest, Geometry) {
  for (double z : {0.05, 0.1, 0.2, 0.49}) {
    const auto d = greedy_trap_instance(z);
    EXPECT_NEAR(d.y().norm(), 1.0, 1e-15);
    for (Index j = 0; j < 3; ++j) EXPECT_NEAR(d.X().col(j).norm(), 1.0, 1e-15);
    EXPECT_NEAR(d.X().col(1).dot(d.X().col(2)), 2 * z * z, 1e-15);
    EXPECT_NEAR(d.X().col(0).dot(d.X().col(1)), std::sqrt(1 - z * z), 1e-15);
    EXPECT_NEAR(d.X().col(0).dot(d.X().col(2)), 0.0, 1e-15);
  }
  EXPECT_THROW(greedy_trap_instance(0.0), ValidationError);
  EXPECT_THROW(greedy_trap_instance(0.5), ValidationError);
}

TEST(SimulateTest, ModelsAndDeterminism) {
  SimulationConfig c;
  c.n = 100;
  c.p = 20;
  c.k_true = 5;
  c.seed = 3;
  const auto a = simulate(c);
  EXPECT_EQ(a.data.encoding(), LabelEncoding::kBinary01);
  EXPECT_EQ(a.truth.nonzeros(), 5);
  EXPECT_EQ(a.data, simulate(c).data);
  c.model = SimulationModel::kLinearGaussian;
  EXPECT_EQ(simulate(c).data.encoding(), LabelEncoding::kReal);
  c.model = SimulationModel::kSpiked;
  c.spike = 0.4;
  EXPECT_EQ(simulate(c).data.p(), 20);
  EXPECT_EQ(simulation_model_from_string("ar1-logistic"), SimulationModel::kAr1Logistic);
  EXPECT_THROW(simulation_model_from_string("rcv1"), ValidationError);
  c.k_true = 30;
  EXPECT_THROW(simulate(c), ValidationError);
}

}  // namespace
}  // namespace wsub
