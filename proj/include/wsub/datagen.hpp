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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "wsub/common.hpp"
#include "wsub/dataset.hpp"

namespace wsub {

/// Rows are independent AR(1) sequences across features: x_1 ~ N(0,
/// sigma2 / (1 - alpha^2)), x_{j+1} = alpha x_j + N(0, sigma2). Row i draws
/// from stream i, so output does not depend on the thread count.
Matrix<double> ar1_design(Index n, Index p, double alpha, double sigma2,
                          std::uint64_t seed);

/// k uniformly chosen indices carry independent signs, scaled so that
/// ||beta||^2 = norm2.
ParamVector<double> rademacher_sparse_beta(Index p, Index k, double norm2,
                                           std::uint64_t seed);

/// y_i ~ Bernoulli(sigmoid(<x_i, beta>)) in {0, 1}.
Vector<double> logistic_responses(const Matrix<double>& X,
                                  const ParamVector<double>& beta,
                                  std::uint64_t seed);

/// y = X beta + N(0, sigma_noise^2) noise.
Vector<double> linear_responses(const Matrix<double>& X,
                                const ParamVector<double>& beta,
                                double sigma_noise, std::uint64_t seed);

enum class CovarianceKind { kIdentityPlusOnes, kSpiked };

struct CovarianceModel {
  CovarianceKind kind = CovarianceKind::kIdentityPlusOnes;
  double a = 0.0;  // spiked only

  static CovarianceModel identity_plus_ones() { return {}; }
  static CovarianceModel spiked(double a) { return {CovarianceKind::kSpiked, a}; }
  void validate() const;
};

/// I + 11^T, or (1 - a) I + a 11^T.
Matrix<double> population_covariance(Index p, const CovarianceModel& model);

/// Rows i.i.d. N(0, Sigma) through the closed-form square root of the
/// rank-one update d I + c 11^T.
Matrix<double> gaussian_design(Index n, Index p, const CovarianceModel& model,
                               std::uint64_t seed);

/// Three observations, three unit-norm features and a unit-norm response on
/// which greedy selection is arbitrarily worse than the best pair:
/// y = e_1, x_1 = e_2, x_2 = (z, sqrt(1 - z^2), 0), x_3 = (2z, 0, sqrt(1 - 4z^2)).
Dataset<double> greedy_trap_instance(double z);

enum class SimulationModel { kAr1Logistic, kLinearGaussian, kSpiked };

std::string_view to_string(SimulationModel m);
SimulationModel simulation_model_from_string(std::string_view s);

struct SimulationConfig {
  SimulationModel model = SimulationModel::kAr1Logistic;
  Index n = 600;
  Index p = 200;
  Index k_true = 50;
  double alpha = 0.3;
  double sigma2 = 5.0;
  double beta_norm2 = 5.0;
  double sigma_noise = 1.0;
  double spike = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Simulation {
  Dataset<double> data;
  ParamVector<double> truth;
};

/// Design, coefficients and responses from independent sub-streams of the
/// seed.
Simulation simulate(const SimulationConfig& config);

}  // namespace wsub
