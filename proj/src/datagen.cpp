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

#include "wsub/datagen.hpp"

#include <cmath>
#include <vector>

#include "wsub/objective.hpp"
#include "wsub/parallel.hpp"
#include "wsub/rng.hpp"

namespace wsub {
namespace {

constexpr std::uint64_t kTagAr1 = 0xA1;
constexpr std::uint64_t kTagBeta = 0xB1;
constexpr std::uint64_t kTagLogistic = 0xC1;
constexpr std::uint64_t kTagLinear = 0xC2;
constexpr std::uint64_t kTagGaussian = 0xD1;

void check_shape(Index n, Index p) {
  if (n < 1 || p < 1) throw ValidationError("need n >= 1 and p >= 1");
}

void check_beta(const Matrix<double>& X, const ParamVector<double>& beta) {
  if (beta.size() != X.cols()) {
    throw ValidationError("dimension mismatch: X has " +
                          std::to_string(X.cols()) + " columns, beta has " +
                          std::to_string(beta.size()) + " entries");
  }
}

}  // namespace

Matrix<double> ar1_design(Index n, Index p, double alpha, double sigma2,
                          std::uint64_t seed) {
  check_shape(n, p);
  if (!(std::abs(alpha) < 1.0)) throw ValidationError("AR(1) needs |alpha| < 1");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw ValidationError("AR(1) needs sigma2 > 0");
  }
  const std::uint64_t key = derive_seed(seed, kTagAr1);
  const double innovation = std::sqrt(sigma2);
  const double initial = std::sqrt(sigma2 / (1.0 - alpha * alpha));
  Matrix<double> X(n, p);
  parallel_for(n, [&](Index i) {
    CounterRng rng(key, static_cast<std::uint64_t>(i));
    double x = initial * rng.normal();
    X(i, 0) = x;
    for (Index j = 1; j < p; ++j) {
      x = alpha * x + innovation * rng.normal();
      X(i, j) = x;
    }
  });
  return X;
}

ParamVector<double> rademacher_sparse_beta(Index p, Index k, double norm2,
                                           std::uint64_t seed) {
  if (k < 1 || k > p) throw ValidationError("need 1 <= k <= p");
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw ValidationError("need norm2 > 0");
  }
  CounterRng rng(derive_seed(seed, kTagBeta), 0);
  std::vector<Index> perm(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) perm[static_cast<std::size_t>(j)] = j;
  for (Index j = 0; j < k; ++j) {
    std::swap(perm[static_cast<std::size_t>(j)],
              perm[static_cast<std::size_t>(j + rng.uniform_index(p - j))]);
  }
  const double magnitude = std::sqrt(norm2 / static_cast<double>(k));
  Vector<double> beta = Vector<double>::Zero(p);
  for (Index j = 0; j < k; ++j) {
    beta[perm[static_cast<std::size_t>(j)]] =
        (rng.next_u64() >> 63) ? -magnitude : magnitude;
  }
  return ParamVector<double>(
      std::move(beta),
      Support::from_unordered(std::vector<Index>(perm.begin(), perm.begin() + k)));
}

Vector<double> logistic_responses(const Matrix<double>& X,
                                  const ParamVector<double>& beta,
                                  std::uint64_t seed) {
  check_beta(X, beta);
  const Vector<double> eta = X * beta.beta();
  const std::uint64_t key = derive_seed(seed, kTagLogistic);
  Vector<double> y(X.rows());
  for (Index i = 0; i < X.rows(); ++i) {
    CounterRng rng(key, static_cast<std::uint64_t>(i));
    y[i] = rng.bernoulli(detail::sigmoid(eta[i])) ? 1.0 : 0.0;
  }
  return y;
}

Vector<double> linear_responses(const Matrix<double>& X,
                                const ParamVector<double>& beta,
                                double sigma_noise, std::uint64_t seed) {
  check_beta(X, beta);
  if (!(sigma_noise >= 0.0) || !std::isfinite(sigma_noise)) {
    throw ValidationError("need sigma_noise >= 0");
  }
  Vector<double> y = X * beta.beta();
  if (sigma_noise == 0.0) return y;
  const std::uint64_t key = derive_seed(seed, kTagLinear);
  for (Index i = 0; i < X.rows(); ++i) {
    CounterRng rng(key, static_cast<std::uint64_t>(i));
    y[i] += sigma_noise * rng.normal();
  }
  return y;
}

void CovarianceModel::validate() const {
  if (kind == CovarianceKind::kSpiked && !(a >= 0.0 && a < 1.0)) {
    throw ValidationError("spiked covariance needs 0 <= a < 1");
  }
}

Matrix<double> population_covariance(Index p, const CovarianceModel& model) {
  model.validate();
  if (p < 1) throw ValidationError("need p >= 1");
  if (model.kind == CovarianceKind::kIdentityPlusOnes) {
    return Matrix<double>::Identity(p, p) + Matrix<double>::Ones(p, p);
  }
  return (1.0 - model.a) * Matrix<double>::Identity(p, p) +
         model.a * Matrix<double>::Ones(p, p);
}

Matrix<double> gaussian_design(Index n, Index p, const CovarianceModel& model,
                               std::uint64_t seed) {
  check_shape(n, p);
  model.validate();
  // Sigma = d I + c 11^T has square root sqrt(d) (I + t 11^T) with
  // (1 + t p)^2 = 1 + c p / d.
  const double d = model.kind == CovarianceKind::kSpiked ? 1.0 - model.a : 1.0;
  const double c = model.kind == CovarianceKind::kSpiked ? model.a : 1.0;
  const auto pd = static_cast<double>(p);
  const double t = (std::sqrt(1.0 + c * pd / d) - 1.0) / pd;
  const double scale = std::sqrt(d);
  const std::uint64_t key = derive_seed(seed, kTagGaussian);
  Matrix<double> X(n, p);
  parallel_for(n, [&](Index i) {
    CounterRng rng(key, static_cast<std::uint64_t>(i));
    Vector<double> z(p);
    for (Index j = 0; j < p; ++j) z[j] = rng.normal();
    const double shift = t * z.sum();
    for (Index j = 0; j < p; ++j) X(i, j) = scale * (z[j] + shift);
  });
  return X;
}

Dataset<double> greedy_trap_instance(double z) {
  if (!(z > 0.0 && z < 0.5)) throw ValidationError("need 0 < z < 0.5");
  Matrix<double> X = Matrix<double>::Zero(3, 3);
  X(1, 0) = 1.0;
  X(0, 1) = z;
  X(1, 1) = std::sqrt(1.0 - z * z);
  X(0, 2) = 2.0 * z;
  X(2, 2) = std::sqrt(1.0 - 4.0 * z * z);
  Vector<double> y = Vector<double>::Zero(3);
  y[0] = 1.0;
  return Dataset<double>::validate(std::move(X), std::move(y),
                                   LabelEncoding::kReal);
}

std::string_view to_string(SimulationModel m) {
  switch (m) {
    case SimulationModel::kAr1Logistic: return "ar1-logistic";
    case SimulationModel::kLinearGaussian: return "linear-gaussian";
    case SimulationModel::kSpiked: return "spiked";
  }
  return "unknown";
}

SimulationModel simulation_model_from_string(std::string_view s) {
  if (s == "ar1-logistic") return SimulationModel::kAr1Logistic;
  if (s == "linear-gaussian") return SimulationModel::kLinearGaussian;
  if (s == "spiked") return SimulationModel::kSpiked;
  throw ValidationError("unknown model '" + std::string(s) + "'");
}

void SimulationConfig::validate() const {
  check_shape(n, p);
  if (k_true < 1 || k_true > p) throw ValidationError("need 1 <= k_true <= p");
  if (model == SimulationModel::kAr1Logistic) {
    if (!(std::abs(alpha) < 1.0)) throw ValidationError("need |alpha| < 1");
    if (!(sigma2 > 0.0)) throw ValidationError("need sigma2 > 0");
  }
  if (!(beta_norm2 > 0.0)) throw ValidationError("need beta_norm2 > 0");
  if (!(sigma_noise >= 0.0)) throw ValidationError("need sigma_noise >= 0");
  if (model == SimulationModel::kSpiked) CovarianceModel::spiked(spike).validate();
}

Simulation simulate(const SimulationConfig& config) {
  config.validate();
  const std::uint64_t design_seed = derive_seed(config.seed, 1);
  const std::uint64_t beta_seed = derive_seed(config.seed, 2);
  const std::uint64_t response_seed = derive_seed(config.seed, 3);
  ParamVector<double> truth = rademacher_sparse_beta(
      config.p, config.k_true, config.beta_norm2, beta_seed);
  switch (config.model) {
    case SimulationModel::kAr1Logistic: {
      Matrix<double> X =
          ar1_design(config.n, config.p, config.alpha, config.sigma2, design_seed);
      Vector<double> y = logistic_responses(X, truth, response_seed);
      return {Dataset<double>::validate(std::move(X), std::move(y),
                                        LabelEncoding::kBinary01),
              std::move(truth)};
    }
    case SimulationModel::kLinearGaussian:
    case SimulationModel::kSpiked: {
      const CovarianceModel cov = config.model == SimulationModel::kSpiked
                                      ? CovarianceModel::spiked(config.spike)
                                      : CovarianceModel::identity_plus_ones();
      Matrix<double> X = gaussian_design(config.n, config.p, cov, design_seed);
      Vector<double> y =
          linear_responses(X, truth, config.sigma_noise, response_seed);
      return {Dataset<double>::validate(std::move(X), std::move(y),
                                        LabelEncoding::kReal),
              std::move(truth)};
    }
  }
  throw ValidationError("unknown model");
}

}  // namespace wsub
