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

#include <random>

#include "oracles.hpp"
#include "wsub/dataset.hpp"

namespace wsub::testing {

inline Dataset<double> gaussian_ls(int n, int p, unsigned seed) {
  Matrix<double> X = oracle::gaussian_matrix(n, p, seed);
  Vector<double> y = X.col(0) - 0.5 * X.col(p - 1) +
                     0.3 * oracle::gaussian_vector(n, seed + 1000);
  return Dataset<double>::validate(std::move(X), std::move(y),
                                   LabelEncoding::kReal);
}

/// Labels drawn from a logistic model on the first two features with a
/// modest signal so restricted maximizers exist.
inline Dataset<double> gaussian_logistic(int n, int p, unsigned seed) {
  Matrix<double> X = oracle::gaussian_matrix(n, p, seed);
  std::mt19937_64 gen(seed + 7);
  std::uniform_real_distribution<double> u;
  Vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    const double eta = 0.8 * X(i, 0) - 0.6 * X(i, p > 1 ? 1 : 0);
    y[i] = u(gen) < oracle::sigmoid(eta) ? 1.0 : 0.0;
  }
  return Dataset<double>::validate(std::move(X), std::move(y),
                                   LabelEncoding::kBinary01);
}

}  // namespace wsub::testing
