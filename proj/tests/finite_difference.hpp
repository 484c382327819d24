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

#include <algorithm>
#include <cmath>
#include <random>

#include "wsub/objective.hpp"

namespace wsub::testing {

struct DerivativeErrors {
  double gradient_rel = 0;  // ||g - g_fd|| / max(1, ||g_fd||)
  double hessian_abs = 0;   // max entrywise |H - H_fd|
};

/// Central differences with h = 1e-5 for the gradient (from values) and for
/// the Hessian (from analytic gradients).
inline DerivativeErrors finite_difference_errors(const ObjectiveSpec& spec,
                                                 const Dataset<double>& data,
                                                 const Vector<double>& beta) {
  const double h = 1e-5;
  const Index p = data.p();
  Vector<double> g_fd(p);
  Matrix<double> H_fd(p, p);
  for (Index j = 0; j < p; ++j) {
    Vector<double> up = beta, down = beta;
    up[j] += h;
    down[j] -= h;
    g_fd[j] = (value(spec, data, up) - value(spec, data, down)) / (2 * h);
    H_fd.col(j) = (gradient(spec, data, up) - gradient(spec, data, down)) / (2 * h);
  }
  const Vector<double> g = gradient(spec, data, beta);
  const Matrix<double> H = hessian(spec, data, beta);
  return {(g - g_fd).norm() / std::max(1.0, g_fd.norm()),
          (H - H_fd).cwiseAbs().maxCoeff()};
}

}  // namespace wsub::testing
