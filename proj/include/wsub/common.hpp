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

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace wsub {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Shared accuracy of every inner maximization. Monotonicity of the set
// function only holds up to this value.
inline constexpr double kSolverTolerance = 1e-8;

// Additive slack carried by every bound inequality check.
inline constexpr double kBoundSlack = 1e-6;

// Largest p for which dense Hessians are formed.
inline constexpr Index kMaxDenseHessianDim = 4096;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: dimension mismatch, non-finite values, bad labels, bad
// arguments.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An enumeration or storage guard was exceeded.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// The restricted maximization did not reach the gradient tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double final_grad_norm)
      : Error(what), final_grad_norm_(final_grad_norm) {}
  double final_grad_norm() const { return final_grad_norm_; }

 private:
  double final_grad_norm_;
};

// Unregularized logistic iterate diverged (linearly separable support).
class SeparationError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Submodularity ratio with a vanishing denominator.
class UndefinedRatio : public Error {
 public:
  using Error::Error;
};

}  // namespace wsub
