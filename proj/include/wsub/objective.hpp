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

#include <cmath>
#include <string>
#include <string_view>

#include "wsub/common.hpp"
#include "wsub/dataset.hpp"

namespace wsub {

enum class ObjectiveKind { kLeastSquares, kLogistic, kLogisticL2 };

inline std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kLeastSquares: return "least_squares";
    case ObjectiveKind::kLogistic: return "logistic";
    case ObjectiveKind::kLogisticL2: return "logistic_l2";
  }
  return "unknown";
}

/// Accepts the schema names (least_squares, logistic, logistic_l2) and the
/// CLI short forms (ls, logistic, logistic-l2).
inline ObjectiveKind objective_kind_from_string(std::string_view s) {
  if (s == "least_squares" || s == "ls") return ObjectiveKind::kLeastSquares;
  if (s == "logistic") return ObjectiveKind::kLogistic;
  if (s == "logistic_l2" || s == "logistic-l2") return ObjectiveKind::kLogisticL2;
  throw ValidationError("unknown objective kind '" + std::string(s) + "'");
}

inline bool is_logistic(ObjectiveKind kind) {
  return kind == ObjectiveKind::kLogistic || kind == ObjectiveKind::kLogisticL2;
}

/// Which concave objective is maximized. All objectives are averaged over
/// the n observations.
struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::kLeastSquares;
  double eta = 0.0;  // l2 weight, logistic_l2 only
  bool normalize_by_n = true;

  static ObjectiveSpec least_squares() { return {ObjectiveKind::kLeastSquares}; }
  static ObjectiveSpec logistic() { return {ObjectiveKind::kLogistic}; }
  static ObjectiveSpec logistic_l2(double eta) {
    ObjectiveSpec s{ObjectiveKind::kLogisticL2, eta};
    s.validate();
    return s;
  }

  void validate() const {
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
      throw ValidationError("eta must be finite and >= 0");
    }
    if (kind != ObjectiveKind::kLogisticL2 && eta != 0.0) {
      throw ValidationError("eta must be 0 unless the objective is logistic_l2");
    }
    if (!normalize_by_n) {
      throw ValidationError("objectives are always normalized by n");
    }
  }

  friend bool operator==(const ObjectiveSpec&, const ObjectiveSpec&) = default;
};

namespace detail {

/// log(1 + e^t) without overflow.
template <typename Scalar>
Scalar log1pexp(Scalar t) {
  using std::exp;
  using std::log1p;
  return t > Scalar(0) ? t + log1p(exp(-t)) : log1p(exp(t));
}

template <typename Scalar>
Scalar sigmoid(Scalar t) {
  using std::exp;
  if (t >= Scalar(0)) return Scalar(1) / (Scalar(1) + exp(-t));
  const Scalar e = exp(t);
  return e / (Scalar(1) + e);
}

/// sigma(t) * (1 - sigma(t)), evaluated without cancellation.
template <typename Scalar>
Scalar sigmoid_derivative(Scalar t) {
  using std::abs;
  using std::exp;
  const Scalar e = exp(-abs(t));
  return e / ((Scalar(1) + e) * (Scalar(1) + e));
}

template <typename Scalar>
void check_compatible(const ObjectiveSpec& spec, const Dataset<Scalar>& data,
                      Index beta_size) {
  spec.validate();
  if (beta_size != data.p()) {
    throw ValidationError("dimension mismatch: beta has " +
                          std::to_string(beta_size) + " entries, p=" +
                          std::to_string(data.p()));
  }
  if (is_logistic(spec.kind) && data.encoding() != LabelEncoding::kBinary01) {
    throw ValidationError("logistic objectives need binary01 labels");
  }
}

/// Objective value from the linear predictor Xb and ||b||^2.
template <typename Scalar, typename PredDerived>
Scalar value_from_predictor(const ObjectiveSpec& spec, const Vector<Scalar>& y,
                            const Eigen::MatrixBase<PredDerived>& predictor,
                            Scalar beta_sqnorm) {
  const Scalar n = static_cast<Scalar>(y.size());
  if (spec.kind == ObjectiveKind::kLeastSquares) {
    return -(predictor - y).squaredNorm() / (Scalar(2) * n);
  }
  Scalar sum(0);
  for (Index i = 0; i < y.size(); ++i) {
    sum += y[i] * predictor[i] - log1pexp<Scalar>(predictor[i]);
  }
  return sum / n - Scalar(spec.eta) / Scalar(2) * beta_sqnorm;
}

/// y - E[y | predictor]: the per-observation residual driving the gradient.
template <typename Scalar, typename PredDerived>
Vector<Scalar> residual_from_predictor(
    const ObjectiveSpec& spec, const Vector<Scalar>& y,
    const Eigen::MatrixBase<PredDerived>& predictor) {
  if (spec.kind == ObjectiveKind::kLeastSquares) return y - predictor;
  Vector<Scalar> r(y.size());
  for (Index i = 0; i < y.size(); ++i) r[i] = y[i] - sigmoid<Scalar>(predictor[i]);
  return r;
}

/// Per-observation curvature weights D_ii.
template <typename Scalar, typename PredDerived>
Vector<Scalar> curvature_weights(const ObjectiveSpec& spec,
                                 const Eigen::MatrixBase<PredDerived>& predictor) {
  if (spec.kind == ObjectiveKind::kLeastSquares) {
    return Vector<Scalar>::Ones(predictor.size());
  }
  Vector<Scalar> w(predictor.size());
  for (Index i = 0; i < predictor.size(); ++i) {
    w[i] = sigmoid_derivative<Scalar>(predictor[i]);
  }
  return w;
}

/// (1/n) A^T diag(w) A, symmetric by construction.
template <typename Scalar, typename ADerived>
Matrix<Scalar> weighted_gram(const Eigen::MatrixBase<ADerived>& A,
                             const Vector<Scalar>& w) {
  const Scalar n = static_cast<Scalar>(A.rows());
  Matrix<Scalar> weighted = w.cwiseSqrt().asDiagonal() * A;
  Matrix<Scalar> G = Matrix<Scalar>::Zero(A.cols(), A.cols());
  G.template selfadjointView<Eigen::Lower>().rankUpdate(weighted.transpose(),
                                                        Scalar(1) / n);
  G.template triangularView<Eigen::StrictlyUpper>() = G.transpose();
  return G;
}

}  // namespace detail

/// l(beta). Least squares: -(1/2n)||X beta - y||^2. Logistic:
/// (1/n) sum [y_i <x_i, beta> - log(1 + exp <x_i, beta>)] - (eta/2)||beta||^2.
template <typename Scalar, typename Derived>
Scalar value(const ObjectiveSpec& spec, const Dataset<Scalar>& data,
             const Eigen::MatrixBase<Derived>& beta) {
  detail::check_compatible(spec, data, beta.size());
  const Vector<Scalar> b = beta;
  return detail::value_from_predictor<Scalar>(spec, data.y(), data.X() * b,
                                              b.squaredNorm());
}

template <typename Scalar>
Scalar value(const ObjectiveSpec& spec, const Dataset<Scalar>& data,
             const ParamVector<Scalar>& beta) {
  return value(spec, data, beta.beta());
}

/// Analytic gradient of value().
template <typename Scalar, typename Derived>
Vector<Scalar> gradient(const ObjectiveSpec& spec, const Dataset<Scalar>& data,
                        const Eigen::MatrixBase<Derived>& beta) {
  detail::check_compatible(spec, data, beta.size());
  const Vector<Scalar> b = beta;
  const Vector<Scalar> r =
      detail::residual_from_predictor<Scalar>(spec, data.y(), data.X() * b);
  Vector<Scalar> g = data.X().transpose() * r / static_cast<Scalar>(data.n());
  if (spec.eta != 0.0) g -= Scalar(spec.eta) * b;
  return g;
}

template <typename Scalar>
Vector<Scalar> gradient(const ObjectiveSpec& spec, const Dataset<Scalar>& data,
                        const ParamVector<Scalar>& beta) {
  return gradient(spec, data, beta.beta());
}

/// Dense Hessian -(1/n) X^T D X - eta I; negative semidefinite and exactly
/// symmetric.
template <typename Scalar, typename Derived>
Matrix<Scalar> hessian(const ObjectiveSpec& spec, const Dataset<Scalar>& data,
                       const Eigen::MatrixBase<Derived>& beta) {
  detail::check_compatible(spec, data, beta.size());
  if (data.p() > kMaxDenseHessianDim) {
    throw GuardExceeded("dense Hessian limited to p <= " +
                        std::to_string(kMaxDenseHessianDim));
  }
  const Vector<Scalar> b = beta;
  const Vector<Scalar> w =
      detail::curvature_weights<Scalar>(spec, data.X() * b);
  Matrix<Scalar> H = -detail::weighted_gram<Scalar>(data.X(), w);
  H.diagonal().array() -= Scalar(spec.eta);
  return H;
}

template <typename Scalar>
Matrix<Scalar> hessian(const ObjectiveSpec& spec, const Dataset<Scalar>& data,
                       const ParamVector<Scalar>& beta) {
  return hessian(spec, data, beta.beta());
}

}  // namespace wsub
