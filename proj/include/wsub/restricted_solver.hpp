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
#include <limits>
#include <string>

#include "wsub/common.hpp"
#include "wsub/dataset.hpp"
#include "wsub/objective.hpp"
#include "wsub/support.hpp"

namespace wsub {

struct SolverConfig {
  double grad_tol = kSolverTolerance;
  int max_iters = 200;
  double ridge_fallback = 1e-10;
  // Unregularized logistic on a support that strictly separates the labels
  // has no maximizer. When set, such a solve returns the supremum l = 0 and
  // the separating iterate instead of throwing SeparationError.
  bool separation_as_supremum = false;

  void validate() const {
    if (!(grad_tol > 0.0)) throw ValidationError("grad_tol must be > 0");
    if (max_iters < 1) throw ValidationError("max_iters must be >= 1");
    if (!(ridge_fallback >= 0.0)) {
      throw ValidationError("ridge_fallback must be >= 0");
    }
  }

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

template <typename Scalar>
struct RestrictedSolution {
  ParamVector<Scalar> beta;
  Scalar value{};      // l(beta)
  Scalar grad_norm{};  // sup-norm of the gradient restricted to the support
  int iterations = 0;
  bool ridge_used = false;         // singular Gram, ridge_fallback added
  bool gradient_fallback = false;  // at least one damped or gradient step
  bool separated = false;          // value is the supremum of a separable fit
};

namespace detail {

template <typename Scalar>
Matrix<Scalar> gather_columns(const Matrix<Scalar>& X, const Support& support) {
  Matrix<Scalar> out(X.rows(), support.size());
  for (Index c = 0; c < support.size(); ++c) out.col(c) = X.col(support[c]);
  return out;
}

template <typename Scalar>
Scalar singular_rcond() {
  return Scalar(100) * std::numeric_limits<Scalar>::epsilon();
}

template <typename Scalar>
RestrictedSolution<Scalar> solve_least_squares(const Dataset<Scalar>& data,
                                               const Support& support,
                                               const SolverConfig& config,
                                               const ObjectiveSpec& spec) {
  const Matrix<Scalar> Xs = gather_columns(data.X(), support);
  const Scalar n = static_cast<Scalar>(data.n());
  Matrix<Scalar> G =
      weighted_gram<Scalar>(Xs, Vector<Scalar>::Ones(data.n()));
  const Vector<Scalar> rhs = Xs.transpose() * data.y() / n;

  RestrictedSolution<Scalar> sol;
  Vector<Scalar> b;
  Eigen::LLT<Matrix<Scalar>> llt(G);
  if (llt.info() == Eigen::Success && llt.rcond() > singular_rcond<Scalar>()) {
    b = llt.solve(rhs);
  } else {
    G.diagonal().array() += Scalar(config.ridge_fallback);
    b = G.ldlt().solve(rhs);
    sol.ridge_used = true;
  }
  const Vector<Scalar> pred = Xs * b;
  const Vector<Scalar> grad = Xs.transpose() * (data.y() - pred) / n;
  sol.value = value_from_predictor<Scalar>(spec, data.y(), pred, b.squaredNorm());
  sol.grad_norm = grad.size() ? grad.template lpNorm<Eigen::Infinity>() : Scalar(0);
  sol.iterations = 1;
  sol.beta = ParamVector<Scalar>::scatter(data.p(), support, b);
  return sol;
}

/// Damped Newton ascent on the |S|-dimensional logistic problem.
template <typename Scalar>
RestrictedSolution<Scalar> solve_logistic(const Dataset<Scalar>& data,
                                          const Support& support,
                                          const SolverConfig& config,
                                          const ObjectiveSpec& spec,
                                          Vector<Scalar> b) {
  using std::abs;
  const Matrix<Scalar> Xs = gather_columns(data.X(), support);
  const Vector<Scalar>& y = data.y();
  const Scalar n = static_cast<Scalar>(data.n());
  const Scalar eta = Scalar(spec.eta);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar lipschitz =
      Xs.colwise().squaredNorm().sum() / (Scalar(4) * n) + eta;

  auto separates = [&](const Vector<Scalar>& pred) {
    return spec.kind == ObjectiveKind::kLogistic &&
           ((y.array() * 2 - 1) * pred.array() > Scalar(0)).all();
  };
  auto evaluate = [&](const Vector<Scalar>& coef, Vector<Scalar>& pred) {
    pred = Xs * coef;
    return value_from_predictor<Scalar>(spec, y, pred, coef.squaredNorm());
  };

  RestrictedSolution<Scalar> sol;
  Vector<Scalar> pred;
  Scalar f = evaluate(b, pred);
  if (!b.isZero()) {
    Vector<Scalar> zero_pred;
    const Vector<Scalar> zero = Vector<Scalar>::Zero(b.size());
    const Scalar f0 = evaluate(zero, zero_pred);
    if (!(f >= f0)) {
      b = zero;
      pred.swap(zero_pred);
      f = f0;
    }
  }
  Vector<Scalar> cand_pred;
  for (int iter = 0;; ++iter) {
    Vector<Scalar> g =
        Xs.transpose() * residual_from_predictor<Scalar>(spec, y, pred) / n;
    if (eta != Scalar(0)) g -= eta * b;
    const Scalar gnorm = g.template lpNorm<Eigen::Infinity>();
    if (!std::isfinite(static_cast<double>(gnorm)) ||
        !std::isfinite(static_cast<double>(f))) {
      throw SolverError("non-finite iterate in restricted solve",
                        static_cast<double>(gnorm));
    }
    // An iterate that classifies every observation correctly shows the
    // likelihood rises to 0 along b without attaining it.
    if (separates(pred)) {
      if (!config.separation_as_supremum) {
        throw SeparationError(
            "logistic maximizer does not exist: support separates the labels",
            static_cast<double>(gnorm));
      }
      sol.separated = true;
      sol.value = Scalar(0);
      sol.grad_norm = gnorm;
      sol.iterations = iter;
      break;
    }
    if (gnorm <= Scalar(config.grad_tol)) {
      sol.value = f;
      sol.grad_norm = gnorm;
      sol.iterations = iter;
      break;
    }
    if (iter >= config.max_iters) {
      throw SolverError("restricted solve did not converge after " +
                            std::to_string(config.max_iters) +
                            " iterations (gradient norm " +
                            std::to_string(static_cast<double>(gnorm)) + ")",
                        static_cast<double>(gnorm));
    }

    Matrix<Scalar> H =
        weighted_gram<Scalar>(Xs, curvature_weights<Scalar>(spec, pred));
    H.diagonal().array() += eta;
    Vector<Scalar> d;
    Eigen::LLT<Matrix<Scalar>> llt(H);
    if (llt.info() == Eigen::Success && llt.rcond() > singular_rcond<Scalar>()) {
      d = llt.solve(g);
    } else {
      // Damped Newton: raise the diagonal shift until the factorization is
      // well conditioned; a shift beyond the Lipschitz scale is a gradient step.
      d = g / lipschitz;
      for (Scalar mu = lipschitz * Scalar(1e-10); mu < lipschitz; mu *= Scalar(100)) {
        Matrix<Scalar> shifted = H;
        shifted.diagonal().array() += mu;
        llt.compute(shifted);
        if (llt.info() == Eigen::Success && llt.rcond() > singular_rcond<Scalar>()) {
          d = llt.solve(g);
          break;
        }
      }
      sol.gradient_fallback = true;
    }

    // Armijo backtracking by halving. The rounding allowance lets the final
    // Newton steps through when the achievable increase is below precision.
    const Scalar slope = g.dot(d);
    const Scalar allowance = Scalar(64) * eps * (Scalar(1) + abs(f));
    Scalar t(1);
    bool accepted = false;
    Vector<Scalar> cand;
    for (int halvings = 0; halvings < 60; ++halvings, t /= Scalar(2)) {
      cand = b + t * d;
      const Scalar fc = evaluate(cand, cand_pred);
      if (fc >= f + Scalar(1e-4) * t * slope - allowance) {
        f = fc;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw SolverError("line search failed in restricted solve",
                        static_cast<double>(gnorm));
    }
    b.swap(cand);
    pred.swap(cand_pred);
    if (spec.kind == ObjectiveKind::kLogistic && !config.separation_as_supremum &&
        b.norm() > Scalar(1e6)) {
      throw SeparationError(
          "logistic coefficients diverged (||beta|| > 1e6): support is "
          "linearly separable",
          static_cast<double>(gnorm));
    }
  }
  sol.beta = ParamVector<Scalar>::scatter(data.p(), support, b);
  return sol;
}

template <typename Scalar, typename Derived>
RestrictedSolution<Scalar> maximize_restricted_impl(
    const ObjectiveSpec& spec, const Dataset<Scalar>& data,
    const Support& support, const SolverConfig& config,
    const Eigen::MatrixBase<Derived>& warm_start) {
  check_compatible(spec, data, data.p());
  config.validate();
  support.validate_for(data.p());
  if (support.empty()) {
    RestrictedSolution<Scalar> sol;
    sol.beta = ParamVector<Scalar>::zeros(data.p());
    sol.value = value(spec, data, sol.beta.beta());
    return sol;
  }
  if (spec.kind == ObjectiveKind::kLeastSquares) {
    return solve_least_squares(data, support, config, spec);
  }
  Vector<Scalar> b(support.size());
  for (Index c = 0; c < support.size(); ++c) b[c] = warm_start[support[c]];
  return solve_logistic(data, support, config, spec, std::move(b));
}

}  // namespace detail

/// Maximizes l over vectors supported inside `support`, cold start at 0.
template <typename Scalar>
RestrictedSolution<Scalar> maximize_restricted(const ObjectiveSpec& spec,
                                               const Dataset<Scalar>& data,
                                               const Support& support,
                                               const SolverConfig& config = {}) {
  return detail::maximize_restricted_impl(spec, data, support, config,
                                          Vector<Scalar>::Zero(data.p()));
}

/// Same, with a length-p initial point; entries off the support are ignored.
template <typename Scalar, typename Derived>
RestrictedSolution<Scalar> maximize_restricted(
    const ObjectiveSpec& spec, const Dataset<Scalar>& data,
    const Support& support, const SolverConfig& config,
    const Eigen::MatrixBase<Derived>& warm_start) {
  if (warm_start.size() != data.p()) {
    throw ValidationError("warm start must have length p");
  }
  return detail::maximize_restricted_impl(spec, data, support, config,
                                          warm_start);
}

/// The normalized set function f(S) = max_{supp(b) in S u F} l(b) - l(b^F),
/// where F is a set of forced indices that belong to every support (empty
/// unless a bias column is in use). With F empty this is
/// max_{supp(b) in S} l(b) - l(0).
///
/// Holds a reference to the dataset; the dataset must outlive it.
template <typename Scalar>
class SetFunction {
 public:
  SetFunction(ObjectiveSpec spec, const Dataset<Scalar>& data,
              SolverConfig config = {}, Support forced = {})
      : spec_(spec), data_(&data), config_(config), forced_(std::move(forced)) {
    spec_.validate();
    config_.validate();
    forced_.validate_for(data.p());
    detail::check_compatible(spec_, data, data.p());
    const auto base = maximize_restricted(spec_, data, forced_, config_);
    baseline_ = base.value;
    baseline_beta_ = base.beta;
  }

  const ObjectiveSpec& spec() const { return spec_; }
  const Dataset<Scalar>& data() const { return *data_; }
  const SolverConfig& config() const { return config_; }
  const Support& forced() const { return forced_; }
  Index p() const { return data_->p(); }

  /// l at the optimum over the forced indices alone.
  Scalar baseline() const { return baseline_; }
  const ParamVector<Scalar>& baseline_beta() const { return baseline_beta_; }

  /// Restricted optimum over S u F.
  RestrictedSolution<Scalar> solve(const Support& S) const {
    return maximize_restricted(spec_, *data_, S.unite(forced_), config_);
  }

  template <typename Derived>
  RestrictedSolution<Scalar> solve(const Support& S,
                                   const Eigen::MatrixBase<Derived>& warm) const {
    return maximize_restricted(spec_, *data_, S.unite(forced_), config_, warm);
  }

  /// f(S); exactly 0 when S adds nothing beyond the forced indices.
  Scalar operator()(const Support& S) const {
    if (S.minus(forced_).empty()) return Scalar(0);
    return solve(S).value - baseline_;
  }

  /// Normalized value of a solution returned by solve().
  Scalar gain(const RestrictedSolution<Scalar>& sol) const {
    if (sol.beta.support().minus(forced_).empty()) return Scalar(0);
    return sol.value - baseline_;
  }

 private:
  ObjectiveSpec spec_;
  const Dataset<Scalar>* data_;
  SolverConfig config_;
  Support forced_;
  Scalar baseline_{};
  ParamVector<Scalar> baseline_beta_;
};

/// f(S) = max_{supp(b) in S} l(b) - l(0).
template <typename Scalar>
Scalar set_function_value(const ObjectiveSpec& spec, const Dataset<Scalar>& data,
                          const Support& support,
                          const SolverConfig& config = {}) {
  support.validate_for(data.p());
  if (support.empty()) return Scalar(0);
  const auto full = maximize_restricted(spec, data, support, config);
  const auto empty = maximize_restricted(spec, data, Support{}, config);
  return full.value - empty.value;
}

/// R^2 of a least-squares set-function value: f(S) / ((1/2n)||y||^2).
template <typename Scalar>
Scalar r_squared(const Dataset<Scalar>& data, Scalar f_value) {
  const Scalar null_loss =
      data.y().squaredNorm() / (Scalar(2) * static_cast<Scalar>(data.n()));
  return f_value / null_loss;
}

}  // namespace wsub
