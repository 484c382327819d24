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

#include <string>
#include <string_view>
#include <utility>

#include "wsub/common.hpp"
#include "wsub/support.hpp"

namespace wsub {

enum class LabelEncoding { kReal, kBinary01 };

inline std::string_view to_string(LabelEncoding e) {
  return e == LabelEncoding::kReal ? "real" : "binary01";
}

/// Design matrix (rows are observations) and response. Immutable once
/// validated.
template <typename Scalar>
class Dataset {
 public:
  /// Checks dimensions, finiteness and, for binary01, that every label is 0
  /// or 1.
  static Dataset validate(Matrix<Scalar> X, Vector<Scalar> y,
                          LabelEncoding encoding) {
    if (X.rows() < 1 || X.cols() < 1) {
      throw ValidationError("dataset needs n >= 1 and p >= 1");
    }
    if (X.rows() != y.size()) {
      throw ValidationError("dimension mismatch: X has " +
                            std::to_string(X.rows()) + " rows, y has " +
                            std::to_string(y.size()) + " entries");
    }
    if (!X.allFinite() || !y.allFinite()) {
      throw ValidationError("non-finite entry");
    }
    if (encoding == LabelEncoding::kBinary01) {
      for (Index i = 0; i < y.size(); ++i) {
        if (y[i] != Scalar(0) && y[i] != Scalar(1)) {
          throw ValidationError("label outside {0,1}");
        }
      }
    }
    Dataset d;
    d.X_ = std::move(X);
    d.y_ = std::move(y);
    d.encoding_ = encoding;
    return d;
  }

  const Matrix<Scalar>& X() const { return X_; }
  const Vector<Scalar>& y() const { return y_; }
  LabelEncoding encoding() const { return encoding_; }
  Index n() const { return X_.rows(); }
  Index p() const { return X_.cols(); }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.encoding_ == b.encoding_ && a.X_.rows() == b.X_.rows() &&
           a.X_.cols() == b.X_.cols() && a.X_ == b.X_ && a.y_ == b.y_;
  }

 private:
  Dataset() = default;

  Matrix<Scalar> X_;
  Vector<Scalar> y_;
  LabelEncoding encoding_ = LabelEncoding::kReal;
};

template <typename Scalar>
Dataset<Scalar> validate_dataset(Matrix<Scalar> raw_X, Vector<Scalar> raw_y,
                                 LabelEncoding encoding) {
  return Dataset<Scalar>::validate(std::move(raw_X), std::move(raw_y),
                                   encoding);
}

/// Appends a column of ones as feature index p.
template <typename Scalar>
Dataset<Scalar> with_bias_column(const Dataset<Scalar>& data) {
  Matrix<Scalar> X(data.n(), data.p() + 1);
  X.leftCols(data.p()) = data.X();
  X.col(data.p()).setOnes();
  return Dataset<Scalar>::validate(std::move(X), data.y(), data.encoding());
}

/// Coefficient vector of length p whose nonzeros lie inside a support.
template <typename Scalar>
class ParamVector {
 public:
  ParamVector() = default;

  ParamVector(Vector<Scalar> beta, Support support)
      : beta_(std::move(beta)), support_(std::move(support)) {
    support_.validate_for(beta_.size());
    for (Index j = 0; j < beta_.size(); ++j) {
      if (beta_[j] != Scalar(0) && !support_.contains(j)) {
        throw ValidationError("coefficient " + std::to_string(j) +
                              " is nonzero outside the support");
      }
    }
  }

  static ParamVector zeros(Index p) {
    return ParamVector(Vector<Scalar>::Zero(p), Support{});
  }

  /// Scatters restricted coefficients (ordered as the support) into a
  /// length-p vector.
  template <typename Derived>
  static ParamVector scatter(Index p, Support support,
                             const Eigen::MatrixBase<Derived>& restricted) {
    Vector<Scalar> beta = Vector<Scalar>::Zero(p);
    for (Index c = 0; c < support.size(); ++c) beta[support[c]] = restricted[c];
    return ParamVector(std::move(beta), std::move(support));
  }

  const Vector<Scalar>& beta() const { return beta_; }
  const Support& support() const { return support_; }
  Index size() const { return beta_.size(); }

  /// Coefficients on the support, in support order.
  Vector<Scalar> restricted() const {
    Vector<Scalar> out(support_.size());
    for (Index c = 0; c < support_.size(); ++c) out[c] = beta_[support_[c]];
    return out;
  }

  Index nonzeros() const {
    Index count = 0;
    for (Index j = 0; j < beta_.size(); ++j) count += beta_[j] != Scalar(0);
    return count;
  }

  friend bool operator==(const ParamVector& a, const ParamVector& b) {
    return a.support_ == b.support_ && a.beta_.size() == b.beta_.size() &&
           a.beta_ == b.beta_;
  }

 private:
  Vector<Scalar> beta_;
  Support support_;
};

}  // namespace wsub
