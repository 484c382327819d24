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
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wsub/common.hpp"
#include "wsub/dataset.hpp"
#include "wsub/objective.hpp"
#include "wsub/restricted_solver.hpp"
#include "wsub/support.hpp"

namespace wsub {

enum class Algorithm { kOblivious, kForwardStepwise, kOmp, kFoba };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kOblivious: return "oblivious";
    case Algorithm::kForwardStepwise: return "forward_stepwise";
    case Algorithm::kOmp: return "omp";
    case Algorithm::kFoba: return "foba";
  }
  return "unknown";
}

/// Accepts schema names and the CLI short forms (fs).
inline Algorithm algorithm_from_string(std::string_view s) {
  if (s == "oblivious") return Algorithm::kOblivious;
  if (s == "forward_stepwise" || s == "fs") return Algorithm::kForwardStepwise;
  if (s == "omp") return Algorithm::kOmp;
  if (s == "foba") return Algorithm::kFoba;
  throw ValidationError("unknown algorithm '" + std::string(s) + "'");
}

enum class StepAction { kAdd, kDrop };

inline std::string_view to_string(StepAction a) {
  return a == StepAction::kAdd ? "add" : "drop";
}

template <typename Scalar>
struct TraceStep {
  int iteration = 0;  // 1-based
  StepAction action = StepAction::kAdd;
  Index index = -1;   // feature added or dropped
  Support support;    // after the step, forced indices included
  ParamVector<Scalar> beta;
  Scalar f_value{};
  Scalar marginal_gain{};

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

template <typename Scalar>
struct SelectionTrace {
  Algorithm algorithm = Algorithm::kForwardStepwise;
  ObjectiveSpec objective;
  Support forced;
  Index p = 0;
  Index target = 0;  // requested k or r
  std::uint64_t seed = 0;
  std::vector<TraceStep<Scalar>> steps;

  Support final_support() const {
    return steps.empty() ? forced : steps.back().support;
  }
  /// Selected indices excluding forced ones.
  Support final_selection() const { return final_support().minus(forced); }
  Scalar final_value() const {
    return steps.empty() ? Scalar(0) : steps.back().f_value;
  }

  /// Features of the final selection in the order they last entered.
  std::vector<Index> selection_order() const {
    std::vector<Index> order;
    const Support final = final_selection();
    for (const auto& step : steps) {
      if (step.action == StepAction::kAdd) {
        std::erase(order, step.index);
        order.push_back(step.index);
      } else {
        std::erase(order, step.index);
      }
    }
    std::erase_if(order, [&](Index j) { return !final.contains(j); });
    return order;
  }

  /// The state a run with target s would have returned: for forward-only
  /// algorithms the s-th step, for FoBa the first add/drop round that ends
  /// with s selected features. Returns nullptr when that state never occurs.
  const TraceStep<Scalar>* state_at_sparsity(Index s) const {
    const Index base = forced.size();
    if (algorithm != Algorithm::kFoba) {
      if (s < 1 || s > static_cast<Index>(steps.size())) return nullptr;
      return &steps[static_cast<std::size_t>(s - 1)];
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const bool round_end = i + 1 == steps.size() ||
                             steps[i + 1].action == StepAction::kAdd;
      if (round_end && steps[i].support.size() - base == s) return &steps[i];
    }
    return nullptr;
  }

  /// Throws ValidationError when a structural invariant fails: gains equal
  /// successive differences, monotone values for forward-only algorithms,
  /// support sizes match the recorded adds and drops.
  void validate(double monotone_tol = kSolverTolerance,
                double gain_tol = 1e-10) const {
    Scalar previous(0);
    Index size = forced.size();
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& step = steps[i];
      size += step.action == StepAction::kAdd ? 1 : -1;
      if (step.support.size() != size) {
        throw ValidationError("trace step " + std::to_string(i + 1) +
                              " support size inconsistent with adds/drops");
      }
      if (step.beta.support() != step.support) {
        throw ValidationError("trace step beta support differs from step support");
      }
      using std::abs;
      if (abs(step.marginal_gain - (step.f_value - previous)) > Scalar(gain_tol)) {
        throw ValidationError("trace marginal gain mismatch at step " +
                              std::to_string(i + 1));
      }
      if (algorithm != Algorithm::kFoba &&
          step.f_value < previous - Scalar(monotone_tol)) {
        throw ValidationError("trace value decreased at step " +
                              std::to_string(i + 1));
      }
      previous = step.f_value;
    }
  }

  friend bool operator==(const SelectionTrace&, const SelectionTrace&) = default;
};

}  // namespace wsub
