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
#include <numeric>
#include <optional>
#include <vector>

#include "wsub/common.hpp"
#include "wsub/objective.hpp"
#include "wsub/parallel.hpp"
#include "wsub/restricted_solver.hpp"
#include "wsub/trace.hpp"

namespace wsub {
namespace detail {

/// Indices that are neither forced nor in `selected`.
template <typename Scalar>
std::vector<Index> free_indices(const SetFunction<Scalar>& f,
                                const Support& selected) {
  std::vector<Index> out;
  for (Index j = 0; j < f.p(); ++j) {
    if (!selected.contains(j) && !f.forced().contains(j)) out.push_back(j);
  }
  return out;
}

template <typename Scalar>
void check_target(const SetFunction<Scalar>& f, Index k, const char* name) {
  const Index available = f.p() - f.forced().size();
  if (k < 1 || k > available) {
    throw ValidationError(std::string(name) + " must satisfy 1 <= " + name +
                          " <= " + std::to_string(available));
  }
}

template <typename Scalar>
SelectionTrace<Scalar> empty_trace(const SetFunction<Scalar>& f, Algorithm algo,
                                   Index target) {
  SelectionTrace<Scalar> trace;
  trace.algorithm = algo;
  trace.objective = f.spec();
  trace.forced = f.forced();
  trace.p = f.p();
  trace.target = target;
  return trace;
}

template <typename Scalar>
void record(SelectionTrace<Scalar>& trace, const SetFunction<Scalar>& f,
            StepAction action, Index index,
            const RestrictedSolution<Scalar>& sol) {
  TraceStep<Scalar> step;
  step.iteration = static_cast<int>(trace.steps.size()) + 1;
  step.action = action;
  step.index = index;
  step.support = sol.beta.support();
  step.beta = sol.beta;
  step.f_value = f.gain(sol);
  const Scalar previous =
      trace.steps.empty() ? Scalar(0) : trace.steps.back().f_value;
  step.marginal_gain = step.f_value - previous;
  trace.steps.push_back(std::move(step));
}

/// Refits S u {j} for every candidate j, warm-started at `warm`.
template <typename Scalar>
std::vector<RestrictedSolution<Scalar>> evaluate_additions(
    const SetFunction<Scalar>& f, const Support& selected,
    const std::vector<Index>& candidates, const Vector<Scalar>& warm) {
  std::vector<RestrictedSolution<Scalar>> out(candidates.size());
  parallel_for(static_cast<Index>(candidates.size()), [&](Index i) {
    const auto c = static_cast<std::size_t>(i);
    out[c] = f.solve(selected.with(candidates[c]), warm);
  });
  return out;
}

/// Position of the largest score; the first (smallest index) wins ties.
template <typename Scalar>
std::size_t argmax_first(const std::vector<Scalar>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

/// One forward-stepwise step: returns (chosen index, solution).
template <typename Scalar>
std::pair<Index, RestrictedSolution<Scalar>> best_addition(
    const SetFunction<Scalar>& f, const Support& selected,
    const Vector<Scalar>& warm) {
  const std::vector<Index> candidates = free_indices(f, selected);
  auto sols = evaluate_additions(f, selected, candidates, warm);
  std::vector<Scalar> gains(sols.size());
  for (std::size_t i = 0; i < sols.size(); ++i) gains[i] = f.gain(sols[i]);
  const std::size_t best = argmax_first(gains);
  return {candidates[best], std::move(sols[best])};
}

}  // namespace detail

/// Ranks features by singleton value f({j}) and keeps the top k (smallest
/// index on ties). Step i of the trace holds the joint refit on the i best.
template <typename Scalar>
SelectionTrace<Scalar> oblivious_select(const SetFunction<Scalar>& f, Index k) {
  detail::check_target(f, k, "k");
  auto trace = detail::empty_trace(f, Algorithm::kOblivious, k);
  const std::vector<Index> candidates = detail::free_indices(f, Support{});
  const Vector<Scalar> warm = f.baseline_beta().beta();
  const auto singles = detail::evaluate_additions(f, Support{}, candidates, warm);

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return f.gain(singles[a]) > f.gain(singles[b]);
  });

  Support selected;
  Vector<Scalar> current = warm;
  for (Index i = 0; i < k; ++i) {
    const Index j = candidates[order[static_cast<std::size_t>(i)]];
    selected = selected.with(j);
    auto sol = f.solve(selected, current);
    current = sol.beta.beta();
    detail::record(trace, f, StepAction::kAdd, j, sol);
  }
  return trace;
}

/// r greedy steps, each adding the feature whose full refit gains the most.
template <typename Scalar>
SelectionTrace<Scalar> forward_stepwise(const SetFunction<Scalar>& f, Index r) {
  detail::check_target(f, r, "r");
  auto trace = detail::empty_trace(f, Algorithm::kForwardStepwise, r);
  Support selected;
  Vector<Scalar> current = f.baseline_beta().beta();
  for (Index it = 0; it < r; ++it) {
    auto [j, sol] = detail::best_addition(f, selected, current);
    selected = selected.with(j);
    current = sol.beta.beta();
    detail::record(trace, f, StepAction::kAdd, j, sol);
  }
  return trace;
}

/// r steps, each adding the feature with the largest absolute gradient
/// coordinate at the current restricted optimum, then refitting.
template <typename Scalar>
SelectionTrace<Scalar> omp_select(const SetFunction<Scalar>& f, Index r) {
  detail::check_target(f, r, "r");
  auto trace = detail::empty_trace(f, Algorithm::kOmp, r);
  Support selected;
  Vector<Scalar> current = f.baseline_beta().beta();
  for (Index it = 0; it < r; ++it) {
    const Vector<Scalar> g = gradient(f.spec(), f.data(), current);
    const std::vector<Index> candidates = detail::free_indices(f, selected);
    std::vector<Scalar> scores(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      using std::abs;
      scores[c] = abs(g[candidates[c]]);
    }
    const Index j = candidates[detail::argmax_first(scores)];
    selected = selected.with(j);
    auto sol = f.solve(selected, current);
    current = sol.beta.beta();
    detail::record(trace, f, StepAction::kAdd, j, sol);
  }
  return trace;
}

/// Forward stepwise with a backward phase: after a forward step of gain g,
/// repeatedly drop the feature whose removal costs least, while that cost is
/// below g/2. Stops once k features are selected or no forward step gains
/// more than the solver tolerance. Dropped features may re-enter.
template <typename Scalar>
SelectionTrace<Scalar> foba_select(const SetFunction<Scalar>& f, Index k) {
  detail::check_target(f, k, "k");
  auto trace = detail::empty_trace(f, Algorithm::kFoba, k);
  const Index step_limit = 10 * k;
  Support selected;
  Scalar current_f(0);
  Vector<Scalar> current = f.baseline_beta().beta();

  auto check_guard = [&] {
    if (static_cast<Index>(trace.steps.size()) >= step_limit) {
      throw GuardExceeded("FoBa exceeded " + std::to_string(step_limit) +
                          " total steps");
    }
  };

  while (selected.size() < k) {
    auto [j, sol] = detail::best_addition(f, selected, current);
    const Scalar gain = f.gain(sol) - current_f;
    if (gain <= Scalar(f.config().grad_tol)) break;
    check_guard();
    selected = selected.with(j);
    current = sol.beta.beta();
    current_f = f.gain(sol);
    detail::record(trace, f, StepAction::kAdd, j, sol);

    while (!selected.empty()) {
      const std::vector<Index> members = selected.indices();
      std::vector<RestrictedSolution<Scalar>> reduced(members.size());
      parallel_for(static_cast<Index>(members.size()), [&](Index i) {
        const auto c = static_cast<std::size_t>(i);
        reduced[c] = f.solve(selected.without(members[c]), current);
      });
      std::vector<Scalar> costs(members.size());
      for (std::size_t c = 0; c < members.size(); ++c) {
        costs[c] = current_f - f.gain(reduced[c]);
      }
      const auto cheapest = static_cast<std::size_t>(
          std::min_element(costs.begin(), costs.end()) - costs.begin());
      if (!(costs[cheapest] < gain / Scalar(2))) break;
      check_guard();
      selected = selected.without(members[cheapest]);
      current = reduced[cheapest].beta.beta();
      current_f = f.gain(reduced[cheapest]);
      detail::record(trace, f, StepAction::kDrop, members[cheapest],
                     reduced[cheapest]);
    }
  }
  return trace;
}

template <typename Scalar>
SelectionTrace<Scalar> run_selection(Algorithm algo, const SetFunction<Scalar>& f,
                                     Index k) {
  switch (algo) {
    case Algorithm::kOblivious: return oblivious_select(f, k);
    case Algorithm::kForwardStepwise: return forward_stepwise(f, k);
    case Algorithm::kOmp: return omp_select(f, k);
    case Algorithm::kFoba: return foba_select(f, k);
  }
  throw ValidationError("unknown algorithm");
}

template <typename Scalar>
SelectionTrace<Scalar> oblivious_select(const ObjectiveSpec& spec,
                                        const Dataset<Scalar>& data, Index k,
                                        const SolverConfig& config = {}) {
  return oblivious_select(SetFunction<Scalar>(spec, data, config), k);
}

template <typename Scalar>
SelectionTrace<Scalar> forward_stepwise(const ObjectiveSpec& spec,
                                        const Dataset<Scalar>& data, Index r,
                                        const SolverConfig& config = {}) {
  return forward_stepwise(SetFunction<Scalar>(spec, data, config), r);
}

template <typename Scalar>
SelectionTrace<Scalar> omp_select(const ObjectiveSpec& spec,
                                  const Dataset<Scalar>& data, Index r,
                                  const SolverConfig& config = {}) {
  return omp_select(SetFunction<Scalar>(spec, data, config), r);
}

template <typename Scalar>
SelectionTrace<Scalar> foba_select(const ObjectiveSpec& spec,
                                   const Dataset<Scalar>& data, Index k,
                                   const SolverConfig& config = {}) {
  return foba_select(SetFunction<Scalar>(spec, data, config), k);
}

}  // namespace wsub
