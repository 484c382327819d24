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
#include <limits>
#include <vector>

#include "wsub/common.hpp"
#include "wsub/objective.hpp"
#include "wsub/parallel.hpp"
#include "wsub/restricted_solver.hpp"
#include "wsub/trace.hpp"

namespace wsub {

/// Largest number of k-subsets brute_force_best_subset will enumerate.
inline constexpr double kMaxBruteForceSubsets = 1e6;

inline double binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (Index i = 1; i <= k; ++i) {
    out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return out;
}

template <typename Scalar>
struct BestSubset {
  Support support;  // forced indices excluded
  Scalar value{};
};

/// Exact best k-subset by enumeration of all k-subsets of the non-forced
/// indices. Ties go to the lexicographically smallest support.
template <typename Scalar>
BestSubset<Scalar> brute_force_best_subset(const SetFunction<Scalar>& f,
                                           Index k) {
  std::vector<Index> universe;
  for (Index j = 0; j < f.p(); ++j) {
    if (!f.forced().contains(j)) universe.push_back(j);
  }
  const auto m = static_cast<Index>(universe.size());
  if (k < 0 || k > m) throw ValidationError("k out of range for brute force");
  if (binomial(m, k) > kMaxBruteForceSubsets) {
    throw GuardExceeded("brute force needs C(" + std::to_string(m) + ", " +
                        std::to_string(k) + ") <= 1e6 subsets");
  }
  if (k == 0) return {Support{}, Scalar(0)};

  BestSubset<Scalar> best{Support{}, -std::numeric_limits<Scalar>::infinity()};
  std::vector<Index> combo(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) combo[static_cast<std::size_t>(i)] = i;
  bool more = true;
  constexpr std::size_t kBlock = 4096;
  std::vector<Support> block;
  std::vector<Scalar> values;
  while (more) {
    block.clear();
    while (more && block.size() < kBlock) {
      std::vector<Index> idx;
      for (Index c : combo) idx.push_back(universe[static_cast<std::size_t>(c)]);
      block.push_back(Support::from_sorted(std::move(idx)));
      // advance to the next combination in lexicographic order
      Index i = k - 1;
      while (i >= 0 && combo[static_cast<std::size_t>(i)] == m - k + i) --i;
      if (i < 0) {
        more = false;
      } else {
        ++combo[static_cast<std::size_t>(i)];
        for (Index j = i + 1; j < k; ++j) {
          combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
        }
      }
    }
    values.assign(block.size(), Scalar(0));
    parallel_for(static_cast<Index>(block.size()), [&](Index i) {
      values[static_cast<std::size_t>(i)] = f(block[static_cast<std::size_t>(i)]);
    });
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (values[i] > best.value) best = {block[i], values[i]};
    }
  }
  return best;
}

template <typename Scalar>
BestSubset<Scalar> brute_force_best_subset(const ObjectiveSpec& spec,
                                           const Dataset<Scalar>& data, Index k,
                                           const SolverConfig& config = {}) {
  return brute_force_best_subset(SetFunction<Scalar>(spec, data, config), k);
}

/// AUC of a ranking: features in `ranked` are ordered best first, every
/// other feature of `universe` is tied below them. Ties count one half.
inline double ranking_auc(const std::vector<Index>& ranked,
                          const std::vector<Index>& universe,
                          const Support& truth) {
  std::vector<double> score;
  std::vector<bool> positive;
  for (Index j : universe) {
    const auto it = std::find(ranked.begin(), ranked.end(), j);
    score.push_back(it == ranked.end()
                        ? 0.0
                        : static_cast<double>(ranked.end() - it));
    positive.push_back(truth.contains(j));
  }
  // Mann-Whitney with midranks.
  std::vector<std::size_t> order(score.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  std::vector<double> rank(score.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && score[order[j]] == score[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + j + 1);
    for (std::size_t t = i; t < j; ++t) rank[order[t]] = mid;
    i = j;
  }
  double pos = 0, rank_sum = 0;
  for (std::size_t i = 0; i < score.size(); ++i) {
    if (positive[i]) {
      pos += 1;
      rank_sum += rank[i];
    }
  }
  const double neg = static_cast<double>(score.size()) - pos;
  if (pos == 0 || neg == 0) {
    throw ValidationError("AUC needs both true and false features");
  }
  return (rank_sum - pos * (pos + 1) / 2) / (pos * neg);
}

struct RecoveryMetrics {
  double auc = 0.0;
  std::vector<double> recall_curve;  // recall_curve[s] for s = 0..|ranking|
};

/// Treats the trace's selection order as a ranking of the non-forced
/// features.
template <typename Scalar>
RecoveryMetrics support_recovery_metrics(const SelectionTrace<Scalar>& trace,
                                         const Support& truth) {
  if (truth.empty()) throw ValidationError("truth support must be nonempty");
  std::vector<Index> universe;
  for (Index j = 0; j < trace.p; ++j) {
    if (!trace.forced.contains(j)) universe.push_back(j);
  }
  const std::vector<Index> ranked = trace.selection_order();
  RecoveryMetrics out;
  out.auc = ranking_auc(ranked, universe, truth);
  double hits = 0;
  out.recall_curve.push_back(0.0);
  for (Index j : ranked) {
    hits += truth.contains(j) ? 1.0 : 0.0;
    out.recall_curve.push_back(hits / static_cast<double>(truth.size()));
  }
  return out;
}

/// Fraction of test observations where sigmoid(<x, beta>) >= 1/2 agrees with
/// the label; exactly 1/2 predicts 1.
template <typename Scalar>
double generalization_accuracy(const ObjectiveSpec& spec,
                               const ParamVector<Scalar>& beta,
                               const Dataset<Scalar>& test) {
  if (!is_logistic(spec.kind)) {
    throw ValidationError("generalization accuracy needs a logistic objective");
  }
  detail::check_compatible(spec, test, beta.size());
  const Vector<Scalar> predictor = test.X() * beta.beta();
  Index correct = 0;
  for (Index i = 0; i < test.n(); ++i) {
    const Scalar label =
        detail::sigmoid<Scalar>(predictor[i]) >= Scalar(0.5) ? Scalar(1) : Scalar(0);
    correct += label == test.y()[i];
  }
  return static_cast<double>(correct) / static_cast<double>(test.n());
}

}  // namespace wsub
