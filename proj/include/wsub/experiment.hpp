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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wsub/common.hpp"
#include "wsub/io.hpp"
#include "wsub/objective.hpp"
#include "wsub/restricted_solver.hpp"
#include "wsub/trace.hpp"

namespace wsub {

/// Synthetic greedy-selection benchmark on AR(1) designs with a sparse
/// Rademacher truth. Defaults are the reference configuration.
struct ExperimentConfig {
  Index n = 600;
  Index p = 200;
  Index k_true = 50;
  double alpha = 0.3;
  double sigma2 = 5.0;
  double beta_norm2 = 5.0;
  Index runs = 20;
  Index s_max = 70;
  Index n_test = 600;
  std::vector<Algorithm> algorithms = {Algorithm::kOblivious,
                                       Algorithm::kForwardStepwise,
                                       Algorithm::kOmp, Algorithm::kFoba};
  ObjectiveSpec objective = ObjectiveSpec::logistic();
  bool add_bias = true;
  std::uint64_t seed = 0;
  // Large supports can separate the training labels; their objective is
  // then the supremum l = 0.
  SolverConfig solver = [] {
    SolverConfig c;
    c.separation_as_supremum = true;
    return c;
  }();

  void validate() const;
};

Json to_json(const ExperimentConfig& config);
/// Missing fields keep their defaults; unknown fields are rejected.
ExperimentConfig experiment_config_from_json(const Json& j);

struct ExperimentRow {
  Index run = 0;
  Algorithm algo = Algorithm::kForwardStepwise;
  Index s = 0;
  std::string metric;  // objective, auc, recall, accuracy
  double value = 0.0;
};

struct SummaryRow {
  Algorithm algo = Algorithm::kForwardStepwise;
  Index s = 0;
  std::string metric;
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(count)
  Index count = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // ordered by run, algorithm, s, metric

  std::vector<SummaryRow> summary() const;
  const SummaryRow* find(const std::vector<SummaryRow>& summary, Algorithm algo,
                         Index s, const std::string& metric) const;
};

/// Runs are independent given (seed, run) and may execute in parallel; the
/// row order never depends on scheduling.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// run,algo,s,metric,value
void write_experiment_csv(std::ostream& out, const ExperimentResult& result);
/// algo,s,metric,mean,stderr,count
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);

}  // namespace wsub
