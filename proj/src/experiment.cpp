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

#include "wsub/experiment.hpp"

#include <cmath>
#include <ostream>
#include <set>

#include "wsub/datagen.hpp"
#include "wsub/evaluation.hpp"
#include "wsub/parallel.hpp"
#include "wsub/rng.hpp"
#include "wsub/selection.hpp"

namespace wsub {
namespace {

constexpr std::uint64_t kTagTestDesign = 0x7E57;
constexpr std::uint64_t kTagTestLabels = 0x7E58;

const char* const kMetrics[] = {"objective", "auc", "recall", "accuracy"};

// Prefix of a trace ending at `last`, so its selection order is the ranking
// the algorithm had produced at that point.
SelectionTrace<double> prefix(const SelectionTrace<double>& trace,
                              const TraceStep<double>* last) {
  SelectionTrace<double> out = trace;
  const auto end = static_cast<std::size_t>(last - trace.steps.data()) + 1;
  out.steps.resize(end);
  return out;
}

std::vector<ExperimentRow> run_one(const ExperimentConfig& config, Index run) {
  const std::uint64_t run_seed =
      derive_seed(config.seed, static_cast<std::uint64_t>(run));
  SimulationConfig sim;
  sim.model = SimulationModel::kAr1Logistic;
  sim.n = config.n;
  sim.p = config.p;
  sim.k_true = config.k_true;
  sim.alpha = config.alpha;
  sim.sigma2 = config.sigma2;
  sim.beta_norm2 = config.beta_norm2;
  sim.seed = run_seed;
  Simulation train = simulate(sim);

  Matrix<double> X_test = ar1_design(config.n_test, config.p, config.alpha,
                                     config.sigma2,
                                     derive_seed(run_seed, kTagTestDesign));
  Vector<double> y_test = logistic_responses(
      X_test, train.truth, derive_seed(run_seed, kTagTestLabels));
  Dataset<double> test = Dataset<double>::validate(
      std::move(X_test), std::move(y_test), LabelEncoding::kBinary01);

  Support forced;
  if (config.add_bias) {
    train.data = with_bias_column(train.data);
    test = with_bias_column(test);
    forced = Support{config.p};
  }
  const Dataset<double>& data = train.data;
  const SetFunction<double> f(config.objective, data, config.solver, forced);
  // l(beta) - l(0) = f(S) + l(beta^F) - l(0).
  const double offset =
      f.baseline() - value(config.objective, data, Vector<double>::Zero(data.p()));

  std::vector<ExperimentRow> rows;
  for (Algorithm algo : config.algorithms) {
    const SelectionTrace<double> trace = run_selection(algo, f, config.s_max);
    for (Index s = 1; s <= config.s_max; ++s) {
      // A run that stopped early returns its final state for every larger s.
      const TraceStep<double>* state = trace.state_at_sparsity(s);
      if (state == nullptr && !trace.steps.empty() &&
          trace.final_selection().size() < s) {
        state = &trace.steps.back();
      }
      if (state == nullptr) continue;
      const Support chosen = state->support.minus(forced);
      double hits = 0;
      for (Index j : chosen) hits += train.truth.support().contains(j) ? 1.0 : 0.0;
      const double values[] = {
          state->f_value + offset,
          support_recovery_metrics(prefix(trace, state), train.truth.support()).auc,
          hits / static_cast<double>(config.k_true),
          is_logistic(config.objective.kind)
              ? generalization_accuracy(config.objective, state->beta, test)
              : std::nan("")};
      for (int m = 0; m < 4; ++m) {
        if (std::isnan(values[m])) continue;
        rows.push_back({run, algo, s, kMetrics[m], values[m]});
      }
    }
  }
  return rows;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n < 1 || p < 1 || n_test < 1) {
    throw ValidationError("experiment needs n, p, n_test >= 1");
  }
  if (k_true < 1 || k_true > p) throw ValidationError("need 1 <= k_true <= p");
  if (!(std::abs(alpha) < 1.0)) throw ValidationError("need |alpha| < 1");
  if (!(sigma2 > 0.0)) throw ValidationError("need sigma2 > 0");
  if (!(beta_norm2 > 0.0)) throw ValidationError("need beta_norm2 > 0");
  if (runs < 1) throw ValidationError("need runs >= 1");
  if (s_max < 1 || s_max > p) throw ValidationError("need 1 <= s_max <= p");
  if (algorithms.empty()) throw ValidationError("no algorithms requested");
  if (!is_logistic(objective.kind)) {
    throw ValidationError("the AR(1) benchmark has binary labels; use a logistic objective");
  }
  objective.validate();
  solver.validate();
}

Json to_json(const ExperimentConfig& c) {
  Json algos = Json::array();
  for (Algorithm a : c.algorithms) algos.push_back(std::string(to_string(a)));
  return {{"n", c.n},
          {"p", c.p},
          {"k_true", c.k_true},
          {"alpha", c.alpha},
          {"sigma2", c.sigma2},
          {"beta_norm2", c.beta_norm2},
          {"runs", c.runs},
          {"s_max", c.s_max},
          {"n_test", c.n_test},
          {"algorithms", algos},
          {"objective", to_json(c.objective)},
          {"add_bias", c.add_bias},
          {"seed", c.seed},
          {"solver", to_json(c.solver)}};
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("experiment config must be a JSON object");
  static const std::set<std::string> known = {
      "n",     "p",      "k_true",     "alpha",     "sigma2",   "beta_norm2",
      "runs",  "s_max",  "n_test",     "algorithms", "objective", "add_bias",
      "seed",  "solver"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw ValidationError("unknown experiment config field '" + item.key() + "'");
    }
  }
  ExperimentConfig c;
  try {
    c.n = j.value("n", c.n);
    c.p = j.value("p", c.p);
    c.k_true = j.value("k_true", c.k_true);
    c.alpha = j.value("alpha", c.alpha);
    c.sigma2 = j.value("sigma2", c.sigma2);
    c.beta_norm2 = j.value("beta_norm2", c.beta_norm2);
    c.runs = j.value("runs", c.runs);
    c.s_max = j.value("s_max", c.s_max);
    c.n_test = j.value("n_test", c.n_test);
    if (j.contains("algorithms")) {
      c.algorithms.clear();
      for (const auto& a : j.at("algorithms")) {
        c.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
      }
    }
    if (j.contains("objective")) c.objective = objective_from_json(j.at("objective"));
    c.add_bias = j.value("add_bias", c.add_bias);
    c.seed = j.value("seed", c.seed);
    if (j.contains("solver")) c.solver = solver_config_from_json(j.at("solver"));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("bad experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::vector<ExperimentRow>> per_run(
      static_cast<std::size_t>(config.runs));
  parallel_for(config.runs, [&](Index run) {
    per_run[static_cast<std::size_t>(run)] = run_one(config, run);
  });
  ExperimentResult result;
  for (auto& rows : per_run) {
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  }
  return result;
}

std::vector<SummaryRow> ExperimentResult::summary() const {
  // Keyed in first-appearance order so output is stable.
  std::vector<SummaryRow> keys;
  std::vector<std::vector<double>> values;
  for (const auto& r : rows) {
    std::size_t i = 0;
    for (; i < keys.size(); ++i) {
      if (keys[i].algo == r.algo && keys[i].s == r.s && keys[i].metric == r.metric) break;
    }
    if (i == keys.size()) {
      keys.push_back({r.algo, r.s, r.metric, 0.0, 0.0, 0});
      values.emplace_back();
    }
    values[i].push_back(r.value);
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& v = values[i];
    const auto count = static_cast<double>(v.size());
    double mean = 0;
    for (double x : v) mean += x;
    mean /= count;
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    keys[i].mean = mean;
    keys[i].count = static_cast<Index>(v.size());
    keys[i].stderr_ = v.size() > 1 ? std::sqrt(ss / (count - 1.0) / count) : 0.0;
  }
  return keys;
}

const SummaryRow* ExperimentResult::find(const std::vector<SummaryRow>& summary,
                                         Algorithm algo, Index s,
                                         const std::string& metric) const {
  for (const auto& r : summary) {
    if (r.algo == algo && r.s == s && r.metric == metric) return &r;
  }
  return nullptr;
}

void write_experiment_csv(std::ostream& out, const ExperimentResult& result) {
  out << "run,algo,s,metric,value\n";
  for (const auto& r : result.rows) {
    out << r.run << ',' << to_string(r.algo) << ',' << r.s << ',' << r.metric
        << ',' << format_double(r.value) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << "algo,s,metric,mean,stderr,count\n";
  for (const auto& r : summary) {
    out << to_string(r.algo) << ',' << r.s << ',' << r.metric << ','
        << format_double(r.mean) << ',' << format_double(r.stderr_) << ','
        << r.count << '\n';
  }
}

}  // namespace wsub
