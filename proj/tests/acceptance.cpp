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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "finite_difference.hpp"
#include "oracles.hpp"
#include "wsub/analysis.hpp"
#include "wsub/cli.hpp"
#include "wsub/datagen.hpp"
#include "wsub/evaluation.hpp"
#include "wsub/experiment.hpp"
#include "wsub/io.hpp"
#include "wsub/parallel.hpp"
#include "wsub/selection.hpp"

namespace {

using namespace wsub;

const ObjectiveSpec kLs = ObjectiveSpec::least_squares();

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Dataset<double> random_ls(Index n, Index p, std::uint64_t seed) {
  return Dataset<double>::validate(oracle::gaussian_matrix(n, p, seed),
                                   oracle::gaussian_vector(n, seed ^ 0x5bd1e995u),
                                   LabelEncoding::kReal);
}

Support random_subset(std::mt19937_64& gen, Index p, Index size) {
  std::vector<Index> perm(static_cast<std::size_t>(p));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), gen);
  perm.resize(static_cast<std::size_t>(size));
  return Support::from_unordered(perm);
}

Index uniform(std::mt19937_64& gen, Index lo, Index hi) {
  return lo + static_cast<Index>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
}

// 1. Greedy and brute force on the three-feature counterexample.
Outcome greedy_trap() {
  double worst = 0;
  bool support_ok = true;
  for (double z : {0.05, 0.1, 0.2}) {
    const auto d = greedy_trap_instance(z);
    const SetFunction<double> f(kLs, d);
    const double expected = (5 * z * z - 8 * std::pow(z, 4)) / (1 - 4 * std::pow(z, 4));
    const auto t = forward_stepwise(f, 2);
    worst = std::max(worst, std::abs(r_squared(d, t.final_value()) - expected));
    const auto best = brute_force_best_subset(f, 2);
    support_ok = support_ok && best.support == Support{0, 1};
    worst = std::max(worst, std::abs(r_squared(d, best.value) - 1.0));
  }
  return {support_ok && worst <= 1e-9,
          "max |R2 error| " + fmt(worst) + (support_ok ? ", oracle {x1,x2}" : ", wrong oracle")};
}

// 2. gamma_{U,k} >= m_{|U|+k} / M~_{|U|+1}.
Outcome ratio_lower_bound_instances() {
  std::mt19937_64 gen(2);
  int violations = 0, instances = 0;
  double min_slack = INFINITY;
  for (; instances < 240; ++instances) {
    const Index p = uniform(gen, 3, 8);
    const Index k = uniform(gen, 1, 3);
    const Index u = uniform(gen, 0, 2);
    const auto d = random_ls(50, p, 1000 + static_cast<std::uint64_t>(instances));
    const SetFunction<double> f(kLs, d);
    const Support U = random_subset(gen, p, u);
    const auto table = concavity_param_table(kLs, d, std::min(p, u + k + 1));
    const double rhs = bound_ratio(detail::param_at(table, u + k).m_k,
                                   detail::param_at(table, u + 1).M_tilde_k);
    const auto g = submodularity_ratio_exhaustive(f, U, k, p);
    if (!std::isfinite(g.gamma)) continue;
    min_slack = std::min(min_slack, g.gamma - rhs);
    if (g.gamma < rhs - 1e-6) ++violations;
  }
  return {violations == 0, std::to_string(instances) + " instances, " +
                               std::to_string(violations) + " violations, min gamma - bound " +
                               fmt(min_slack)};
}

struct Tally {
  int instances = 0;
  int checks = 0;
  int violations = 0;
  int skipped = 0;
  std::string line(const std::string& name) const {
    return name + " " + std::to_string(instances) + " inst/" + std::to_string(checks) +
           " checks/" + std::to_string(violations) + " viol" +
           (skipped ? "/" + std::to_string(skipped) + " skipped" : "");
  }
};

void tally(Tally& t, const AnalysisReport<double>& r, std::initializer_list<const char*> ids) {
  for (const char* id : ids) {
    const auto* c = r.find(id);
    if (c == nullptr) continue;
    ++t.checks;
    if (!c->pass) ++t.violations;
  }
}

// 3 and 4. Approximation guarantees against the brute-force optimum with r = k
// and r = 2k.
Outcome greedy_guarantees(bool doubled) {
  std::mt19937_64 gen(doubled ? 4 : 3);
  Tally ls, logistic;
  for (int i = 0; i < 220; ++i) {
    const Index k = uniform(gen, 1, 3);
    const Index p = uniform(gen, std::max<Index>(3, 2 * k), 8);
    const Index r = doubled ? 2 * k : k;
    const auto d = random_ls(50, p, 5000 + static_cast<std::uint64_t>(i));
    const SetFunction<double> f(kLs, d);
    VerifyOptions<double> opts;
    opts.k = k;
    opts.best = brute_force_best_subset(f, k);
    opts.param_table = concavity_param_table(kLs, d, p);
    ++ls.instances;
    tally(ls, verify_trace(forward_stepwise(f, r), f, opts),
          {"oracle_dominance", "stepwise_gamma", "stepwise_params"});
    tally(ls, verify_trace(omp_select(f, r), f, opts), {"omp_guarantee"});
    if (!doubled) {
      const auto report = verify_trace(oblivious_select(f, r), f, opts);
      tally(ls, report, {"oracle_dominance", "oblivious_guarantee"});
    }
  }
  for (int i = 0; i < 220; ++i) {
    const Index k = uniform(gen, 1, 3);
    const Index p = uniform(gen, std::max<Index>(3, 2 * k), 8);
    const Index r = doubled ? 2 * k : k;
    const std::uint64_t seed = 9000 + static_cast<std::uint64_t>(i);
    const Matrix<double> X = oracle::gaussian_matrix(200, p, seed);
    const ParamVector<double> beta(0.5 * oracle::gaussian_vector(p, seed + 1),
                                   Support::range(0, p));
    const auto d = Dataset<double>::validate(X, logistic_responses(X, beta, seed + 2),
                                             LabelEncoding::kBinary01);
    try {
      const SetFunction<double> f(ObjectiveSpec::logistic(), d);
      VerifyOptions<double> opts;
      opts.k = k;
      opts.params.seed = seed;
      opts.best = brute_force_best_subset(f, k);
      opts.param_table = concavity_param_table(f.spec(), d, p, opts.params);
      ++logistic.instances;
      tally(logistic, verify_trace(forward_stepwise(f, r), f, opts),
            {"stepwise_gamma", "stepwise_params"});
      tally(logistic, verify_trace(omp_select(f, r), f, opts), {"omp_guarantee"});
      if (!doubled) {
        tally(logistic, verify_trace(oblivious_select(f, r), f, opts),
              {"oblivious_guarantee"});
      }
    } catch (const SeparationError&) {
      ++logistic.skipped;
    }
  }
  return {ls.instances >= 200 && ls.violations == 0,
          ls.line("least-squares") + "; " + logistic.line("logistic (sampled, not gated)")};
}

// 5. Parameter recovery bound after r greedy steps towards the best s-subset.
Outcome recovery_instances() {
  const Index s = 2, r = 4, p = 8;
  int checks = 0, violations = 0;
  double min_margin = INFINITY;
  for (int i = 0; i < 60; ++i) {
    const auto d = random_ls(50, p, 20000 + static_cast<std::uint64_t>(i));
    const SetFunction<double> f(kLs, d);
    const auto best = brute_force_best_subset(f, s);
    const auto beta_s = f.solve(best.support).beta;
    const Vector<double> grad = gradient(kLs, d, beta_s);
    const auto P = detail::param_at(concavity_param_table(kLs, d, s + r), s + r);
    const double m = P.m_k;
    for (Algorithm a : {Algorithm::kForwardStepwise, Algorithm::kOmp}) {
      const auto t = run_selection(a, f, r);
      const double C =
          a == Algorithm::kOmp
              ? bound_omp(P.m_k, P.M_k, r, s)
              : bound_fs(submodularity_ratio_exhaustive(f, t.final_selection(), s, p).gamma,
                         r, s);
      if (!(t.final_value() >= C * best.value - 1e-9)) ++violations;
      const double rhs = recovery_bound(grad, s, r, m, C, best.value);
      const double measured = (t.steps.back().beta.beta() - beta_s.beta()).squaredNorm();
      ++checks;
      min_margin = std::min(min_margin, rhs - measured);
      if (rhs < measured - 1e-9) ++violations;
    }
  }
  return {violations == 0, "60 instances, " + std::to_string(checks) + " checks, " +
                               std::to_string(violations) + " violations, min rhs - measured " +
                               fmt(min_margin)};
}

// 6. f([k]) >= max{1/k, m_1/(4 M_k)(3 + m_1/M_1)} sum_j f(j).
Outcome squeeze_instances() {
  std::mt19937_64 gen(6);
  int violations = 0;
  double min_margin = INFINITY;
  const int instances = 150;
  for (int i = 0; i < instances; ++i) {
    const Index p = uniform(gen, 2, 8);
    const Index k = uniform(gen, 1, p);
    const auto d = random_ls(50, p, 30000 + static_cast<std::uint64_t>(i));
    const SetFunction<double> f(kLs, d);
    const auto table = concavity_param_table(kLs, d, k);
    const auto& P1 = detail::param_at(table, 1);
    const auto& Pk = detail::param_at(table, k);
    double singles = 0;
    for (Index j = 0; j < k; ++j) singles += f(Support{j});
    const double rhs = squeeze_factor(P1.m_k, Pk.M_k, P1.M_k, k) * singles;
    const double lhs = f(Support::range(0, k));
    min_margin = std::min(min_margin, lhs - rhs);
    if (lhs < rhs - 1e-6) ++violations;
  }
  return {violations == 0, std::to_string(instances) + " instances, " +
                               std::to_string(violations) + " violations, min margin " +
                               fmt(min_margin)};
}

// 7. Synthetic AR(1) logistic benchmark at the reference configuration.
Outcome synthetic_benchmark() {
  const ExperimentConfig config;
  const auto result = run_experiment(config);
  const auto summary = result.summary();
  auto get = [&](Algorithm a, Index s, const char* metric) {
    const SummaryRow* row = result.find(summary, a, s, metric);
    if (row == nullptr) throw Error("missing summary row");
    return *row;
  };
  std::ostringstream detail;
  bool pass = true;
  double worst_order = INFINITY, worst_foba = 0;
  for (Index s = 10; s <= 70; s += 10) {
    const auto fs = get(Algorithm::kForwardStepwise, s, "objective");
    const auto omp = get(Algorithm::kOmp, s, "objective");
    const auto obl = get(Algorithm::kOblivious, s, "objective");
    const auto foba = get(Algorithm::kFoba, s, "objective");
    const double gap1 = (fs.mean - omp.mean) / std::max(fs.stderr_, omp.stderr_);
    const double gap2 = (omp.mean - obl.mean) / std::max(omp.stderr_, obl.stderr_);
    const double gap3 = std::abs(fs.mean - foba.mean) / std::max(fs.stderr_, foba.stderr_);
    worst_order = std::min({worst_order, gap1, gap2});
    worst_foba = std::max(worst_foba, gap3);
    if (gap1 < -1 || gap2 < -1 || gap3 > 2) {
      pass = false;
      detail << "s=" << s << " FS " << fmt(fs.mean) << " OMP " << fmt(omp.mean) << " OBL "
             << fmt(obl.mean) << " FoBa " << fmt(foba.mean) << "; ";
    }
  }
  const double auc_fs = get(Algorithm::kForwardStepwise, config.s_max, "auc").mean;
  const double auc_obl = get(Algorithm::kOblivious, config.s_max, "auc").mean;
  pass = pass && auc_fs > auc_obl;
  detail << "min ordering gap " << fmt(worst_order) << " SE, max |FS-FoBa| "
         << fmt(worst_foba) << " SE, AUC FS " << fmt(auc_fs) << " vs Oblivious "
         << fmt(auc_obl);
  return {pass, detail.str()};
}

// 8. Sparse eigenvalues of equicorrelated covariances.
Outcome spiked_eigenvalues() {
  double worst = 0;
  for (double a : {0.0, 0.1, 0.3, 0.5, 0.9}) {
    for (Index p : {4, 7, 10}) {
      const Matrix<double> S = population_covariance(p, CovarianceModel::spiked(a));
      const auto table = sparse_gram_param_table(S, p);
      for (Index s = 1; s <= p; ++s) {
        const auto& P = detail::param_at(table, s);
        // A single coordinate has eigenvalue 1; larger blocks reach 1 - a.
        const double lowest = s == 1 ? 1.0 : 1 - a;
        worst = std::max({worst, std::abs(P.m_k - lowest), std::abs(P.M_k - (1 - a + a * s))});
      }
    }
  }
  for (Index p : {4, 9}) {
    const auto table = sparse_gram_param_table(
        population_covariance(p, CovarianceModel::identity_plus_ones()), p);
    for (Index s = 1; s <= p; ++s) {
      const auto& P = detail::param_at(table, s);
      worst = std::max({worst, std::abs(P.M_k - (1.0 + s)),
                        std::abs(P.m_k - (s == 1 ? 2.0 : 1.0))});
    }
  }
  return {worst <= 1e-12, "max eigenvalue error " + fmt(worst)};
}

// 9. Analytic derivatives against central differences.
Outcome derivative_suite() {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> z;
  double worst_g = 0, worst_h = 0;
  for (const auto& spec : {kLs, ObjectiveSpec::logistic(), ObjectiveSpec::logistic_l2(0.3)}) {
    for (int point = 0; point < 100; ++point) {
      const std::uint64_t seed = 40000 + static_cast<std::uint64_t>(point);
      const Matrix<double> X = oracle::gaussian_matrix(40, 6, seed);
      Vector<double> y = oracle::gaussian_vector(40, seed + 1);
      if (is_logistic(spec.kind)) y = (y.array() > 0).cast<double>();
      const auto d = Dataset<double>::validate(
          X, y, is_logistic(spec.kind) ? LabelEncoding::kBinary01 : LabelEncoding::kReal);
      Vector<double> b(6);
      for (Index j = 0; j < 6; ++j) b[j] = 0.5 * z(gen);
      const auto err = testing::finite_difference_errors(spec, d, b);
      worst_g = std::max(worst_g, err.gradient_rel);
      worst_h = std::max(worst_h, err.hessian_abs);
    }
  }
  return {worst_g < 1e-5 && worst_h < 1e-4,
          "300 points, max gradient rel error " + fmt(worst_g) + ", max Hessian error " +
              fmt(worst_h)};
}

// 10. CLI outputs replay byte-identically at 1 and 8 threads.
Outcome cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "wsub_acceptance";
  fs::create_directories(dir);
  const auto path = [&](const std::string& name) { return (dir / name).string(); };
  auto cli = [](std::vector<std::string> args, std::string& out) {
    args.insert(args.begin(), "wsub");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str() + e.str();
    return code;
  };
  std::string ignored;
  cli({"simulate", "--model", "greedy-trap", "--z", "0.1", "--out", path("trap.csv")},
      ignored);
  cli({"simulate", "--model", "ar1-logistic", "--n", "120", "--p", "12", "--k-true", "4",
       "--seed", "2", "--out", path("logistic.csv")}, ignored);
  write_text_file(path("exp.json"),
                  R"({"n": 80, "p": 10, "k_true": 3, "runs": 3, "s_max": 4, "n_test": 50})");
  const std::vector<std::vector<std::string>> goldens = {
      {"oracle", "--data", path("trap.csv"), "--k", "2"},
      {"select", "--data", path("trap.csv"), "--algo", "fs", "--k", "2", "--out", "@"},
      {"select", "--data", path("logistic.csv"), "--objective", "logistic", "--algo", "foba",
       "--k", "6", "--add-bias", "--out", "@"},
      {"select", "--data", path("logistic.csv"), "--objective", "logistic", "--algo", "omp",
       "--k", "6", "--format", "csv", "--out", "@"},
      {"analyze", "--data", path("trap.csv"), "--algo", "fs", "--k", "2",
       "--exhaustive-gamma", "--out", "@"},
      {"analyze", "--data", path("logistic.csv"), "--objective", "logistic", "--algo", "fs",
       "--k", "2", "--param-method", "sampled", "--samples", "16", "--out", "@"},
      {"oracle", "--data", path("logistic.csv"), "--objective", "logistic", "--k", "3",
       "--out", "@"},
      {"experiment", "--config", path("exp.json"), "--out", "@"},
      {"simulate", "--model", "spiked", "--n", "40", "--p", "6", "--k-true", "2", "--out", "@"},
  };
  int mismatches = 0;
  for (const auto& golden : goldens) {
    std::string replay[2];
    for (int t = 0; t < 2; ++t) {
      const std::string file = path(t == 0 ? "out1" : "out8");
      auto args = golden;
      for (auto& a : args) {
        if (a == "@") a = file;
      }
      args.insert(args.begin(), {"--threads", t == 0 ? "1" : "8"});
      std::string out;
      const int code = cli(args, out);
      for (auto pos = out.find(file); pos != std::string::npos; pos = out.find(file)) {
        out.replace(pos, file.size(), "@");
      }
      replay[t] = std::to_string(code) + "\n" + out +
                  (fs::exists(file) ? read_text_file(file) : std::string());
      fs::remove(file);
    }
    if (replay[0] != replay[1] || replay[0].front() != '0') ++mismatches;
  }
  std::string trap_text;
  cli({"oracle", "--data", path("trap.csv"), "--k", "2"}, trap_text);
  const bool golden_text = trap_text == "support {0,1}\nf 0.16666666666666666\nr2 1\n";
  fs::remove_all(dir);
  return {mismatches == 0 && golden_text,
          std::to_string(goldens.size()) + " commands, " + std::to_string(mismatches) +
              " mismatches" + (golden_text ? "" : ", trap oracle text changed")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"counterexample greedy vs optimum", greedy_trap},
      {"submodularity ratio lower bound", ratio_lower_bound_instances},
      {"greedy guarantees r = k", [] { return greedy_guarantees(false); }},
      {"greedy guarantees r = 2k", [] { return greedy_guarantees(true); }},
      {"parameter recovery bound", recovery_instances},
      {"squeeze inequality", squeeze_instances},
      {"synthetic AR(1) logistic benchmark", synthetic_benchmark},
      {"equicorrelated sparse eigenvalues", spiked_eigenvalues},
      {"objective derivatives", derivative_suite},
      {"CLI determinism across threads", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += outcome.pass ? 0 : 1;
    std::printf("criterion %zu %s: %s (%.1fs) %s\n", i + 1, outcome.pass ? "PASS" : "FAIL",
                criteria[i].first, seconds, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
