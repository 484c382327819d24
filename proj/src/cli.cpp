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

#include "wsub/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsub/analysis.hpp"
#include "wsub/datagen.hpp"
#include "wsub/evaluation.hpp"
#include "wsub/experiment.hpp"
#include "wsub/io.hpp"
#include "wsub/parallel.hpp"
#include "wsub/selection.hpp"

namespace wsub {
namespace {

struct DataOptions {
  std::string path;
  bool header = false;
  bool add_bias = false;
  std::string objective = "ls";
  double eta = 0.0;
  double grad_tol = SolverConfig{}.grad_tol;
  int max_iters = SolverConfig{}.max_iters;
};

void add_data_options(CLI::App* cmd, DataOptions& o, bool bias) {
  cmd->add_option("--data", o.path, "CSV file, last column is y")->required();
  cmd->add_flag("--header", o.header, "CSV has a header row");
  cmd->add_option("--objective", o.objective,
                  "ls | logistic | logistic-l2")->capture_default_str();
  cmd->add_option("--eta", o.eta, "l2 weight for logistic-l2")->capture_default_str();
  cmd->add_option("--grad-tol", o.grad_tol, "solver gradient tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iters", o.max_iters, "solver iteration cap")
      ->capture_default_str();
  if (bias) {
    cmd->add_flag("--add-bias", o.add_bias,
                  "append a ones column that is in every support");
  }
}

struct Loaded {
  Dataset<double> data;
  ObjectiveSpec spec;
  SolverConfig solver;
  Support forced;
};

Loaded load(const DataOptions& o) {
  ObjectiveSpec spec;
  spec.kind = objective_kind_from_string(o.objective);
  spec.eta = o.eta;
  spec.validate();
  SolverConfig solver;
  solver.grad_tol = o.grad_tol;
  solver.max_iters = o.max_iters;
  solver.validate();
  Dataset<double> data = read_csv_file(
      o.path, o.header,
      is_logistic(spec.kind) ? std::optional(LabelEncoding::kBinary01)
                             : std::optional(LabelEncoding::kReal));
  Support forced;
  if (o.add_bias) {
    forced = Support{data.p()};
    data = with_bias_column(data);
  }
  return {std::move(data), spec, solver, std::move(forced)};
}

Json data_config(const DataOptions& o, const Loaded& l) {
  return {{"data", o.path},
          {"header", o.header},
          {"add_bias", o.add_bias},
          {"objective", to_json(l.spec)},
          {"solver", to_json(l.solver)}};
}

std::string join_order(const std::vector<Index>& order) {
  std::string s = "{";
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(order[i]);
  }
  return s + "}";
}

void print_value(std::ostream& out, const Loaded& l, double f) {
  out << "f " << format_double(f) << '\n';
  if (l.spec.kind == ObjectiveKind::kLeastSquares && l.forced.empty()) {
    out << "r2 " << format_double(r_squared(l.data, f)) << '\n';
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (!path.empty()) write_text_file(path, text);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Greedy sparse subset selection under weak submodularity", "wsub"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  app.set_version_flag("--version", "wsub 1.0.0");

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate a synthetic dataset");
  std::string model = "ar1-logistic";
  SimulationConfig sc;
  double z = 0.1;
  std::string sim_out, truth_out;
  bool sim_header = false;
  sim->add_option("--model", model, "ar1-logistic | linear-gaussian | spiked | greedy-trap")
      ->capture_default_str();
  sim->add_option("--n", sc.n)->capture_default_str();
  sim->add_option("--p", sc.p)->capture_default_str();
  sim->add_option("--k-true", sc.k_true)->capture_default_str();
  sim->add_option("--alpha", sc.alpha)->capture_default_str();
  sim->add_option("--sigma2", sc.sigma2)->capture_default_str();
  sim->add_option("--beta-norm2", sc.beta_norm2)->capture_default_str();
  sim->add_option("--sigma-noise", sc.sigma_noise)->capture_default_str();
  sim->add_option("--spike", sc.spike, "spiked covariance weight a")->capture_default_str();
  sim->add_option("--z", z, "greedy-trap parameter")->capture_default_str();
  sim->add_option("--seed", sc.seed)->capture_default_str();
  sim->add_option("--out", sim_out, "output CSV")->required();
  sim->add_option("--truth-out", truth_out, "true coefficients as JSON");
  sim->add_flag("--header", sim_header, "write a header row");

  // select
  auto* sel = app.add_subcommand("select", "run a greedy selection algorithm");
  DataOptions sel_data;
  std::string algo = "fs", sel_out, sel_format = "json";
  Index sel_k = 0;
  add_data_options(sel, sel_data, true);
  sel->add_option("--algo", algo, "oblivious | fs | omp | foba")->capture_default_str();
  sel->add_option("--k", sel_k, "target sparsity")->required();
  sel->add_option("--out", sel_out, "trace output");
  sel->add_option("--format", sel_format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  // analyze
  auto* ana = app.add_subcommand("analyze", "check approximation guarantees");
  DataOptions ana_data;
  std::string ana_algo = "fs", ana_out, param_method = "auto";
  Index ana_k = 0, samples = 64;
  bool exhaustive_gamma = false;
  std::uint64_t ana_seed = 0;
  add_data_options(ana, ana_data, false);
  ana->add_option("--algo", ana_algo, "oblivious | fs | omp | foba")->capture_default_str();
  ana->add_option("--k", ana_k, "comparison sparsity")->required();
  ana->add_flag("--exhaustive-gamma", exhaustive_gamma,
                "enumerate submodularity ratios");
  ana->add_option("--param-method", param_method, "auto | exact | sampled")
      ->check(CLI::IsMember({"auto", "exact", "sampled"}))->capture_default_str();
  ana->add_option("--samples", samples, "sampled-parameter points")->capture_default_str();
  ana->add_option("--seed", ana_seed)->capture_default_str();
  ana->add_option("--out", ana_out, "report JSON");

  // oracle
  auto* ora = app.add_subcommand("oracle", "brute-force best k-subset");
  DataOptions ora_data;
  Index ora_k = 0;
  std::string ora_out;
  add_data_options(ora, ora_data, true);
  ora->add_option("--k", ora_k, "subset size")->required();
  ora->add_option("--out", ora_out, "result JSON");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run the synthetic benchmark");
  std::string exp_config, exp_out, exp_summary, exp_resolved;
  std::optional<std::uint64_t> exp_seed;
  std::optional<Index> exp_runs;
  exp->add_option("--config", exp_config, "ExperimentConfig JSON");
  exp->add_option("--out", exp_out, "long-format results CSV")->required();
  exp->add_option("--summary-out", exp_summary, "summary CSV");
  exp->add_option("--config-out", exp_resolved, "resolved config JSON");
  exp->add_option("--seed", exp_seed, "override the config seed");
  exp->add_option("--runs", exp_runs, "override the number of runs");

  if (argc <= 1) {
    err << app.help();
    return kExitValidation;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "wsub 1.0.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitValidation;
  }

  try {
    set_num_threads(threads);

    if (sim->parsed()) {
      if (model == "greedy-trap") {
        write_csv_file(sim_out, greedy_trap_instance(z), sim_header);
        out << "wrote greedy-trap z=" << format_double(z) << " to " << sim_out << '\n';
        return kExitOk;
      }
      sc.model = simulation_model_from_string(model);
      const Simulation s = simulate(sc);
      write_csv_file(sim_out, s.data, sim_header);
      if (!truth_out.empty()) {
        Json j = {{"schema_version", kSchemaVersion},
                  {"kind", "simulation_truth"},
                  {"config",
                   {{"model", model}, {"n", sc.n}, {"p", sc.p}, {"k_true", sc.k_true},
                    {"alpha", sc.alpha}, {"sigma2", sc.sigma2},
                    {"beta_norm2", sc.beta_norm2}, {"sigma_noise", sc.sigma_noise},
                    {"spike", sc.spike}, {"seed", sc.seed}}},
                  {"beta", to_json(s.truth)}};
        write_text_file(truth_out, j.dump(2) + "\n");
      }
      out << "wrote " << to_string(sc.model) << " n=" << sc.n << " p=" << sc.p
          << " to " << sim_out << '\n';
      return kExitOk;
    }

    if (sel->parsed()) {
      const Loaded l = load(sel_data);
      const SetFunction<double> f(l.spec, l.data, l.solver, l.forced);
      SelectionTrace<double> trace =
          run_selection(algorithm_from_string(algo), f, sel_k);
      if (sel_format == "json") {
        Json j = trace_to_json(trace);
        Json cfg = data_config(sel_data, l);
        cfg["algo"] = std::string(to_string(trace.algorithm));
        cfg["k"] = sel_k;
        j["config"] = cfg;
        write_output(sel_out, j.dump(2) + "\n");
      } else {
        std::ostringstream csv;
        csv << "iteration,action,index,f_value,marginal_gain\n";
        for (const auto& s : trace.steps) {
          csv << s.iteration << ',' << to_string(s.action) << ',' << s.index << ','
              << format_double(s.f_value) << ',' << format_double(s.marginal_gain)
              << '\n';
        }
        write_output(sel_out, csv.str());
      }
      out << "algorithm " << to_string(trace.algorithm) << '\n';
      out << "support " << join_order(trace.selection_order()) << '\n';
      print_value(out, l, trace.final_value());
      return kExitOk;
    }

    if (ana->parsed()) {
      const Loaded l = load(ana_data);
      const SetFunction<double> f(l.spec, l.data, l.solver, l.forced);
      const SelectionTrace<double> trace =
          run_selection(algorithm_from_string(ana_algo), f, ana_k);
      VerifyOptions<double> vo;
      vo.k = ana_k;
      vo.exhaustive_gamma = exhaustive_gamma;
      vo.params.method = param_method == "exact"     ? ParamMethod::kExactQuadratic
                         : param_method == "sampled" ? ParamMethod::kHessianSampled
                                                     : ParamMethod::kAuto;
      vo.params.samples = samples;
      vo.params.seed = ana_seed;
      const AnalysisReport<double> report = verify_trace(trace, f, vo);
      Json j = report_to_json(report);
      Json cfg = data_config(ana_data, l);
      cfg["algo"] = std::string(to_string(trace.algorithm));
      cfg["k"] = ana_k;
      cfg["exhaustive_gamma"] = exhaustive_gamma;
      cfg["param_method"] = param_method;
      cfg["samples"] = samples;
      cfg["seed"] = ana_seed;
      j["config"] = cfg;
      j["trace"] = trace_to_json(trace);
      write_output(ana_out, j.dump(2) + "\n");
      out << "opt " << report.opt_support.to_string() << ' '
          << format_double(report.f_opt) << '\n';
      for (const auto& c : report.bound_checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.id << ' ' << format_double(c.lhs)
            << " >= " << format_double(c.rhs)
            << (c.certified ? "" : " (not certified)") << '\n';
      }
      return report.violations(true) == 0 ? kExitOk : kExitFailure;
    }

    if (ora->parsed()) {
      const Loaded l = load(ora_data);
      const SetFunction<double> f(l.spec, l.data, l.solver, l.forced);
      const BestSubset<double> best = brute_force_best_subset(f, ora_k);
      const Support shown = best.support.minus(l.forced);
      if (!ora_out.empty()) {
        Json cfg = data_config(ora_data, l);
        cfg["k"] = ora_k;
        Json j = {{"schema_version", kSchemaVersion},
                  {"kind", "oracle_result"},
                  {"support", shown.indices()},
                  {"value", best.value},
                  {"config", cfg}};
        write_text_file(ora_out, j.dump(2) + "\n");
      }
      out << "support " << shown.to_string() << '\n';
      print_value(out, l, best.value);
      return kExitOk;
    }

    if (exp->parsed()) {
      ExperimentConfig config;
      if (!exp_config.empty()) {
        Json j;
        try {
          j = Json::parse(read_text_file(exp_config));
        } catch (const Json::parse_error& e) {
          throw ValidationError(std::string("invalid JSON in config: ") + e.what());
        }
        config = experiment_config_from_json(j);
      }
      if (exp_seed) config.seed = *exp_seed;
      if (exp_runs) config.runs = *exp_runs;
      config.validate();
      const ExperimentResult result = run_experiment(config);
      std::ostringstream csv;
      write_experiment_csv(csv, result);
      write_text_file(exp_out, csv.str());
      const auto summary = result.summary();
      if (!exp_summary.empty()) {
        std::ostringstream s;
        write_summary_csv(s, summary);
        write_text_file(exp_summary, s.str());
      }
      if (!exp_resolved.empty()) {
        write_text_file(exp_resolved, to_json(config).dump(2) + "\n");
      }
      out << "runs " << config.runs << " rows " << result.rows.size() << '\n';
      for (Algorithm a : config.algorithms) {
        const SummaryRow* r = result.find(summary, a, config.s_max, "objective");
        if (r != nullptr) {
          out << to_string(a) << " s=" << config.s_max << " objective "
              << format_double(r->mean) << " +- " << format_double(r->stderr_) << '\n';
        }
      }
      return kExitOk;
    }
  } catch (const GuardExceeded& e) {
    err << "guard exceeded: " << e.what() << '\n';
    return kExitGuard;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const UndefinedRatio& e) {
    err << "undefined: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Json::exception& e) {
    err << "invalid JSON: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace wsub
