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

#include "wsub/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace wsub {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view field, std::size_t line_no) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw ValidationError("CSV line " + std::to_string(line_no) +
                          ": cannot parse '" + std::string(field) + "'");
  }
  return value;
}

Json support_json(const Support& s) { return Json(s.indices()); }

Support support_from_json(const Json& j) {
  return Support::from_unordered(j.get<std::vector<Index>>());
}

// JSON has no infinity; unbounded values are written as null.
Json number_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf, ptr);
}

Dataset<double> read_csv(std::istream& in, bool header,
                         std::optional<LabelEncoding> encoding) {
  std::vector<double> values;
  std::size_t cols = 0, rows = 0, line_no = 0;
  std::string line;
  bool skipped_header = !header;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    const auto fields = split_fields(line);
    if (cols == 0) {
      cols = fields.size();
      if (cols < 2) {
        throw ValidationError("CSV needs at least one feature column and y");
      }
    } else if (fields.size() != cols) {
      throw ValidationError("CSV line " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(cols));
    }
    for (auto f : fields) values.push_back(parse_number(f, line_no));
    ++rows;
  }
  if (rows == 0) throw ValidationError("CSV has no data rows");
  const auto p = static_cast<Index>(cols - 1);
  Matrix<double> X(static_cast<Index>(rows), p);
  Vector<double> y(static_cast<Index>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    for (Index j = 0; j < p; ++j) {
      X(static_cast<Index>(i), j) = values[i * cols + static_cast<std::size_t>(j)];
    }
    y[static_cast<Index>(i)] = values[i * cols + cols - 1];
  }
  LabelEncoding enc = LabelEncoding::kBinary01;
  if (encoding) {
    enc = *encoding;
  } else {
    for (Index i = 0; i < y.size(); ++i) {
      if (y[i] != 0.0 && y[i] != 1.0) enc = LabelEncoding::kReal;
    }
  }
  return Dataset<double>::validate(std::move(X), std::move(y), enc);
}

Dataset<double> read_csv_file(const std::string& path, bool header,
                              std::optional<LabelEncoding> encoding) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return read_csv(in, header, encoding);
}

void write_csv(std::ostream& out, const Dataset<double>& data, bool header) {
  if (header) {
    for (Index j = 0; j < data.p(); ++j) out << 'x' << j << ',';
    out << "y\n";
  }
  for (Index i = 0; i < data.n(); ++i) {
    for (Index j = 0; j < data.p(); ++j) out << format_double(data.X()(i, j)) << ',';
    out << format_double(data.y()[i]) << '\n';
  }
}

void write_csv_file(const std::string& path, const Dataset<double>& data,
                    bool header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  write_csv(out, data, header);
}

Json to_json(const ObjectiveSpec& spec) {
  return {{"kind", std::string(to_string(spec.kind))}, {"eta", spec.eta}};
}

ObjectiveSpec objective_from_json(const Json& j) {
  ObjectiveSpec spec;
  spec.kind = objective_kind_from_string(j.at("kind").get<std::string>());
  spec.eta = j.value("eta", 0.0);
  spec.validate();
  return spec;
}

Json to_json(const SolverConfig& config) {
  return {{"grad_tol", config.grad_tol},
          {"max_iters", config.max_iters},
          {"ridge_fallback", config.ridge_fallback},
          {"separation_as_supremum", config.separation_as_supremum}};
}

SolverConfig solver_config_from_json(const Json& j) {
  SolverConfig c;
  c.grad_tol = j.value("grad_tol", c.grad_tol);
  c.max_iters = j.value("max_iters", c.max_iters);
  c.ridge_fallback = j.value("ridge_fallback", c.ridge_fallback);
  c.separation_as_supremum =
      j.value("separation_as_supremum", c.separation_as_supremum);
  c.validate();
  return c;
}

Json to_json(const ParamVector<double>& beta) {
  Json coef = Json::array();
  for (Index j : beta.support()) coef.push_back({j, beta.beta()[j]});
  return {{"p", beta.size()}, {"coefficients", coef}};
}

Json trace_to_json(const SelectionTrace<double>& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"iteration", s.iteration},
                     {"action", std::string(to_string(s.action))},
                     {"index", s.index},
                     {"support", support_json(s.support)},
                     {"f_value", s.f_value},
                     {"marginal_gain", s.marginal_gain},
                     {"beta", to_json(s.beta)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "selection_trace"},
          {"algorithm", std::string(to_string(trace.algorithm))},
          {"objective", to_json(trace.objective)},
          {"p", trace.p},
          {"target", trace.target},
          {"forced", support_json(trace.forced)},
          {"seed", trace.seed},
          {"steps", steps},
          {"final_support", support_json(trace.final_support())},
          {"selection_order", trace.selection_order()},
          {"final_value", trace.final_value()}};
}

SelectionTrace<double> trace_from_json(const Json& j) {
  if (j.value("schema_version", 0) != kSchemaVersion ||
      j.value("kind", std::string()) != "selection_trace") {
    throw ValidationError("not a version 1 selection trace");
  }
  SelectionTrace<double> t;
  t.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
  t.objective = objective_from_json(j.at("objective"));
  t.p = j.at("p").get<Index>();
  t.target = j.at("target").get<Index>();
  t.forced = support_from_json(j.at("forced"));
  t.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& s : j.at("steps")) {
    TraceStep<double> step;
    step.iteration = s.at("iteration").get<int>();
    step.action = s.at("action").get<std::string>() == "drop" ? StepAction::kDrop
                                                              : StepAction::kAdd;
    step.index = s.at("index").get<Index>();
    step.support = support_from_json(s.at("support"));
    step.f_value = s.at("f_value").get<double>();
    step.marginal_gain = s.at("marginal_gain").get<double>();
    Vector<double> beta = Vector<double>::Zero(t.p);
    for (const auto& c : s.at("beta").at("coefficients")) {
      beta[c.at(0).get<Index>()] = c.at(1).get<double>();
    }
    step.beta = ParamVector<double>(std::move(beta), step.support);
    t.steps.push_back(std::move(step));
  }
  return t;
}

Json report_to_json(const AnalysisReport<double>& report) {
  Json gammas = Json::array();
  for (const auto& g : report.gamma_values) {
    gammas.push_back({{"U", support_json(g.U)},
                      {"k", g.k},
                      {"gamma", number_json(g.gamma)},
                      {"pairs_skipped", g.pairs_skipped}});
  }
  Json params = Json::array();
  for (const auto& q : report.params) {
    params.push_back({{"k", q.k},
                      {"m_k", q.m_k},
                      {"M_k", q.M_k},
                      {"M_tilde_k", q.M_tilde_k},
                      {"method", std::string(to_string(q.method))}});
  }
  Json checks = Json::array();
  for (const auto& c : report.bound_checks) {
    checks.push_back({{"id", c.id},
                      {"lhs", number_json(c.lhs)},
                      {"rhs", number_json(c.rhs)},
                      {"slack", c.slack},
                      {"pass", c.pass},
                      {"certified", c.certified},
                      {"note", c.note}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "analysis_report"},
          {"k", report.k},
          {"opt_support", support_json(report.opt_support)},
          {"f_opt", report.f_opt},
          {"gamma_values", gammas},
          {"params", params},
          {"bound_checks", checks},
          {"certified_violations", report.violations(true)}};
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace wsub
