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
#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "wsub/common.hpp"
#include "wsub/evaluation.hpp"
#include "wsub/objective.hpp"
#include "wsub/parallel.hpp"
#include "wsub/restricted_solver.hpp"
#include "wsub/rng.hpp"
#include "wsub/trace.hpp"

namespace wsub {

// Enumeration guards.
inline constexpr Index kMaxExactParamDim = 14;
inline constexpr Index kMaxRatioGroundSet = 14;
inline constexpr Index kMaxRatioBaseSet = 10;

// Ratios whose denominator is at most this are undefined.
inline constexpr double kRatioDenominatorFloor = 1e-12;

enum class ParamMethod { kAuto, kExactQuadratic, kHessianSampled };

inline std::string_view to_string(ParamMethod m) {
  switch (m) {
    case ParamMethod::kAuto: return "auto";
    case ParamMethod::kExactQuadratic: return "exact_quadratic";
    case ParamMethod::kHessianSampled: return "hessian_sampled";
  }
  return "unknown";
}

/// Restricted strong concavity m_k, smoothness M_k on pairs of k-sparse
/// vectors differing in at most k coordinates, and smoothness M_tilde_k on
/// pairs differing in one coordinate.
template <typename Scalar>
struct ConcavityParams {
  Index k = 0;
  Scalar m_k{};
  Scalar M_k{};
  Scalar M_tilde_k{};
  ParamMethod method = ParamMethod::kExactQuadratic;

  bool certified() const { return method == ParamMethod::kExactQuadratic; }
};

// ---------------------------------------------------------------------------
// Top-k norm

/// Euclidean norm of the k largest-magnitude entries.
template <typename Derived>
typename Derived::Scalar topk_norm(const Eigen::MatrixBase<Derived>& v, Index k) {
  using Scalar = typename Derived::Scalar;
  if (k < 1 || k > v.size()) {
    throw ValidationError("topk_norm needs 1 <= k <= length(v)");
  }
  std::vector<Scalar> sq(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) sq[static_cast<std::size_t>(i)] = v[i] * v[i];
  std::nth_element(sq.begin(), sq.begin() + (k - 1), sq.end(), std::greater<>());
  Scalar sum(0);
  for (Index i = 0; i < k; ++i) sum += sq[static_cast<std::size_t>(i)];
  using std::sqrt;
  return sqrt(sum);
}

// ---------------------------------------------------------------------------
// Submodularity ratio

/// sum_{j in S} [f(L u {j}) - f(L)] / [f(L u S) - f(L)] for disjoint L, S.
template <typename F>
auto submodularity_ratio_pair(F&& f, const Support& L, const Support& S) {
  using Scalar = std::decay_t<std::invoke_result_t<F&, const Support&>>;
  if (!L.disjoint(S)) throw ValidationError("L and S must be disjoint");
  const Scalar fL = f(L);
  const Scalar denominator = f(L.unite(S)) - fL;
  if (!(denominator > Scalar(kRatioDenominatorFloor))) {
    throw UndefinedRatio("submodularity ratio undefined: f(L u S) - f(L) = " +
                         std::to_string(static_cast<double>(denominator)));
  }
  Scalar numerator(0);
  for (Index j : S) numerator += f(L.with(j)) - fL;
  return numerator / denominator;
}

template <typename Scalar>
struct RatioResult {
  Scalar gamma = std::numeric_limits<Scalar>::infinity();
  Support argmin_L;
  Support argmin_S;
  Index pairs_evaluated = 0;
  Index pairs_skipped = 0;  // undefined ratios, excluded from the minimum
};

/// gamma_{U,k}: minimum pair ratio over L subset of U and S disjoint from L
/// with 1 <= |S| <= k. Undefined pairs are skipped and counted; +inf when
/// every pair is undefined.
template <typename F>
auto submodularity_ratio_exhaustive(F&& f, const Support& U, Index k, Index p) {
  using Scalar = std::decay_t<std::invoke_result_t<F&, const Support&>>;
  if (p > kMaxRatioGroundSet || U.size() > kMaxRatioBaseSet) {
    throw GuardExceeded("exhaustive submodularity ratio needs p <= 14 and |U| <= 10");
  }
  if (p < 1 || k < 1) throw ValidationError("need p >= 1 and k >= 1");
  U.validate_for(p);
  const std::uint64_t full = (std::uint64_t{1} << p) - 1;
  const std::uint64_t u_mask = U.mask();

  // Every set the ratios touch has at most k members outside U.
  std::vector<std::uint64_t> needed;
  for (std::uint64_t m = 0; m <= full; ++m) {
    if (std::popcount(m & ~u_mask) <= k) needed.push_back(m);
  }
  std::vector<Scalar> table(static_cast<std::size_t>(full + 1),
                            std::numeric_limits<Scalar>::quiet_NaN());
  parallel_for(static_cast<Index>(needed.size()), [&](Index i) {
    const std::uint64_t m = needed[static_cast<std::size_t>(i)];
    table[m] = f(Support::from_mask(m));
  });

  RatioResult<Scalar> out;
  // Submasks of U, including the empty set.
  for (std::uint64_t L = u_mask;; L = (L - 1) & u_mask) {
    const Scalar fL = table[L];
    const std::uint64_t rest = full & ~L;
    for (std::uint64_t S = rest; S != 0; S = (S - 1) & rest) {
      if (std::popcount(S) > k) continue;
      const Scalar denominator = table[L | S] - fL;
      if (!(denominator > Scalar(kRatioDenominatorFloor))) {
        ++out.pairs_skipped;
        continue;
      }
      Scalar numerator(0);
      for (std::uint64_t bits = S; bits != 0; bits &= bits - 1) {
        numerator += table[L | (bits & (~bits + 1))] - fL;
      }
      ++out.pairs_evaluated;
      const Scalar ratio = numerator / denominator;
      if (ratio < out.gamma) {
        out.gamma = ratio;
        out.argmin_L = Support::from_mask(L);
        out.argmin_S = Support::from_mask(S);
      }
    }
    if (L == 0) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Restricted concavity and smoothness

/// Exact sparse eigenvalue table of a symmetric PSD matrix G (the negative
/// Hessian of a quadratic objective): entry k-1 holds m_k = min over
/// k-subsets T of lambda_min(G_TT), M_k = max over subsets of size <= k of
/// lambda_max(G_TT) and M_tilde_k = max_j G_jj. Sizes above p are clamped to
/// p.
template <typename Scalar>
std::vector<ConcavityParams<Scalar>> sparse_gram_param_table(
    const Matrix<Scalar>& G, Index k_max) {
  const Index p = G.rows();
  if (G.cols() != p) throw ValidationError("Gram matrix must be square");
  if (p > kMaxExactParamDim) {
    throw GuardExceeded("exact sparse eigenvalues need p <= 14");
  }
  if (k_max < 1) throw ValidationError("k must be >= 1");
  const Index top = std::min(k_max, p);
  const std::uint64_t full = (std::uint64_t{1} << p) - 1;

  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = 1; m <= full; ++m) {
    if (std::popcount(m) <= top) masks.push_back(m);
  }
  std::vector<Scalar> lo(masks.size()), hi(masks.size());
  parallel_for(static_cast<Index>(masks.size()), [&](Index i) {
    const auto c = static_cast<std::size_t>(i);
    const Support T = Support::from_mask(masks[c]);
    Matrix<Scalar> sub(T.size(), T.size());
    for (Index a = 0; a < T.size(); ++a) {
      for (Index b = 0; b < T.size(); ++b) sub(a, b) = G(T[a], T[b]);
    }
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(sub, Eigen::EigenvaluesOnly);
    lo[c] = eig.eigenvalues().minCoeff();
    hi[c] = eig.eigenvalues().maxCoeff();
  });

  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  std::vector<Scalar> min_by_size(static_cast<std::size_t>(top + 1), inf);
  std::vector<Scalar> max_by_size(static_cast<std::size_t>(top + 1), -inf);
  for (std::size_t c = 0; c < masks.size(); ++c) {
    const auto s = static_cast<std::size_t>(std::popcount(masks[c]));
    min_by_size[s] = std::min(min_by_size[s], lo[c]);
    max_by_size[s] = std::max(max_by_size[s], hi[c]);
  }
  const Scalar diag_max = G.diagonal().maxCoeff();

  std::vector<ConcavityParams<Scalar>> table;
  Scalar m_running = inf, M_running = -inf;
  for (Index k = 1; k <= k_max; ++k) {
    const auto s = static_cast<std::size_t>(std::min(k, p));
    m_running = std::min(m_running, min_by_size[s]);
    M_running = std::max(M_running, max_by_size[s]);
    table.push_back({k, m_running, M_running, diag_max,
                     ParamMethod::kExactQuadratic});
  }
  return table;
}

struct ParamOptions {
  ParamMethod method = ParamMethod::kAuto;
  Index samples = 64;
  std::uint64_t seed = 0;
};

namespace detail {

template <typename Scalar>
std::vector<ConcavityParams<Scalar>> sampled_param_table(
    const ObjectiveSpec& spec, const Dataset<Scalar>& data, Index k_max,
    const ParamOptions& options) {
  const Index p = data.p();
  const Scalar n = static_cast<Scalar>(data.n());
  std::vector<ConcavityParams<Scalar>> table;
  for (Index k = 1; k <= k_max; ++k) {
    const Index size = std::min(k, p);
    const Index samples = std::max<Index>(options.samples, 1);
    std::vector<Scalar> lo(static_cast<std::size_t>(samples)),
        hi(static_cast<std::size_t>(samples)), diag(static_cast<std::size_t>(samples));
    parallel_for(samples, [&](Index s) {
      CounterRng rng(derive_seed(options.seed, static_cast<std::uint64_t>(k)),
                     static_cast<std::uint64_t>(s));
      std::vector<Index> perm(static_cast<std::size_t>(p));
      for (Index j = 0; j < p; ++j) perm[static_cast<std::size_t>(j)] = j;
      for (Index j = 0; j < size; ++j) {
        std::swap(perm[static_cast<std::size_t>(j)],
                  perm[static_cast<std::size_t>(j + rng.uniform_index(p - j))]);
      }
      const Support T = Support::from_unordered(
          std::vector<Index>(perm.begin(), perm.begin() + size));
      // Sample 0 is the origin; the rest lie on segments from the origin to
      // restricted optima.
      Vector<Scalar> beta = Vector<Scalar>::Zero(p);
      if (s > 0) {
        try {
          beta = maximize_restricted(spec, data, T).beta.beta() *
                 Scalar(rng.uniform());
        } catch (const SolverError&) {
          beta.setZero();
        }
      }
      const Vector<Scalar> pred = data.X() * beta;
      const Vector<Scalar> w = curvature_weights<Scalar>(spec, pred);
      Matrix<Scalar> H = weighted_gram<Scalar>(gather_columns(data.X(), T), w);
      H.diagonal().array() += Scalar(spec.eta);
      Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(H, Eigen::EigenvaluesOnly);
      const auto c = static_cast<std::size_t>(s);
      lo[c] = eig.eigenvalues().minCoeff();
      hi[c] = eig.eigenvalues().maxCoeff();
      diag[c] = ((data.X().array().square().colwise() * w.array()).colwise().sum() / n)
                    .maxCoeff() + Scalar(spec.eta);
    });
    table.push_back({k, *std::min_element(lo.begin(), lo.end()),
                     *std::max_element(hi.begin(), hi.end()),
                     *std::max_element(diag.begin(), diag.end()),
                     ParamMethod::kHessianSampled});
  }
  // Enforce the monotone-in-k shape the exact parameters have.
  for (std::size_t i = 1; i < table.size(); ++i) {
    table[i].m_k = std::min(table[i].m_k, table[i - 1].m_k);
    table[i].M_k = std::max(table[i].M_k, table[i - 1].M_k);
    table[i].M_tilde_k = std::max(table[i].M_tilde_k, table[i - 1].M_tilde_k);
  }
  return table;
}

}  // namespace detail

/// Parameters for k = 1..k_max. Least squares with p <= 14 is exact (sparse
/// eigenvalues of X^T X / n). Anything else uses the sampled heuristic:
/// restricted Hessian eigenvalues at random sparse points, labeled
/// hessian_sampled, never a certificate. Requesting exact where it is not
/// available is a GuardExceeded error.
template <typename Scalar>
std::vector<ConcavityParams<Scalar>> concavity_param_table(
    const ObjectiveSpec& spec, const Dataset<Scalar>& data, Index k_max,
    const ParamOptions& options = {}) {
  detail::check_compatible(spec, data, data.p());
  if (k_max < 1) throw ValidationError("k must be >= 1");
  const bool exact_possible = spec.kind == ObjectiveKind::kLeastSquares &&
                              data.p() <= kMaxExactParamDim;
  ParamMethod method = options.method;
  if (method == ParamMethod::kAuto) {
    method = exact_possible ? ParamMethod::kExactQuadratic
                            : ParamMethod::kHessianSampled;
  }
  if (method == ParamMethod::kExactQuadratic) {
    if (spec.kind != ObjectiveKind::kLeastSquares) {
      throw ValidationError("exact parameters need the least-squares objective");
    }
    const Matrix<Scalar> G = detail::weighted_gram<Scalar>(
        data.X(), Vector<Scalar>::Ones(data.n()));
    return sparse_gram_param_table(G, k_max);
  }
  return detail::sampled_param_table(spec, data, k_max, options);
}

template <typename Scalar>
ConcavityParams<Scalar> sparse_concavity_params(const ObjectiveSpec& spec,
                                                const Dataset<Scalar>& data,
                                                Index k,
                                                const ParamOptions& options = {}) {
  return concavity_param_table(spec, data, k, options).back();
}

// ---------------------------------------------------------------------------
// Bounds

template <std::floating_point Scalar>
Scalar bound_ratio(Scalar m, Scalar M_tilde) {
  if (!(m > 0) || !(m <= M_tilde)) {
    throw ValidationError("ratio bound needs 0 < m <= M_tilde");
  }
  return m / M_tilde;
}

/// max{1/k, (m_1 / (4 M_k)) (3 + m_1 / M_1)}
template <std::floating_point Scalar>
Scalar squeeze_factor(Scalar m_1, Scalar M_k, Scalar M_1, Index k) {
  if (!(m_1 >= 0) || !(M_k > 0) || !(M_1 > 0) || k < 1) {
    throw ValidationError("squeeze factor needs m_1 >= 0, M > 0, k >= 1");
  }
  return std::max(Scalar(1) / Scalar(k),
                  m_1 / (Scalar(4) * M_k) * (Scalar(3) + m_1 / M_1));
}

/// Approximation factor of the oblivious selection:
/// max{m_k / (k M_1), (m_k m_1 / (4 M_k M_1)) (3 + m_1 / M_1)}.
template <std::floating_point Scalar>
Scalar bound_oblivious(Scalar m_k, Scalar m_1, Scalar M_k, Scalar M_1, Index k) {
  if (!(m_k > 0) || !(m_1 > 0) || !(m_k <= M_k) || !(m_1 <= M_1) || k < 1) {
    throw ValidationError("oblivious bound needs positive m <= M and k >= 1");
  }
  return std::max(m_k / (Scalar(k) * M_1),
                  m_k * m_1 / (Scalar(4) * M_k * M_1) * (Scalar(3) + m_1 / M_1));
}

/// 1 - exp(-gamma r / k)
template <std::floating_point Scalar>
Scalar bound_fs(Scalar gamma, Index r, Index k) {
  if (!(gamma > 0) || r < 1 || k < 1) {
    throw ValidationError("stepwise bound needs gamma > 0, r >= 1, k >= 1");
  }
  using std::exp;
  return Scalar(1) - exp(-gamma * Scalar(r) / Scalar(k));
}

/// 1 - exp(-(m / M) r / k)
template <std::floating_point Scalar>
Scalar bound_omp(Scalar m, Scalar M, Index r, Index k) {
  if (!(m > 0) || !(m <= M) || r < 1 || k < 1) {
    throw ValidationError("OMP bound needs 0 < m <= M, r >= 1, k >= 1");
  }
  using std::exp;
  return Scalar(1) - exp(-(m / M) * Scalar(r) / Scalar(k));
}

/// 2^(-M'/m') (1 - exp(-m'/M')), the small-support stepwise bound with its
/// unspecified constant set to 1. Not a certificate.
template <std::floating_point Scalar>
Scalar bound_fs_small_support(Scalar m_prime, Scalar M_prime) {
  if (!(m_prime > 0) || !(m_prime <= M_prime)) {
    throw ValidationError("small-support bound needs 0 < m' <= M'");
  }
  using std::exp;
  using std::pow;
  return pow(Scalar(2), -M_prime / m_prime) * (Scalar(1) - exp(-m_prime / M_prime));
}

/// Right side of the parameter recovery inequality:
/// (4 / m^2) ||grad||_{2,s+r}^2 + (4 / m) (1 - C) [l(beta^s) - l(0)].
template <typename Derived>
typename Derived::Scalar recovery_bound(const Eigen::MatrixBase<Derived>& grad_at_target,
                                        Index s, Index r,
                                        typename Derived::Scalar m_sr,
                                        typename Derived::Scalar C_sr,
                                        typename Derived::Scalar l_target_minus_l0) {
  using Scalar = typename Derived::Scalar;
  if (!(m_sr > 0) || !(C_sr >= 0) || !(C_sr <= 1) || !(l_target_minus_l0 >= 0)) {
    throw ValidationError(
        "recovery bound needs m > 0, 0 <= C <= 1, l(beta^s) - l(0) >= 0");
  }
  const Index width = std::min<Index>(s + r, grad_at_target.size());
  const Scalar top = topk_norm(grad_at_target, width);
  return Scalar(4) / (m_sr * m_sr) * top * top +
         Scalar(4) / m_sr * (Scalar(1) - C_sr) * l_target_minus_l0;
}

// ---------------------------------------------------------------------------
// Reports

template <typename Scalar>
struct BoundCheck {
  std::string id;
  Scalar lhs{};
  Scalar rhs{};
  Scalar slack{};
  bool pass = false;
  bool certified = true;
  std::string note;
};

template <typename Scalar>
BoundCheck<Scalar> make_check(std::string id, Scalar lhs, Scalar rhs,
                              bool certified, std::string note = {},
                              Scalar slack = Scalar(kBoundSlack)) {
  return {std::move(id), lhs,  rhs, slack, lhs >= rhs - slack,
          certified,     std::move(note)};
}

template <typename Scalar>
struct GammaValue {
  Support U;
  Index k = 0;
  Scalar gamma{};
  Index pairs_skipped = 0;
};

template <typename Scalar>
struct AnalysisReport {
  Index k = 0;
  Support opt_support;
  Scalar f_opt{};
  std::vector<GammaValue<Scalar>> gamma_values;
  std::vector<ConcavityParams<Scalar>> params;
  std::vector<BoundCheck<Scalar>> bound_checks;

  Index violations(bool certified_only = true) const {
    Index count = 0;
    for (const auto& c : bound_checks) {
      if (!c.pass && (c.certified || !certified_only)) ++count;
    }
    return count;
  }

  const BoundCheck<Scalar>* find(std::string_view id) const {
    for (const auto& c : bound_checks) {
      if (c.id == id) return &c;
    }
    return nullptr;
  }
};

template <typename Scalar>
struct VerifyOptions {
  Index k = 0;  // comparison sparsity; 0 means the trace's target
  bool exhaustive_gamma = true;
  ParamOptions params;
  // Precomputed inputs, used when present.
  std::optional<BestSubset<Scalar>> best;
  std::vector<ConcavityParams<Scalar>> param_table;
};

namespace detail {

template <typename Scalar>
const ConcavityParams<Scalar>& param_at(
    const std::vector<ConcavityParams<Scalar>>& table, Index k) {
  const Index i = std::min<Index>(k, static_cast<Index>(table.size()));
  return table[static_cast<std::size_t>(i - 1)];
}

}  // namespace detail

/// Evaluates every guarantee that applies to the trace's algorithm against
/// the brute-force optimum over k-subsets, plus the ratio lower bound and the
/// squeeze inequality on the first k indices.
template <typename Scalar>
AnalysisReport<Scalar> verify_trace(const SelectionTrace<Scalar>& trace,
                                    const SetFunction<Scalar>& f,
                                    const VerifyOptions<Scalar>& options = {}) {
  if (!f.forced().empty() || !trace.forced.empty()) {
    throw ValidationError("verification does not support forced indices");
  }
  const Index p = f.p();
  const Index k = options.k > 0 ? options.k : trace.target;
  if (k < 1 || k > p) throw ValidationError("comparison k out of range");
  const Index r = static_cast<Index>(trace.steps.size());
  const Scalar f_sel = trace.final_value();

  AnalysisReport<Scalar> report;
  report.k = k;
  const BestSubset<Scalar> best =
      options.best ? *options.best : brute_force_best_subset(f, k);
  report.opt_support = best.support;
  report.f_opt = best.value;

  const Index k_needed = std::min(p, std::max<Index>(r + k, 2 * k));
  report.params =
      options.param_table.size() >= static_cast<std::size_t>(k_needed)
          ? options.param_table
          : concavity_param_table(f.spec(), f.data(), k_needed, options.params);
  const auto& table = report.params;
  const auto& P1 = detail::param_at(table, 1);
  const auto& Pk = detail::param_at(table, k);
  const auto& Prk = detail::param_at(table, r + k);
  const bool exact = Pk.certified();
  const Scalar f_opt = best.value;

  if (trace.final_selection().size() <= k) {
    report.bound_checks.push_back(make_check<Scalar>(
        "oracle_dominance", f_opt, f_sel, true, "f_opt >= f(selected)"));
  }

  if (options.exhaustive_gamma && p <= kMaxRatioGroundSet) {
    const auto g0 = submodularity_ratio_exhaustive(f, Support{}, k, p);
    report.gamma_values.push_back({Support{}, k, g0.gamma, g0.pairs_skipped});
    if (Pk.m_k > 0 && std::isfinite(static_cast<double>(g0.gamma))) {
      report.bound_checks.push_back(make_check<Scalar>(
          "ratio_lower_bound", g0.gamma, bound_ratio(Pk.m_k, P1.M_tilde_k), exact,
          "gamma_{0,k} >= m_k / M_tilde_1"));
    }
  }

  {
    Scalar singles(0);
    for (Index j = 0; j < k; ++j) singles += f(Support{j});
    report.bound_checks.push_back(make_check<Scalar>(
        "squeeze", f(Support::range(0, k)),
        squeeze_factor(std::max(P1.m_k, Scalar(0)), Pk.M_k, P1.M_k, k) * singles,
        exact, "f([k]) >= max{1/k, m_1/(4M_k)(3 + m_1/M_1)} sum_j f(j)"));
  }

  switch (trace.algorithm) {
    case Algorithm::kOblivious:
      if (r == k) {
        const Scalar factor = Pk.m_k > 0 && P1.m_k > 0
                                  ? bound_oblivious(Pk.m_k, P1.m_k, Pk.M_k, P1.M_k, k)
                                  : Scalar(0);
        report.bound_checks.push_back(make_check<Scalar>(
            "oblivious_guarantee", f_sel, factor * f_opt, exact, "oblivious guarantee"));
      }
      break;
    case Algorithm::kForwardStepwise: {
      const Support chosen = trace.final_selection();
      if (options.exhaustive_gamma && p <= kMaxRatioGroundSet &&
          chosen.size() <= kMaxRatioBaseSet) {
        const auto g = submodularity_ratio_exhaustive(f, chosen, k, p);
        report.gamma_values.push_back({chosen, k, g.gamma, g.pairs_skipped});
        if (g.gamma > 0 && std::isfinite(static_cast<double>(g.gamma))) {
          report.bound_checks.push_back(make_check<Scalar>(
              "stepwise_gamma", f_sel,
              bound_fs(g.gamma, r, k) * f_opt, true,
              "f_FS >= (1 - exp(-gamma_{S_r,k} r/k)) f_opt"));
        }
      }
      const Scalar ratio = Prk.m_k > 0 ? Prk.m_k / Prk.M_k : Scalar(0);
      report.bound_checks.push_back(make_check<Scalar>(
          "stepwise_params", f_sel,
          ratio > 0 ? bound_fs(ratio, r, k) * f_opt : Scalar(0), exact,
          "f_FS >= (1 - exp(-(m/M) r/k)) f_opt"));
      if (r == k && Pk.m_k > 0) {
        report.bound_checks.push_back(make_check<Scalar>(
            "stepwise_small_support", f_sel,
            bound_fs_small_support(Pk.m_k, std::max(Pk.m_k, Pk.M_tilde_k)) * f_opt,
            false, "unspecified constant taken as 1; not a certificate"));
      }
      break;
    }
    case Algorithm::kOmp: {
      const Scalar bound =
          Prk.m_k > 0 ? bound_omp(Prk.m_k, Prk.M_k, r, k) : Scalar(0);
      report.bound_checks.push_back(make_check<Scalar>(
          "omp_guarantee", f_sel, bound * f_opt, exact,
          "f_OMP >= (1 - exp(-(m/M) r/k)) f_opt"));
      break;
    }
    case Algorithm::kFoba:
      break;
  }
  return report;
}

}  // namespace wsub
