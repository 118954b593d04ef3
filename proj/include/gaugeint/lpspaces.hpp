// Copyright 2026 The gaugeint Authors.
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

// U^p seminorms ||f|| = mu(rho(f)^p (v - u), A)^(1/p), L^p membership, and the
// classical inequality suite evaluated through variational-measure estimates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gaugeint/error.hpp"
#include "gaugeint/funcspace.hpp"
#include "gaugeint/integrate.hpp"
#include "gaugeint/partitions.hpp"
#include "gaugeint/spaces.hpp"
#include "gaugeint/subset.hpp"
#include "gaugeint/variation.hpp"

namespace gaugeint {

struct LpOptions {
  SearchOptions search;
  /// The estimate counts as converged when its last two schedule values
  /// differ by at most this much.
  double conv_tol = 1e-6;
};

struct LpReport {
  double p = 1.0;
  std::size_t index = 0;
  double value = 0.0;
  /// |value_K - value_{K-1}| along the schedule; infinite for one-step schedules.
  double bracket = std::numeric_limits<double>::infinity();
  VariationBracket measure;
  bool converged = false;
  bool upper_integrable = false;
  bool skh_ok = false;
  bool lp_member = false;
};

/// The seminorm of the real line, used for real-valued multipliers.
inline Seminorm scalar_abs() { return AbsCoordinate{0}; }

inline LpReport up_seminorm(const FunctionSpec& f, const SubsetSpec& a, double p, const Seminorm& rho,
                            const std::vector<Gauge>& schedule, const LpOptions& opt = {}) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("U^p seminorm needs finite p >= 1");
  rho.validate(f.dim());
  LpReport rep;
  rep.p = p;
  rep.measure = variational_measure(ThetaP{f, p, rho}, a, rho, schedule, opt.search);
  rep.value = std::pow(rep.measure.reported, 1.0 / p);
  const auto& st = rep.measure.steps;
  if (st.size() >= 2) {
    rep.bracket = std::abs(rep.value - std::pow(st[st.size() - 2].estimate, 1.0 / p));
    rep.converged = std::abs(st.back().estimate - st[st.size() - 2].estimate) <= opt.conv_tol;
  }
  rep.upper_integrable = std::isfinite(rep.value) && rep.converged;
  return rep;
}

inline LpReport up_seminorm(const FunctionSpec& f, const SubsetSpec& a, double p, const SpaceSpec& space,
                            std::size_t i, const std::vector<Gauge>& schedule, const LpOptions& opt = {}) {
  LpReport rep = up_seminorm(f, a, p, space.seminorm(i), schedule, opt);
  rep.index = i;
  return rep;
}

/// f* = norm^(1-p) rho(f)^(p-1), real valued, with `norm` = ||f||_{U^p}.
inline FunctionSpec dual_witness(const FunctionSpec& f, double p, const Seminorm& rho, double norm,
                                 double zero_tol = 1e-12) {
  if (!(p > 1.0)) throw InvalidArgument("dual witness needs p > 1");
  if (!(norm > zero_tol)) throw InvalidArgument("dual witness of a zero-seminorm function is undefined");
  return fn::scale(std::pow(norm, 1.0 - p), fn::seminorm_power(f, rho, p - 1.0));
}

inline double conjugate_exponent(double p) {
  if (!(p > 1.0)) throw InvalidArgument("conjugate exponent needs p > 1");
  return p / (p - 1.0);
}

/// One line of an inequality report; `margin` = rhs - lhs.
struct InequalityRow {
  std::string check;
  std::string tag;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
};

inline InequalityRow make_row(std::string check, std::string tag, double lhs, double rhs, double tol) {
  return {std::move(check), std::move(tag), lhs, rhs, rhs - lhs, lhs <= rhs + tol};
}

/// mu(Theta(g f), A) <= ||g||_{p*} ||f||_p for real-valued g.
inline InequalityRow holder_margin(const FunctionSpec& f, const FunctionSpec& g, const SubsetSpec& a, double p,
                                   const Seminorm& rho, const std::vector<Gauge>& schedule, double tol,
                                   const LpOptions& opt = {}) {
  if (g.dim() != 1) throw DimensionMismatch(1, g.dim());
  const double q = conjugate_exponent(p);
  const double lhs = variational_measure(Theta{fn::product(g, f)}, a, rho, schedule, opt.search).reported;
  const double rhs = up_seminorm(g, a, q, scalar_abs(), schedule, opt).value * up_seminorm(f, a, p, rho, schedule, opt).value;
  return make_row("holder", "holder-inequality", lhs, rhs, tol);
}

/// ||f + g||_p <= ||f||_p + ||g||_p
inline InequalityRow minkowski_margin(const FunctionSpec& f, const FunctionSpec& g, const SubsetSpec& a, double p,
                                      const Seminorm& rho, const std::vector<Gauge>& schedule, double tol,
                                      const LpOptions& opt = {}) {
  const double lhs = up_seminorm(f + g, a, p, rho, schedule, opt).value;
  const double rhs = up_seminorm(f, a, p, rho, schedule, opt).value + up_seminorm(g, a, p, rho, schedule, opt).value;
  return make_row("minkowski", "seminormed-space-triangle", lhs, rhs, tol);
}

/// ||f||_p <= m(A)^(1/p - 1/q) ||f||_q for 1 <= p < q.
inline InequalityRow embedding_margin(const FunctionSpec& f, const SubsetSpec& a, double p, double q,
                                      const Seminorm& rho, const std::vector<Gauge>& schedule, double tol,
                                      const LpOptions& opt = {}) {
  if (!(p >= 1.0) || !(p < q)) throw InvalidArgument("embedding needs 1 <= p < q");
  const double lhs = up_seminorm(f, a, p, rho, schedule, opt).value;
  const double c = std::pow(a.lebesgue_measure(), 1.0 / p - 1.0 / q);
  const double rhs = c * up_seminorm(f, a, q, rho, schedule, opt).value;
  return make_row("embedding", "measure-embedding-constant", lhs, rhs, tol);
}

struct DualWitnessReport {
  double norm = 0.0;
  double witness_norm = 0.0;
  double pairing = 0.0;
  bool unit_ok = false;
  bool pairing_ok = false;
};

/// ||f*||_{p*} = 1 and mu(Theta(f* f), A) = ||f||_p.
inline DualWitnessReport dual_witness_check(const FunctionSpec& f, const SubsetSpec& a, double p, const Seminorm& rho,
                                            const std::vector<Gauge>& schedule, double tol,
                                            const LpOptions& opt = {}) {
  DualWitnessReport rep;
  rep.norm = up_seminorm(f, a, p, rho, schedule, opt).value;
  const FunctionSpec w = dual_witness(f, p, rho, rep.norm);
  rep.witness_norm = up_seminorm(w, a, conjugate_exponent(p), scalar_abs(), schedule, opt).value;
  rep.pairing = variational_measure(Theta{fn::product(w, f)}, a, rho, schedule, opt.search).reported;
  rep.unit_ok = std::abs(rep.witness_norm - 1.0) <= tol;
  rep.pairing_ok = std::abs(rep.pairing - rep.norm) <= tol;
  return rep;
}

struct ChebyshevReport {
  SubsetSpec level_set;
  double measure = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// m({t : rho(f(t)) >= level}) <= level^(-p) mu(rho(f)^p (v - u), [a,b]).
inline ChebyshevReport chebyshev_check(const FunctionSpec& f, double p, double level, const Seminorm& rho,
                                       const std::vector<Gauge>& schedule, double tol, const LpOptions& opt = {}) {
  if (!(level > 0.0)) throw InvalidArgument("Chebyshev level must be positive");
  ChebyshevReport rep;
  rep.level_set = level_set(f, rho, level);
  rep.measure = rep.level_set.lebesgue_measure();
  const Interval d = f.domain();
  const double mu = up_seminorm(f, SubsetSpec::interval(d.lo, d.hi), p, rho, schedule, opt).measure.reported;
  rep.bound = std::pow(level, -p) * mu;
  rep.pass = rep.measure <= rep.bound + tol;
  return rep;
}

struct FatouReport {
  std::vector<double> norms;
  /// min over the last `window` prefix norms.
  double prefix_liminf = 0.0;
  double limit_value = 0.0;
  bool pointwise_ok = true;
  std::vector<double> offending;
  bool pass = false;
};

using SequenceGenerator = std::function<FunctionSpec(std::size_t)>;

/// ||f|| <= liminf ||f_n|| over the prefix n = 1..count. Pointwise
/// convergence is audited on `grid` minus `exceptional` by comparing f with
/// f_horizon to a relative tolerance.
inline FatouReport fatou_check(const SequenceGenerator& seq, std::size_t count, std::size_t horizon,
                               const FunctionSpec& f, const SubsetSpec& a, double p, const Seminorm& rho,
                               const std::vector<Gauge>& schedule, const std::vector<double>& grid,
                               const SubsetSpec& exceptional, double tol, double pointwise_tol = 1e-6,
                               std::size_t window = 1, const LpOptions& opt = {}) {
  if (count < 1 || window < 1 || window > count) throw InvalidArgument("Fatou check needs 1 <= window <= count");
  if (horizon < count) throw InvalidArgument("pointwise horizon must reach the prefix");
  FatouReport rep;
  const FunctionSpec far = seq(horizon);
  for (double x : grid) {
    if (exceptional.contains(x)) continue;
    const Vector lim = eval(f, x);
    const double gap = rho(eval(far, x) - lim);
    if (gap > pointwise_tol * std::max(1.0, rho(lim))) rep.offending.push_back(x);
  }
  rep.pointwise_ok = rep.offending.empty();
  if (!rep.pointwise_ok) throw InvalidArgument("sequence does not converge pointwise on the audit grid");

  for (std::size_t n = 1; n <= count; ++n) rep.norms.push_back(up_seminorm(seq(n), a, p, rho, schedule, opt).value);
  rep.prefix_liminf = *std::min_element(rep.norms.end() - static_cast<std::ptrdiff_t>(window), rep.norms.end());
  rep.limit_value = up_seminorm(f, a, p, rho, schedule, opt).value;
  rep.pass = rep.limit_value <= rep.prefix_liminf + tol;
  return rep;
}

inline FatouReport fatou_check(const std::vector<FunctionSpec>& seq, const FunctionSpec& f, const SubsetSpec& a,
                               double p, const Seminorm& rho, const std::vector<Gauge>& schedule,
                               const std::vector<double>& grid, const SubsetSpec& exceptional, double tol,
                               double pointwise_tol = 1e-6, std::size_t window = 1, const LpOptions& opt = {}) {
  if (seq.empty()) throw InvalidArgument("Fatou check needs a nonempty sequence");
  auto gen = [&seq](std::size_t n) { return seq.at(n - 1); };
  return fatou_check(gen, seq.size(), seq.size(), f, a, p, rho, schedule, grid, exceptional, tol, pointwise_tol,
                     window, opt);
}

/// Upper-integrability of rho(f)^p on A, the strong residual of f 1_A
/// against F at the finest schedule gauge, and their conjunction.
inline LpReport lp_membership(const FunctionSpec& f, const FunctionSpec& F, const SubsetSpec& a, double p,
                              const SpaceSpec& space, std::size_t i, const std::vector<Gauge>& schedule, double tol,
                              int samples = 4, const LpOptions& opt = {}) {
  LpReport rep = up_seminorm(f, a, p, space, i, schedule, opt);
  const FunctionSpec restricted = indicator_restrict(f, a);
  const auto residual = skh_residual(restricted, F, space, schedule.back(), samples, opt.search.seed,
                                     opt.search.depth_limit);
  rep.skh_ok = residual[i] <= tol;
  rep.lp_member = rep.upper_integrable && rep.skh_ok;
  return rep;
}

}  // namespace gaugeint
