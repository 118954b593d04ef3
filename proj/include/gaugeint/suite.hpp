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

// The acceptance battery: thirteen end-to-end checks with pinned
// tolerances, shared by the acceptance test binary and the CLI.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gaugeint/error.hpp"
#include "gaugeint/funcspace.hpp"
#include "gaugeint/integrate.hpp"
#include "gaugeint/lpspaces.hpp"
#include "gaugeint/partitions.hpp"
#include "gaugeint/seqlab.hpp"
#include "gaugeint/spaces.hpp"
#include "gaugeint/subset.hpp"
#include "gaugeint/variation.hpp"

namespace gaugeint::suite {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string tag;
  std::string expected;
  double observed = 0.0;
  /// Distance from failing: positive when passing.
  double margin = 0.0;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  /// Randomized corpus size for the step-function criteria.
  int corpus = 100;
  int budget = 256;
};

// ---------------------------------------------------------------------------
// Corpus helpers

inline const Interval kUnit{0.0, 1.0};

/// Anchor schedule for piecewise-constant integrands: narrow widths at every
/// listed point, shallow base cells elsewhere.
inline std::vector<Gauge> step_schedule(const std::vector<double>& anchors, Interval domain = kUnit, int steps = 3) {
  return anchor_schedule(anchors, 1e-12, 0.05, domain, 0.5, steps);
}

inline std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

inline Seminorm random_seminorm(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<std::size_t> coord(0, dim - 1);
  std::uniform_real_distribution<double> weight(0.0, 2.0);
  switch (kind(rng)) {
    case 0: return AbsCoordinate{coord(rng)};
    case 1: {
      std::vector<double> w(dim);
      for (double& x : w) x = weight(rng);
      return WeightedSum{w};
    }
    case 2: {
      std::vector<std::size_t> idx{coord(rng)};
      if (dim > 1) idx.push_back(coord(rng));
      return SupOverSubset{idx};
    }
    default: return Euclidean{};
  }
}

inline FunctionSpec random_step(std::mt19937_64& rng, std::size_t dim, int max_pieces = 6, double scale = 3.0,
                                Interval domain = kUnit) {
  std::uniform_int_distribution<int> pieces(1, max_pieces);
  std::uniform_real_distribution<double> where(domain.lo, domain.hi);
  std::uniform_real_distribution<double> value(-scale, scale);
  const int n = pieces(rng);
  std::vector<double> breaks{domain.lo, domain.hi};
  while (static_cast<int>(breaks.size()) < n + 1) {
    const double x = where(rng);
    if (std::none_of(breaks.begin(), breaks.end(), [x](double b) { return std::abs(b - x) < 1e-3; }))
      breaks.push_back(x);
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<Vector> vals;
  for (int i = 0; i < n; ++i) {
    Vector v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = value(rng);
    vals.push_back(v);
  }
  return fn::step(breaks, vals);
}

/// (sum rho(c_i)^p len_i)^(1/p) over the pieces of a step function on A.
inline double step_oracle(const FunctionSpec& f, const Seminorm& rho, double p, const SubsetSpec& a) {
  const auto& node = std::get<StepNode>(f.node().kind);
  double acc = 0.0;
  for (std::size_t i = 0; i < node.pieces.size(); ++i) {
    const double len =
        intersect(a, SubsetSpec::interval(node.breaks[i], node.breaks[i + 1])).lebesgue_measure();
    acc += std::pow(rho(node.pieces[i]), p) * len;
  }
  return std::pow(acc, 1.0 / p);
}

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

template <class Body>
CriterionResult timed(int id, std::string name, std::string tag, std::string expected, Body body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.tag = std::move(tag);
  r.expected = std::move(expected);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Criteria

/// Oscillatory-singular derivative integrates to F(1) - F(0) = sin(1).
inline CriterionResult fundamental_theorem(const SuiteOptions&) {
  return detail::timed(1, "fundamental-theorem-golden", "kh-integral-value", "|z - sin(1)| <= 1e-4, < 10 s",
                       [](CriterionResult& r) {
    const auto pair = hk_derivative_pair("osc-sing");
    const auto schedule = graded_schedule(kUnit, 0.0, 1e-2, 0.16, 3.0, 0.05, 0.5, 8);
    const auto t0 = std::chrono::steady_clock::now();
    auto [cls, rep] = hk_integrate(pair.f, pair.space, schedule, 1e-4);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double exact = pair.F(1.0)[0] - pair.F(0.0)[0];
    const double err = std::abs(cls.representative[0] - exact);
    r.observed = cls.representative[0];
    r.margin = 1e-4 - err;
    r.pass = err <= 1e-4 && secs < 10.0;
    r.detail = "error=" + detail::fmt(err) + " verdict=" + to_string(rep.verdict) +
               " steps=" + std::to_string(rep.steps.size()) + " cells=" + std::to_string(rep.steps.back().cells);
  });
}

/// Finite-support functions integrate to zero and carry no variation.
inline CriterionResult null_function(const SuiteOptions& opt) {
  return detail::timed(2, "null-function", "finite-support-null", "integral 0 within tol, mu <= 1e-6",
                       [&](CriterionResult& r) {
    std::mt19937_64 rng(opt.seed + 2);
    std::uniform_real_distribution<double> where(0.0, 1.0);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    std::vector<std::pair<FunctionSpec, SpaceSpec>> corpus;
    const auto named = hk_derivative_pair("finite-support-null");
    corpus.push_back({named.f, named.space});
    for (int c = 0; c < 9; ++c) {
      std::vector<double> pts;
      for (int i = 0; i < 1 + c % 4; ++i) pts.push_back(where(rng));
      Vector v(2);
      v[0] = value(rng);
      v[1] = value(rng);
      corpus.push_back({fn::indicator(SubsetSpec::point_set(pts), v, kUnit), SpaceSpec(2, {Euclidean{}, AbsCoordinate{1}})});
    }
    double worst_int = 0.0;
    double worst_mu = 0.0;
    bool all_converged = true;
    for (const auto& [f, space] : corpus) {
      const auto pts = std::get<IndicatorNode>(f.node().kind).set.points();
      const auto schedule = anchor_schedule(pts, 1e-6, 0.5, kUnit, 0.5, 8);
      auto [cls, rep] = hk_integrate(f, space, schedule, 1e-6);
      all_converged = all_converged && rep.verdict == Verdict::converged;
      for (std::size_t i = 0; i < space.count(); ++i) {
        worst_int = std::max(worst_int, space.seminorm(i)(cls.representative));
        const auto mu = variational_measure(Theta{f}, SubsetSpec::interval(0.0, 1.0), space.seminorm(i), schedule);
        worst_mu = std::max(worst_mu, mu.reported);
      }
    }
    r.observed = worst_mu;
    r.margin = std::min(1e-6 - worst_int, 1e-6 - worst_mu);
    r.pass = all_converged && worst_int <= 1e-6 && worst_mu <= 1e-6;
    r.detail = "functions=" + std::to_string(corpus.size()) + " max_integral_seminorm=" + detail::fmt(worst_int) +
               " max_mu=" + detail::fmt(worst_mu);
  });
}

/// Primitives differing by a kernel-valued shift are indistinguishable.
inline CriterionResult kernel_nonuniqueness(const SuiteOptions& opt) {
  return detail::timed(3, "kernel-non-uniqueness", "integral-class-mod-kernel", "bitwise-equal residuals, class_equal",
                       [&](CriterionResult& r) {
    const auto pair = hk_derivative_pair("kernel-shifted");
    const Gauge g = Gauge::constant(1e-3, kUnit);
    const auto res_f = skh_residual(pair.f, pair.F, pair.space, g, 4, opt.seed);
    const auto res_g = skh_residual(pair.f, *pair.G, pair.space, g, 4, opt.seed);
    const bool bitwise = res_f == res_g;
    auto [cls, rep] = hk_integrate(pair.f, pair.space, constant_schedule(kUnit, 0.5, 0.5, 22), 1e-5);
    const Vector inc_f = pair.F(1.0) - pair.F(0.0);
    const Vector inc_g = (*pair.G)(1.0) - (*pair.G)(0.0);
    const double tol = 1e-5 + cls.bracket[0];
    const bool cls_ok = class_equal(pair.space, cls.representative, inc_f, tol) &&
                        class_equal(pair.space, cls.representative, inc_g, tol) &&
                        class_equal(pair.space, inc_f, inc_g, 0.0);
    const double kernel_gap = std::abs(inc_g[1] - inc_f[1]);
    r.observed = res_f[0];
    r.margin = bitwise && cls_ok ? tol - pair.space.seminorm(0)(cls.representative - inc_g) : -1.0;
    r.pass = bitwise && cls_ok && rep.verdict == Verdict::converged;
    r.detail = std::string("bitwise=") + (bitwise ? "true" : "false") + " class_equal=" + (cls_ok ? "true" : "false") +
               " kernel_direction_gap=" + detail::fmt(kernel_gap);
  });
}

/// U^p seminorm of random step functions against the exact oracle.
inline CriterionResult step_exactness(const SuiteOptions& opt) {
  return detail::timed(4, "step-function-exactness", "up-seminorm", "|value - oracle| <= 1e-9", [&](CriterionResult& r) {
    std::mt19937_64 rng(opt.seed + 4);
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    double worst = 0.0;
    int checks = 0;
    for (int c = 0; c < opt.corpus; ++c) {
      const std::size_t n = dim(rng);
      const FunctionSpec f = random_step(rng, n);
      const Seminorm rho = random_seminorm(rng, n);
      const auto schedule = step_schedule(critical_points(f));
      const SubsetSpec a = SubsetSpec::interval(0.0, 1.0);
      for (double p : {1.0, 2.0, 3.0}) {
        const double got = up_seminorm(f, a, p, rho, schedule, {{opt.budget}}).value;
        worst = std::max(worst, std::abs(got - step_oracle(f, rho, p, a)));
        ++checks;
      }
    }
    r.observed = worst;
    r.margin = 1e-9 - worst;
    r.pass = worst <= 1e-9;
    r.detail = "checks=" + std::to_string(checks) + " max_abs_error=" + detail::fmt(worst);
  });
}

/// Hoelder, Minkowski, embedding and dual-witness contracts on random step pairs.
inline CriterionResult inequality_battery(const SuiteOptions& opt) {
  return detail::timed(5, "inequality-battery", "holder-minkowski-embedding-dual", "zero violations at tol 1e-9",
                       [&](CriterionResult& r) {
    std::mt19937_64 rng(opt.seed + 5);
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double ps[] = {1.5, 2.0, 3.0};
    const double tol = 1e-9;
    const LpOptions lp{{opt.budget}};
    int violations = 0;
    int checks = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::string first_failure;
    auto note = [&](const InequalityRow& row) {
      ++checks;
      worst_margin = std::min(worst_margin, row.margin);
      if (!row.pass) {
        ++violations;
        if (first_failure.empty()) first_failure = row.check;
      }
    };
    for (int c = 0; c < opt.corpus; ++c) {
      const std::size_t n = dim(rng);
      const FunctionSpec f = random_step(rng, n);
      const FunctionSpec g = random_step(rng, n);
      const FunctionSpec w = random_step(rng, 1);
      const Seminorm rho = random_seminorm(rng, n);
      const double p = ps[pick(rng)];
      SubsetSpec a = SubsetSpec::interval(0.0, 1.0);
      if (c % 2 == 1) {
        const double x = unit(rng), y = unit(rng);
        a = SubsetSpec::interval(std::min(x, y) * 0.5, 0.5 + std::max(x, y) * 0.5);
      }
      const auto anchors = merged(merged(critical_points(f), critical_points(g)),
                                  merged(critical_points(w), a.boundary_points()));
      const auto schedule = step_schedule(anchors);
      note(holder_margin(f, w, a, p, rho, schedule, tol, lp));
      note(minkowski_margin(f, g, a, p, rho, schedule, tol, lp));
      note(embedding_margin(f, a, 1.0, p, rho, schedule, tol, lp));
      if (up_seminorm(f, a, p, rho, schedule, lp).value > 1e-6) {
        const auto dual = dual_witness_check(f, a, p, rho, schedule, tol, lp);
        note(make_row("dual-unit", "dual-witness", std::abs(dual.witness_norm - 1.0), tol, 0.0));
        note(make_row("dual-pairing", "dual-witness", std::abs(dual.pairing - dual.norm), tol, 0.0));
      }
    }
    r.observed = violations;
    r.margin = worst_margin;
    r.pass = violations == 0;
    r.detail = "checks=" + std::to_string(checks) + " violations=" + std::to_string(violations) +
               " min_margin=" + detail::fmt(worst_margin) + (first_failure.empty() ? "" : " first=" + first_failure);
  });
}

/// Level-set measure against level^(-p) mu(Theta^p f).
inline CriterionResult chebyshev(const SuiteOptions& opt) {
  return detail::timed(6, "chebyshev", "chebyshev-level-set", "zero violations", [&](CriterionResult& r) {
    std::mt19937_64 rng(opt.seed + 6);
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    std::uniform_real_distribution<double> lvl(0.1, 5.0);
    const LpOptions lp{{opt.budget}};
    int violations = 0;
    int checks = 0;
    double worst = std::numeric_limits<double>::infinity();
    auto note = [&](const ChebyshevReport& c) {
      ++checks;
      worst = std::min(worst, c.bound - c.measure);
      if (!c.pass) ++violations;
    };
    for (int c = 0; c < opt.corpus; ++c) {
      const std::size_t n = dim(rng);
      const FunctionSpec f = random_step(rng, n);
      const Seminorm rho = random_seminorm(rng, n);
      const auto schedule = step_schedule(critical_points(f));
      for (double p : {1.0, 2.0, 3.0}) note(chebyshev_check(f, p, lvl(rng), rho, schedule, 1e-9, lp));
    }
    const std::vector<FunctionSpec> smooth{
        fn::polynomial({{0.0, 1.0}}, kUnit),
        fn::polynomial({{0.0, 0.0, 1.0}}, kUnit),
        fn::polynomial({{1.0, 0.0, 0.0, 2.0}}, kUnit),
        fn::trig({1.5}, {2.0 * std::acos(-1.0)}, {0.0}, kUnit),
        fn::polynomial({{-1.0, 3.0, 0.0, -1.0}}, kUnit),
    };
    const auto schedule = constant_schedule(kUnit, 0.016, 0.5, 4);
    for (const auto& f : smooth)
      for (double p : {1.0, 2.0, 3.0})
        for (double level : {0.25, 0.5, 1.0})
          note(chebyshev_check(f, p, level, scalar_abs(), schedule, 1e-9, lp));
    r.observed = violations;
    r.margin = worst;
    r.pass = violations == 0;
    r.detail = "checks=" + std::to_string(checks) + " violations=" + std::to_string(violations) +
               " min_slack=" + detail::fmt(worst);
  });
}

/// mu(Theta t, [0,1]) ~ 1/2 and the length function on [0.2, 0.7].
inline CriterionResult calibration(const SuiteOptions& opt) {
  return detail::timed(7, "variational-measure-calibration", "absolute-integral-identity",
                       "|mu(t) - 0.5| <= 1e-3, |mu(len) - 0.5| <= 1e-9", [&](CriterionResult& r) {
    const SearchOptions so{opt.budget};
    const auto ramp = variational_measure(Theta{fn::polynomial({{0.0, 1.0}}, kUnit)}, SubsetSpec::interval(0.0, 1.0),
                                          scalar_abs(), constant_schedule(kUnit, 0.064, 0.5, 8), so);
    const auto len = variational_measure(Length{}, SubsetSpec::interval(0.2, 0.7), scalar_abs(),
                                         step_schedule({0.2, 0.7}), so);
    const double e1 = std::abs(ramp.reported - 0.5);
    const double e2 = std::abs(len.reported - 0.5);
    r.observed = ramp.reported;
    r.margin = std::min(1e-3 - e1, 1e-9 - e2);
    r.pass = e1 <= 1e-3 && e2 <= 1e-9;
    r.detail = "ramp=" + detail::fmt(ramp.reported) + " length=" + detail::fmt(len.reported) +
               " ramp_monotone=" + (ramp.monotone_ok ? "true" : "false");
  });
}

/// Additivity over splits of at most five pieces, and the non-covering inequality.
inline CriterionResult additivity(const SuiteOptions& opt) {
  return detail::timed(8, "additivity", "finite-additivity", "|whole - sum| <= 1e-3, family inequality holds",
                       [&](CriterionResult& r) {
    std::mt19937_64 rng(opt.seed + 8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> npieces(2, 5);
    std::vector<FunctionSpec> corpus{fn::polynomial({{0.0, 1.0}}, kUnit), fn::polynomial({{0.0, 0.0, 1.0}}, kUnit),
                                     fn::constant(Vector{1.0}, kUnit)};
    for (int c = 0; c < 12; ++c) corpus.push_back(random_step(rng, 1));
    const SearchOptions so{opt.budget};
    double worst = 0.0;
    bool family_ok = true;
    for (const auto& f : corpus) {
      for (int trial = 0; trial < 2; ++trial) {
        const int n = npieces(rng);
        std::vector<double> pts{0.0, 1.0};
        while (static_cast<int>(pts.size()) < n + 1) pts.push_back(0.02 + 0.96 * unit(rng));
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const double x = 0.1 + 0.3 * unit(rng), y = 0.55 + 0.3 * unit(rng);
        const std::vector<Interval> family{{0.0, x * 0.5}, {x, y}, {y + 0.05, 0.98}};
        std::vector<double> anchors = merged(critical_points(f), pts);
        for (const auto& iv : family) anchors = merged(anchors, {iv.lo, iv.hi});
        const auto schedule = anchor_schedule(anchors, 1e-12, 0.002, kUnit, 0.5, 3);
        const auto rep = additivity_check(Theta{f}, scalar_abs(), pts, schedule, 1e-3, family, so);
        worst = std::max(worst, rep.difference);
        family_ok = family_ok && rep.family_ok;
      }
    }
    r.observed = worst;
    r.margin = 1e-3 - worst;
    r.pass = worst <= 1e-3 && family_ok;
    r.detail = "functions=" + std::to_string(corpus.size()) + " max_difference=" + detail::fmt(worst) +
               " family_ok=" + (family_ok ? "true" : "false");
  });
}

/// Ascending sets A_n = [0, 1 - 1/(n+1)], n = 1..8, under f = 1.
inline CriterionResult ascending(const SuiteOptions& opt) {
  return detail::timed(9, "ascending-sets", "ascending-limit",
                       "non-decreasing, each value within 1e-3 of 1-1/(n+1), gap to the union shrinking, "
                       "mu(A_n) + mu(cl(U\\A_n)) = mu(U) within 1e-3",
                       [&](CriterionResult& r) {
    const FunctionSpec one = fn::constant(Vector{1.0}, kUnit);
    std::vector<SubsetSpec> sets;
    std::vector<double> anchors{0.0, 1.0};
    for (int n = 1; n <= 8; ++n) {
      const double hi = 1.0 - 1.0 / (n + 1.0);
      sets.push_back(SubsetSpec::interval(0.0, hi));
      anchors.push_back(hi);
    }
    const auto rep = ascending_limit_check(ThetaP{one, 1.0, scalar_abs()}, scalar_abs(), sets,
                                           SubsetSpec::interval(0.0, 1.0), step_schedule(anchors), 1e-3,
                                           {opt.budget});
    double oracle_err = std::abs(rep.union_value - 1.0);
    bool shrinking = true;
    for (std::size_t n = 0; n < rep.values.size(); ++n) {
      oracle_err = std::max(oracle_err, std::abs(rep.values[n] - (1.0 - 1.0 / (static_cast<double>(n) + 2.0))));
      if (n > 0) shrinking = shrinking && rep.values[n] > rep.values[n - 1];
    }
    // At N = 8 the exact gap to the union is 1/9; a 1e-3 gap needs N >= 999.
    const double literal_gap = rep.union_value - rep.values.back();
    r.observed = rep.values.back();
    r.margin = 1e-3 - oracle_err;
    r.pass = rep.pass && shrinking && oracle_err <= 1e-3;
    r.detail = "union=" + detail::fmt(rep.union_value) + " last=" + detail::fmt(rep.values.back()) +
               " gap_to_union=" + detail::fmt(literal_gap) + " (exact 1/9 at N=8, so a literal 1e-3 gap is unattainable)" +
               " oracle_err=" + detail::fmt(oracle_err) + " remainder_identity=" + (rep.pass ? "true" : "false");
  });
}

/// f_n = n 1_[0,1/n) has unit norm and a zero limit.
inline CriterionResult fatou_witness(const SuiteOptions& opt) {
  return detail::timed(10, "fatou-witness", "fatou-lemma", "||f_n|| = 1, ||f|| = 0 < liminf", [&](CriterionResult& r) {
    const std::size_t count = 12;
    auto gen = [](std::size_t n) {
      if (n == 1) return fn::step({0.0, 1.0}, {Vector{1.0}});
      const double x = 1.0 / static_cast<double>(n);
      return fn::step({0.0, x, 1.0}, {Vector{static_cast<double>(n)}, Vector{0.0}});
    };
    std::vector<double> anchors{0.0, 1.0};
    for (std::size_t n = 1; n <= count; ++n) anchors.push_back(1.0 / static_cast<double>(n));
    std::vector<double> grid;
    for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000.0);
    const auto rep = fatou_check(gen, count, std::size_t{1} << 20, fn::zero(kUnit, 1), SubsetSpec::interval(0.0, 1.0),
                                 1.0, scalar_abs(), step_schedule(anchors), grid, SubsetSpec::point_set({0.0}), 1e-9,
                                 1e-12, 1, {{opt.budget}});
    double unit_err = 0.0;
    for (double v : rep.norms) unit_err = std::max(unit_err, std::abs(v - 1.0));
    r.observed = rep.limit_value;
    r.margin = rep.prefix_liminf - rep.limit_value;
    r.pass = rep.pass && unit_err <= 1e-9 && rep.limit_value <= 1e-9 && rep.prefix_liminf > rep.limit_value;
    r.detail = "max_norm_error=" + detail::fmt(unit_err) + " prefix_liminf=" + detail::fmt(rep.prefix_liminf) +
               " limit=" + detail::fmt(rep.limit_value);
  });
}

/// extract_rapid on 1/k and a three-seminorm diagonal extraction.
inline CriterionResult rapid_cauchy(const SuiteOptions&) {
  return detail::timed(11, "rapid-cauchy-pipeline", "diagonalization", "rapid subsequence; all matrix gaps < 2^-k",
                       [](CriterionResult& r) {
    std::vector<Vector> harmonic;
    for (int k = 1; k <= (1 << 15); ++k) harmonic.push_back(Vector{1.0 / k});
    const SpaceSpec line = SpaceSpec::real_line();
    const std::size_t K1 = 6;
    const auto ex = extract_rapid(harmonic, seminorm_metric(line, 0), K1);
    const auto rc = is_rapidly_cauchy(ex.subsequence, seminorm_metric(line, 0), EpsSeries::geometric(0.5), K1);

    const SpaceSpec family(3, {AbsCoordinate{0}, AbsCoordinate{1}, AbsCoordinate{2}}, "R3");
    std::vector<Vector> seq;
    for (int i = 1; i <= (1 << 18); ++i) {
      const double x = 1.0 / i;
      seq.push_back(Vector{x, 2.0 * x, (i % 2 ? -1.0 : 1.0) * x});
    }
    const auto diag = diagonal_extract(seq, family, 12);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& row : diag.matrix) worst = std::min(worst, row.threshold - row.gap);
    r.observed = static_cast<double>(diag.matrix.size());
    r.margin = worst;
    r.pass = rc.rapid && diag.all_pass;
    r.detail = std::string("extract_rapid_ok=") + (rc.rapid ? "true" : "false") +
               " last_index=" + std::to_string(ex.indices.back() + 1) + " matrix_rows=" +
               std::to_string(diag.matrix.size()) + " min_slack=" + detail::fmt(worst);
  });
}

/// Tail bound ||f - f_n|| <= sum_{j>=n} 4^{-j} and the Fatou bound for the limit.
inline CriterionResult completeness(const SuiteOptions& opt) {
  return detail::timed(12, "completeness-experiment", "rapid-cauchy-tail-bound",
                       "||f - f_n|| <= sum_{j>=n} 4^-j + 1e-6, n <= 10", [&](CriterionResult& r) {
    const std::size_t M = 14;
    std::vector<FunctionSpec> flat, dyadic;
    std::vector<double> anchors{0.0, 1.0};
    for (std::size_t k = 1; k <= M; ++k) {
      const double h = std::pow(4.0, -static_cast<double>(k));
      flat.push_back(fn::constant(Vector{h}, kUnit));
      const double lo = std::pow(2.0, -static_cast<double>(k));
      dyadic.push_back(fn::indicator(SubsetSpec::interval(lo, 2.0 * lo), Vector{h}, kUnit));
      anchors.push_back(lo);
    }
    std::vector<double> grid;
    for (int i = 0; i <= 1000; ++i) grid.push_back(i / 1000.0);
    const auto schedule = step_schedule(anchors);
    const auto eps = EpsSeries::geometric(0.5);
    bool pass = true;
    double worst = std::numeric_limits<double>::infinity();
    std::string detail;
    for (const auto* terms : {&flat, &dyadic}) {
      for (double p : {1.0, 2.0}) {
        const auto rep = completeness_experiment(*terms, eps, p, SubsetSpec::interval(0.0, 1.0), scalar_abs(),
                                                 schedule, grid, 10, 1e-6, {{opt.budget}});
        for (const auto& row : rep.rows) worst = std::min(worst, row.bound - row.distance);
        pass = pass && rep.pass;
        detail += (terms == &flat ? "flat" : "dyadic") + std::string(" p=") + detail::fmt(p) + ":" +
                  (rep.pass ? "pass" : "fail") + " ";
      }
    }
    r.observed = worst;
    r.margin = worst + 1e-6;
    r.pass = pass;
    r.detail = detail + "min_slack=" + detail::fmt(worst);
  });
}

/// The U^p limit of polynomial partial sums keeps a primitive.
inline CriterionResult closedness(const SuiteOptions& opt) {
  return detail::timed(13, "closedness-consequence", "lp-closed-subspace", "skh_residual(limit) <= 1e-4",
                       [&](CriterionResult& r) {
    const std::size_t M = 40;
    std::vector<FunctionSpec> terms, prims;
    for (std::size_t k = 0; k <= M; ++k) {
      std::vector<double> c(k + 1, 0.0), C(k + 2, 0.0);
      c[k] = std::pow(0.5, static_cast<double>(k));
      C[k + 1] = c[k] / static_cast<double>(k + 1);
      terms.push_back(fn::polynomial({c}, kUnit));
      prims.push_back(fn::polynomial({C}, kUnit));
    }
    const SpaceSpec line = SpaceSpec::real_line();
    const auto schedule = constant_schedule(kUnit, 0.0016, 0.5, 6);
    const auto coarse = constant_schedule(kUnit, 0.0016, 0.5, 4);
    const FunctionSpec limit = fn::sum(terms);
    const FunctionSpec primitive = fn::sum(prims);

    // The members are L^p and approach the limit in U^2.
    bool members_ok = true;
    double prev = std::numeric_limits<double>::infinity();
    bool shrinking = true;
    for (std::size_t n = 1; n <= 6; ++n) {
      const FunctionSpec fn_n = fn::sum(std::vector<FunctionSpec>(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(n)));
      const FunctionSpec Fn_n = fn::sum(std::vector<FunctionSpec>(prims.begin(), prims.begin() + static_cast<std::ptrdiff_t>(n)));
      const auto mem = lp_membership(fn_n, Fn_n, SubsetSpec::interval(0.0, 1.0), 2.0, line, 0, coarse, 1e-4, 2,
                                     {{opt.budget}, 1e-3});
      members_ok = members_ok && mem.skh_ok;
      const double dist = up_seminorm(limit - fn_n, SubsetSpec::interval(0.0, 1.0), 2.0, scalar_abs(), coarse,
                                      {{opt.budget}}).value;
      shrinking = shrinking && dist < prev;
      prev = dist;
    }
    const auto residual = skh_residual(limit, primitive, line, schedule.back(), 4, opt.seed);
    r.observed = residual[0];
    r.margin = 1e-4 - residual[0];
    r.pass = residual[0] <= 1e-4 && members_ok && shrinking;
    r.detail = "residual=" + detail::fmt(residual[0]) + " members_skh_ok=" + (members_ok ? "true" : "false") +
               " u2_distances_shrink=" + (shrinking ? "true" : "false") + " last_u2_distance=" + detail::fmt(prev);
  });
}

inline std::vector<std::function<CriterionResult(const SuiteOptions&)>> criteria() {
  return {fundamental_theorem, null_function, kernel_nonuniqueness, step_exactness, inequality_battery,
          chebyshev,           calibration,   additivity,           ascending,      fatou_witness,
          rapid_cauchy,        completeness,  closedness};
}

inline std::vector<CriterionResult> run_all(const SuiteOptions& opt = {}) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) out.push_back(c(opt));
  return out;
}

}  // namespace gaugeint::suite
