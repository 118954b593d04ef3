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

// Riemann sums over tagged partitions, integral estimation along a gauge
// schedule, and strong-residual checks against candidate primitives.
//
// All sums run left to right over cells, single threaded, so results are
// bitwise reproducible.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gaugeint/error.hpp"
#include "gaugeint/funcspace.hpp"
#include "gaugeint/partitions.hpp"
#include "gaugeint/spaces.hpp"
#include "gaugeint/subset.hpp"

namespace gaugeint {

/// z + ker, carried as one representative with per-seminorm error bounds.
struct IntegralClass {
  Vector representative;
  SpaceSpec space;
  std::vector<double> bracket;
};

enum class Verdict { converged, stalled, depth_exceeded };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::stalled: return "stalled";
    case Verdict::depth_exceeded: return "depth-exceeded";
  }
  return "unknown";
}

struct ConvergenceStep {
  std::string gauge_id;
  std::size_t cells = 0;
  Vector sum;
  /// Seminorms of sum_k - sum_{k-1}; empty on the first step.
  std::vector<double> diff;
};

struct ConvergenceReport {
  std::vector<ConvergenceStep> steps;
  Verdict verdict = Verdict::stalled;
};

inline std::string gauge_id(std::size_t step, const Gauge& g) {
  return "k=" + std::to_string(step + 1) + ":" + g.kind_name();
}

inline Vector riemann_sum(const FunctionSpec& f, const TaggedPartition& d) {
  if (d.kind() != PartitionKind::full) throw InvalidArgument("riemann_sum needs a full partition");
  Vector acc(f.dim());
  for (const Cell& c : d.cells()) acc += f(c.t) * c.length();
  return acc;
}

/// Sum over cells tagged in E of rho(h([u,v], t)).
inline double rho_partial_sum(const IntervalPointFn& h, const TaggedPartition& d, const SubsetSpec& e,
                              const Seminorm& rho) {
  double acc = 0.0;
  for (const Cell& c : d.cells())
    if (e.contains(c.t)) acc += ipf_rho(h, rho, c.u, c.v, c.t);
  return acc;
}

inline double rho_partial_sum(const IntervalPointFn& h, const TaggedPartition& d, const SubsetSpec& e,
                              const SpaceSpec& space, std::size_t i) {
  return rho_partial_sum(h, d, e, space.seminorm(i));
}

/// Riemann sums along the schedule until successive sums agree to `tol` in
/// every seminorm. A stall is inconclusive, not evidence of non-integrability.
inline std::pair<IntegralClass, ConvergenceReport> hk_integrate(const FunctionSpec& f, const SpaceSpec& space,
                                                                const std::vector<Gauge>& schedule, double tol,
                                                                int depth_limit = kDefaultDepthLimit) {
  if (schedule.empty()) throw InvalidArgument("hk_integrate needs a nonempty schedule");
  if (!(tol > 0.0)) throw InvalidArgument("hk_integrate needs tol > 0");
  if (f.dim() != space.dimension()) throw DimensionMismatch(space.dimension(), f.dim());

  ConvergenceReport report;
  std::vector<double> bracket(space.count(), std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    std::vector<Cell> cells;
    Vector sum;
    try {
      const TaggedPartition d = cousin_partition(schedule[k], f.domain(), depth_limit);
      cells = d.cells();
      sum = riemann_sum(f, d);
    } catch (const DepthExceeded&) {
      if (report.steps.empty()) throw;
      report.verdict = Verdict::depth_exceeded;
      break;
    }
    ConvergenceStep step{gauge_id(k, schedule[k]), cells.size(), sum, {}};
    bool close = false;
    if (!report.steps.empty()) {
      const Vector delta = sum - report.steps.back().sum;
      close = true;
      for (std::size_t i = 0; i < space.count(); ++i) {
        step.diff.push_back(space.seminorm(i)(delta));
        close = close && step.diff.back() <= tol;
      }
      bracket = step.diff;
    }
    report.steps.push_back(std::move(step));
    if (close) {
      report.verdict = Verdict::converged;
      break;
    }
  }
  return {IntegralClass{report.steps.back().sum, space, bracket}, std::move(report)};
}

namespace detail {

// Split each cell at random interior points and retag each piece with a
// random fine tag among {u, mid, v}; falls back to the original cell when no
// piece can be tagged finely.
inline std::vector<Cell> random_refinement(const std::vector<Cell>& cells, const Gauge& gauge,
                                           std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Cell> out;
  out.reserve(cells.size() * 2);
  for (const Cell& c : cells) {
    const double cut = c.u + (0.25 + 0.5 * unit(rng)) * c.length();
    std::vector<Cell> pieces;
    bool ok = cut > c.u && cut < c.v;
    for (auto [lo, hi] : {std::pair{c.u, cut}, std::pair{cut, c.v}}) {
      if (!ok) break;
      double cand[3] = {lo, 0.5 * (lo + hi), hi};
      const std::size_t start = static_cast<std::size_t>(unit(rng) * 3.0) % 3;
      bool placed = false;
      for (std::size_t j = 0; j < 3 && !placed; ++j) {
        const double t = cand[(start + j) % 3];
        if (cell_is_fine(gauge, lo, hi, t)) {
          pieces.push_back({lo, hi, t});
          placed = true;
        }
      }
      ok = placed;
    }
    if (ok) out.insert(out.end(), pieces.begin(), pieces.end());
    else out.push_back(c);
  }
  return out;
}

}  // namespace detail

/// Largest observed sum of rho(F(v) - F(u) - f(t)(v - u)) over `samples`
/// gauge-fine full partitions: the Cousin partition of the gauge itself, then
/// Cousin partitions of randomly shrunk copies with random fine refinements.
/// One value per seminorm.
inline std::vector<double> skh_residual(const FunctionSpec& f, const FunctionSpec& F, const SpaceSpec& space,
                                        const Gauge& gauge, int samples, std::uint64_t seed = 0,
                                        int depth_limit = kDefaultDepthLimit) {
  if (samples < 1) throw InvalidArgument("skh_residual needs samples >= 1");
  if (f.dim() != space.dimension()) throw DimensionMismatch(space.dimension(), f.dim());
  if (F.dim() != space.dimension()) throw DimensionMismatch(space.dimension(), F.dim());
  const IntervalPointFn h = ThetaMinusDelta{f, F};
  const Interval dom = f.domain();
  const SubsetSpec everything = SubsetSpec::interval(dom.lo, dom.hi);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> shrink(0.5, 1.0);
  std::vector<double> worst(space.count(), 0.0);
  for (int s = 0; s < samples; ++s) {
    std::vector<Cell> cells;
    if (s == 0) {
      cells = cousin_partition(gauge, dom, depth_limit).cells();
    } else {
      const Gauge g = gauge.scaled(shrink(rng));
      cells = detail::random_refinement(cousin_partition(g, dom, depth_limit).cells(), g, rng);
    }
    const TaggedPartition d(std::move(cells), PartitionKind::full, dom);
    for (std::size_t i = 0; i < space.count(); ++i)
      worst[i] = std::max(worst[i], rho_partial_sum(h, d, everything, space.seminorm(i)));
  }
  return worst;
}

struct AdditivityReport {
  IntegralClass whole;
  std::vector<IntegralClass> pieces;
  Vector piece_sum;
  std::vector<double> discrepancy;
  std::vector<double> allowance;
  bool conclusive = true;
  bool pass = false;
};

/// Restrict a gauge to a subinterval of its domain.
inline Gauge restrict_gauge(const Gauge& g, Interval sub) {
  const Interval d = g.domain();
  if (sub.lo < d.lo || sub.hi > d.hi) throw OutsideDomain("subinterval outside the gauge domain");
  return Gauge(g.rule(), sub, g.scale());
}

inline FunctionSpec restrict_domain(const FunctionSpec& f, Interval sub) {
  const Interval d = f.domain();
  if (sub.lo < d.lo || sub.hi > d.hi) throw OutsideDomain("subinterval outside the function domain");
  return FunctionSpec(f.node_ptr(), sub, f.dim());
}

/// Integral over [a,b] against the sum of integrals over the pieces of a split.
inline AdditivityReport interval_additivity_check(const FunctionSpec& f, const SpaceSpec& space,
                                                  const std::vector<Gauge>& schedule,
                                                  const std::vector<double>& points, double tol,
                                                  int depth_limit = kDefaultDepthLimit) {
  const Interval dom = f.domain();
  if (points.size() < 2 || points.front() != dom.lo || points.back() != dom.hi)
    throw InvalidArgument("split points must start at a and end at b");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i - 1] < points[i])) throw InvalidArgument("split points must be strictly increasing");

  AdditivityReport rep;
  auto [whole, whole_rep] = hk_integrate(f, space, schedule, tol, depth_limit);
  rep.conclusive = whole_rep.verdict == Verdict::converged;
  rep.whole = whole;
  rep.piece_sum = Vector(f.dim());
  std::vector<double> allowance(space.count(), tol);
  for (std::size_t i = 0; i < space.count(); ++i) allowance[i] += whole.bracket[i];

  for (std::size_t p = 1; p < points.size(); ++p) {
    const Interval sub{points[p - 1], points[p]};
    std::vector<Gauge> sched;
    sched.reserve(schedule.size());
    for (const auto& g : schedule) sched.push_back(restrict_gauge(g, sub));
    auto [piece, piece_rep] = hk_integrate(restrict_domain(f, sub), space, sched, tol, depth_limit);
    rep.conclusive = rep.conclusive && piece_rep.verdict == Verdict::converged;
    rep.piece_sum += piece.representative;
    for (std::size_t i = 0; i < space.count(); ++i) allowance[i] += piece.bracket[i];
    rep.pieces.push_back(std::move(piece));
  }
  const Vector gap = whole.representative - rep.piece_sum;
  rep.pass = true;
  for (std::size_t i = 0; i < space.count(); ++i) {
    rep.discrepancy.push_back(space.seminorm(i)(gap));
    rep.pass = rep.pass && rep.discrepancy.back() <= allowance[i];
  }
  rep.allowance = std::move(allowance);
  return rep;
}

}  // namespace gaugeint
