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

// Variation of an interval-point function over gauge-fine partial
// partitions, and the variational measure as its limit along a schedule.
//
// The supremum is approached from below by local search: start from a
// Cousin partition aligned to the critical points of h and of E, retag, then
// repeatedly bisect the cell whose split gains the most. Every intermediate
// partition is gauge fine, so every estimate is a true lower bound for the
// fixed-gauge variation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gaugeint/error.hpp"
#include "gaugeint/funcspace.hpp"
#include "gaugeint/integrate.hpp"
#include "gaugeint/partitions.hpp"
#include "gaugeint/spaces.hpp"
#include "gaugeint/subset.hpp"

namespace gaugeint {

struct SearchOptions {
  /// Maximum number of bisection rounds per search.
  int budget = 256;
  std::uint64_t seed = 0;
  /// Extra searches on randomly shrunk copies of the gauge; the best wins.
  int restarts = 0;
  /// A split is taken only when it gains strictly more than this.
  double min_gain = 0.0;
  int depth_limit = kDefaultDepthLimit;
};

namespace detail {

struct ScoredCell {
  Cell cell;
  double score = 0.0;  // 1_E(t) * rho(h), zero when no fine tag exists
  bool tagged = false;
};

class VariationSearch {
 public:
  VariationSearch(const IntervalPointFn& h, const SubsetSpec& e, const Seminorm& rho, const Gauge& gauge)
      : h_(h), e_(e), rho_(rho), gauge_(gauge) {}

  // Best fine tag among {u, mid, v}; ties keep the earliest candidate.
  ScoredCell best(double u, double v, std::optional<double> current = std::nullopt) const {
    ScoredCell out{{u, v, u}, 0.0, false};
    auto consider = [&](double t) {
      if (!cell_is_fine(gauge_, u, v, t)) return;
      const double s = e_.contains(t) ? rho_value(u, v, t) : 0.0;
      if (!out.tagged || s > out.score) out = {{u, v, t}, s, true};
    };
    if (current) consider(*current);
    consider(u);
    consider(0.5 * (u + v));
    consider(v);
    return out;
  }

  double rho_value(double u, double v, double t) const { return ipf_rho(h_, rho_, u, v, t); }

  double run(const std::vector<double>& breaks, const SearchOptions& opt) const {
    const Interval dom = gauge_.domain();
    const TaggedPartition start = cousin_partition_aligned(gauge_, dom, breaks, opt.depth_limit);

    std::vector<ScoredCell> cells;
    std::vector<bool> alive;
    cells.reserve(start.size() * 2);
    for (const Cell& c : start.cells()) {
      cells.push_back(best(c.u, c.v, c.t));
      alive.push_back(true);
    }

    using Entry = std::pair<double, std::size_t>;
    auto cmp = [](const Entry& a, const Entry& b) {
      return a.first < b.first || (a.first == b.first && a.second > b.second);
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);
    std::vector<std::pair<ScoredCell, ScoredCell>> split_of(cells.size());
    auto push = [&](std::size_t i) {
      const ScoredCell& c = cells[i];
      const double mid = 0.5 * (c.cell.u + c.cell.v);
      if (!(c.cell.u < mid && mid < c.cell.v)) return;
      if (split_of.size() <= i) split_of.resize(i + 1);
      split_of[i] = {best(c.cell.u, mid), best(mid, c.cell.v)};
      const double gain = split_of[i].first.score + split_of[i].second.score - c.score;
      if (gain > opt.min_gain) queue.push({gain, i});
    };
    for (std::size_t i = 0; i < cells.size(); ++i) push(i);

    for (int round = 0; round < opt.budget && !queue.empty(); ++round) {
      const std::size_t i = queue.top().second;
      queue.pop();
      alive[i] = false;
      const auto [left, right] = split_of[i];
      for (const ScoredCell& child : {left, right}) {
        cells.push_back(child);
        alive.push_back(true);
        push(cells.size() - 1);
      }
    }

    std::vector<const ScoredCell*> kept;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (alive[i] && cells[i].tagged && e_.contains(cells[i].cell.t)) kept.push_back(&cells[i]);
    std::sort(kept.begin(), kept.end(), [](const ScoredCell* a, const ScoredCell* b) { return a->cell.u < b->cell.u; });
    double total = 0.0;
    for (const ScoredCell* c : kept) total += c->score;
    return total;
  }

 private:
  const IntervalPointFn& h_;
  const SubsetSpec& e_;
  const Seminorm& rho_;
  const Gauge& gauge_;
};

inline std::vector<double> search_breaks(const IntervalPointFn& h, const SubsetSpec& e) {
  std::vector<double> out = critical_points(h);
  const auto b = e.boundary_points();
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace detail

/// Lower estimate of sup over gauge-fine partial partitions of
/// sum 1_E(t) rho(h([u,v], t)).
inline double var_fixed_gauge(const IntervalPointFn& h, const SubsetSpec& e, const Seminorm& rho, const Gauge& gauge,
                              const SearchOptions& opt = {}) {
  if (opt.budget < 1) throw InvalidArgument("variation search needs budget >= 1");
  const Interval dom = gauge.domain();
  if (!e.within(dom.lo, dom.hi)) throw OutsideDomain("variation set outside the gauge domain");
  if (e.empty()) return 0.0;
  const auto breaks = detail::search_breaks(h, e);
  double best = detail::VariationSearch(h, e, rho, gauge).run(breaks, opt);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> shrink(0.5, 1.0);
  for (int r = 0; r < opt.restarts; ++r) {
    const Gauge g = gauge.scaled(shrink(rng));
    best = std::max(best, detail::VariationSearch(h, e, rho, g).run(breaks, opt));
  }
  return best;
}

struct VariationStep {
  std::string gauge_id;
  double estimate = 0.0;
};

struct VariationBracket {
  std::vector<VariationStep> steps;
  double reported = 0.0;
  bool monotone_ok = true;
  int search_budget = 0;
};

/// Per-step fixed-gauge estimates along a pointwise-decreasing schedule;
/// `reported` is the last one. `monotone_ok` records whether no estimate
/// exceeded its predecessor by more than `noise`.
inline VariationBracket variational_measure(const IntervalPointFn& h, const SubsetSpec& e, const Seminorm& rho,
                                            const std::vector<Gauge>& schedule, const SearchOptions& opt = {},
                                            double noise = 1e-9) {
  if (schedule.empty()) throw InvalidArgument("variational_measure needs a nonempty schedule");
  VariationBracket out;
  out.search_budget = opt.budget;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const double est = var_fixed_gauge(h, e, rho, schedule[k], opt);
    if (!out.steps.empty() && est > out.steps.back().estimate + noise) out.monotone_ok = false;
    out.steps.push_back({gauge_id(k, schedule[k]), est});
  }
  out.reported = out.steps.back().estimate;
  return out;
}

struct MeasureAdditivityReport {
  double whole = 0.0;
  std::vector<double> pieces;
  double piece_sum = 0.0;
  double difference = 0.0;
  bool additive = false;
  /// Sum over the non-covering family, and whether it stays below `whole`.
  double family_sum = 0.0;
  bool family_ok = true;
  bool monotone_ok = true;
};

/// mu(h, [a,b]) against the sum of mu(h, [x_{i-1}, x_i]), plus the
/// inequality mu(h, [a,b]) >= sum mu(h, I_k) for non-overlapping intervals.
inline MeasureAdditivityReport additivity_check(const IntervalPointFn& h, const Seminorm& rho,
                                                const std::vector<double>& points, const std::vector<Gauge>& schedule,
                                                double tol, const std::vector<Interval>& family = {},
                                                const SearchOptions& opt = {}) {
  if (points.size() < 2) throw InvalidArgument("additivity_check needs at least two points");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i - 1] < points[i])) throw InvalidArgument("split points must be strictly increasing");
  for (std::size_t i = 1; i < family.size(); ++i)
    if (family[i - 1].hi > family[i].lo) throw InvalidArgument("family intervals must be ordered and non-overlapping");

  MeasureAdditivityReport rep;
  auto measure = [&](const SubsetSpec& e) {
    const auto b = variational_measure(h, e, rho, schedule, opt);
    rep.monotone_ok = rep.monotone_ok && b.monotone_ok;
    return b.reported;
  };
  rep.whole = measure(SubsetSpec::interval(points.front(), points.back()));
  for (std::size_t i = 1; i < points.size(); ++i) {
    rep.pieces.push_back(measure(SubsetSpec::interval(points[i - 1], points[i])));
    rep.piece_sum += rep.pieces.back();
  }
  rep.difference = std::abs(rep.whole - rep.piece_sum);
  rep.additive = rep.difference <= tol;
  for (const Interval& iv : family) rep.family_sum += measure(SubsetSpec::interval(iv.lo, iv.hi));
  rep.family_ok = rep.family_sum <= rep.whole + tol;
  return rep;
}

struct AscendingReport {
  std::vector<double> values;
  double union_value = 0.0;
  /// mu(U) - mu(A_n) against mu(closure(U \ A_n)), per n.
  std::vector<double> gaps;
  std::vector<double> remainders;
  bool nondecreasing = true;
  bool bounded_by_union = true;
  bool gaps_match = true;
  bool remainders_shrink = true;
  bool pass = false;
};

/// Checks the ascending-set trend mu(A_1) <= mu(A_2) <= ... <= mu(U), where U
/// is the supplied union, and that each shortfall mu(U) - mu(A_n) is
/// accounted for by the remainder mu(closure(U \ A_n)), which must shrink.
inline AscendingReport ascending_limit_check(const IntervalPointFn& h, const Seminorm& rho,
                                             const std::vector<SubsetSpec>& sets, const SubsetSpec& union_set,
                                             const std::vector<Gauge>& schedule, double tol,
                                             const SearchOptions& opt = {}) {
  if (sets.size() < 2) throw InvalidArgument("ascending_limit_check needs at least two sets");
  for (std::size_t n = 1; n < sets.size(); ++n)
    if (!sets[n - 1].subset_of(sets[n])) throw InvalidArgument("sets are not ascending");
  SubsetSpec joined;
  for (const auto& s : sets) joined = unite(joined, s);
  if (!joined.subset_of(union_set)) throw InvalidArgument("supplied union does not contain every set");

  AscendingReport rep;
  auto measure = [&](const SubsetSpec& e) { return variational_measure(h, e, rho, schedule, opt).reported; };
  rep.union_value = measure(union_set);
  for (const auto& s : sets) {
    const double v = measure(s);
    if (!rep.values.empty() && v + tol < rep.values.back()) rep.nondecreasing = false;
    if (v > rep.union_value + tol) rep.bounded_by_union = false;
    rep.values.push_back(v);
    const double gap = rep.union_value - v;
    const double rem = measure(closure_difference(union_set, s));
    if (std::abs(gap - rem) > tol) rep.gaps_match = false;
    if (!rep.remainders.empty() && rem > rep.remainders.back() + tol) rep.remainders_shrink = false;
    rep.gaps.push_back(gap);
    rep.remainders.push_back(rem);
  }
  rep.pass = rep.nondecreasing && rep.bounded_by_union && rep.gaps_match && rep.remainders_shrink;
  return rep;
}

}  // namespace gaugeint
