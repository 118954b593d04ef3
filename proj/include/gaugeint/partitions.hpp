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

// Gauges, tagged partitions and Cousin bisection.
//
// A gauge is a closed-form rule times a positive scale, so shrinking a gauge
// by a factor scales it pointwise without moving any of the rule's zones.
// A cell ([u,v], t) is fine for a gauge d when [u,v] lies inside the open
// interval (t - d(t), t + d(t)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "gaugeint/error.hpp"
#include "gaugeint/subset.hpp"

namespace gaugeint {

struct ConstantRule {
  double value = 1.0;
};

/// d(t) = max(slope * |t - anchor|, floor)
struct AffineFloorRule {
  double slope = 0.0;
  double floor = 1.0;
  double anchor = 0.0;
};

/// d(t) = narrow if |t - p| <= narrow for some p in points, base otherwise.
struct PointAnchoredRule {
  std::vector<double> points;  // sorted
  double narrow = 1.0;
  double base = 1.0;
};

/// d(t) = min(cap, max(dist(t, points), narrow)). Fine cells tagged farther
/// than `narrow` from every point contain none of them.
struct DistanceRule {
  std::vector<double> points;  // sorted
  double narrow = 1.0;
  double cap = 1.0;
};

/// Piecewise constant: d(t) = values[j] on [mesh[j], mesh[j+1]), the last
/// piece closed on the right.
struct TableRule {
  std::vector<double> mesh;
  std::vector<double> values;
};

class Gauge {
 public:
  using Rule = std::variant<ConstantRule, AffineFloorRule, PointAnchoredRule, DistanceRule, TableRule>;

  Gauge(Rule rule, Interval domain, double scale = 1.0)
      : rule_(std::move(rule)), domain_(domain), scale_(scale) {
    validate();
  }

  static Gauge constant(double c, Interval domain) { return Gauge(ConstantRule{c}, domain); }

  const Rule& rule() const noexcept { return rule_; }
  Interval domain() const noexcept { return domain_; }
  double scale() const noexcept { return scale_; }

  double operator()(double t) const noexcept { return scale_ * raw(t); }

  /// The same rule with every value multiplied by `factor`.
  Gauge scaled(double factor) const { return Gauge(rule_, domain_, scale_ * factor); }

  std::string kind_name() const {
    return std::visit(
        [](const auto& r) -> std::string {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, ConstantRule>) return "constant";
          else if constexpr (std::is_same_v<T, AffineFloorRule>) return "affine-floor";
          else if constexpr (std::is_same_v<T, PointAnchoredRule>) return "point-anchored";
          else if constexpr (std::is_same_v<T, DistanceRule>) return "distance";
          else return "table";
        },
        rule_);
  }

 private:
  double raw(double t) const noexcept {
    return std::visit(
        [t](const auto& r) -> double {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, ConstantRule>) {
            return r.value;
          } else if constexpr (std::is_same_v<T, AffineFloorRule>) {
            return std::max(r.slope * std::abs(t - r.anchor), r.floor);
          } else if constexpr (std::is_same_v<T, PointAnchoredRule>) {
            auto it = std::lower_bound(r.points.begin(), r.points.end(), t);
            if (it != r.points.end() && *it - t <= r.narrow) return r.narrow;
            if (it != r.points.begin() && t - *std::prev(it) <= r.narrow) return r.narrow;
            return r.base;
          } else if constexpr (std::is_same_v<T, DistanceRule>) {
            auto it = std::lower_bound(r.points.begin(), r.points.end(), t);
            double dist = std::numeric_limits<double>::infinity();
            if (it != r.points.end()) dist = *it - t;
            if (it != r.points.begin()) dist = std::min(dist, t - *std::prev(it));
            return std::min(r.cap, std::max(dist, r.narrow));
          } else {
            auto it = std::upper_bound(r.mesh.begin(), r.mesh.end(), t);
            std::size_t j = it == r.mesh.begin() ? 0 : static_cast<std::size_t>(it - r.mesh.begin()) - 1;
            return r.values[std::min(j, r.values.size() - 1)];
          }
        },
        rule_);
  }

  void validate() {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!(domain_.lo < domain_.hi)) throw InvalidArgument("gauge domain must satisfy a < b");
    if (!positive(scale_)) throw InvalidArgument("gauge scale must be positive");
    std::visit(
        [&](auto& r) {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, ConstantRule>) {
            if (!positive(r.value)) throw InvalidArgument("constant gauge must be positive");
          } else if constexpr (std::is_same_v<T, AffineFloorRule>) {
            if (!(r.slope >= 0.0) || !std::isfinite(r.slope) || !positive(r.floor))
              throw InvalidArgument("affine-floor gauge needs slope >= 0 and floor > 0");
          } else if constexpr (std::is_same_v<T, PointAnchoredRule>) {
            if (!positive(r.narrow) || !positive(r.base) || r.narrow > r.base)
              throw InvalidArgument("point-anchored gauge needs 0 < narrow <= base");
            std::sort(r.points.begin(), r.points.end());
            r.points.erase(std::unique(r.points.begin(), r.points.end()), r.points.end());
          } else if constexpr (std::is_same_v<T, DistanceRule>) {
            if (!positive(r.narrow) || !positive(r.cap) || r.narrow > r.cap)
              throw InvalidArgument("distance gauge needs 0 < narrow <= cap");
            std::sort(r.points.begin(), r.points.end());
            r.points.erase(std::unique(r.points.begin(), r.points.end()), r.points.end());
          } else {
            if (r.values.empty() || r.mesh.size() != r.values.size() + 1)
              throw InvalidArgument("table gauge needs mesh.size() == values.size() + 1");
            if (!std::is_sorted(r.mesh.begin(), r.mesh.end()) ||
                std::adjacent_find(r.mesh.begin(), r.mesh.end()) != r.mesh.end())
              throw InvalidArgument("table gauge mesh must be strictly increasing");
            if (r.mesh.front() > domain_.lo || r.mesh.back() < domain_.hi)
              throw InvalidArgument("table gauge mesh must span the domain");
            for (double v : r.values)
              if (!positive(v)) throw InvalidArgument("table gauge values must be positive");
          }
        },
        rule_);
  }

  Rule rule_;
  Interval domain_;
  double scale_;
};

struct Cell {
  double u = 0.0;
  double v = 0.0;
  double t = 0.0;

  double length() const noexcept { return v - u; }
  friend bool operator==(const Cell&, const Cell&) = default;
};

enum class PartitionKind { full, partial };

class TaggedPartition {
 public:
  TaggedPartition(std::vector<Cell> cells, PartitionKind kind, Interval domain)
      : cells_(std::move(cells)), kind_(kind), domain_(domain) {
    validate();
  }

  const std::vector<Cell>& cells() const noexcept { return cells_; }
  PartitionKind kind() const noexcept { return kind_; }
  Interval domain() const noexcept { return domain_; }
  std::size_t size() const noexcept { return cells_.size(); }

 private:
  void validate() const {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const Cell& c = cells_[i];
      if (!(c.u < c.v)) throw InvalidArgument("partition cell needs u < v");
      if (!(c.u <= c.t && c.t <= c.v)) throw InvalidArgument("partition tag outside its cell");
      if (c.u < domain_.lo || c.v > domain_.hi) throw OutsideDomain("partition cell outside the domain");
      if (i > 0 && cells_[i - 1].v > c.u) throw InvalidArgument("partition cells overlap or are unordered");
    }
    if (kind_ == PartitionKind::full) {
      if (cells_.empty() || cells_.front().u != domain_.lo || cells_.back().v != domain_.hi)
        throw InvalidArgument("full partition must start at a and end at b");
      for (std::size_t i = 1; i < cells_.size(); ++i)
        if (cells_[i - 1].v != cells_[i].u) throw InvalidArgument("full partition leaves a gap");
    }
  }

  std::vector<Cell> cells_;
  PartitionKind kind_;
  Interval domain_;
};

/// [u,v] inside (t - d(t), t + d(t)), strict on both sides.
inline bool cell_is_fine(const Gauge& gauge, double u, double v, double t) noexcept {
  const double d = gauge(t);
  return (t - u) < d && (v - t) < d;
}

inline bool is_fine(const TaggedPartition& partition, const Gauge& gauge) {
  const Interval dom = gauge.domain();
  for (const Cell& c : partition.cells()) {
    if (c.u < dom.lo || c.v > dom.hi) throw OutsideDomain("partition cell outside the gauge domain");
    if (!cell_is_fine(gauge, c.u, c.v, c.t)) return false;
  }
  return true;
}

inline constexpr int kDefaultDepthLimit = 60;

namespace detail {

inline void cousin_bisect(const Gauge& gauge, double u, double v, int depth, int depth_limit,
                          std::vector<Cell>& out) {
  const double mid = 0.5 * (u + v);
  for (double t : {u, mid, v}) {
    if (cell_is_fine(gauge, u, v, t)) {
      out.push_back({u, v, t});
      return;
    }
  }
  if (depth >= depth_limit || !(u < mid && mid < v)) throw DepthExceeded(u, v, depth_limit);
  cousin_bisect(gauge, u, mid, depth + 1, depth_limit, out);
  cousin_bisect(gauge, mid, v, depth + 1, depth_limit, out);
}

}  // namespace detail

/// Full gauge-fine partition of [a,b] by bisection. Each candidate interval
/// is accepted with the first fine tag among {u, midpoint, v}; otherwise it
/// is halved. Cells come out left to right.
inline TaggedPartition cousin_partition(const Gauge& gauge, Interval interval,
                                        int depth_limit = kDefaultDepthLimit) {
  if (depth_limit < 1) throw InvalidArgument("depth_limit must be >= 1");
  if (!(interval.lo < interval.hi)) throw InvalidArgument("cousin_partition needs a < b");
  const Interval dom = gauge.domain();
  if (interval.lo < dom.lo || interval.hi > dom.hi) throw OutsideDomain("interval outside the gauge domain");
  std::vector<Cell> cells;
  detail::cousin_bisect(gauge, interval.lo, interval.hi, 0, depth_limit, cells);
  return TaggedPartition(std::move(cells), PartitionKind::full, interval);
}

/// Cousin partition with every point of `breaks` inside (a,b) forced onto the
/// mesh: the pieces between consecutive breaks are bisected independently.
inline TaggedPartition cousin_partition_aligned(const Gauge& gauge, Interval interval,
                                                std::vector<double> breaks,
                                                int depth_limit = kDefaultDepthLimit) {
  if (depth_limit < 1) throw InvalidArgument("depth_limit must be >= 1");
  if (!(interval.lo < interval.hi)) throw InvalidArgument("cousin_partition needs a < b");
  const Interval dom = gauge.domain();
  if (interval.lo < dom.lo || interval.hi > dom.hi) throw OutsideDomain("interval outside the gauge domain");
  std::erase_if(breaks, [&](double x) { return !(interval.lo < x && x < interval.hi); });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<Cell> cells;
  double left = interval.lo;
  for (double x : breaks) {
    detail::cousin_bisect(gauge, left, x, 0, depth_limit, cells);
    left = x;
  }
  detail::cousin_bisect(gauge, left, interval.hi, 0, depth_limit, cells);
  return TaggedPartition(std::move(cells), PartitionKind::full, interval);
}

/// Narrow widths near each anchor point, `base` elsewhere. Any fine cell
/// tagged within `narrow` of an anchor is shorter than 2 * narrow.
inline Gauge anchor_gauge(std::vector<double> points, double narrow, double base, Interval domain) {
  if (!(narrow > 0.0) || !(base > 0.0) || narrow > base)
    throw InvalidArgument("anchor_gauge needs 0 < narrow <= base");
  if (points.empty()) return Gauge(ConstantRule{base}, domain);
  return Gauge(PointAnchoredRule{std::move(points), narrow, base}, domain);
}

/// Distance-to-breaks gauge for piecewise-constant integrands: no fine cell
/// crosses a break unless its tag lies within `narrow` of it.
inline Gauge breakpoint_gauge(std::vector<double> points, double narrow, double cap, Interval domain) {
  if (points.empty()) return Gauge(ConstantRule{cap}, domain);
  return Gauge(DistanceRule{std::move(points), narrow, cap}, domain);
}

/// d_k = factor^k * d_0 for k = 1..steps.
inline std::vector<Gauge> shrink_schedule(const Gauge& initial, double factor, int steps) {
  if (!(factor > 0.0 && factor < 1.0)) throw InvalidArgument("shrink factor must lie in (0,1)");
  if (steps < 1) throw InvalidArgument("shrink schedule needs steps >= 1");
  std::vector<Gauge> out;
  out.reserve(static_cast<std::size_t>(steps));
  double s = 1.0;
  for (int k = 1; k <= steps; ++k) {
    s *= factor;
    out.push_back(initial.scaled(s));
  }
  return out;
}

/// Table gauge graded toward `center`: `narrow` within narrow/2 of the
/// center, coeff * dist^exponent (capped at `cap`) farther out, on a geometric
/// mesh whose break distances grow by `ratio`. Each piece takes the law at its
/// point nearest the center, so the table never exceeds the power law there.
inline Gauge graded_gauge(Interval domain, double center, double narrow, double coeff, double exponent,
                          double cap, double ratio = 1.25) {
  if (!(narrow > 0.0) || !(coeff > 0.0) || !(exponent >= 0.0) || !(cap > 0.0) || !(ratio > 1.0))
    throw InvalidArgument("graded_gauge parameters must be positive (ratio > 1)");
  if (center < domain.lo || center > domain.hi) throw OutsideDomain("graded_gauge center outside domain");
  const double inner = 0.5 * narrow;
  const double reach = std::max(center - domain.lo, domain.hi - center);

  std::vector<double> mesh{domain.lo, domain.hi, center};
  for (double x = inner; x < reach; x *= ratio) {
    if (center - x > domain.lo) mesh.push_back(center - x);
    if (center + x < domain.hi) mesh.push_back(center + x);
  }
  std::sort(mesh.begin(), mesh.end());
  mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());

  std::vector<double> values;
  values.reserve(mesh.size() - 1);
  for (std::size_t j = 0; j + 1 < mesh.size(); ++j) {
    const double lo = mesh[j];
    const double hi = mesh[j + 1];
    const double dist = (lo <= center && center <= hi) ? 0.0 : std::min(std::abs(lo - center), std::abs(hi - center));
    values.push_back(dist < inner ? narrow : std::min(cap, coeff * std::pow(dist, exponent)));
  }
  return Gauge(TableRule{std::move(mesh), std::move(values)}, domain);
}

/// Constant gauges c0 * factor^k, k = 1..steps.
inline std::vector<Gauge> constant_schedule(Interval domain, double c0, double factor, int steps) {
  return shrink_schedule(Gauge::constant(c0, domain), factor, steps);
}

/// Anchor gauges with narrow and base widths both shrinking by factor^k.
inline std::vector<Gauge> anchor_schedule(std::vector<double> points, double narrow0, double base0, Interval domain,
                                          double factor, int steps) {
  return shrink_schedule(anchor_gauge(std::move(points), narrow0, base0, domain), factor, steps);
}

/// Distance gauges with narrow width and cap both shrinking by factor^k.
inline std::vector<Gauge> breakpoint_schedule(std::vector<double> points, double narrow0, double cap0, Interval domain,
                                              double factor, int steps) {
  return shrink_schedule(breakpoint_gauge(std::move(points), narrow0, cap0, domain), factor, steps);
}

/// Graded gauges about `center` with the narrow width held fixed and the
/// power-law coefficient shrinking by factor^k. Pointwise non-increasing.
inline std::vector<Gauge> graded_schedule(Interval domain, double center, double narrow, double coeff0,
                                          double exponent, double cap, double factor, int steps) {
  if (!(factor > 0.0 && factor < 1.0)) throw InvalidArgument("shrink factor must lie in (0,1)");
  if (steps < 1) throw InvalidArgument("shrink schedule needs steps >= 1");
  std::vector<Gauge> out;
  double c = coeff0;
  for (int k = 1; k <= steps; ++k) {
    c *= factor;
    out.push_back(graded_gauge(domain, center, narrow, c, exponent, cap));
  }
  return out;
}

}  // namespace gaugeint
