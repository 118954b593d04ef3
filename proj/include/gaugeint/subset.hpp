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

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "gaugeint/error.hpp"

namespace gaugeint {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double t) const noexcept { return lo <= t && t <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A finite union of closed intervals plus a finite set of points.
///
/// Always held in canonical form: intervals sorted and pairwise disjoint
/// (touching or overlapping ones merged), points sorted, unique, and not
/// inside any interval. Membership is exact, with no tolerance.
class SubsetSpec {
 public:
  SubsetSpec() = default;
  SubsetSpec(std::vector<Interval> intervals, std::vector<double> points = {})
      : intervals_(std::move(intervals)), points_(std::move(points)) {
    canonicalize();
  }

  static SubsetSpec interval(double lo, double hi) { return SubsetSpec({{lo, hi}}); }
  static SubsetSpec point_set(std::vector<double> pts) { return SubsetSpec({}, std::move(pts)); }

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  const std::vector<double>& points() const noexcept { return points_; }
  bool empty() const noexcept { return intervals_.empty() && points_.empty(); }

  bool contains(double t) const noexcept {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                               [](double x, const Interval& iv) { return x < iv.lo; });
    if (it != intervals_.begin() && std::prev(it)->contains(t)) return true;
    return std::binary_search(points_.begin(), points_.end(), t);
  }

  /// Lebesgue measure; points contribute nothing.
  double lebesgue_measure() const noexcept {
    double m = 0.0;
    for (const auto& iv : intervals_) m += iv.length();
    return m;
  }

  /// Interval endpoints and isolated points, sorted and unique.
  std::vector<double> boundary_points() const {
    std::vector<double> out;
    for (const auto& iv : intervals_) {
      out.push_back(iv.lo);
      out.push_back(iv.hi);
    }
    out.insert(out.end(), points_.begin(), points_.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool within(double a, double b) const noexcept {
    for (const auto& iv : intervals_)
      if (iv.lo < a || iv.hi > b) return false;
    for (double p : points_)
      if (p < a || p > b) return false;
    return true;
  }

  bool subset_of(const SubsetSpec& o) const {
    for (const auto& iv : intervals_) {
      const bool covered = std::any_of(o.intervals_.begin(), o.intervals_.end(), [&](const Interval& w) {
        return w.lo <= iv.lo && iv.hi <= w.hi;
      });
      if (!covered) {
        if (iv.lo == iv.hi && o.contains(iv.lo)) continue;
        return false;
      }
    }
    for (double p : points_)
      if (!o.contains(p)) return false;
    return true;
  }

  friend SubsetSpec unite(const SubsetSpec& a, const SubsetSpec& b) {
    std::vector<Interval> ivs = a.intervals_;
    ivs.insert(ivs.end(), b.intervals_.begin(), b.intervals_.end());
    std::vector<double> pts = a.points_;
    pts.insert(pts.end(), b.points_.begin(), b.points_.end());
    return SubsetSpec(std::move(ivs), std::move(pts));
  }

  friend SubsetSpec intersect(const SubsetSpec& a, const SubsetSpec& b) {
    std::vector<Interval> ivs;
    std::vector<double> pts;
    for (const auto& x : a.intervals_) {
      for (const auto& y : b.intervals_) {
        const double lo = std::max(x.lo, y.lo);
        const double hi = std::min(x.hi, y.hi);
        if (lo < hi) ivs.push_back({lo, hi});
        else if (lo == hi) pts.push_back(lo);
      }
    }
    for (double p : a.points_)
      if (b.contains(p)) pts.push_back(p);
    for (double p : b.points_)
      if (a.contains(p)) pts.push_back(p);
    return SubsetSpec(std::move(ivs), std::move(pts));
  }

  /// Closure of a \ b. Points of a that lie in b are removed; interval pieces
  /// are closed up, which changes nothing measure-wise.
  friend SubsetSpec closure_difference(const SubsetSpec& a, const SubsetSpec& b) {
    std::vector<Interval> pieces = a.intervals_;
    for (const auto& cut : b.intervals_) {
      std::vector<Interval> next;
      for (const auto& iv : pieces) {
        if (cut.hi <= iv.lo || cut.lo >= iv.hi) {
          next.push_back(iv);
          continue;
        }
        if (iv.lo < cut.lo) next.push_back({iv.lo, cut.lo});
        if (cut.hi < iv.hi) next.push_back({cut.hi, iv.hi});
      }
      pieces = std::move(next);
    }
    std::vector<double> pts;
    for (double p : a.points_)
      if (!b.contains(p)) pts.push_back(p);
    return SubsetSpec(std::move(pieces), std::move(pts));
  }

  friend bool operator==(const SubsetSpec&, const SubsetSpec&) = default;

 private:
  void canonicalize() {
    for (const auto& iv : intervals_) {
      if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi)
        throw InvalidArgument("subset interval must satisfy lo <= hi with finite ends");
    }
    for (double p : points_)
      if (!std::isfinite(p)) throw InvalidArgument("subset point must be finite");

    std::vector<Interval> degenerate;
    std::vector<Interval> proper;
    for (const auto& iv : intervals_) (iv.lo == iv.hi ? degenerate : proper).push_back(iv);
    for (const auto& iv : degenerate) points_.push_back(iv.lo);

    std::sort(proper.begin(), proper.end(), [](const Interval& x, const Interval& y) {
      return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
    });
    intervals_.clear();
    for (const auto& iv : proper) {
      if (!intervals_.empty() && iv.lo <= intervals_.back().hi)
        intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
      else
        intervals_.push_back(iv);
    }

    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    std::erase_if(points_, [this](double p) {
      return std::any_of(intervals_.begin(), intervals_.end(), [p](const Interval& iv) { return iv.contains(p); });
    });
  }

  std::vector<Interval> intervals_;
  std::vector<double> points_;
};

}  // namespace gaugeint
