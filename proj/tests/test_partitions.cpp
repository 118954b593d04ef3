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


#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "gaugeint/error.hpp"
#include "gaugeint/partitions.hpp"

namespace {

using gaugeint::Cell;
using gaugeint::Gauge;
using gaugeint::Interval;
using gaugeint::PartitionKind;
using gaugeint::TaggedPartition;

const Interval kUnit{0.0, 1.0};

TaggedPartition uniform_midpoints(int n) {
  std::vector<Cell> cells;
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / n;
    const double v = static_cast<double>(i + 1) / n;
    cells.push_back({u, v, 0.5 * (u + v)});
  }
  return TaggedPartition(cells, PartitionKind::full, kUnit);
}

TEST(IsFine, MidpointCellsAgainstConstantGauge) {
  const auto d = uniform_midpoints(4);
  EXPECT_TRUE(gaugeint::is_fine(d, Gauge::constant(0.3, kUnit)));
  EXPECT_FALSE(gaugeint::is_fine(d, Gauge::constant(0.1, kUnit)));
}

TEST(IsFine, AnchoredGaugeForcesShortCellAtAnchor) {
  const Gauge g = gaugeint::anchor_gauge({0.0}, 0.01, 0.5, kUnit);
  EXPECT_FALSE(gaugeint::is_fine(TaggedPartition({{0.0, 0.25, 0.0}}, PartitionKind::partial, kUnit), g));
  EXPECT_TRUE(gaugeint::is_fine(TaggedPartition({{0.0, 0.005, 0.0}}, PartitionKind::partial, kUnit), g));
}

TEST(IsFine, StrictInclusion) {
  // [u,v] must sit inside the open ball, so length exactly d from the tag fails.
  EXPECT_FALSE(gaugeint::cell_is_fine(Gauge::constant(0.5, kUnit), 0.0, 0.5, 0.0));
  EXPECT_TRUE(gaugeint::cell_is_fine(Gauge::constant(0.5, kUnit), 0.0, 0.4999, 0.0));
}

TEST(IsFine, CellOutsideGaugeDomainThrows) {
  const Interval wide{0.0, 2.0};
  const TaggedPartition d({{1.0, 2.0, 1.5}}, PartitionKind::partial, wide);
  EXPECT_THROW(gaugeint::is_fine(d, Gauge::constant(1.0, kUnit)), gaugeint::OutsideDomain);
}

TEST(PartitionTest, ValidatesStructure) {
  EXPECT_THROW(TaggedPartition({{0.0, 0.5, 0.7}}, PartitionKind::partial, kUnit), gaugeint::InvalidArgument);
  EXPECT_THROW(TaggedPartition({{0.0, 0.5, 0.2}}, PartitionKind::full, kUnit), gaugeint::InvalidArgument);
  EXPECT_THROW(TaggedPartition({{0.0, 0.6, 0.2}, {0.5, 1.0, 0.7}}, PartitionKind::full, kUnit),
               gaugeint::InvalidArgument);
  EXPECT_THROW(TaggedPartition({{0.0, 0.4, 0.2}, {0.5, 1.0, 0.7}}, PartitionKind::full, kUnit),
               gaugeint::InvalidArgument);
  EXPECT_THROW(TaggedPartition({{-0.1, 0.4, 0.2}}, PartitionKind::partial, kUnit), gaugeint::OutsideDomain);
  EXPECT_NO_THROW(TaggedPartition({{0.0, 0.4, 0.2}, {0.5, 1.0, 0.7}}, PartitionKind::partial, kUnit));
}

TEST(Cousin, MidpointTagAcceptedWhenLeftEndFails) {
  const auto d = gaugeint::cousin_partition(Gauge::constant(0.6, kUnit), kUnit);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.cells()[0], (Cell{0.0, 1.0, 0.5}));
}

TEST(Cousin, LeftEndTagWinsWhenWide) {
  const auto d = gaugeint::cousin_partition(Gauge::constant(2.0, kUnit), kUnit);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.cells()[0], (Cell{0.0, 1.0, 0.0}));
}

// The anchor constrains only cells tagged near it. With a wide base the
// midpoint tag swallows the whole interval and 0 is never a tag.
TEST(Cousin, AnchoredGaugeConstrainsOnlyNearbyTags) {
  const Gauge wide = gaugeint::anchor_gauge({0.0}, 0.01, 1.0, kUnit);
  const auto d = gaugeint::cousin_partition(wide, kUnit);
  EXPECT_TRUE(gaugeint::is_fine(d, wide));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.cells()[0], (Cell{0.0, 1.0, 0.5}));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double anchor = u(rng);
    const double narrow = 1e-4 + 0.01 * u(rng);
    const Gauge g = gaugeint::anchor_gauge({anchor}, narrow, 0.02 + 0.5 * u(rng), kUnit);
    const auto p = gaugeint::cousin_partition(g, kUnit);
    EXPECT_TRUE(gaugeint::is_fine(p, g));
    for (const auto& c : p.cells())
      if (std::abs(c.t - anchor) <= narrow) {
        EXPECT_LT(c.length(), 2.0 * narrow);
      }
  }
}

TEST(Cousin, DepthLimitSignalsUnresolvableGauge) {
  EXPECT_THROW(gaugeint::cousin_partition(Gauge::constant(1e-6, kUnit), kUnit, 5), gaugeint::DepthExceeded);
  EXPECT_THROW(gaugeint::cousin_partition(Gauge::constant(1.0, kUnit), kUnit, 0), gaugeint::InvalidArgument);
  EXPECT_THROW(gaugeint::cousin_partition(Gauge::constant(1.0, kUnit), {0.5, 1.5}), gaugeint::OutsideDomain);
}

TEST(Cousin, AlignedPartitionPutsBreaksOnTheMesh) {
  const Gauge g = Gauge::constant(0.3, kUnit);
  const auto d = gaugeint::cousin_partition_aligned(g, kUnit, {0.37, 0.81, 2.0});
  EXPECT_TRUE(gaugeint::is_fine(d, g));
  bool has37 = false;
  bool has81 = false;
  for (const auto& c : d.cells()) {
    has37 = has37 || c.v == 0.37;
    has81 = has81 || c.v == 0.81;
  }
  EXPECT_TRUE(has37);
  EXPECT_TRUE(has81);
}

// Random gauges of every rule: the Cousin partition is always full, ordered
// and fine.
TEST(Cousin, PropertyFullAndFineForRandomGauges) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Gauge g = Gauge::constant(0.5, kUnit);
    switch (trial % 4) {
      case 0: g = Gauge::constant(1e-3 + u(rng) * 0.3, kUnit); break;
      case 1: g = Gauge(gaugeint::AffineFloorRule{u(rng), 1e-3 + 0.01 * u(rng), u(rng)}, kUnit); break;
      case 2: g = gaugeint::anchor_gauge({u(rng), u(rng), u(rng)}, 1e-4 + 1e-3 * u(rng), 0.05 + 0.2 * u(rng), kUnit); break;
      default: g = gaugeint::graded_gauge(kUnit, u(rng), 1e-3, 0.1 + u(rng), 1.0 + 2.0 * u(rng), 0.1); break;
    }
    const auto d = gaugeint::cousin_partition(g, kUnit);
    ASSERT_EQ(d.kind(), PartitionKind::full);
    EXPECT_TRUE(gaugeint::is_fine(d, g)) << "trial " << trial;
    double total = 0.0;
    for (const auto& c : d.cells()) total += c.length();
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(AnchorGauge, RuleEvaluation) {
  const Gauge g = gaugeint::anchor_gauge({0.5}, 0.01, 0.5, kUnit);
  EXPECT_EQ(g(0.5), 0.01);
  EXPECT_EQ(g(0.0), 0.5);
  EXPECT_EQ(g.kind_name(), "point-anchored");
}

TEST(AnchorGauge, EmptyAnchorsGiveConstantBase) {
  const Gauge g = gaugeint::anchor_gauge({}, 0.01, 0.5, kUnit);
  EXPECT_EQ(g.kind_name(), "constant");
  EXPECT_EQ(g(0.3), 0.5);
  EXPECT_THROW(gaugeint::anchor_gauge({0.5}, 0.6, 0.5, kUnit), gaugeint::InvalidArgument);
}

TEST(BreakpointGauge, FineCellsAwayFromBreaksContainNone) {
  const std::vector<double> breaks{0.2, 0.45, 0.8};
  const Gauge g = gaugeint::breakpoint_gauge(breaks, 1e-9, 0.1, kUnit);
  EXPECT_EQ(g.kind_name(), "distance");
  EXPECT_EQ(g(0.2), 1e-9);
  EXPECT_DOUBLE_EQ(g(0.25), 0.05);
  EXPECT_EQ(g(0.6), 0.1);
  const auto d = gaugeint::cousin_partition(g, kUnit);
  EXPECT_TRUE(gaugeint::is_fine(d, g));
  for (const auto& c : d.cells())
    for (double b : breaks)
      if (std::abs(c.t - b) > 1e-9) {
        EXPECT_FALSE(c.u < b && b < c.v) << c.u << " " << c.v << " " << c.t;
      }
  EXPECT_EQ(gaugeint::breakpoint_gauge({}, 1e-9, 0.1, kUnit).kind_name(), "constant");
  EXPECT_THROW(gaugeint::breakpoint_gauge(breaks, 0.2, 0.1, kUnit), gaugeint::InvalidArgument);
}

TEST(ShrinkSchedule, ConstantHalving) {
  const auto s = gaugeint::shrink_schedule(Gauge::constant(1.0, kUnit), 0.5, 3);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0](0.2), 0.5);
  EXPECT_EQ(s[1](0.2), 0.25);
  EXPECT_EQ(s[2](0.2), 0.125);
  EXPECT_THROW(gaugeint::shrink_schedule(Gauge::constant(1.0, kUnit), 1.0, 3), gaugeint::InvalidArgument);
  EXPECT_THROW(gaugeint::shrink_schedule(Gauge::constant(1.0, kUnit), 0.5, 0), gaugeint::InvalidArgument);
}

TEST(ShrinkSchedule, StrictlyDecreasingPointwise) {
  const auto s = gaugeint::anchor_schedule({0.25, 0.75}, 1e-3, 0.1, kUnit, 0.5, 5);
  for (std::size_t k = 1; k < s.size(); ++k)
    for (double t = 0.0; t <= 1.0; t += 0.01) EXPECT_LT(s[k](t), s[k - 1](t));
}

TEST(GradedSchedule, NonIncreasingAndNarrowAtCenter) {
  const auto s = gaugeint::graded_schedule(kUnit, 0.0, 1e-2, 0.16, 3.0, 0.05, 0.5, 6);
  for (const auto& g : s) EXPECT_EQ(g(0.0), 1e-2);
  for (std::size_t k = 1; k < s.size(); ++k)
    for (double t = 0.0; t <= 1.0; t += 0.003) EXPECT_LE(s[k](t), s[k - 1](t));
}

TEST(GaugeTest, RejectsNonPositiveRules) {
  EXPECT_THROW(Gauge::constant(0.0, kUnit), gaugeint::InvalidArgument);
  EXPECT_THROW(Gauge::constant(1.0, {1.0, 1.0}), gaugeint::InvalidArgument);
  EXPECT_THROW(Gauge(gaugeint::TableRule{{0.0, 0.5}, {1.0}}, kUnit), gaugeint::InvalidArgument);
  EXPECT_THROW(Gauge(gaugeint::AffineFloorRule{1.0, 0.0, 0.0}, kUnit), gaugeint::InvalidArgument);
}

}  // namespace
