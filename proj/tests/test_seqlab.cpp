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


#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "gaugeint/error.hpp"
#include "gaugeint/funcspace.hpp"
#include "gaugeint/seqlab.hpp"

namespace {

using gaugeint::AbsCoordinate;
using gaugeint::EpsSeries;
using gaugeint::FunctionSpec;
using gaugeint::Interval;
using gaugeint::SpaceSpec;
using gaugeint::SubsetSpec;
using gaugeint::Vector;
namespace fn = gaugeint::fn;

const Interval kUnit{0.0, 1.0};
const gaugeint::Metric kLine = gaugeint::seminorm_metric(SpaceSpec(), 0);

std::vector<Vector> geometric_partial_sums(int n) {
  std::vector<Vector> out;
  double s = 0.0;
  for (int k = 1; k <= n; ++k) {
    s += std::pow(4.0, -k);
    out.push_back(Vector{s});
  }
  return out;
}

TEST(EpsSeriesTest, GeometricAndExplicit) {
  const auto g = EpsSeries::geometric(0.5);
  EXPECT_EQ(g(1), 0.5);
  EXPECT_EQ(g(3), 0.125);
  EXPECT_NEAR(g.tail_power_sum(1, 2.0), 1.0 / 3.0, 1e-15);
  const auto e = EpsSeries::explicit_terms({0.5, 0.25});
  EXPECT_EQ(e(3), 0.0);
  EXPECT_DOUBLE_EQ(e.tail_power_sum(1, 1.0), 0.75);
  EXPECT_THROW(EpsSeries::geometric(1.0), gaugeint::InvalidArgument);
  EXPECT_THROW(EpsSeries::explicit_terms({0.5, -1.0}), gaugeint::InvalidArgument);
  EXPECT_THROW(g(0), gaugeint::InvalidArgument);
}

TEST(RapidCauchy, GeometricPartialSums) {
  const auto r = gaugeint::is_rapidly_cauchy(geometric_partial_sums(14), kLine, EpsSeries::geometric(0.5), 12);
  EXPECT_TRUE(r.rapid);
  EXPECT_FALSE(r.first_violation.has_value());
}

TEST(RapidCauchy, HarmonicPartialSumsFail) {
  std::vector<Vector> seq;
  double s = 0.0;
  for (int j = 1; j <= 14; ++j) seq.push_back(Vector{s += 1.0 / j});
  const auto r = gaugeint::is_rapidly_cauchy(seq, kLine, EpsSeries::geometric(0.5), 12);
  EXPECT_FALSE(r.rapid);
  ASSERT_TRUE(r.first_violation.has_value());
  EXPECT_EQ(*r.first_violation, 1u);
  EXPECT_DOUBLE_EQ(r.violation_gap, 0.5);
}

TEST(RapidCauchy, ConstantSequenceAndPrefixCheck) {
  const std::vector<Vector> seq(5, Vector{3.0});
  EXPECT_TRUE(gaugeint::is_rapidly_cauchy(seq, kLine, EpsSeries::geometric(0.01), 4).rapid);
  EXPECT_THROW(gaugeint::is_rapidly_cauchy(seq, kLine, EpsSeries::geometric(0.5), 5), gaugeint::InvalidArgument);
}

// Rapidly Cauchy implies Cauchy with the squared-tail bound.
TEST(RapidCauchy, PropertyRapidImpliesTailCauchy) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto eps = EpsSeries::geometric(0.3 + 0.6 * u(rng), 0.5 + u(rng));
    std::vector<Vector> seq{Vector{u(rng)}};
    for (std::size_t k = 1; k <= 12; ++k) {
      const double e = eps(k);
      seq.push_back(Vector{seq.back()[0] + (u(rng) < 0.5 ? -1.0 : 1.0) * u(rng) * 0.999 * e * e});
    }
    ASSERT_TRUE(gaugeint::is_rapidly_cauchy(seq, kLine, eps, 12).rapid);
    EXPECT_TRUE(gaugeint::is_cauchy_with_tail(seq, kLine, eps, 12, 1e-15));
  }
}

TEST(ExtractRapid, HarmonicSequence) {
  std::vector<Vector> seq;
  for (int i = 1; i <= (1 << 15); ++i) seq.push_back(Vector{1.0 / i});
  const auto ex = gaugeint::extract_rapid(seq, kLine, 6);
  ASSERT_EQ(ex.indices.size(), 7u);
  for (std::size_t k = 1; k < ex.indices.size(); ++k) EXPECT_GT(ex.indices[k], ex.indices[k - 1]);
  // Index growth tracks the 4^k targets.
  EXPECT_GT(ex.indices.back(), ex.indices[ex.indices.size() - 2] * 3);
  EXPECT_TRUE(gaugeint::is_rapidly_cauchy(ex.subsequence, kLine, ex.eps, 6).rapid);
}

TEST(ExtractRapid, AlreadyRapidKeepsEarlyIndices) {
  const auto seq = geometric_partial_sums(20);
  const auto ex = gaugeint::extract_rapid(seq, kLine, 8);
  EXPECT_TRUE(gaugeint::is_rapidly_cauchy(ex.subsequence, kLine, ex.eps, 8).rapid);
  EXPECT_LE(ex.indices.back(), 10u);
}

TEST(ExtractRapid, OscillatingSequenceThrows) {
  std::vector<Vector> seq;
  for (int i = 0; i < 100; ++i) seq.push_back(Vector{i % 2 ? 1.0 : -1.0});
  EXPECT_THROW(gaugeint::extract_rapid(seq, kLine, 3), gaugeint::NotCauchyOnPrefix);
}

TEST(DiagonalExtract, CoordinateFamily) {
  const SpaceSpec family(3, {AbsCoordinate{0}, AbsCoordinate{1}, AbsCoordinate{2}});
  std::vector<Vector> seq;
  for (int i = 1; i <= 20000; ++i) seq.push_back(Vector{1.0 / i, 1.0 / i, 1.0 / i});
  const auto d = gaugeint::diagonal_extract(seq, family, 10);
  EXPECT_TRUE(d.all_pass);
  ASSERT_EQ(d.indices.size(), 11u);
  EXPECT_EQ(d.levels.size(), 3u);
  // One row per (k, j) with j <= min(k, 3).
  EXPECT_EQ(d.matrix.size(), 1u + 2u + 3u * 8u);
  for (const auto& row : d.matrix) EXPECT_LT(row.gap, row.threshold);
  // Nested levels.
  for (std::size_t l = 1; l < d.levels.size(); ++l)
    for (std::size_t idx : d.levels[l])
      EXPECT_TRUE(std::find(d.levels[l - 1].begin(), d.levels[l - 1].end(), idx) != d.levels[l - 1].end());
}

// Rechecked per seminorm, the diagonal is rapidly Cauchy with eps_k = 2^{-k/2}.
TEST(DiagonalExtract, DiagonalIsRapidPerSeminorm) {
  const SpaceSpec family(2, {AbsCoordinate{0}, AbsCoordinate{1}});
  std::vector<Vector> seq;
  for (int i = 1; i <= 20000; ++i) seq.push_back(Vector{1.0 / i, 3.0 / (i + 5.0)});
  const auto d = gaugeint::diagonal_extract(seq, family, 8);
  std::vector<Vector> diag;
  for (std::size_t i : d.indices) diag.push_back(seq[i]);
  const auto eps = EpsSeries::geometric(std::sqrt(0.5));
  // Position 1 is governed by rho_1 only; skip it for rho_2.
  EXPECT_TRUE(gaugeint::is_rapidly_cauchy(diag, gaugeint::seminorm_metric(family, 0), eps, 8).rapid);
  const std::vector<Vector> tail(diag.begin() + 1, diag.end());
  EXPECT_TRUE(gaugeint::is_rapidly_cauchy(tail, gaugeint::seminorm_metric(family, 1),
                                          EpsSeries::geometric(std::sqrt(0.5), std::sqrt(0.5)), 7)
                  .rapid);
}

TEST(DiagonalExtract, SingleSeminormMatchesRapidSemantics) {
  const SpaceSpec line(1, {AbsCoordinate{0}});
  std::vector<Vector> seq;
  for (int i = 1; i <= 5000; ++i) seq.push_back(Vector{1.0 / i});
  const auto d = gaugeint::diagonal_extract(seq, line, 8);
  EXPECT_TRUE(d.all_pass);
  EXPECT_EQ(d.matrix.size(), 8u);
}

TEST(DiagonalExtract, NamesTheOffendingSeminorm) {
  const SpaceSpec family(2, {AbsCoordinate{0}, AbsCoordinate{1}});
  std::vector<Vector> seq;
  for (int i = 1; i <= 2000; ++i) seq.push_back(Vector{1.0 / i, i % 2 ? 1.0 : -1.0});
  try {
    gaugeint::diagonal_extract(seq, family, 4);
    FAIL() << "expected NotCauchyOnPrefix";
  } catch (const gaugeint::NotCauchyOnPrefix& e) {
    EXPECT_EQ(e.seminorm(), 2u);
  }
}

TEST(Pointwise, SmoothRapidPartialSumsHaveNoExceptions) {
  std::vector<FunctionSpec> terms;
  for (int k = 1; k <= 12; ++k) terms.push_back(fn::polynomial({{0.0, std::pow(4.0, -k)}}, kUnit));
  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back(i / 999.0);
  const auto r = gaugeint::pointwise_cauchy_report(gaugeint::partial_sums(terms), AbsCoordinate{0}, grid,
                                                   EpsSeries::geometric(0.5), 1.0);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.exceptional_points.empty());
}

TEST(Pointwise, SpikesShrinkLikeOneOverN) {
  std::vector<FunctionSpec> seq;
  for (int n = 1; n <= 12; ++n) {
    const double w = 1.0 / n;
    seq.push_back(n == 1 ? fn::constant(Vector{1.0}, kUnit) : fn::step({0.0, w, 1.0}, {Vector{double(n)}, Vector{0.0}}));
  }
  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000.0);
  const auto r = gaugeint::pointwise_cauchy_report(seq, AbsCoordinate{0}, grid, EpsSeries::geometric(0.9), 1.0);
  EXPECT_TRUE(r.pass);
  for (std::size_t n = 2; n < r.fractions.size(); ++n) EXPECT_NEAR(r.fractions[n - 1], 1.0 / n, 2e-3);
}

TEST(Pointwise, ConstantSequenceIsQuiet) {
  const std::vector<FunctionSpec> seq(6, fn::constant(Vector{2.0}, kUnit));
  const auto r = gaugeint::pointwise_cauchy_report(seq, AbsCoordinate{0}, {0.1, 0.5}, EpsSeries::geometric(0.5), 2.0);
  for (double f : r.fractions) EXPECT_EQ(f, 0.0);
  EXPECT_TRUE(r.pass);
  EXPECT_THROW(gaugeint::pointwise_cauchy_report({seq[0]}, AbsCoordinate{0}, {0.1}, EpsSeries::geometric(0.5), 1.0),
               gaugeint::InvalidArgument);
}

std::vector<gaugeint::Gauge> pinned(std::vector<double> points) {
  return gaugeint::breakpoint_schedule(std::move(points), 1e-12, 0.05, kUnit, 0.5, 2);
}

TEST(Completeness, FlatGeometricTerms) {
  std::vector<FunctionSpec> terms;
  for (int k = 1; k <= 16; ++k) terms.push_back(fn::constant(Vector{std::pow(4.0, -k)}, kUnit));
  const std::vector<double> grid{0.1, 0.5, 0.9};
  const auto r = gaugeint::completeness_experiment(terms, EpsSeries::geometric(0.5), 1.0, SubsetSpec::interval(0.0, 1.0),
                                                   AbsCoordinate{0}, pinned({}), grid, 10, 1e-6);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.rows.size(), 10u);
  for (const auto& row : r.rows) EXPECT_LE(row.distance, row.bound);
  EXPECT_NEAR(r.limit_norm, (1.0 - std::pow(4.0, -16)) / 3.0, 1e-12);
}

TEST(Completeness, DyadicBlocksAndZeroTerms) {
  std::vector<FunctionSpec> terms;
  std::vector<double> anchors;
  for (int k = 1; k <= 12; ++k) {
    const double lo = 1.0 - std::pow(2.0, -k + 1);
    const double hi = 1.0 - std::pow(2.0, -k);
    anchors.push_back(lo);
    anchors.push_back(hi);
    terms.push_back(fn::indicator(SubsetSpec::interval(lo, hi), Vector{std::pow(4.0, -k)}, kUnit));
  }
  const std::vector<double> grid{0.2, 0.6, 0.8};
  const auto r = gaugeint::completeness_experiment(terms, EpsSeries::geometric(0.5), 2.0, SubsetSpec::interval(0.0, 1.0),
                                                   AbsCoordinate{0}, pinned(anchors), grid, 8, 1e-9);
  EXPECT_TRUE(r.pass);
  const std::vector<FunctionSpec> zeros(5, fn::zero(kUnit, 1));
  const auto z = gaugeint::completeness_experiment(zeros, EpsSeries::geometric(0.5), 1.0, SubsetSpec::interval(0.0, 1.0),
                                                   AbsCoordinate{0}, pinned({}), grid, 3, 1e-12);
  EXPECT_TRUE(z.pass);
  for (const auto& row : z.rows) EXPECT_EQ(row.distance, 0.0);
}

TEST(Completeness, BudgetViolationRejected) {
  const std::vector<FunctionSpec> terms{fn::constant(Vector{1.0}, kUnit), fn::constant(Vector{1.0}, kUnit)};
  EXPECT_THROW(gaugeint::completeness_experiment(terms, EpsSeries::geometric(0.5), 1.0, SubsetSpec::interval(0.0, 1.0),
                                                 AbsCoordinate{0}, pinned({}), {0.5}, 1, 1e-9),
               gaugeint::InvalidArgument);
}

}  // namespace
