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
#include "gaugeint/spaces.hpp"
#include "gaugeint/subset.hpp"

namespace {

using gaugeint::AbsCoordinate;
using gaugeint::Euclidean;
using gaugeint::Seminorm;
using gaugeint::SpaceSpec;
using gaugeint::SubsetSpec;
using gaugeint::SupOverSubset;
using gaugeint::Vector;
using gaugeint::WeightedSum;

TEST(SeminormEval, CoordinateTakesAbsoluteValue) {
  const SpaceSpec s(2, {AbsCoordinate{0}});
  EXPECT_DOUBLE_EQ(gaugeint::seminorm_eval(s, 0, Vector{3.0, -7.0}), 3.0);
}

TEST(SeminormEval, ZeroVectorIsZeroForEveryKind) {
  const SpaceSpec s(3, {AbsCoordinate{2}, WeightedSum{{1.0, 2.0, 3.0}}, SupOverSubset{{0, 1}}, Euclidean{}});
  for (std::size_t i = 0; i < s.count(); ++i) EXPECT_EQ(gaugeint::seminorm_eval(s, i, Vector(3)), 0.0);
}

TEST(SeminormEval, WeightedSumHandValue) {
  const SpaceSpec s(2, {WeightedSum{{1.0, 2.0}}});
  EXPECT_DOUBLE_EQ(gaugeint::seminorm_eval(s, 0, Vector{1.0, 0.5}), 2.0);
}

TEST(SeminormEval, SupOverSubsetIgnoresOtherCoordinates) {
  const SpaceSpec s(3, {SupOverSubset{{0, 2}}});
  EXPECT_DOUBLE_EQ(gaugeint::seminorm_eval(s, 0, Vector{-1.0, 100.0, 4.0}), 4.0);
}

TEST(SeminormEval, RejectsBadInput) {
  const SpaceSpec s(2, {AbsCoordinate{0}});
  EXPECT_THROW(gaugeint::seminorm_eval(s, 0, Vector{1.0}), gaugeint::DimensionMismatch);
  EXPECT_THROW(gaugeint::seminorm_eval(s, 1, Vector{1.0, 2.0}), gaugeint::IndexOutOfRange);
}

TEST(SpaceSpecTest, RejectsInvalidFamilies) {
  EXPECT_THROW(SpaceSpec(0, {Euclidean{}}), gaugeint::InvalidArgument);
  EXPECT_THROW(SpaceSpec(2, {}), gaugeint::InvalidArgument);
  EXPECT_THROW(SpaceSpec(2, {AbsCoordinate{2}}), gaugeint::InvalidArgument);
  EXPECT_THROW(SpaceSpec(2, {WeightedSum{{1.0}}}), gaugeint::DimensionMismatch);
  EXPECT_THROW(SpaceSpec(2, {WeightedSum{{1.0, -1.0}}}), gaugeint::InvalidArgument);
  EXPECT_THROW(SpaceSpec(2, {SupOverSubset{{}}}), gaugeint::InvalidArgument);
}

TEST(SpaceSpecTest, OrderIsStable) {
  const SpaceSpec s(2, {Euclidean{}, AbsCoordinate{1}, AbsCoordinate{0}}, "fam");
  EXPECT_EQ(s.count(), 3u);
  EXPECT_EQ(s.seminorm(0).name(), "euclidean-full");
  EXPECT_EQ(s.seminorm(1).name(), "abs-coordinate");
  EXPECT_EQ(s.label(), "fam");
}

TEST(VectorTest, ArithmeticChecksDimension) {
  Vector a{1.0, 2.0};
  EXPECT_THROW(a += Vector{1.0}, gaugeint::DimensionMismatch);
  const Vector b = 2.0 * a - Vector{1.0, 1.0};
  EXPECT_EQ(b[0], 1.0);
  EXPECT_EQ(b[1], 3.0);
}

TEST(InKernel, CoordinateKernelContainsOtherAxis) {
  const SpaceSpec s(2, {AbsCoordinate{0}});
  EXPECT_TRUE(gaugeint::in_kernel(s, Vector{0.0, 9.0}, 0.0).overall);
  EXPECT_TRUE(gaugeint::in_kernel(s, Vector{1e-12, 1.0}, 1e-9).overall);
}

TEST(InKernel, NormSeparatesPoints) {
  const SpaceSpec s(2, {Euclidean{}});
  EXPECT_FALSE(gaugeint::in_kernel(s, Vector{0.0, 9.0}, 0.0).overall);
}

TEST(InKernel, ReportsPerSeminorm) {
  const SpaceSpec s(2, {AbsCoordinate{0}, AbsCoordinate{1}});
  const auto k = gaugeint::in_kernel(s, Vector{0.0, 1.0}, 0.0);
  ASSERT_EQ(k.per_seminorm.size(), 2u);
  EXPECT_TRUE(k.per_seminorm[0]);
  EXPECT_FALSE(k.per_seminorm[1]);
  EXPECT_FALSE(k.overall);
  EXPECT_THROW(gaugeint::in_kernel(s, Vector{1.0}, 0.0), gaugeint::DimensionMismatch);
}

TEST(ClassEqual, KernelDirectionIsInvisible) {
  const SpaceSpec s(2, {AbsCoordinate{0}});
  EXPECT_TRUE(gaugeint::class_equal(s, Vector{1.0, 2.0}, Vector{1.0, 100.0}, 0.0));
  EXPECT_FALSE(gaugeint::class_equal(s, Vector{1.0, 2.0}, Vector{2.0, 2.0}, 0.0));
}

TEST(ClassEqual, ComponentwiseTolerance) {
  const SpaceSpec s(2, {AbsCoordinate{0}, AbsCoordinate{1}});
  EXPECT_TRUE(gaugeint::class_equal(s, Vector{1.0, 2.0}, Vector{1.0, 2.0 + 1e-12}, 1e-9));
  const std::vector<double> tight{1.0, 0.0};
  EXPECT_FALSE(gaugeint::class_equal(s, Vector{1.0, 2.0}, Vector{1.5, 2.0 + 1e-12}, tight));
  EXPECT_THROW(gaugeint::class_equal(s, Vector{1.0}, Vector{1.0, 2.0}, 0.0), gaugeint::DimensionMismatch);
}

// Random vectors and seminorms for the axioms.
class SeminormAxioms : public ::testing::TestWithParam<int> {
 protected:
  Seminorm pick(std::mt19937_64& rng, std::size_t dim) {
    std::uniform_int_distribution<std::size_t> coord(0, dim - 1);
    std::uniform_real_distribution<double> w(0.0, 3.0);
    switch (GetParam()) {
      case 0: return AbsCoordinate{coord(rng)};
      case 1: {
        std::vector<double> ws(dim);
        for (double& x : ws) x = w(rng);
        return WeightedSum{ws};
      }
      case 2: return SupOverSubset{{coord(rng), coord(rng)}};
      default: return Euclidean{};
    }
  }
  static Vector draw(std::mt19937_64& rng, std::size_t dim) {
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = u(rng);
    return v;
  }
};

TEST_P(SeminormAxioms, SubadditiveHomogeneousNonnegative) {
  std::mt19937_64 rng(17 + GetParam());
  std::uniform_real_distribution<double> c(-5.0, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 1 + trial % 4;
    const Seminorm rho = pick(rng, dim);
    const Vector x = draw(rng, dim);
    const Vector y = draw(rng, dim);
    const double s = c(rng);
    EXPECT_GE(rho(x), 0.0);
    EXPECT_LE(rho(x + y), rho(x) + rho(y) + 1e-12 * (1.0 + rho(x) + rho(y)));
    EXPECT_NEAR(rho(s * x), std::abs(s) * rho(x), 1e-12 * (1.0 + std::abs(s) * rho(x)));
  }
}

TEST_P(SeminormAxioms, KernelIsClosedUnderLinearCombinations) {
  std::mt19937_64 rng(101 + GetParam());
  std::uniform_real_distribution<double> c(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + trial % 3;
    const Seminorm rho = pick(rng, dim);
    // Zero out the coordinates the seminorm can see to land in its kernel.
    auto kernelize = [&](Vector v) {
      for (std::size_t i = 0; i < dim; ++i) {
        Vector e(dim);
        e[i] = 1.0;
        if (rho(e) > 0.0) v[i] = 0.0;
      }
      return v;
    };
    const Vector a = kernelize(draw(rng, dim));
    const Vector b = kernelize(draw(rng, dim));
    EXPECT_EQ(rho(a), 0.0);
    EXPECT_EQ(rho(c(rng) * a + c(rng) * b), 0.0);
  }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, SeminormAxioms, ::testing::Values(0, 1, 2, 3));

TEST(Subset, CanonicalFormMergesAndAbsorbs) {
  const SubsetSpec s({{0.5, 0.7}, {0.0, 0.2}, {0.2, 0.3}}, {0.1, 0.9, 0.9});
  ASSERT_EQ(s.intervals().size(), 2u);
  EXPECT_EQ(s.intervals()[0].lo, 0.0);
  EXPECT_EQ(s.intervals()[0].hi, 0.3);
  ASSERT_EQ(s.points().size(), 1u);
  EXPECT_EQ(s.points()[0], 0.9);
  EXPECT_DOUBLE_EQ(s.lebesgue_measure(), 0.5);
}

TEST(Subset, MembershipIsExact) {
  const SubsetSpec s({{0.2, 0.7}}, {0.9});
  EXPECT_TRUE(s.contains(0.2));
  EXPECT_TRUE(s.contains(0.7));
  EXPECT_TRUE(s.contains(0.9));
  EXPECT_FALSE(s.contains(std::nextafter(0.7, 1.0)));
  EXPECT_FALSE(s.contains(0.8));
}

TEST(Subset, SetAlgebra) {
  const auto a = SubsetSpec::interval(0.0, 0.6);
  const auto b = SubsetSpec::interval(0.4, 1.0);
  EXPECT_DOUBLE_EQ(intersect(a, b).lebesgue_measure(), 0.2);
  EXPECT_DOUBLE_EQ(unite(a, b).lebesgue_measure(), 1.0);
  const auto d = closure_difference(SubsetSpec::interval(0.0, 1.0), a);
  EXPECT_EQ(d, SubsetSpec::interval(0.6, 1.0));
  EXPECT_TRUE(a.subset_of(unite(a, b)));
  EXPECT_FALSE(b.subset_of(a));
  // Touching intervals meet in a single point.
  const auto touch = intersect(SubsetSpec::interval(0.0, 0.5), SubsetSpec::interval(0.5, 1.0));
  EXPECT_EQ(touch, SubsetSpec::point_set({0.5}));
}

TEST(Subset, RejectsMalformedIntervals) {
  EXPECT_THROW(SubsetSpec::interval(1.0, 0.0), gaugeint::InvalidArgument);
  EXPECT_THROW(SubsetSpec::interval(0.0, INFINITY), gaugeint::InvalidArgument);
}

}  // namespace
