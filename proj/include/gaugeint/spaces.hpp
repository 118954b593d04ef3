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

// Finite-dimensional real vector spaces carrying an ordered family of
// seminorms. A single seminorm models (X, rho); several model a truncated
// Frechet family rho_1, rho_2, ..., rho_K.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "gaugeint/error.hpp"

namespace gaugeint {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
  explicit Vector(std::vector<double> coords) : coords_(std::move(coords)) {}
  Vector(std::initializer_list<double> coords) : coords_(coords) {}

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& raw() const noexcept { return coords_; }

  bool all_finite() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](double x) { return std::isfinite(x); });
  }

  Vector& operator+=(const Vector& o) {
    require_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    require_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Vector& operator*=(double c) noexcept {
    for (double& x : coords_) x *= c;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Vector a, double c) { return a *= c; }
  friend Vector operator*(double c, Vector a) { return a *= c; }
  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  void require_same(const Vector& o) const {
    if (o.size() != size()) throw DimensionMismatch(size(), o.size());
  }

  std::vector<double> coords_;
};

/// rho(x) = |x_j|
struct AbsCoordinate {
  std::size_t index = 0;
};

/// rho(x) = sum_i w_i |x_i|, w_i >= 0
struct WeightedSum {
  std::vector<double> weights;
};

/// rho(x) = max_{i in S} |x_i|
struct SupOverSubset {
  std::vector<std::size_t> indices;
};

/// rho(x) = ||x||_2
struct Euclidean {};

class Seminorm {
 public:
  using Kind = std::variant<AbsCoordinate, WeightedSum, SupOverSubset, Euclidean>;

  Seminorm() : kind_(Euclidean{}) {}
  // Implicit so that {AbsCoordinate{0}, Euclidean{}} builds a family directly.
  Seminorm(Kind kind) : kind_(std::move(kind)) {}          // NOLINT(google-explicit-constructor)
  Seminorm(AbsCoordinate k) : kind_(k) {}              // NOLINT(google-explicit-constructor)
  Seminorm(WeightedSum k) : kind_(std::move(k)) {}     // NOLINT(google-explicit-constructor)
  Seminorm(SupOverSubset k) : kind_(std::move(k)) {}   // NOLINT(google-explicit-constructor)
  Seminorm(Euclidean k) : kind_(k) {}                  // NOLINT(google-explicit-constructor)

  const Kind& kind() const noexcept { return kind_; }

  /// Throws unless every parameter is valid for vectors of dimension `dim`.
  void validate(std::size_t dim) const {
    std::visit(
        [dim](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, AbsCoordinate>) {
            if (k.index >= dim) throw InvalidArgument("abs-coordinate index beyond dimension");
          } else if constexpr (std::is_same_v<T, WeightedSum>) {
            if (k.weights.size() != dim) throw DimensionMismatch(dim, k.weights.size());
            for (double w : k.weights)
              if (!(w >= 0.0) || !std::isfinite(w))
                throw InvalidArgument("weighted-sum weights must be finite and >= 0");
          } else if constexpr (std::is_same_v<T, SupOverSubset>) {
            if (k.indices.empty()) throw InvalidArgument("sup-over-subset needs a nonempty index set");
            for (std::size_t i : k.indices)
              if (i >= dim) throw InvalidArgument("sup-over-subset index beyond dimension");
          }
        },
        kind_);
  }

  double operator()(std::span<const double> x) const {
    return std::visit(
        [x](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, AbsCoordinate>) {
            return std::abs(x[k.index]);
          } else if constexpr (std::is_same_v<T, WeightedSum>) {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) s += k.weights[i] * std::abs(x[i]);
            return s;
          } else if constexpr (std::is_same_v<T, SupOverSubset>) {
            double m = 0.0;
            for (std::size_t i : k.indices) m = std::max(m, std::abs(x[i]));
            return m;
          } else {
            double s = 0.0;
            for (double xi : x) s += xi * xi;
            return std::sqrt(s);
          }
        },
        kind_);
  }
  double operator()(const Vector& x) const { return (*this)(x.coords()); }

  std::string name() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, AbsCoordinate>) return "abs-coordinate";
          else if constexpr (std::is_same_v<T, WeightedSum>) return "weighted-sum";
          else if constexpr (std::is_same_v<T, SupOverSubset>) return "sup-over-subset";
          else return "euclidean-full";
        },
        kind_);
  }

 private:
  Kind kind_;
};

class SpaceSpec {
 public:
  /// R with the absolute value.
  SpaceSpec() : SpaceSpec(1, {AbsCoordinate{0}}, "R") {}
  SpaceSpec(std::size_t dimension, std::vector<Seminorm> seminorms, std::string label = {})
      : dimension_(dimension), seminorms_(std::move(seminorms)), label_(std::move(label)) {
    if (dimension_ == 0) throw InvalidArgument("space dimension must be positive");
    if (seminorms_.empty()) throw InvalidArgument("space needs at least one seminorm");
    for (const auto& s : seminorms_) s.validate(dimension_);
  }

  static SpaceSpec real_line() { return SpaceSpec(); }

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t count() const noexcept { return seminorms_.size(); }
  const std::vector<Seminorm>& seminorms() const noexcept { return seminorms_; }
  const std::string& label() const noexcept { return label_; }

  const Seminorm& seminorm(std::size_t i) const {
    if (i >= seminorms_.size()) throw IndexOutOfRange(i, seminorms_.size());
    return seminorms_[i];
  }

  void require_member(const Vector& x) const {
    if (x.size() != dimension_) throw DimensionMismatch(dimension_, x.size());
  }

 private:
  std::size_t dimension_;
  std::vector<Seminorm> seminorms_;
  std::string label_;
};

inline double seminorm_eval(const SpaceSpec& space, std::size_t i, const Vector& x) {
  const Seminorm& rho = space.seminorm(i);
  space.require_member(x);
  return rho(x);
}

struct KernelMembership {
  std::vector<bool> per_seminorm;
  bool overall = true;
};

inline KernelMembership in_kernel(const SpaceSpec& space, const Vector& x, double tol) {
  if (!(tol >= 0.0)) throw InvalidArgument("kernel tolerance must be >= 0");
  space.require_member(x);
  KernelMembership out;
  out.per_seminorm.reserve(space.count());
  for (const auto& rho : space.seminorms()) {
    const bool in = rho(x) <= tol;
    out.per_seminorm.push_back(in);
    out.overall = out.overall && in;
  }
  return out;
}

/// Equality of the classes x + ker and y + ker, up to `tol` in every seminorm.
inline bool class_equal(const SpaceSpec& space, const Vector& x, const Vector& y, double tol) {
  space.require_member(x);
  space.require_member(y);
  return in_kernel(space, x - y, tol).overall;
}

/// Per-seminorm tolerances, one per member of the family.
inline bool class_equal(const SpaceSpec& space, const Vector& x, const Vector& y,
                        std::span<const double> tol) {
  space.require_member(x);
  space.require_member(y);
  if (tol.size() != space.count()) throw DimensionMismatch(space.count(), tol.size());
  const Vector d = x - y;
  for (std::size_t i = 0; i < space.count(); ++i)
    if (!(space.seminorm(i)(d) <= tol[i])) return false;
  return true;
}

}  // namespace gaugeint
