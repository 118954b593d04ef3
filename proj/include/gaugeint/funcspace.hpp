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

// Functions f : [a,b] -> R^n as immutable constructor trees, interval-point
// functions built from them, and a small corpus of derivative/primitive
// pairs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "gaugeint/error.hpp"
#include "gaugeint/spaces.hpp"
#include "gaugeint/subset.hpp"

namespace gaugeint {

struct FunctionNode;

class FunctionSpec {
 public:
  FunctionSpec(std::shared_ptr<const FunctionNode> node, Interval domain, std::size_t dim)
      : node_(std::move(node)), domain_(domain), dim_(dim) {
    if (!(domain_.lo < domain_.hi)) throw InvalidArgument("function domain must satisfy a < b");
    if (dim_ == 0) throw InvalidArgument("function codomain dimension must be positive");
  }

  const FunctionNode& node() const noexcept { return *node_; }
  const std::shared_ptr<const FunctionNode>& node_ptr() const noexcept { return node_; }
  Interval domain() const noexcept { return domain_; }
  std::size_t dim() const noexcept { return dim_; }

  Vector operator()(double t) const;

 private:
  std::shared_ptr<const FunctionNode> node_;
  Interval domain_;
  std::size_t dim_;
};

struct ConstantNode {
  Vector value;
};

/// coeffs[j] holds ascending-power coefficients of coordinate j.
struct PolynomialNode {
  std::vector<std::vector<double>> coeffs;
};

/// Coordinate j: amplitude[j] * sin(frequency[j] * t + phase[j]).
struct TrigNode {
  std::vector<double> amplitude;
  std::vector<double> frequency;
  std::vector<double> phase;
};

enum class Oscillator { sine, cosine };

/// amplitude * x^alpha * osc(x^(-beta)) in one coordinate for x > 0, zero at
/// x <= 0 and in every other coordinate.
struct OscSingularNode {
  double alpha = 2.0;
  double beta = 2.0;
  Oscillator osc = Oscillator::sine;
  std::size_t coordinate = 0;
  double amplitude = 1.0;
  std::size_t dim = 1;
};

/// pieces[i] on [breaks[i], breaks[i+1]); the last piece also owns breaks.back().
struct StepNode {
  std::vector<double> breaks;
  std::vector<Vector> pieces;
};

struct IndicatorNode {
  SubsetSpec set;
  Vector value;
};

struct SumNode {
  std::vector<FunctionSpec> terms;
};

struct ScaleNode {
  double factor = 1.0;
  FunctionSpec child;
};

/// scalar(t) * child(t); `scalar` is real valued.
struct ProductNode {
  FunctionSpec scalar;
  FunctionSpec child;
};

/// rho(child(t))^exponent, real valued.
struct SeminormPowerNode {
  FunctionSpec child;
  Seminorm rho;
  double exponent = 1.0;
};

struct FunctionNode {
  std::variant<ConstantNode, PolynomialNode, TrigNode, OscSingularNode, StepNode, IndicatorNode, SumNode,
               ScaleNode, ProductNode, SeminormPowerNode>
      kind;
};

namespace detail {

inline Vector eval_node(const FunctionNode& node, std::size_t dim, double t);

inline double osc_value(const OscSingularNode& n, double x) {
  if (x <= 0.0) return 0.0;
  const double arg = std::pow(x, -n.beta);
  const double w = n.osc == Oscillator::sine ? std::sin(arg) : std::cos(arg);
  return n.amplitude * std::pow(x, n.alpha) * w;
}

inline Vector eval_node(const FunctionNode& node, std::size_t dim, double t) {
  return std::visit(
      [&](const auto& k) -> Vector {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantNode>) {
          return k.value;
        } else if constexpr (std::is_same_v<T, PolynomialNode>) {
          Vector out(dim);
          for (std::size_t j = 0; j < dim; ++j) {
            double acc = 0.0;
            for (auto it = k.coeffs[j].rbegin(); it != k.coeffs[j].rend(); ++it) acc = acc * t + *it;
            out[j] = acc;
          }
          return out;
        } else if constexpr (std::is_same_v<T, TrigNode>) {
          Vector out(dim);
          for (std::size_t j = 0; j < dim; ++j) out[j] = k.amplitude[j] * std::sin(k.frequency[j] * t + k.phase[j]);
          return out;
        } else if constexpr (std::is_same_v<T, OscSingularNode>) {
          Vector out(dim);
          out[k.coordinate] = osc_value(k, t);
          return out;
        } else if constexpr (std::is_same_v<T, StepNode>) {
          auto it = std::upper_bound(k.breaks.begin(), k.breaks.end(), t);
          std::size_t i = it == k.breaks.begin() ? 0 : static_cast<std::size_t>(it - k.breaks.begin()) - 1;
          return k.pieces[std::min(i, k.pieces.size() - 1)];
        } else if constexpr (std::is_same_v<T, IndicatorNode>) {
          return k.set.contains(t) ? k.value : Vector(dim);
        } else if constexpr (std::is_same_v<T, SumNode>) {
          Vector out(dim);
          for (const auto& term : k.terms) out += term(t);
          return out;
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          return k.child(t) * k.factor;
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          return k.child(t) * k.scalar(t)[0];
        } else {
          const double r = k.rho(k.child(t));
          return Vector{std::pow(r, k.exponent)};
        }
      },
      node.kind);
}

}  // namespace detail

inline Vector FunctionSpec::operator()(double t) const { return detail::eval_node(*node_, dim_, t); }

/// Evaluate with domain and finiteness checks.
inline Vector eval(const FunctionSpec& f, double t) {
  const Interval d = f.domain();
  if (!(d.lo <= t && t <= d.hi)) throw OutsideDomain("evaluation point outside the function domain");
  Vector out = f(t);
  if (!out.all_finite()) throw InvalidArgument("function produced a non-finite value");
  return out;
}

// ---------------------------------------------------------------------------
// Constructors

namespace fn {

inline FunctionSpec make(FunctionNode node, Interval domain, std::size_t dim) {
  return FunctionSpec(std::make_shared<const FunctionNode>(std::move(node)), domain, dim);
}

inline FunctionSpec constant(Vector value, Interval domain) {
  if (!value.all_finite()) throw InvalidArgument("constant must be finite");
  const std::size_t dim = value.size();
  return make({ConstantNode{std::move(value)}}, domain, dim);
}

inline FunctionSpec polynomial(std::vector<std::vector<double>> coeffs, Interval domain) {
  if (coeffs.empty()) throw InvalidArgument("polynomial needs at least one coordinate");
  const std::size_t dim = coeffs.size();
  return make({PolynomialNode{std::move(coeffs)}}, domain, dim);
}

inline FunctionSpec trig(std::vector<double> amplitude, std::vector<double> frequency, std::vector<double> phase,
                         Interval domain) {
  const std::size_t dim = amplitude.size();
  if (dim == 0 || frequency.size() != dim || phase.size() != dim)
    throw InvalidArgument("trig needs equal-length amplitude/frequency/phase");
  return make({TrigNode{std::move(amplitude), std::move(frequency), std::move(phase)}}, domain, dim);
}

inline FunctionSpec osc_singular(double alpha, double beta, Oscillator osc, Interval domain, std::size_t dim = 1,
                                 std::size_t coordinate = 0, double amplitude = 1.0) {
  if (coordinate >= dim) throw InvalidArgument("oscillatory-singular coordinate beyond dimension");
  if (!(beta > 0.0)) throw InvalidArgument("oscillatory-singular needs beta > 0");
  return make({OscSingularNode{alpha, beta, osc, coordinate, amplitude, dim}}, domain, dim);
}

inline FunctionSpec step(std::vector<double> breaks, std::vector<Vector> pieces) {
  if (breaks.size() < 2 || pieces.size() + 1 != breaks.size())
    throw InvalidArgument("step function needs breaks.size() == pieces.size() + 1 >= 2");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i - 1] < breaks[i])) throw InvalidArgument("step breakpoints must be strictly increasing");
  const std::size_t dim = pieces.front().size();
  for (const auto& p : pieces) {
    if (p.size() != dim) throw DimensionMismatch(dim, p.size());
    if (!p.all_finite()) throw InvalidArgument("step values must be finite");
  }
  const Interval domain{breaks.front(), breaks.back()};
  return make({StepNode{std::move(breaks), std::move(pieces)}}, domain, dim);
}

inline FunctionSpec indicator(SubsetSpec set, Vector value, Interval domain) {
  if (!set.within(domain.lo, domain.hi)) throw InvalidArgument("indicator set must lie inside the domain");
  const std::size_t dim = value.size();
  return make({IndicatorNode{std::move(set), std::move(value)}}, domain, dim);
}

inline FunctionSpec sum(std::vector<FunctionSpec> terms) {
  if (terms.empty()) throw InvalidArgument("sum needs at least one term");
  const Interval domain = terms.front().domain();
  const std::size_t dim = terms.front().dim();
  for (const auto& t : terms) {
    if (t.dim() != dim) throw DimensionMismatch(dim, t.dim());
    if (t.domain() != domain) throw InvalidArgument("sum terms must share a domain");
  }
  return make({SumNode{std::move(terms)}}, domain, dim);
}

inline FunctionSpec scale(double factor, FunctionSpec child) {
  if (!std::isfinite(factor)) throw InvalidArgument("scale factor must be finite");
  const Interval domain = child.domain();
  const std::size_t dim = child.dim();
  return make({ScaleNode{factor, std::move(child)}}, domain, dim);
}

inline FunctionSpec product(FunctionSpec scalar, FunctionSpec child) {
  if (scalar.dim() != 1) throw DimensionMismatch(1, scalar.dim());
  if (scalar.domain() != child.domain()) throw InvalidArgument("product factors must share a domain");
  const Interval domain = child.domain();
  const std::size_t dim = child.dim();
  return make({ProductNode{std::move(scalar), std::move(child)}}, domain, dim);
}

inline FunctionSpec seminorm_power(FunctionSpec child, Seminorm rho, double exponent) {
  rho.validate(child.dim());
  if (!(exponent >= 0.0)) throw InvalidArgument("seminorm power needs exponent >= 0");
  const Interval domain = child.domain();
  return make({SeminormPowerNode{std::move(child), std::move(rho), exponent}}, domain, 1);
}

inline FunctionSpec zero(Interval domain, std::size_t dim) { return constant(Vector(dim), domain); }

}  // namespace fn

inline FunctionSpec operator+(const FunctionSpec& f, const FunctionSpec& g) { return fn::sum({f, g}); }
inline FunctionSpec operator-(const FunctionSpec& f, const FunctionSpec& g) { return fn::sum({f, fn::scale(-1.0, g)}); }
inline FunctionSpec operator*(double c, const FunctionSpec& f) { return fn::scale(c, f); }

/// t -> 1_A(t) * f(t)
inline FunctionSpec indicator_restrict(const FunctionSpec& f, const SubsetSpec& set) {
  const Interval d = f.domain();
  if (!set.within(d.lo, d.hi)) throw InvalidArgument("restriction set must lie inside the domain");
  return fn::product(fn::indicator(set, Vector{1.0}, d), f);
}

// ---------------------------------------------------------------------------
// Structure queries

namespace detail {

inline void collect_breaks(const FunctionNode& node, std::vector<double>& out) {
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, OscSingularNode>) {
          out.push_back(0.0);
        } else if constexpr (std::is_same_v<T, StepNode>) {
          out.insert(out.end(), k.breaks.begin(), k.breaks.end());
        } else if constexpr (std::is_same_v<T, IndicatorNode>) {
          const auto b = k.set.boundary_points();
          out.insert(out.end(), b.begin(), b.end());
        } else if constexpr (std::is_same_v<T, SumNode>) {
          for (const auto& term : k.terms) collect_breaks(term.node(), out);
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          collect_breaks(k.child.node(), out);
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          collect_breaks(k.scalar.node(), out);
          collect_breaks(k.child.node(), out);
        } else if constexpr (std::is_same_v<T, SeminormPowerNode>) {
          collect_breaks(k.child.node(), out);
        }
      },
      node.kind);
}

// 0: piecewise constant, 1: smooth between breaks, 2: oscillatory singular
inline int regularity(const FunctionNode& node) {
  return std::visit(
      [](const auto& k) -> int {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantNode> || std::is_same_v<T, StepNode> ||
                      std::is_same_v<T, IndicatorNode>) {
          return 0;
        } else if constexpr (std::is_same_v<T, PolynomialNode> || std::is_same_v<T, TrigNode>) {
          return 1;
        } else if constexpr (std::is_same_v<T, OscSingularNode>) {
          return 2;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          int r = 0;
          for (const auto& term : k.terms) r = std::max(r, regularity(term.node()));
          return r;
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          return regularity(k.child.node());
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          return std::max(regularity(k.scalar.node()), regularity(k.child.node()));
        } else {
          return regularity(k.child.node());
        }
      },
      node.kind);
}

}  // namespace detail

/// Points of [a,b] where the function may jump or blow up, sorted and unique,
/// always including both ends of the domain.
inline std::vector<double> critical_points(const FunctionSpec& f) {
  std::vector<double> out{f.domain().lo, f.domain().hi};
  detail::collect_breaks(f.node(), out);
  const Interval d = f.domain();
  std::erase_if(out, [d](double x) { return x < d.lo || x > d.hi; });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// True when the function is constant on every open gap between critical points.
inline bool is_piecewise_constant(const FunctionSpec& f) { return detail::regularity(f.node()) == 0; }

/// {t in [a,b] : rho(f(t)) >= level}, exactly for piecewise-constant
/// functions and by bracketed root refinement for smooth pieces.
inline SubsetSpec level_set(const FunctionSpec& f, const Seminorm& rho, double level, std::size_t samples = 4096) {
  rho.validate(f.dim());
  const int reg = detail::regularity(f.node());
  if (reg == 2) throw NotRepresentable("level set of an oscillatory-singular function is not representable");
  const auto crit = critical_points(f);
  auto g = [&](double t) { return rho(f(t)) - level; };

  std::vector<Interval> ivs;
  std::vector<double> pts;
  for (double c : crit)
    if (g(c) >= 0.0) pts.push_back(c);

  for (std::size_t s = 0; s + 1 < crit.size(); ++s) {
    const double lo = crit[s];
    const double hi = crit[s + 1];
    if (reg == 0) {
      if (g(0.5 * (lo + hi)) >= 0.0) ivs.push_back({lo, hi});
      continue;
    }
    // Interior samples only: the endpoints may belong to a neighbouring piece.
    const std::size_t n = std::max<std::size_t>(samples, 2);
    auto at = [&](std::size_t i) {
      if (i == 0) return lo;
      if (i == n) return hi;
      return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    };
    auto interior = [&](std::size_t i) {
      // Nudge the extreme samples inward so the piece's own formula is used.
      const double eps = (hi - lo) * 1e-12;
      if (i == 0) return lo + eps;
      if (i == n) return hi - eps;
      return at(i);
    };
    auto refine = [&](double a, double b, bool a_in) {
      for (int it = 0; it < 200 && b - a > 0.0; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        if ((g(m) >= 0.0) == a_in) a = m;
        else b = m;
      }
      return a_in ? a : b;
    };
    bool inside = g(interior(0)) >= 0.0;
    double start = lo;
    for (std::size_t i = 1; i <= n; ++i) {
      const bool now = g(interior(i)) >= 0.0;
      if (now != inside) {
        const double root = refine(interior(i - 1), interior(i), inside);
        if (inside) ivs.push_back({start, root});
        else start = root;
        inside = now;
      }
    }
    if (inside) ivs.push_back({start, hi});
  }
  return SubsetSpec(std::move(ivs), std::move(pts));
}

// ---------------------------------------------------------------------------
// Interval-point functions

struct Theta {
  FunctionSpec f;
};
struct Delta {
  FunctionSpec F;
};
struct ThetaMinusDelta {
  FunctionSpec f;
  FunctionSpec F;
};
/// Real valued: rho(f(t))^p * (v - u).
struct ThetaP {
  FunctionSpec f;
  double p = 1.0;
  Seminorm rho;
};
struct Length {};

using IntervalPointFn = std::variant<Theta, Delta, ThetaMinusDelta, ThetaP, Length>;

inline IntervalPointFn theta_p(const FunctionSpec& f, double p, const SpaceSpec& space, std::size_t i) {
  if (!(p >= 1.0)) throw InvalidArgument("theta-p needs p >= 1");
  if (f.dim() != space.dimension()) throw DimensionMismatch(space.dimension(), f.dim());
  return ThetaP{f, p, space.seminorm(i)};
}

inline bool is_real_valued(const IntervalPointFn& h) {
  return std::holds_alternative<ThetaP>(h) || std::holds_alternative<Length>(h);
}

/// h([u,v], t) as a vector; real-valued kinds give a one-element vector.
inline Vector ipf_value(const IntervalPointFn& h, double u, double v, double t) {
  return std::visit(
      [&](const auto& k) -> Vector {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Theta>) {
          return k.f(t) * (v - u);
        } else if constexpr (std::is_same_v<T, Delta>) {
          return k.F(v) - k.F(u);
        } else if constexpr (std::is_same_v<T, ThetaMinusDelta>) {
          return k.f(t) * (v - u) - (k.F(v) - k.F(u));
        } else if constexpr (std::is_same_v<T, ThetaP>) {
          return Vector{std::pow(k.rho(k.f(t)), k.p) * (v - u)};
        } else {
          return Vector{v - u};
        }
      },
      h);
}

/// rho(h([u,v], t)); real-valued kinds use the absolute value and ignore rho.
inline double ipf_rho(const IntervalPointFn& h, const Seminorm& rho, double u, double v, double t) {
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Theta>) {
          return rho(k.f(t)) * (v - u);
        } else if constexpr (std::is_same_v<T, Delta>) {
          return rho(k.F(v) - k.F(u));
        } else if constexpr (std::is_same_v<T, ThetaMinusDelta>) {
          return rho(k.f(t) * (v - u) - (k.F(v) - k.F(u)));
        } else if constexpr (std::is_same_v<T, ThetaP>) {
          return std::pow(k.rho(k.f(t)), k.p) * (v - u);
        } else {
          return v - u;
        }
      },
      h);
}

inline std::vector<double> critical_points(const IntervalPointFn& h) {
  return std::visit(
      [](const auto& k) -> std::vector<double> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Theta> || std::is_same_v<T, ThetaP>) {
          return critical_points(k.f);
        } else if constexpr (std::is_same_v<T, Delta>) {
          return critical_points(k.F);
        } else if constexpr (std::is_same_v<T, ThetaMinusDelta>) {
          auto a = critical_points(k.f);
          auto b = critical_points(k.F);
          a.insert(a.end(), b.begin(), b.end());
          std::sort(a.begin(), a.end());
          a.erase(std::unique(a.begin(), a.end()), a.end());
          return a;
        } else {
          return {};
        }
      },
      h);
}

/// Dimension of the values of h (1 for the real-valued kinds).
inline std::size_t ipf_dim(const IntervalPointFn& h) {
  return std::visit(
      [](const auto& k) -> std::size_t {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Theta> || std::is_same_v<T, ThetaMinusDelta>) return k.f.dim();
        else if constexpr (std::is_same_v<T, Delta>) return k.F.dim();
        else return 1;
      },
      h);
}

// ---------------------------------------------------------------------------
// Derivative/primitive corpus

struct DerivativePair {
  std::string name;
  SpaceSpec space;
  FunctionSpec f;
  FunctionSpec F;
  /// A second primitive differing from F by a kernel-valued function.
  std::optional<FunctionSpec> G;
};

inline DerivativePair hk_derivative_pair(const std::string& name) {
  const Interval unit{0.0, 1.0};
  if (name == "smooth-poly") {
    return {name, SpaceSpec::real_line(), fn::polynomial({{0.0, 2.0}}, unit), fn::polynomial({{0.0, 0.0, 1.0}}, unit),
            std::nullopt};
  }
  if (name == "osc-sing") {
    // F(x) = x^2 sin(x^-2), F'(x) = 2x sin(x^-2) - 2x^-1 cos(x^-2), both 0 at 0.
    auto F = fn::osc_singular(2.0, 2.0, Oscillator::sine, unit);
    auto f = fn::sum({fn::osc_singular(1.0, 2.0, Oscillator::sine, unit, 1, 0, 2.0),
                      fn::osc_singular(-1.0, 2.0, Oscillator::cosine, unit, 1, 0, -2.0)});
    return {name, SpaceSpec::real_line(), f, F, std::nullopt};
  }
  if (name == "finite-support-null") {
    SpaceSpec space(2, {Euclidean{}}, "R2");
    auto f = fn::indicator(SubsetSpec::point_set({0.1, 0.2, 0.3}), Vector{7.0, 7.0}, unit);
    return {name, space, f, fn::zero(unit, 2), std::nullopt};
  }
  if (name == "kernel-shifted") {
    SpaceSpec space(2, {AbsCoordinate{0}}, "R2/ker");
    auto f = fn::polynomial({{0.0, 2.0}, {1.0}}, unit);
    auto F = fn::polynomial({{0.0, 0.0, 1.0}, {0.0, 1.0}}, unit);
    auto H = fn::trig({0.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}, unit);
    return {name, space, f, F, F + H};
  }
  throw InvalidArgument("unknown derivative pair: " + name);
}

inline std::vector<std::string> derivative_pair_names() {
  return {"smooth-poly", "osc-sing", "finite-support-null", "kernel-shifted"};
}

}  // namespace gaugeint
