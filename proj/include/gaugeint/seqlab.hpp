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

// Sequence experiments on finite prefixes: rapid-Cauchy classification,
// subsequence extraction (single seminorm and diagonal over a family),
// pointwise exceptional-set audits, and tail bounds for partial sums in U^p.
//
// Sequence positions k are one based in every report; stored indices into
// the input vectors are zero based.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaugeint/error.hpp"
#include "gaugeint/funcspace.hpp"
#include "gaugeint/lpspaces.hpp"
#include "gaugeint/partitions.hpp"
#include "gaugeint/spaces.hpp"
#include "gaugeint/subset.hpp"

namespace gaugeint {

/// A summable series of positive terms eps_1, eps_2, ...
class EpsSeries {
 public:
  /// eps_k = scale * ratio^k
  static EpsSeries geometric(double ratio, double scale = 1.0) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("geometric series needs ratio in (0,1)");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("geometric series needs scale > 0");
    EpsSeries s;
    s.ratio_ = ratio;
    s.scale_ = scale;
    return s;
  }

  /// eps_k = terms[k-1]; terms beyond the list are treated as zero.
  static EpsSeries explicit_terms(std::vector<double> terms) {
    if (terms.empty()) throw InvalidArgument("explicit series needs at least one term");
    for (double t : terms)
      if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("series terms must be positive and finite");
    EpsSeries s;
    s.terms_ = std::move(terms);
    return s;
  }

  bool is_geometric() const noexcept { return terms_.empty(); }
  double ratio() const noexcept { return ratio_; }
  double scale() const noexcept { return scale_; }

  double operator()(std::size_t k) const {
    if (k < 1) throw InvalidArgument("series positions start at 1");
    if (is_geometric()) return scale_ * std::pow(ratio_, static_cast<double>(k));
    return k <= terms_.size() ? terms_[k - 1] : 0.0;
  }

  /// sum_{j >= n} eps_j^e
  double tail_power_sum(std::size_t n, double e) const {
    if (n < 1) throw InvalidArgument("series positions start at 1");
    if (is_geometric()) {
      const double r = std::pow(ratio_, e);
      return std::pow(scale_, e) * std::pow(r, static_cast<double>(n)) / (1.0 - r);
    }
    double s = 0.0;
    for (std::size_t j = n; j <= terms_.size(); ++j) s += std::pow(terms_[j - 1], e);
    return s;
  }

 private:
  EpsSeries() = default;
  double ratio_ = 0.5;
  double scale_ = 1.0;
  std::vector<double> terms_;
};

using Metric = std::function<double(const Vector&, const Vector&)>;

inline Metric seminorm_metric(const SpaceSpec& space, std::size_t i) {
  const Seminorm rho = space.seminorm(i);
  return [rho](const Vector& x, const Vector& y) { return rho(x - y); };
}

struct RapidCauchyResult {
  bool rapid = true;
  /// First k with d(u_{k+1}, u_k) >= eps_k^2.
  std::optional<std::size_t> first_violation;
  double violation_gap = 0.0;
};

/// d(u_{k+1}, u_k) < eps_k^2 for k = 1..K.
inline RapidCauchyResult is_rapidly_cauchy(const std::vector<Vector>& seq, const Metric& d, const EpsSeries& eps,
                                           std::size_t K) {
  if (K + 1 > seq.size()) throw InvalidArgument("prefix length exceeds available terms");
  RapidCauchyResult out;
  for (std::size_t k = 1; k <= K; ++k) {
    const double gap = d(seq[k], seq[k - 1]);
    const double e = eps(k);
    if (!(gap < e * e)) {
      out.rapid = false;
      out.first_violation = k;
      out.violation_gap = gap;
      break;
    }
  }
  return out;
}

/// d(u_m, u_n) <= sum_{j >= n} eps_j^2 for all 1 <= n < m <= K + 1.
inline bool is_cauchy_with_tail(const std::vector<Vector>& seq, const Metric& d, const EpsSeries& eps, std::size_t K,
                                double tol = 0.0) {
  if (K + 1 > seq.size()) throw InvalidArgument("prefix length exceeds available terms");
  for (std::size_t n = 1; n <= K; ++n) {
    const double bound = eps.tail_power_sum(n, 2.0) + tol;
    for (std::size_t m = n + 1; m <= K + 1; ++m)
      if (d(seq[m - 1], seq[n - 1]) > bound) return false;
  }
  return true;
}

namespace detail {

// Largest d(u_m, u_c) over the later tested terms m > c, scanning from the
// far end and stopping early once `limit` is reached; -1 when c is last.
inline double sup_later(const std::vector<Vector>& seq, const Metric& d, std::size_t c, double limit) {
  double s = -1.0;
  for (std::size_t m = seq.size(); m-- > c + 1;) {
    s = std::max(s, d(seq[m], seq[c]));
    if (s >= limit) break;
  }
  return s;
}

// Walk `candidates` in order and pick, for positions k = 1, 2, ..., the first
// candidate after the previous pick whose later-sup gap is below target(k).
// Stops after `max_count` picks or when the candidates run out; fewer than
// `min_count` picks is an error.
inline std::vector<std::size_t> greedy_levels(const std::vector<Vector>& seq, const Metric& d,
                                              const std::vector<std::size_t>& candidates, std::size_t min_count,
                                              std::size_t max_count,
                                              const std::function<double(std::size_t)>& target,
                                              const std::string& what, std::size_t seminorm) {
  std::vector<std::size_t> picks;
  std::size_t pos = 0;
  for (std::size_t k = 1; k <= max_count; ++k) {
    bool found = false;
    for (; pos < candidates.size(); ++pos) {
      const double s = sup_later(seq, d, candidates[pos], target(k));
      if (s >= 0.0 && s < target(k)) {
        picks.push_back(candidates[pos++]);
        found = true;
        break;
      }
    }
    if (found) continue;
    if (k <= min_count)
      throw NotCauchyOnPrefix(what + ": no admissible index for position " + std::to_string(k) +
                                  " within the tested prefix",
                              seminorm);
    break;
  }
  return picks;
}

}  // namespace detail

struct RapidExtraction {
  /// Zero-based indices n_1 < n_2 < ... < n_{K+1}.
  std::vector<std::size_t> indices;
  EpsSeries eps = EpsSeries::geometric(0.5);
  std::vector<Vector> subsequence;
};

/// Greedy n_k: the first index past n_{k-1} whose distance to every later
/// tested term is below 4^{-k}. The subsequence is rapidly Cauchy with
/// eps_k = 2^{-k} on its first K gaps.
inline RapidExtraction extract_rapid(const std::vector<Vector>& seq, const Metric& d, std::size_t K) {
  if (K < 1) throw InvalidArgument("extract_rapid needs K >= 1");
  std::vector<std::size_t> all(seq.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  RapidExtraction out;
  out.indices = detail::greedy_levels(
      seq, d, all, K + 1, K + 1, [](std::size_t k) { return std::pow(4.0, -static_cast<double>(k)); }, "extract_rapid",
      0);
  for (std::size_t i : out.indices) out.subsequence.push_back(seq[i]);
  return out;
}

struct MatrixRow {
  std::size_t k = 0;
  std::size_t j = 0;
  double gap = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct DiagonalExtraction {
  /// Zero-based diagonal indices n_1 < ... < n_{K+1}.
  std::vector<std::size_t> indices;
  /// levels[l] holds the nested subsequence built for seminorm l + 1.
  std::vector<std::vector<std::size_t>> levels;
  std::vector<MatrixRow> matrix;
  bool all_pass = true;
};

/// Nested subsequences, one per seminorm, each refining the previous with
/// later-sup gaps below 2^{-k} at position k and running as long as the prefix
/// allows (at least K + 1 positions); the diagonal takes position k
/// from level min(k, J). Rows report rho_j(u_{n_{k+1}} - u_{n_k}) < 2^{-k} for
/// j <= min(k, J), k = 1..K.
inline DiagonalExtraction diagonal_extract(const std::vector<Vector>& seq, const SpaceSpec& space, std::size_t K) {
  if (K < 1) throw InvalidArgument("diagonal_extract needs K >= 1");
  for (const auto& x : seq) space.require_member(x);
  const std::size_t J = space.count();
  DiagonalExtraction out;
  std::vector<std::size_t> candidates(seq.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
  for (std::size_t l = 0; l < J; ++l) {
    candidates = detail::greedy_levels(
        seq, seminorm_metric(space, l), candidates, K + 1, seq.size(),
        [](std::size_t k) { return std::pow(2.0, -static_cast<double>(k)); }, "diagonal_extract", l + 1);
    out.levels.push_back(candidates);
  }
  for (std::size_t k = 1; k <= K + 1; ++k) out.indices.push_back(out.levels[std::min(k, J) - 1][k - 1]);
  for (std::size_t k = 1; k <= K; ++k) {
    const double threshold = std::pow(2.0, -static_cast<double>(k));
    for (std::size_t j = 1; j <= std::min(k, J); ++j) {
      const double gap = space.seminorm(j - 1)(seq[out.indices[k]] - seq[out.indices[k - 1]]);
      const bool pass = gap < threshold;
      out.all_pass = out.all_pass && pass;
      out.matrix.push_back({k, j, gap, threshold, pass});
    }
  }
  return out;
}

struct PointwiseReport {
  /// fraction of grid points in E_n = {x : rho(f_{n+1}(x) - f_n(x)) >= eps_n}, n = 1..K-1.
  std::vector<double> fractions;
  std::size_t cutoff = 1;
  /// sum_{n >= cutoff} eps_n^p
  double tail_bound = 0.0;
  /// grid points in E_n for some cutoff <= n <= K-1.
  std::vector<double> exceptional_points;
  double exceptional_fraction = 0.0;
  bool pass = false;
};

/// Borel-Cantelli audit on a grid. Passes when the tail-union fraction is at
/// most the tail bound plus one grid cell.
inline PointwiseReport pointwise_cauchy_report(const std::vector<FunctionSpec>& seq, const Seminorm& rho,
                                               const std::vector<double>& grid, const EpsSeries& eps, double p,
                                               std::optional<std::size_t> cutoff = std::nullopt) {
  if (seq.size() < 2) throw InvalidArgument("pointwise report needs at least two functions");
  if (grid.empty()) throw InvalidArgument("pointwise report needs a nonempty grid");
  const std::size_t K = seq.size();
  PointwiseReport rep;
  rep.cutoff = cutoff.value_or((K + 1) / 2);
  if (rep.cutoff < 1 || rep.cutoff > K - 1) throw InvalidArgument("cutoff must lie in 1..K-1");
  std::vector<bool> in_tail(grid.size(), false);
  for (std::size_t n = 1; n < K; ++n) {
    std::size_t hits = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double x = grid[g];
      const bool hit = rho(eval(seq[n], x) - eval(seq[n - 1], x)) >= eps(n);
      if (hit) {
        ++hits;
        if (n >= rep.cutoff) in_tail[g] = true;
      }
    }
    rep.fractions.push_back(static_cast<double>(hits) / static_cast<double>(grid.size()));
  }
  for (std::size_t g = 0; g < grid.size(); ++g)
    if (in_tail[g]) rep.exceptional_points.push_back(grid[g]);
  rep.exceptional_fraction = static_cast<double>(rep.exceptional_points.size()) / static_cast<double>(grid.size());
  rep.tail_bound = eps.tail_power_sum(rep.cutoff, p);
  rep.pass = rep.exceptional_fraction <= rep.tail_bound + 1.0 / static_cast<double>(grid.size());
  return rep;
}

inline std::vector<FunctionSpec> partial_sums(const std::vector<FunctionSpec>& terms) {
  if (terms.empty()) throw InvalidArgument("partial sums need at least one term");
  std::vector<FunctionSpec> out;
  for (std::size_t n = 1; n <= terms.size(); ++n)
    out.push_back(fn::sum(std::vector<FunctionSpec>(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(n))));
  return out;
}

struct CompletenessRow {
  std::size_t n = 0;
  double distance = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct CompletenessReport {
  std::vector<double> term_norms;
  std::vector<CompletenessRow> rows;
  PointwiseReport pointwise;
  double limit_norm = 0.0;
  /// ||f_n|| for n = 1..tested.
  std::vector<double> partial_norms;
  bool fatou_ok = false;
  bool pass = false;
};

/// Partial sums f_n of terms with ||g_k|| <= eps_k^2; the limit f is the sum of
/// every supplied term. Checks ||f - f_n|| <= sum_{j >= n} eps_j^2 for
/// n = 1..tested, and the prefix Fatou bound ||f|| <= ||f_tested|| + tol.
inline CompletenessReport completeness_experiment(const std::vector<FunctionSpec>& terms, const EpsSeries& eps,
                                                  double p, const SubsetSpec& a, const Seminorm& rho,
                                                  const std::vector<Gauge>& schedule, const std::vector<double>& grid,
                                                  std::size_t tested, double tol, const LpOptions& opt = {}) {
  if (tested < 1 || tested >= terms.size()) throw InvalidArgument("tested prefix must satisfy 1 <= n < #terms");
  CompletenessReport rep;
  for (std::size_t k = 1; k <= terms.size(); ++k) {
    const double nk = up_seminorm(terms[k - 1], a, p, rho, schedule, opt).value;
    rep.term_norms.push_back(nk);
    const double e = eps(k);
    if (nk > e * e + tol)
      throw InvalidArgument("term " + std::to_string(k) + " violates the seminorm budget eps_k^2");
  }
  const auto sums = partial_sums(terms);
  const FunctionSpec& limit = sums.back();
  for (std::size_t n = 1; n <= tested; ++n) {
    const FunctionSpec rest =
        fn::sum(std::vector<FunctionSpec>(terms.begin() + static_cast<std::ptrdiff_t>(n), terms.end()));
    CompletenessRow row;
    row.n = n;
    row.distance = up_seminorm(rest, a, p, rho, schedule, opt).value;
    row.bound = eps.tail_power_sum(n, 2.0);
    row.pass = row.distance <= row.bound + tol;
    rep.rows.push_back(row);
  }
  rep.pointwise = pointwise_cauchy_report(sums, rho, grid, eps, p);
  for (std::size_t n = 1; n <= tested; ++n)
    rep.partial_norms.push_back(up_seminorm(sums[n - 1], a, p, rho, schedule, opt).value);
  rep.limit_norm = up_seminorm(limit, a, p, rho, schedule, opt).value;
  rep.fatou_ok = rep.limit_norm <= rep.partial_norms.back() + tol;
  rep.pass = rep.fatou_ok && rep.pointwise.pass &&
             std::all_of(rep.rows.begin(), rep.rows.end(), [](const CompletenessRow& r) { return r.pass; });
  return rep;
}

}  // namespace gaugeint
