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

// Locale-independent report output. Floats are written with 17 significant
// digits so that every value round-trips exactly.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaugeint/integrate.hpp"
#include "gaugeint/lpspaces.hpp"
#include "gaugeint/seqlab.hpp"
#include "gaugeint/variation.hpp"

namespace gaugeint::io {

using Json = nlohmann::ordered_json;

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw Error("float formatting failed");
  return std::string(buf, res.ptr);
}

/// JSON has no infinities; non-finite values become strings.
inline Json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

inline Json numbers(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

inline Json numbers(const Vector& v) { return numbers(v.raw()); }

/// Fields containing separators or quotes are quoted.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) { row(header); }

  void row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_) throw InvalidArgument("CSV row width does not match the header");
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ += ',';
      out_ += csv_field(fields[i]);
    }
    out_ += '\n';
  }

  const std::string& str() const noexcept { return out_; }

 private:
  std::size_t columns_;
  std::string out_;
};

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

inline Json to_json(const IntegralClass& c) {
  return Json{{"representative", numbers(c.representative)}, {"brackets", numbers(c.bracket)}};
}

inline Json to_json(const ConvergenceReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps)
    steps.push_back(Json{{"gauge_id", s.gauge_id}, {"cells", s.cells}, {"sum", numbers(s.sum)}, {"diff", numbers(s.diff)}});
  return Json{{"verdict", to_string(r.verdict)}, {"steps", steps}};
}

/// step, gauge-id, then one diff column per seminorm (empty on the first step).
inline std::string to_csv(const ConvergenceReport& r, std::size_t seminorms) {
  std::vector<std::string> header{"step", "gauge_id"};
  for (std::size_t i = 0; i < seminorms; ++i) header.push_back("diff_" + std::to_string(i + 1));
  CsvWriter w(header);
  for (std::size_t k = 0; k < r.steps.size(); ++k) {
    std::vector<std::string> row{std::to_string(k + 1), r.steps[k].gauge_id};
    for (std::size_t i = 0; i < seminorms; ++i)
      row.push_back(i < r.steps[k].diff.size() ? format_double(r.steps[k].diff[i]) : "");
    w.row(row);
  }
  return w.str();
}

inline Json to_json(const VariationBracket& b) {
  Json steps = Json::array();
  for (const auto& s : b.steps) steps.push_back(Json{{"gauge_id", s.gauge_id}, {"estimate", number(s.estimate)}});
  return Json{{"reported", number(b.reported)},
              {"monotone_ok", b.monotone_ok},
              {"search_budget", b.search_budget},
              {"steps", steps}};
}

inline std::string to_csv(const VariationBracket& b) {
  CsvWriter w({"step", "gauge_id", "estimate"});
  for (std::size_t k = 0; k < b.steps.size(); ++k)
    w.row({std::to_string(k + 1), b.steps[k].gauge_id, format_double(b.steps[k].estimate)});
  return w.str();
}

inline Json to_json(const LpReport& r) {
  return Json{{"p", number(r.p)},
              {"seminorm", r.index + 1},
              {"value", number(r.value)},
              {"bracket", number(r.bracket)},
              {"converged", r.converged},
              {"upper_integrable", r.upper_integrable},
              {"skh_ok", r.skh_ok},
              {"lp_member", r.lp_member},
              {"measure", to_json(r.measure)}};
}

inline std::string to_csv(const std::vector<InequalityRow>& rows) {
  CsvWriter w({"check", "tag", "lhs", "rhs", "margin", "pass"});
  for (const auto& r : rows)
    w.row({r.check, r.tag, format_double(r.lhs), format_double(r.rhs), format_double(r.margin), bool_text(r.pass)});
  return w.str();
}

inline Json to_json(const std::vector<InequalityRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows)
    a.push_back(Json{{"check", r.check},
                     {"tag", r.tag},
                     {"lhs", number(r.lhs)},
                     {"rhs", number(r.rhs)},
                     {"margin", number(r.margin)},
                     {"pass", r.pass}});
  return a;
}

inline std::string to_csv(const std::vector<MatrixRow>& rows) {
  CsvWriter w({"k", "j", "gap", "threshold", "pass"});
  for (const auto& r : rows)
    w.row({std::to_string(r.k), std::to_string(r.j), format_double(r.gap), format_double(r.threshold),
           bool_text(r.pass)});
  return w.str();
}

}  // namespace gaugeint::io
