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


// Scenario-driven front end: reads a JSON scenario, runs one command, and
// writes deterministic CSV or JSON reports.
//
// Exit status: 0 success, 2 schema or usage error, 3 numerical stall (a
// partial report is still written), 4 a checked property or internal
// invariant failed.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gaugeint/config.hpp"
#include "gaugeint/gaugeint.hpp"
#include "gaugeint/serialize.hpp"
#include "gaugeint/suite.hpp"

namespace {

using gaugeint::config::Json;
using gaugeint::config::Node;
using gaugeint::config::Scenario;
using gaugeint::config::SchemaError;
namespace gi = gaugeint;
namespace io = gaugeint::io;

enum Exit { kOk = 0, kSchema = 2, kStall = 3, kBreach = 4 };

enum class LogLevel { quiet, info, debug };

LogLevel g_log = LogLevel::info;

void log(LogLevel level, const std::string& msg) {
  if (static_cast<int>(level) <= static_cast<int>(g_log)) std::cerr << "gaugeint: " << msg << "\n";
}

/// One named output table; cells are JSON scalars.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  void add(std::vector<Json> row) {
    if (row.size() != columns.size()) throw std::logic_error("table '" + name + "' row width mismatch");
    rows.push_back(std::move(row));
  }
};

struct Report {
  Json summary = Json::object();
  std::vector<Table> tables;
  int status = kOk;
  /// Set when any checked row failed.
  void note(bool pass) {
    if (!pass && status == kOk) status = kBreach;
  }
};

std::string cell_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return io::bool_text(v.get<bool>());
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number()) return io::format_double(v.get<double>());
  if (v.is_null()) return "";
  return v.dump();
}

std::string render_csv(const Table& t) {
  io::CsvWriter w(t.columns);
  for (const auto& row : t.rows) {
    std::vector<std::string> fields;
    for (const auto& v : row) fields.push_back(cell_text(v));
    w.row(fields);
  }
  return w.str();
}

Json render_json(const Report& r, const std::string& command) {
  Json out = Json::object();
  out["schema_version"] = gi::config::kSchemaVersion;
  out["command"] = command;
  out["summary"] = r.summary;
  Json tables = Json::object();
  for (const auto& t : r.tables) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i];
      rows.push_back(obj);
    }
    tables[t.name] = rows;
  }
  out["tables"] = tables;
  return out;
}

Json num(double x) { return io::number(x); }

// ---------------------------------------------------------------------------
// Name resolution inside the task section

struct Task {
  const Scenario& s;
  Node node;

  Task(const Scenario& sc, const Json& j) : s(sc), node(j, "/task") {}
  Task(const Scenario& sc, Node n) : s(sc), node(std::move(n)) {}

  gi::FunctionSpec function(const std::string& key) const {
    const Node n = node.at(key);
    const std::string name = n.text();
    for (const auto& [k, f] : s.functions)
      if (k == name) return f;
    n.fail("unresolved function name '" + name + "'");
  }

  /// Missing key or "domain" means the whole domain.
  gi::SubsetSpec set(const std::string& key) const {
    const auto n = node.find(key);
    if (!n) return gi::SubsetSpec::interval(s.domain.lo, s.domain.hi);
    const std::string name = n->text();
    if (name == "domain") return gi::SubsetSpec::interval(s.domain.lo, s.domain.hi);
    for (const auto& [k, a] : s.sets)
      if (k == name) return a;
    n->fail("unresolved set name '" + name + "'");
  }

  std::size_t seminorm_index() const {
    const auto n = node.find("seminorm");
    if (!n) return 0;
    const auto i = static_cast<std::size_t>(n->count());
    if (i >= s.space.count()) n->fail("seminorm index out of range");
    return i;
  }
};

gi::LpOptions lp_options(const Scenario& s) {
  gi::LpOptions opt;
  opt.search.budget = s.budget;
  opt.search.seed = s.seed;
  return opt;
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
  return gi::suite::merged(std::move(a), b);
}

std::vector<double> grid_points(gi::Interval d, std::size_t n) {
  std::vector<double> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back(d.lo + (d.hi - d.lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n));
  return g;
}

void add_schedule_table(Report& r, const std::vector<gi::Gauge>& schedule) {
  Table t{"schedule", {"step", "gauge_id", "tag"}, {}};
  for (std::size_t k = 0; k < schedule.size(); ++k)
    t.add({k + 1, gi::gauge_id(k, schedule[k]), "gauge-schedule"});
  r.tables.push_back(std::move(t));
}

// ---------------------------------------------------------------------------
// Commands

Report run_integrate(const Scenario& s) {
  Task task(s, s.task);
  task.node.only({"integrand", "primitive", "depth_limit", "check_tol"});
  const gi::FunctionSpec f = task.function("integrand");
  if (f.dim() != s.space.dimension()) task.node.at("integrand").fail("integrand dimension differs from the space");
  const int depth = task.node.has("depth_limit") ? static_cast<int>(task.node.at("depth_limit").count())
                                                 : gi::kDefaultDepthLimit;
  const auto schedule = gi::config::build_schedule(s.schedule, s.domain, gi::critical_points(f));
  const auto [cls, conv] = gi::hk_integrate(f, s.space, schedule, s.tol, depth);

  Report r;
  r.summary["tag"] = "gauge-integral";
  r.summary["verdict"] = gi::to_string(conv.verdict);
  r.summary["representative"] = io::numbers(cls.representative);
  r.summary["bracket"] = io::numbers(cls.bracket);
  Table steps{"steps", {"step", "gauge_id", "cells"}, {}};
  for (std::size_t i = 0; i < s.space.count(); ++i) steps.columns.push_back("sum_" + std::to_string(i + 1));
  for (std::size_t i = 0; i < s.space.count(); ++i) steps.columns.push_back("diff_" + std::to_string(i + 1));
  steps.columns.push_back("tag");
  for (std::size_t k = 0; k < conv.steps.size(); ++k) {
    const auto& st = conv.steps[k];
    std::vector<Json> row{k + 1, st.gauge_id, st.cells};
    for (std::size_t i = 0; i < s.space.count(); ++i) row.push_back(num(s.space.seminorm(i)(st.sum)));
    for (std::size_t i = 0; i < s.space.count(); ++i) row.push_back(i < st.diff.size() ? num(st.diff[i]) : Json());
    row.push_back("riemann-sum");
    steps.add(std::move(row));
  }
  r.tables.push_back(std::move(steps));

  if (task.node.has("primitive")) {
    const gi::FunctionSpec F = task.function("primitive");
    const gi::Vector expected = gi::eval(F, s.domain.hi) - gi::eval(F, s.domain.lo);
    const double allowed = task.node.has("check_tol") ? task.node.at("check_tol").positive() : 1e-4;
    Table check{"check", {"seminorm", "expected", "observed", "margin", "pass", "tag"}, {}};
    const gi::Vector err = cls.representative - expected;
    for (std::size_t i = 0; i < s.space.count(); ++i) {
      const double e = s.space.seminorm(i)(err);
      check.add({i + 1, num(s.space.seminorm(i)(expected)), num(s.space.seminorm(i)(cls.representative)),
                 num(allowed - e), e <= allowed, "fundamental-theorem"});
      r.note(e <= allowed);
    }
    r.summary["expected"] = io::numbers(expected);
    r.tables.push_back(std::move(check));
  }
  add_schedule_table(r, schedule);
  if (conv.verdict != gi::Verdict::converged) r.status = kStall;
  return r;
}

gi::IntervalPointFn parse_ipf(const Task& task, const Node& n, double p, std::size_t idx) {
  n.only({"kind", "f", "F", "p"});
  const std::string kind = n.at("kind").text();
  const Task located(task.s, n);
  if (kind == "theta") return gi::Theta{located.function("f")};
  if (kind == "delta") return gi::Delta{located.function("F")};
  if (kind == "theta-minus-delta") return gi::ThetaMinusDelta{located.function("f"), located.function("F")};
  if (kind == "theta-p") {
    const double pp = n.has("p") ? n.at("p").number() : p;
    if (!(pp >= 1.0)) n.at("p").fail("p must be >= 1");
    return gi::theta_p(located.function("f"), pp, task.s.space, idx);
  }
  if (kind == "length") return gi::Length{};
  n.at("kind").fail("unknown interval-point kind '" + kind + "'");
}

Report run_variation(const Scenario& s) {
  Task task(s, s.task);
  task.node.only({"h", "set", "seminorm"});
  const std::size_t idx = task.seminorm_index();
  const gi::IntervalPointFn h = parse_ipf(task, task.node.at("h"), s.p, idx);
  if (!gi::is_real_valued(h) && gi::ipf_dim(h) != s.space.dimension())
    task.node.at("h").fail("interval-point function dimension differs from the space");
  const gi::Seminorm rho = gi::is_real_valued(h) ? gi::scalar_abs() : s.space.seminorm(idx);
  const gi::SubsetSpec e = task.set("set");
  const auto schedule =
      gi::config::build_schedule(s.schedule, s.domain, merged(gi::critical_points(h), e.boundary_points()));
  const auto b = gi::variational_measure(h, e, rho, schedule, lp_options(s).search);

  Report r;
  r.summary["tag"] = "variational-measure";
  r.summary["reported"] = num(b.reported);
  r.summary["monotone_ok"] = b.monotone_ok;
  r.summary["search_budget"] = b.search_budget;
  Table t{"estimates", {"step", "gauge_id", "estimate", "tag"}, {}};
  for (std::size_t k = 0; k < b.steps.size(); ++k)
    t.add({k + 1, b.steps[k].gauge_id, num(b.steps[k].estimate), "variational-measure"});
  r.tables.push_back(std::move(t));
  add_schedule_table(r, schedule);
  return r;
}

Report run_seminorm(const Scenario& s) {
  Task task(s, s.task);
  task.node.only({"integrand", "set", "seminorm"});
  const gi::FunctionSpec f = task.function("integrand");
  if (f.dim() != s.space.dimension()) task.node.at("integrand").fail("integrand dimension differs from the space");
  const std::size_t idx = task.seminorm_index();
  const gi::SubsetSpec a = task.set("set");
  const auto schedule =
      gi::config::build_schedule(s.schedule, s.domain, merged(gi::critical_points(f), a.boundary_points()));
  gi::LpOptions opt = lp_options(s);
  opt.conv_tol = s.tol;
  const auto rep = gi::up_seminorm(f, a, s.p, s.space, idx, schedule, opt);

  Report r;
  r.summary["tag"] = "up-seminorm";
  r.summary["p"] = num(rep.p);
  r.summary["seminorm"] = idx + 1;
  r.summary["value"] = num(rep.value);
  r.summary["bracket"] = num(rep.bracket);
  r.summary["converged"] = rep.converged;
  r.summary["upper_integrable"] = rep.upper_integrable;
  r.summary["monotone_ok"] = rep.measure.monotone_ok;
  Table t{"estimates", {"step", "gauge_id", "measure", "seminorm", "tag"}, {}};
  for (std::size_t k = 0; k < rep.measure.steps.size(); ++k) {
    const double m = rep.measure.steps[k].estimate;
    t.add({k + 1, rep.measure.steps[k].gauge_id, num(m), num(std::pow(m, 1.0 / s.p)), "up-seminorm"});
  }
  r.tables.push_back(std::move(t));
  add_schedule_table(r, schedule);
  if (!rep.converged) r.status = kStall;
  return r;
}

Report run_inequalities(const Scenario& s) {
  Task task(s, s.task);
  task.node.only({"pairs", "random_pairs", "set", "seminorm", "dual"});
  if (!(s.p > 1.0)) throw SchemaError("/p", "inequalities need p > 1");
  if (!(s.q > s.p)) throw SchemaError("/q", "inequalities need q > p");
  const std::size_t idx = task.seminorm_index();
  const gi::Seminorm rho = s.space.seminorm(idx);
  const gi::SubsetSpec a = task.set("set");
  const bool dual = task.node.has("dual") ? task.node.at("dual").flag() : true;
  const double tol = s.tol;
  const gi::LpOptions opt = lp_options(s);

  struct Case {
    std::string name;
    gi::FunctionSpec f, g, w;
  };
  std::vector<Case> cases;
  if (auto pairs = task.node.find("pairs")) {
    for (std::size_t i = 0; i < pairs->size(); ++i) {
      const Node item = pairs->at(i);
      item.only({"name", "f", "g", "multiplier"});
      const Task t2(s, item);
      Case c{item.has("name") ? item.at("name").text() : "pair-" + std::to_string(i + 1), t2.function("f"),
             t2.function("g"), t2.function("multiplier")};
      if (c.f.dim() != s.space.dimension() || c.g.dim() != s.space.dimension())
        item.fail("pair functions must match the space dimension");
      if (c.w.dim() != 1) item.at("multiplier").fail("multiplier must be real valued");
      cases.push_back(std::move(c));
    }
  }
  if (auto n = task.node.find("random_pairs")) {
    std::mt19937_64 rng(s.seed);
    const auto count = n->count();
    for (std::uint64_t i = 0; i < count; ++i) {
      auto f = gi::suite::random_step(rng, s.space.dimension(), 6, 3.0, s.domain);
      auto g = gi::suite::random_step(rng, s.space.dimension(), 6, 3.0, s.domain);
      auto w = gi::suite::random_step(rng, 1, 6, 3.0, s.domain);
      cases.push_back({"random-" + std::to_string(i + 1), f, g, w});
    }
  }
  if (cases.empty()) task.node.fail("needs 'pairs' or 'random_pairs'");

  Report r;
  Table t{"rows", {"case", "check", "lhs", "rhs", "margin", "pass", "tag"}, {}};
  int violations = 0;
  auto add = [&](const std::string& name, const gi::InequalityRow& row) {
    t.add({name, row.check, num(row.lhs), num(row.rhs), num(row.margin), row.pass, row.tag});
    r.note(row.pass);
    if (!row.pass) ++violations;
  };
  for (const auto& c : cases) {
    const auto anchors = merged(merged(gi::critical_points(c.f), gi::critical_points(c.g)),
                                merged(gi::critical_points(c.w), a.boundary_points()));
    const auto schedule = gi::config::build_schedule(s.schedule, s.domain, anchors);
    add(c.name, gi::holder_margin(c.f, c.w, a, s.p, rho, schedule, tol, opt));
    add(c.name, gi::minkowski_margin(c.f, c.g, a, s.p, rho, schedule, tol, opt));
    add(c.name, gi::embedding_margin(c.f, a, s.p, s.q, rho, schedule, tol, opt));
    if (dual && gi::up_seminorm(c.f, a, s.p, rho, schedule, opt).value > 1e-6) {
      const auto d = gi::dual_witness_check(c.f, a, s.p, rho, schedule, tol, opt);
      add(c.name, gi::make_row("dual-unit", "dual-witness", std::abs(d.witness_norm - 1.0), tol, 0.0));
      add(c.name, gi::make_row("dual-pairing", "dual-witness", std::abs(d.pairing - d.norm), tol, 0.0));
    }
    log(LogLevel::debug, "inequalities: finished case " + c.name);
  }
  r.summary["tag"] = "inequality-battery";
  r.summary["cases"] = cases.size();
  r.summary["rows"] = t.rows.size();
  r.summary["violations"] = violations;
  r.tables.push_back(std::move(t));
  return r;
}

Report run_chebyshev(const Scenario& s) {
  Task task(s, s.task);
  task.node.only({"integrand", "levels", "seminorm"});
  const gi::FunctionSpec f = task.function("integrand");
  if (f.dim() != s.space.dimension()) task.node.at("integrand").fail("integrand dimension differs from the space");
  const std::size_t idx = task.seminorm_index();
  const auto levels = task.node.at("levels").numbers();
  const auto schedule = gi::config::build_schedule(s.schedule, s.domain, gi::critical_points(f));
  const gi::LpOptions opt = lp_options(s);

  Report r;
  Table t{"rows", {"level", "level_set_measure", "bound", "margin", "pass", "tag"}, {}};
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0)) throw SchemaError("/task/levels/" + std::to_string(i), "levels must be positive");
    const auto rep = gi::chebyshev_check(f, s.p, levels[i], s.space.seminorm(idx), schedule, s.tol, opt);
    t.add({num(levels[i]), num(rep.measure), num(rep.bound), num(rep.bound - rep.measure), rep.pass,
           "chebyshev-level-set"});
    r.note(rep.pass);
  }
  r.summary["tag"] = "chebyshev-level-set";
  r.summary["p"] = num(s.p);
  r.tables.push_back(std::move(t));
  return r;
}

Report run_fatou(const Scenario& s) {
  Task task(s, s.task);
  task.node.only({"sequence", "spike", "limit", "set", "exceptional", "seminorm", "window"});
  const std::size_t idx = task.seminorm_index();
  const gi::Seminorm rho = s.space.seminorm(idx);
  const gi::SubsetSpec a = task.set("set");
  const std::size_t window = task.node.has("window") ? static_cast<std::size_t>(task.node.at("window").count()) : 1;
  const gi::LpOptions opt = lp_options(s);
  const auto grid = grid_points(s.domain, s.grid);

  gi::FatouReport rep;
  if (auto spike = task.node.find("spike")) {
    // f_n = height(n) * 1_(lo, lo + width/n), which tends to 0 off {lo}.
    spike->only({"count", "horizon"});
    const std::size_t count = spike->has("count") ? spike->at("count").count() : s.prefix;
    const std::size_t horizon = spike->has("horizon") ? spike->at("horizon").count() : (std::size_t{1} << 20);
    const gi::Interval d = s.domain;
    const std::size_t dim = s.space.dimension();
    auto gen = [d, dim](std::size_t n) {
      const double right = d.lo + (d.hi - d.lo) / static_cast<double>(n);
      gi::Vector h(dim);
      for (std::size_t j = 0; j < dim; ++j) h[j] = static_cast<double>(n) / (d.hi - d.lo);
      if (right >= d.hi) return gi::fn::constant(h, d);
      return gi::fn::step({d.lo, right, d.hi}, {h, gi::Vector(dim)});
    };
    std::vector<double> anchors = a.boundary_points();
    for (std::size_t n = 1; n <= count; ++n) anchors.push_back(d.lo + (d.hi - d.lo) / static_cast<double>(n));
    const auto schedule = gi::config::build_schedule(s.schedule, d, gi::suite::merged(anchors, {}));
    rep = gi::fatou_check(gen, count, horizon, gi::fn::zero(d, dim), a, s.p, rho, schedule, grid,
                          gi::SubsetSpec::point_set({d.lo}), s.tol, 1e-6, window, opt);
  } else {
    const Node seq = task.node.at("sequence");
    std::vector<gi::FunctionSpec> fs;
    std::vector<double> anchors = a.boundary_points();
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const std::string name = seq.at(i).text();
      bool found = false;
      for (const auto& [k, f] : s.functions)
        if (k == name) {
          fs.push_back(f);
          anchors = merged(anchors, gi::critical_points(f));
          found = true;
        }
      if (!found) seq.at(i).fail("unresolved function name '" + name + "'");
    }
    if (fs.empty()) seq.fail("sequence must be nonempty");
    const gi::FunctionSpec limit = task.function("limit");
    anchors = merged(anchors, gi::critical_points(limit));
    const gi::SubsetSpec exceptional = task.node.has("exceptional") ? task.set("exceptional") : gi::SubsetSpec();
    const auto schedule = gi::config::build_schedule(s.schedule, s.domain, anchors);
    rep = gi::fatou_check(fs, limit, a, s.p, rho, schedule, grid, exceptional, s.tol, 1e-6, window, opt);
  }

  Report r;
  r.summary["tag"] = "fatou";
  r.summary["prefix_liminf"] = num(rep.prefix_liminf);
  r.summary["limit_value"] = num(rep.limit_value);
  r.summary["strict"] = rep.limit_value < rep.prefix_liminf - s.tol;
  r.summary["pass"] = rep.pass;
  Table t{"norms", {"n", "seminorm", "tag"}, {}};
  for (std::size_t n = 0; n < rep.norms.size(); ++n) t.add({n + 1, num(rep.norms[n]), "fatou"});
  r.tables.push_back(std::move(t));
  r.note(rep.pass);
  return r;
}

std::vector<gi::Vector> parse_sequence(const Scenario& s, const Node& task) {
  std::vector<gi::Vector> seq;
  if (auto values = task.find("values")) {
    for (std::size_t i = 0; i < values->size(); ++i) {
      gi::Vector v = values->at(i).vector();
      if (v.size() != s.space.dimension()) values->at(i).fail("vector dimension differs from the space");
      seq.push_back(std::move(v));
    }
  } else if (auto rec = task.find("reciprocal")) {
    // u_i = coeffs / i, i = 1..count.
    rec->only({"count", "coeffs"});
    const auto count = rec->at("count").count();
    const gi::Vector c = rec->at("coeffs").vector();
    if (c.size() != s.space.dimension()) rec->at("coeffs").fail("coefficient dimension differs from the space");
    for (std::uint64_t i = 1; i <= count; ++i) seq.push_back((1.0 / static_cast<double>(i)) * c);
  } else {
    task.fail("needs 'values' or 'reciprocal'");
  }
  return seq;
}

Report run_sequences(const Scenario& s) {
  Task task(s, s.task);
  task.node.only({"values", "reciprocal", "mode", "ratio"});
  const std::string mode = task.node.has("mode") ? task.node.at("mode").text() : "diagonal";
  const auto seq = parse_sequence(s, task.node);
  const std::size_t K = s.prefix;
  Report r;
  r.summary["mode"] = mode;
  r.summary["prefix"] = K;
  r.summary["terms"] = seq.size();

  if (mode == "rapid") {
    const double ratio = task.node.has("ratio") ? task.node.at("ratio").number() : 0.5;
    const auto eps = gi::EpsSeries::geometric(ratio);
    if (K + 1 > seq.size()) throw SchemaError("/prefix", "prefix needs K + 1 terms");
    Table t{"rapid", {"seminorm", "rapid", "first_violation", "violation_gap", "tag"}, {}};
    for (std::size_t i = 0; i < s.space.count(); ++i) {
      const auto res = gi::is_rapidly_cauchy(seq, gi::seminorm_metric(s.space, i), eps, K);
      t.add({i + 1, res.rapid, res.first_violation ? Json(*res.first_violation) : Json(), num(res.violation_gap),
             "rapidly-cauchy"});
    }
    r.summary["tag"] = "rapidly-cauchy";
    r.tables.push_back(std::move(t));
    return r;
  }
  if (mode != "extract" && mode != "diagonal") task.node.at("mode").fail("expected 'rapid', 'extract', or 'diagonal'");

  try {
    if (mode == "extract") {
      const auto ex = gi::extract_rapid(seq, gi::seminorm_metric(s.space, 0), K);
      Table t{"indices", {"k", "index", "tag"}, {}};
      for (std::size_t k = 0; k < ex.indices.size(); ++k) t.add({k + 1, ex.indices[k], "rapid-subsequence"});
      const auto check = gi::is_rapidly_cauchy(ex.subsequence, gi::seminorm_metric(s.space, 0), ex.eps, K);
      r.summary["tag"] = "rapid-subsequence";
      r.summary["rapid"] = check.rapid;
      r.note(check.rapid);
      r.tables.push_back(std::move(t));
    } else {
      const auto d = gi::diagonal_extract(seq, s.space, K);
      Table idx{"indices", {"k", "index", "tag"}, {}};
      for (std::size_t k = 0; k < d.indices.size(); ++k) idx.add({k + 1, d.indices[k], "diagonal-subsequence"});
      Table m{"matrix", {"k", "j", "gap", "threshold", "pass", "tag"}, {}};
      for (const auto& row : d.matrix) {
        m.add({row.k, row.j, num(row.gap), num(row.threshold), row.pass, "frechet-diagonal"});
        r.note(row.pass);
      }
      r.summary["tag"] = "frechet-diagonal";
      r.summary["all_pass"] = d.all_pass;
      r.tables.push_back(std::move(idx));
      r.tables.push_back(std::move(m));
    }
  } catch (const gi::NotCauchyOnPrefix& e) {
    r.summary["tag"] = "not-cauchy-on-prefix";
    r.summary["seminorm"] = e.seminorm();
    r.summary["message"] = e.what();
    r.status = kStall;
  }
  return r;
}

Report run_suite(const Scenario& s) {
  Task task(s, s.task);
  task.node.only({"corpus"});
  gi::suite::SuiteOptions opt;
  opt.seed = s.seed;
  opt.budget = s.budget;
  if (task.node.has("corpus")) opt.corpus = static_cast<int>(task.node.at("corpus").count());
  Report r;
  Table t{"criteria", {"id", "check", "expected", "observed", "margin", "pass", "detail", "tag"}, {}};
  int failures = 0;
  for (const auto& c : gi::suite::criteria()) {
    const auto res = c(opt);
    log(LogLevel::info, std::string(res.pass ? "PASS " : "FAIL ") + res.name);
    t.add({res.id, res.name, res.expected, num(res.observed), num(res.margin), res.pass, res.detail, res.tag});
    r.note(res.pass);
    if (!res.pass) ++failures;
  }
  r.summary["tag"] = "acceptance-battery";
  r.summary["criteria"] = t.rows.size();
  r.summary["failures"] = failures;
  r.tables.push_back(std::move(t));
  return r;
}

Report dispatch(const Scenario& s) {
  if (s.command == "integrate") return run_integrate(s);
  if (s.command == "variation") return run_variation(s);
  if (s.command == "seminorm") return run_seminorm(s);
  if (s.command == "inequalities") return run_inequalities(s);
  if (s.command == "chebyshev") return run_chebyshev(s);
  if (s.command == "fatou") return run_fatou(s);
  if (s.command == "sequences") return run_sequences(s);
  return run_suite(s);
}

// ---------------------------------------------------------------------------
// Output

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  log(LogLevel::info, "wrote " + path.string());
}

/// JSON goes to one file; CSV writes one file per table. Without a
/// destination everything goes to stdout.
void emit(const Report& r, const Scenario& s, const std::string& out_dir) {
  const std::string stem = s.output_path ? std::filesystem::path(*s.output_path).stem().string() : s.command;
  std::filesystem::path base;
  if (!out_dir.empty()) base = std::filesystem::path(out_dir);
  else if (s.output_path) base = std::filesystem::path(*s.output_path).parent_path();
  const bool to_stdout = out_dir.empty() && !s.output_path;

  if (s.format == "json") {
    const std::string text = render_json(r, s.command).dump(2) + "\n";
    if (to_stdout) std::cout << text;
    else write_file(base / (stem + ".json"), text);
    return;
  }
  Table summary{"summary", {"key", "value", "tag"}, {}};
  const std::string tag = r.summary.value("tag", std::string("summary"));
  for (const auto& [k, v] : r.summary.items())
    if (k != "tag") summary.add({k, v.is_primitive() ? v : Json(v.dump()), tag});
  std::vector<const Table*> all{&summary};
  for (const auto& t : r.tables) all.push_back(&t);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::string text = render_csv(*all[i]);
    if (to_stdout) std::cout << (i ? "\n" : "") << text;
    else write_file(base / (stem + "_" + all[i]->name + ".csv"), text);
  }
}

bool parse_log_level(const char* env) {
  if (!env) return true;
  const std::string v(env);
  if (v == "quiet") g_log = LogLevel::quiet;
  else if (v == "info") g_log = LogLevel::info;
  else if (v == "debug") g_log = LogLevel::debug;
  else return false;
  return true;
}

int schema_failure(const SchemaError& e) {
  std::cerr << "gaugeint: schema error at " << (e.pointer().empty() ? "/" : e.pointer()) << ": " << e.message() << "\n";
  return kSchema;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauge-integral scenarios: integration, variational measures, U^p seminorms, sequence experiments."};
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<std::size_t> prefix;
  std::optional<int> budget;
  app.add_option("--config", config_path, "scenario JSON file")->required();
  app.add_option("--out", out_dir, "directory for report files (default: stdout)");
  app.add_option("--seed", seed, "overrides the scenario seed");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--prefix", prefix, "finite prefix K for sequence checks");
  app.add_option("--budget", budget, "variation search budget")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kSchema;
  }
  if (!parse_log_level(std::getenv("GAUGE_LOG_LEVEL"))) {
    std::cerr << "gaugeint: GAUGE_LOG_LEVEL must be quiet, info, or debug\n";
    return kSchema;
  }

  Scenario scenario;
  try {
    std::ifstream in(config_path);
    if (!in) throw SchemaError("", "cannot open config file " + config_path);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError("", std::string("malformed JSON: ") + e.what());
    }
    scenario = gi::config::parse_scenario(doc);
    if (seed) scenario.seed = *seed;
    if (format) scenario.format = *format;
    if (prefix) scenario.prefix = *prefix;
    if (budget) scenario.budget = *budget;
  } catch (const SchemaError& e) {
    return schema_failure(e);
  }

  log(LogLevel::debug, "running " + scenario.command + " with seed " + std::to_string(scenario.seed));
  Report report;
  try {
    report = dispatch(scenario);
  } catch (const SchemaError& e) {
    return schema_failure(e);
  } catch (const gi::DepthExceeded& e) {
    std::cerr << "gaugeint: stalled: " << e.what() << "\n";
    report.summary["tag"] = "stalled";
    report.summary["message"] = e.what();
    report.status = kStall;
  } catch (const gi::InvalidArgument& e) {
    std::cerr << "gaugeint: invalid scenario: " << e.what() << "\n";
    return kSchema;
  } catch (const std::exception& e) {
    std::cerr << "gaugeint: internal error: " << e.what() << "\n";
    return kBreach;
  }

  try {
    emit(report, scenario, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "gaugeint: " << e.what() << "\n";
    return kBreach;
  }
  if (report.status == kStall) log(LogLevel::info, "numerical stall; partial report written");
  if (report.status == kBreach) log(LogLevel::info, "a checked property failed");
  return report.status;
}
