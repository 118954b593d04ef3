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

// Versioned JSON scenario schema. Parsing is strict: unknown fields are
// rejected and every error names the offending location as a JSON pointer.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaugeint/error.hpp"
#include "gaugeint/funcspace.hpp"
#include "gaugeint/partitions.hpp"
#include "gaugeint/spaces.hpp"
#include "gaugeint/subset.hpp"

namespace gaugeint::config {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// A config that does not match the schema. `pointer()` locates the problem.
class SchemaError : public InvalidArgument {
 public:
  SchemaError(std::string pointer, std::string message)
      : InvalidArgument((pointer.empty() ? std::string("/") : pointer) + ": " + message),
        pointer_(std::move(pointer)),
        message_(std::move(message)) {}

  /// Empty for the document root.
  const std::string& pointer() const noexcept { return pointer_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string pointer_;
  std::string message_;
};

/// Cursor into a JSON document that remembers its pointer.
class Node {
 public:
  Node(const Json& j, std::string ptr) : j_(&j), ptr_(std::move(ptr)) {}
  Node(Json&&, std::string) = delete;

  const Json& json() const noexcept { return *j_; }
  const std::string& ptr() const noexcept { return ptr_; }

  [[noreturn]] void fail(const std::string& message) const { throw SchemaError(ptr_, message); }

  std::string child_ptr(const std::string& key) const {
    std::string esc;
    for (char c : key) {
      if (c == '~') esc += "~0";
      else if (c == '/') esc += "~1";
      else esc += c;
    }
    return ptr_ + "/" + esc;
  }

  void require_object() const {
    if (!j_->is_object()) fail("expected an object");
  }

  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

  Node at(const std::string& key) const {
    require_object();
    if (!j_->contains(key)) throw SchemaError(child_ptr(key), "missing required field");
    return Node(j_->at(key), child_ptr(key));
  }

  std::optional<Node> find(const std::string& key) const {
    require_object();
    if (!j_->contains(key)) return std::nullopt;
    return Node(j_->at(key), child_ptr(key));
  }

  Node at(std::size_t i) const { return Node(j_->at(i), ptr_ + "/" + std::to_string(i)); }

  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  /// Throws on the first key outside `allowed`.
  void only(std::initializer_list<const char*> allowed) const {
    require_object();
    for (const auto& [key, value] : j_->items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) throw SchemaError(child_ptr(key), "unknown field");
    }
  }

  double number() const {
    if (!j_->is_number()) fail("expected a number");
    return j_->get<double>();
  }

  double positive() const {
    const double x = number();
    if (!(x > 0.0)) fail("expected a positive number");
    return x;
  }

  std::uint64_t count() const {
    if (!j_->is_number_unsigned() && !(j_->is_number_integer() && j_->get<std::int64_t>() >= 0))
      fail("expected a non-negative integer");
    return j_->get<std::uint64_t>();
  }

  std::string text() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  bool flag() const {
    if (!j_->is_boolean()) fail("expected a boolean");
    return j_->get<bool>();
  }

  std::vector<double> numbers() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
    return out;
  }

  Vector vector() const {
    auto xs = numbers();
    if (xs.empty()) fail("expected a nonempty array of numbers");
    return Vector(std::move(xs));
  }

  std::vector<std::string> texts() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).text());
    return out;
  }

 private:
  const Json* j_;
  std::string ptr_;
};

// Library construction errors raised while parsing are reported at the node
// that triggered them.
template <class F>
auto guarded(const Node& n, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidArgument& e) {
    n.fail(e.what());
  }
}

// ---------------------------------------------------------------------------
// Spaces, sets, functions

inline Seminorm parse_seminorm(const Node& n) {
  n.only({"kind", "params"});
  const std::string kind = n.at("kind").text();
  const auto params = n.find("params");
  if (kind == "abs-coordinate") {
    if (!params) n.at("params");
    params->only({"index"});
    return AbsCoordinate{static_cast<std::size_t>(params->at("index").count())};
  }
  if (kind == "weighted-sum") {
    if (!params) n.at("params");
    params->only({"weights"});
    return WeightedSum{params->at("weights").numbers()};
  }
  if (kind == "sup-over-subset") {
    if (!params) n.at("params");
    params->only({"indices"});
    std::vector<std::size_t> idx;
    const Node list = params->at("indices");
    for (std::size_t i = 0; i < list.size(); ++i) idx.push_back(static_cast<std::size_t>(list.at(i).count()));
    return SupOverSubset{std::move(idx)};
  }
  if (kind == "euclidean-full") {
    if (params) params->only({});
    return Euclidean{};
  }
  n.at("kind").fail("unknown seminorm kind '" + kind + "'");
}

inline SpaceSpec parse_space(const Node& n) {
  n.only({"dimension", "seminorms", "label"});
  const auto dim = static_cast<std::size_t>(n.at("dimension").count());
  const Node list = n.at("seminorms");
  std::vector<Seminorm> family;
  for (std::size_t i = 0; i < list.size(); ++i) family.push_back(parse_seminorm(list.at(i)));
  const std::string label = n.has("label") ? n.at("label").text() : std::string();
  return guarded(n, [&] { return SpaceSpec(dim, std::move(family), label); });
}

inline Interval parse_interval(const Node& n) {
  if (n.size() != 2) n.fail("expected [lo, hi]");
  const Interval iv{n.at(0).number(), n.at(1).number()};
  if (!(iv.lo <= iv.hi)) n.fail("interval needs lo <= hi");
  return iv;
}

inline SubsetSpec parse_subset(const Node& n) {
  n.only({"intervals", "points"});
  std::vector<Interval> ivs;
  if (auto list = n.find("intervals"))
    for (std::size_t i = 0; i < list->size(); ++i) ivs.push_back(parse_interval(list->at(i)));
  std::vector<double> pts;
  if (auto list = n.find("points")) pts = list->numbers();
  return guarded(n, [&] { return SubsetSpec(std::move(ivs), std::move(pts)); });
}

using FunctionTable = std::map<std::string, FunctionSpec>;

inline FunctionSpec parse_function(const Node& n, Interval domain, const FunctionTable& known) {
  n.require_object();
  const std::string kind = n.at("kind").text();
  const Interval dom = n.has("domain") ? parse_interval(n.at("domain")) : domain;
  auto child = [&](const char* key) { return parse_function(n.at(key), dom, known); };

  return guarded(n, [&]() -> FunctionSpec {
    if (kind == "ref") {
      n.only({"kind", "name"});
      const std::string name = n.at("name").text();
      const auto it = known.find(name);
      if (it == known.end()) n.at("name").fail("unresolved function name '" + name + "'");
      return it->second;
    }
    if (kind == "constant") {
      n.only({"kind", "domain", "value"});
      return fn::constant(n.at("value").vector(), dom);
    }
    if (kind == "polynomial") {
      n.only({"kind", "domain", "coeffs"});
      const Node c = n.at("coeffs");
      std::vector<std::vector<double>> coeffs;
      for (std::size_t i = 0; i < c.size(); ++i) coeffs.push_back(c.at(i).numbers());
      return fn::polynomial(std::move(coeffs), dom);
    }
    if (kind == "trig") {
      n.only({"kind", "domain", "amplitude", "frequency", "phase"});
      return fn::trig(n.at("amplitude").numbers(), n.at("frequency").numbers(), n.at("phase").numbers(), dom);
    }
    if (kind == "oscillatory-singular") {
      n.only({"kind", "domain", "alpha", "beta", "oscillator", "dimension", "coordinate", "amplitude"});
      Oscillator osc = Oscillator::sine;
      if (n.has("oscillator")) {
        const std::string o = n.at("oscillator").text();
        if (o == "cos") osc = Oscillator::cosine;
        else if (o != "sin") n.at("oscillator").fail("expected 'sin' or 'cos'");
      }
      const auto dim = n.has("dimension") ? static_cast<std::size_t>(n.at("dimension").count()) : std::size_t{1};
      const auto coord = n.has("coordinate") ? static_cast<std::size_t>(n.at("coordinate").count()) : std::size_t{0};
      const double amp = n.has("amplitude") ? n.at("amplitude").number() : 1.0;
      return fn::osc_singular(n.at("alpha").number(), n.at("beta").number(), osc, dom, dim, coord, amp);
    }
    if (kind == "step") {
      n.only({"kind", "breaks", "pieces"});
      const Node p = n.at("pieces");
      std::vector<Vector> pieces;
      for (std::size_t i = 0; i < p.size(); ++i) pieces.push_back(p.at(i).vector());
      return fn::step(n.at("breaks").numbers(), std::move(pieces));
    }
    if (kind == "indicator") {
      n.only({"kind", "domain", "set", "value"});
      return fn::indicator(parse_subset(n.at("set")), n.at("value").vector(), dom);
    }
    if (kind == "sum") {
      n.only({"kind", "domain", "terms"});
      const Node t = n.at("terms");
      std::vector<FunctionSpec> terms;
      for (std::size_t i = 0; i < t.size(); ++i) terms.push_back(parse_function(t.at(i), dom, known));
      return fn::sum(std::move(terms));
    }
    if (kind == "scale") {
      n.only({"kind", "domain", "factor", "child"});
      return fn::scale(n.at("factor").number(), child("child"));
    }
    if (kind == "product") {
      n.only({"kind", "domain", "scalar", "child"});
      return fn::product(child("scalar"), child("child"));
    }
    if (kind == "seminorm-power") {
      n.only({"kind", "domain", "child", "seminorm", "exponent"});
      return fn::seminorm_power(child("child"), parse_seminorm(n.at("seminorm")), n.at("exponent").number());
    }
    if (kind == "derivative-pair") {
      n.only({"kind", "name", "part"});
      const auto pair = hk_derivative_pair(n.at("name").text());
      const std::string part = n.at("part").text();
      if (part == "f") return pair.f;
      if (part == "F") return pair.F;
      if (part == "G" && pair.G) return *pair.G;
      n.at("part").fail("expected 'f', 'F', or 'G' where the pair has one");
    }
    n.at("kind").fail("unknown function kind '" + kind + "'");
  });
}

// ---------------------------------------------------------------------------
// Gauge schedules

/// Parameters of a shrinking gauge schedule; `points` are merged with the
/// breaks of the integrands when `auto_points` is set.
struct ScheduleSpec {
  std::string kind = "constant";
  double width = 0.1;
  double narrow = 1e-12;
  std::vector<double> points;
  bool auto_points = true;
  double center = 0.0;
  double coeff = 0.16;
  double exponent = 3.0;
  double factor = 0.5;
  int steps = 8;
};

inline ScheduleSpec parse_schedule(const Node& n) {
  ScheduleSpec s;
  s.kind = n.at("kind").text();
  if (s.kind == "constant") {
    n.only({"kind", "width", "factor", "steps"});
  } else if (s.kind == "anchor" || s.kind == "breakpoint") {
    n.only({"kind", "width", "narrow", "points", "auto_points", "factor", "steps"});
  } else if (s.kind == "graded") {
    n.only({"kind", "width", "narrow", "center", "coeff", "exponent", "factor", "steps"});
    s.narrow = 1e-2;
    s.width = 0.05;
  } else {
    n.at("kind").fail("unknown schedule kind '" + s.kind + "'");
  }
  if (auto x = n.find("width")) s.width = x->positive();
  if (auto x = n.find("narrow")) s.narrow = x->positive();
  if (auto x = n.find("points")) s.points = x->numbers();
  if (auto x = n.find("auto_points")) s.auto_points = x->flag();
  if (auto x = n.find("center")) s.center = x->number();
  if (auto x = n.find("coeff")) s.coeff = x->positive();
  if (auto x = n.find("exponent")) s.exponent = x->number();
  if (auto x = n.find("factor")) {
    s.factor = x->number();
    if (!(s.factor > 0.0 && s.factor < 1.0)) x->fail("factor must lie in (0,1)");
  }
  if (auto x = n.find("steps")) {
    s.steps = static_cast<int>(x->count());
    if (s.steps < 1) x->fail("steps must be at least 1");
  }
  if ((s.kind == "anchor" || s.kind == "breakpoint") && s.narrow > s.width) n.fail("narrow must not exceed width");
  return s;
}

/// Gauges for `domain`; `extra` joins the configured points when enabled.
inline std::vector<Gauge> build_schedule(const ScheduleSpec& s, Interval domain, const std::vector<double>& extra = {}) {
  std::vector<double> pts = s.points;
  if (s.auto_points) pts.insert(pts.end(), extra.begin(), extra.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (s.kind == "constant") return constant_schedule(domain, s.width, s.factor, s.steps);
  if (s.kind == "anchor") return anchor_schedule(pts, s.narrow, s.width, domain, s.factor, s.steps);
  if (s.kind == "breakpoint") return breakpoint_schedule(pts, s.narrow, s.width, domain, s.factor, s.steps);
  return graded_schedule(domain, s.center, s.narrow, s.coeff, s.exponent, s.width, s.factor, s.steps);
}

// ---------------------------------------------------------------------------
// Scenario

struct Scenario {
  std::string command;
  SpaceSpec space;
  Interval domain{0.0, 1.0};
  /// Declaration order is report order.
  std::vector<std::pair<std::string, FunctionSpec>> functions;
  std::vector<std::pair<std::string, SubsetSpec>> sets;
  ScheduleSpec schedule;
  double p = 1.0;
  double q = 2.0;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::size_t prefix = 12;
  std::size_t grid = 1000;
  int budget = 256;
  std::string format = "json";
  std::optional<std::string> output_path;
  /// Command-specific section, validated by the command.
  Json task = Json::object();

  FunctionTable function_table() const { return {functions.begin(), functions.end()}; }
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"integrate", "inequalities", "variation",  "seminorm",
                                              "chebyshev", "fatou",        "sequences", "complete-suite"};
  return names;
}

inline Scenario parse_scenario(const Json& doc) {
  const Node root(doc, "");
  root.only({"schema_version", "command", "space", "domain", "functions", "sets", "schedule", "p", "q", "tol", "seed",
             "prefix", "grid", "budget", "output", "task"});
  const Node version = root.at("schema_version");
  if (version.count() != kSchemaVersion) version.fail("unsupported schema_version (expected 1)");

  Scenario s;
  s.command = root.at("command").text();
  if (std::find(commands().begin(), commands().end(), s.command) == commands().end())
    root.at("command").fail("unknown command '" + s.command + "'");
  s.space = parse_space(root.at("space"));
  if (auto d = root.find("domain")) {
    s.domain = parse_interval(*d);
    if (!(s.domain.lo < s.domain.hi)) d->fail("domain needs lo < hi");
  }
  if (auto sets = root.find("sets")) {
    sets->require_object();
    for (const auto& [name, value] : sets->json().items()) {
      const Node n(value, sets->child_ptr(name));
      SubsetSpec a = parse_subset(n);
      if (!a.within(s.domain.lo, s.domain.hi)) n.fail("set must lie inside the domain");
      s.sets.emplace_back(name, std::move(a));
    }
  }
  if (auto fns = root.find("functions")) {
    fns->require_object();
    FunctionTable known;
    for (const auto& [name, value] : fns->json().items()) {
      const Node n(value, fns->child_ptr(name));
      FunctionSpec f = parse_function(n, s.domain, known);
      if (f.domain() != s.domain) n.fail("function domain must equal the scenario domain");
      known.emplace(name, f);
      s.functions.emplace_back(name, std::move(f));
    }
  }
  if (auto x = root.find("schedule")) s.schedule = parse_schedule(*x);
  if (auto x = root.find("p")) {
    s.p = x->number();
    if (!(s.p >= 1.0)) x->fail("p must be >= 1");
  }
  if (auto x = root.find("q")) {
    s.q = x->number();
    if (!(s.q >= 1.0)) x->fail("q must be >= 1");
  }
  if (auto x = root.find("tol")) s.tol = x->positive();
  if (auto x = root.find("seed")) s.seed = x->count();
  if (auto x = root.find("prefix")) s.prefix = static_cast<std::size_t>(x->count());
  if (auto x = root.find("grid")) {
    s.grid = static_cast<std::size_t>(x->count());
    if (s.grid < 2) x->fail("grid needs at least 2 points");
  }
  if (auto x = root.find("budget")) s.budget = static_cast<int>(x->count());
  if (auto out = root.find("output")) {
    out->only({"path", "format"});
    if (auto x = out->find("path")) s.output_path = x->text();
    if (auto x = out->find("format")) {
      s.format = x->text();
      if (s.format != "csv" && s.format != "json") x->fail("format must be 'csv' or 'json'");
    }
  }
  if (auto t = root.find("task")) {
    t->require_object();
    s.task = t->json();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Serialization of library objects in the schema above

inline Json to_json(const Seminorm& rho) {
  return std::visit(
      [](const auto& k) -> Json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, AbsCoordinate>) return {{"kind", "abs-coordinate"}, {"params", {{"index", k.index}}}};
        else if constexpr (std::is_same_v<T, WeightedSum>) return {{"kind", "weighted-sum"}, {"params", {{"weights", k.weights}}}};
        else if constexpr (std::is_same_v<T, SupOverSubset>) return {{"kind", "sup-over-subset"}, {"params", {{"indices", k.indices}}}};
        else return {{"kind", "euclidean-full"}};
      },
      rho.kind());
}

inline Json to_json(const SpaceSpec& space) {
  Json list = Json::array();
  for (const auto& rho : space.seminorms()) list.push_back(to_json(rho));
  return {{"dimension", space.dimension()}, {"seminorms", list}, {"label", space.label()}};
}

inline Json to_json(Interval iv) { return Json::array({iv.lo, iv.hi}); }

inline Json to_json(const SubsetSpec& a) {
  Json ivs = Json::array();
  for (const auto& iv : a.intervals()) ivs.push_back(to_json(iv));
  return {{"intervals", ivs}, {"points", a.points()}};
}

inline Json to_json(const FunctionSpec& f) {
  const Json dom = to_json(f.domain());
  return std::visit(
      [&](const auto& k) -> Json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantNode>) {
          return {{"kind", "constant"}, {"domain", dom}, {"value", k.value.raw()}};
        } else if constexpr (std::is_same_v<T, PolynomialNode>) {
          return {{"kind", "polynomial"}, {"domain", dom}, {"coeffs", k.coeffs}};
        } else if constexpr (std::is_same_v<T, TrigNode>) {
          return {{"kind", "trig"}, {"domain", dom}, {"amplitude", k.amplitude}, {"frequency", k.frequency}, {"phase", k.phase}};
        } else if constexpr (std::is_same_v<T, OscSingularNode>) {
          return {{"kind", "oscillatory-singular"}, {"domain", dom}, {"alpha", k.alpha}, {"beta", k.beta},
                  {"oscillator", k.osc == Oscillator::sine ? "sin" : "cos"}, {"dimension", k.dim},
                  {"coordinate", k.coordinate}, {"amplitude", k.amplitude}};
        } else if constexpr (std::is_same_v<T, StepNode>) {
          Json pieces = Json::array();
          for (const auto& v : k.pieces) pieces.push_back(v.raw());
          return {{"kind", "step"}, {"breaks", k.breaks}, {"pieces", pieces}};
        } else if constexpr (std::is_same_v<T, IndicatorNode>) {
          return {{"kind", "indicator"}, {"domain", dom}, {"set", to_json(k.set)}, {"value", k.value.raw()}};
        } else if constexpr (std::is_same_v<T, SumNode>) {
          Json terms = Json::array();
          for (const auto& t : k.terms) terms.push_back(to_json(t));
          return {{"kind", "sum"}, {"domain", dom}, {"terms", terms}};
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          return {{"kind", "scale"}, {"domain", dom}, {"factor", k.factor}, {"child", to_json(k.child)}};
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          return {{"kind", "product"}, {"domain", dom}, {"scalar", to_json(k.scalar)}, {"child", to_json(k.child)}};
        } else {
          return {{"kind", "seminorm-power"}, {"domain", dom}, {"child", to_json(k.child)},
                  {"seminorm", to_json(k.rho)}, {"exponent", k.exponent}};
        }
      },
      f.node().kind);
}

}  // namespace gaugeint::config
