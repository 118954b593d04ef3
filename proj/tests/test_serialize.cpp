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
#include <cstdlib>
#include <limits>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "gaugeint/serialize.hpp"

namespace {

namespace io = gaugeint::io;

TEST(FormatDouble, RoundTripsRandomDoubles) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(mant(rng), expo(rng));
    EXPECT_EQ(std::strtod(io::format_double(x).c_str(), nullptr), x);
  }
}

TEST(FormatDouble, SpecialValues) {
  EXPECT_EQ(io::format_double(0.5), "0.5");
  EXPECT_EQ(io::format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(io::format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(io::format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(io::number(std::numeric_limits<double>::infinity()), io::Json("inf"));
  EXPECT_EQ(io::number(2.0), io::Json(2.0));
}

TEST(Csv, FieldQuoting) {
  EXPECT_EQ(io::csv_field("plain"), "plain");
  EXPECT_EQ(io::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(io::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Csv, WriterChecksWidth) {
  io::CsvWriter w({"a", "b"});
  w.row({"1", "x,y"});
  EXPECT_EQ(w.str(), "a,b\n1,\"x,y\"\n");
  EXPECT_THROW(w.row({"1"}), gaugeint::InvalidArgument);
}

TEST(Reports, ConvergenceCsvHasEmptyFirstDiff) {
  gaugeint::ConvergenceReport r;
  r.steps.push_back({"k=1:constant", 4, gaugeint::Vector{1.0}, {}});
  r.steps.push_back({"k=2:constant", 8, gaugeint::Vector{1.5}, {0.5}});
  r.verdict = gaugeint::Verdict::converged;
  EXPECT_EQ(io::to_csv(r, 1), "step,gauge_id,diff_1\n1,k=1:constant,\n2,k=2:constant,0.5\n");
  const auto j = io::to_json(r);
  EXPECT_EQ(j["verdict"], "converged");
  EXPECT_EQ(j["steps"][1]["cells"], 8);
}

TEST(Reports, InequalityRowsAgreeAcrossFormats) {
  const std::vector<gaugeint::InequalityRow> rows{gaugeint::make_row("holder", "[DERIVED]", 1.0, 2.0, 0.0)};
  EXPECT_EQ(io::to_csv(rows), "check,tag,lhs,rhs,margin,pass\nholder,[DERIVED],1,2,1,true\n");
  const auto j = io::to_json(rows);
  EXPECT_EQ(j[0]["margin"], 1.0);
  EXPECT_EQ(j[0]["pass"], true);
}

TEST(Reports, VariationAndMatrixCsv) {
  gaugeint::VariationBracket b;
  b.steps = {{"k=1:distance", 1.25}};
  b.reported = 1.25;
  EXPECT_EQ(io::to_csv(b), "step,gauge_id,estimate\n1,k=1:distance,1.25\n");
  EXPECT_EQ(io::to_json(b)["reported"], 1.25);
  const std::vector<gaugeint::MatrixRow> m{{2, 1, 0.125, 0.25, true}};
  EXPECT_EQ(io::to_csv(m), "k,j,gap,threshold,pass\n2,1,0.125,0.25,true\n");
}

// Output is a pure function of the input.
TEST(Reports, Deterministic) {
  const std::vector<gaugeint::InequalityRow> rows{gaugeint::make_row("minkowski", "[PAPER]", 0.1, 0.3, 1e-12)};
  EXPECT_EQ(io::to_json(rows).dump(), io::to_json(rows).dump());
  EXPECT_EQ(io::to_csv(rows), io::to_csv(rows));
}

}  // namespace
