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


// Acceptance battery: one PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <cstdio>
#include <cstdlib>

#include "gaugeint/suite.hpp"

int main(int argc, char** argv) {
  gaugeint::suite::SuiteOptions opt;
  if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);
  int failures = 0;
  for (const auto& run : gaugeint::suite::criteria()) {
    const auto r = run(opt);
    std::printf("[%s] %2d %-32s observed=%.12g margin=%.3g time=%.2fs | %s | %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.observed, r.margin, r.seconds, r.expected.c_str(), r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  std::printf("%d criteria failed\n", failures);
  return failures;
}
