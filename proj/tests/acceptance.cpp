// Copyright 2026 The qflow Authors
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

// Acceptance runner: one PASS/FAIL line per criterion.
//   qflow_acceptance                 all criteria
//   qflow_acceptance --criterion N   criterion N only

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "qflow/validation.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      ids.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (ids.empty())
    for (int id = 1; id <= qflow::validation::kCriterionCount; ++id) ids.push_back(id);

  int failed = 0;
  for (int id : ids) {
    if (id < 1 || id > qflow::validation::kCriterionCount) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    const auto r = qflow::validation::run_criterion(id);
    std::printf("%s\n", qflow::validation::format_line(r).c_str());
    std::fflush(stdout);
    failed += r.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
