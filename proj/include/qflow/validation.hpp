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

// Acceptance suite. Each criterion recomputes its reference values
// independently of the code path under test where a closed form exists.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qflow::validation {

struct Options {
  std::uint64_t seed = 42;
  int threads = 0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

/// Runs one criterion (1..10). Exceptions inside a criterion turn into a
/// failed result carrying the message.
CriterionResult run_criterion(int id, const Options& opt = {});
std::vector<CriterionResult> run_all(const Options& opt = {});

/// "[PASS] 3 cpf-closed-form (1.2 s): detail"
std::string format_line(const CriterionResult& r);

}  // namespace qflow::validation
