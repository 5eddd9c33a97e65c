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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qflow/models.hpp"
#include "qflow/qcore.hpp"

namespace qflow::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kConfigError = 2,
  kNumericError = 3,
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::string model = "depolarizing";  // preset name or model file
  double gamma = 1.0;
  std::optional<double> phi;  // defaults to gamma
  double omega = 0.0;
  std::vector<double> phi_over_gamma{0.25, 1.0, 4.0};
  std::vector<double> omega_over_gamma{0.0, 0.5, 5.0};
  std::optional<double> tmax;  // in units of 1/gamma
  std::optional<double> step;
  std::optional<double> tau;   // fixed tau for `cpf` and `bound`; default tau = t
  char scheme = 'd';
  std::string out;
  std::uint64_t seed = 42;
  int jobs = 0;
  std::optional<int> criterion;  // `validate` only
};

/// Fixed-width-free number formatting: 12 significant digits, no "-0".
std::string format_number(double v);

// Each command returns the full CSV (or report) text. Output depends only
// on the config, never on `jobs`.
std::string cmd_fig1a(const RunConfig& c);
std::string cmd_fig1b(const RunConfig& c);
std::string cmd_fig2(const RunConfig& c);
std::string cmd_cpf(const RunConfig& c);
std::string cmd_td(const RunConfig& c);
/// Sets `violated` when some slack is below -1e-9.
std::string cmd_bound(const RunConfig& c, bool& violated);
std::string cmd_check_bystander(const RunConfig& c);
/// Sets `failed` when any criterion fails.
std::string cmd_validate(const RunConfig& c, bool& failed);

/// Resolves --model: preset name first, then a model file path.
BipartiteModel resolve_model(const RunConfig& c);

/// Dispatches a parsed config; writes to --out or `out`. Maps errors onto
/// exit codes.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

/// Full command line entry point (argument parsing included).
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qflow::cli
