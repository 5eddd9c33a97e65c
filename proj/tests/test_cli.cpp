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

#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "qflow/cli.hpp"

using namespace qflow;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<const char*> args) {
  args.insert(args.begin(), "qflow");
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

// Value in column `col` of the data row whose first field is `t`.
std::string field(const std::string& csv, const std::string& t, std::size_t col) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (!cells.empty() && cells[0] == t && col < cells.size()) return cells[col];
  }
  return {};
}

}  // namespace

TEST_CASE("format_number") {
  CHECK(cli::format_number(0.5) == "0.5");
  CHECK(cli::format_number(-0.0) == "0");
  CHECK(cli::format_number(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("fig1a trace distance at gamma t = 1") {
  const auto r = run({"fig1a", "--tmax", "1", "--step", "0.5"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.rfind("# qflow ", 0) == 0);
  CHECK(r.out.find("seed=42") != std::string::npos);
  CHECK(std::stod(field(r.out, "1", 2)) == doctest::Approx(0.33476).epsilon(1e-5));
  CHECK(field(r.out, "1", 5) == "0");
}

TEST_CASE("fig1b CPF") {
  const auto r = run({"fig1b", "--tmax", "1", "--step", "1"});
  REQUIRE(r.code == cli::kOk);
  CHECK(std::stod(field(r.out, "0", 3)) == 0.0);
  CHECK(std::stod(field(r.out, "1", 3)) == doctest::Approx(0.06733).epsilon(1e-4));
  CHECK(r.out.find("scheme=d") != std::string::npos);
}

TEST_CASE("fig2 flags a revival at omega = 5 gamma") {
  const auto r = run({"fig2", "--tmax", "3", "--step", "0.05"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find(",1\n") != std::string::npos);
}

TEST_CASE("check-bystander and cpf on a quantum bystander") {
  const auto r = run({"check-bystander", "--model", "bystander"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find(",true,") != std::string::npos);
  const auto e = run({"check-bystander", "--model", "exchange"});
  CHECK(e.out.find(",false,") != std::string::npos);

  const auto c = run({"cpf", "--model", "bystander", "--scheme", "r", "--tmax", "2", "--step", "1"});
  REQUIRE(c.code == cli::kOk);
  std::istringstream in(c.out);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::stringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');
    std::getline(ls, cell, ',');
    while (std::getline(ls, cell, ',')) CHECK(std::abs(std::stod(cell)) < 1e-10);
  }
}

TEST_CASE("bound on the exchange model holds") {
  const auto r = run({"bound", "--model", "exchange", "--tmax", "2", "--step", "0.5"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("slack") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"fig1a", "--gamma", "-1"}).code == cli::kConfigError);
  CHECK(run({"cpf", "--model", "no-such-model"}).code == cli::kConfigError);
  CHECK(run({"nonsense"}).code == cli::kConfigError);
  CHECK(run({"validate", "--criterion", "11"}).code == cli::kConfigError);
  CHECK(run({"validate", "--criterion", "2"}).code == cli::kOk);
}

TEST_CASE("output is deterministic") {
  const auto a = run({"fig1b", "--tmax", "2", "--step", "0.5", "--jobs", "1"});
  const auto b = run({"fig1b", "--tmax", "2", "--step", "0.5", "--jobs", "4"});
  CHECK(a.out == b.out);
}
