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

#include "qflow/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qflow/depolarizing.hpp"
#include "qflow/evolve.hpp"
#include "qflow/kernels.hpp"
#include "qflow/model_io.hpp"
#include "qflow/presets.hpp"
#include "qflow/validation.hpp"
#include "qflow/witness.hpp"

namespace qflow::cli {

namespace {

constexpr double kFigCrossCheck = 1e-8;
constexpr double kSlackFloor = -1e-9;

double phi_of(const RunConfig& c) { return c.phi.value_or(c.gamma); }

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_number(v[i]);
  return s;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void require_rates(const RunConfig& c) {
  require(c.gamma > 0.0 && std::isfinite(c.gamma), "--gamma must be positive");
  require(phi_of(c) > 0.0 && std::isfinite(phi_of(c)), "--phi must be positive");
  require(c.omega >= 0.0 && std::isfinite(c.omega), "--omega must be non-negative");
}

// Dimensionless grid gamma*t, as printed in the t column.
TimeGrid scaled_grid(const RunConfig& c, double tmax, double step) {
  const double tm = c.tmax.value_or(tmax);
  const double st = c.step.value_or(step);
  require(tm > 0.0 && std::isfinite(tm), "--tmax must be positive");
  require(st > 0.0 && st <= tm, "--step must be positive and not exceed --tmax");
  return TimeGrid::uniform(0.0, tm, st);
}

TimeGrid physical(const TimeGrid& g, double gamma) {
  std::vector<double> t = g.times();
  for (auto& x : t) x /= gamma;
  return TimeGrid::from_times(std::move(t));
}

std::string header(const RunConfig& c, const std::string& extra) {
  std::string h = "# qflow " QFLOW_VERSION " command=" + c.command +
                  " gamma=" + format_number(c.gamma) + extra + " seed=" + std::to_string(c.seed) + "\n";
  return h;
}

std::string grid_echo(const TimeGrid& g) {
  return " tmax=" + format_number(g.times().back()) + " step=" + format_number(g[1] - g[0]);
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::vector<bool> revival_flags(const std::vector<double>& d) {
  std::vector<bool> f(d.size(), false);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) f[i] = d[i + 1] - d[i] > kRevivalTolerance;
  return f;
}

Scheme scheme_of(const RunConfig& c) {
  if (c.scheme == 'd') return Scheme::Deterministic;
  if (c.scheme == 'r') return Scheme::Random;
  throw ConfigError("--scheme must be d or r");
}

std::string outcome_label(double v) { return (v > 0.0 ? "+" : "") + format_number(v); }

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

BipartiteModel resolve_model(const RunConfig& c) {
  presets::PresetParameters p{c.gamma, phi_of(c), c.omega, c.seed};
  if (auto m = presets::by_name(c.model, p)) return std::move(*m);
  try {
    return load_model(c.model);
  } catch (const ModelFormatError& e) {
    throw ConfigError(std::string(e.what()) + " (known presets: depolarizing, coherent, modulated, "
                      "exchange, commuting, born-markov, mixture, stochastic, bystander, random-unitary)");
  }
}

std::string cmd_fig1a(const RunConfig& c) {
  require_rates(c);
  require(!c.phi_over_gamma.empty(), "--phi-over-gamma list is empty");
  const TimeGrid grid = scaled_grid(c, 6.0, 0.01);
  const TimeGrid tgrid = physical(grid, c.gamma);
  const auto& ratios = c.phi_over_gamma;
  for (double r : ratios) require(r > 0.0, "--phi-over-gamma values must be positive");

  std::vector<std::vector<double>> d(ratios.size());
  const Matrix rho = DensityMatrix::basis_state(2, 0).matrix();
  const Matrix sigma = DensityMatrix::basis_state(2, 1).matrix();
  for_each_index(
      ratios.size(),
      [&](std::size_t k) {
        const double phi = ratios[k] * c.gamma;
        Dynamics dyn(presets::depolarizing(c.gamma, phi));
        const TdTrace td = td_series(dyn, rho, sigma, dyn.model().initial_environment().matrix(), tgrid);
        d[k].resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
          d[k][i] = depolarizing::analytic_td_factor(c.gamma, phi, tgrid[i]);
          if (std::abs(d[k][i] - td.distances[i]) > kFigCrossCheck)
            throw NumericError("fig1a: closed form and propagated trace distance differ by more than 1e-8");
        }
      },
      Execution::Parallel, c.jobs);

  std::string s = header(c, " phi_over_gamma=" + join(ratios) + grid_echo(grid));
  s += "t";
  for (double r : ratios) s += ",d[phi/gamma=" + format_number(r) + "]";
  for (double r : ratios) s += ",revival[phi/gamma=" + format_number(r) + "]";
  s += "\n";
  std::vector<std::vector<bool>> flags;
  for (const auto& col : d) flags.push_back(revival_flags(col));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s += format_number(grid[i]);
    for (const auto& col : d) s += "," + format_number(col[i]);
    for (const auto& f : flags) s += f[i] ? ",1" : ",0";
    s += "\n";
  }
  return s;
}

std::string cmd_fig1b(const RunConfig& c) {
  require_rates(c);
  require(!c.phi_over_gamma.empty(), "--phi-over-gamma list is empty");
  const TimeGrid grid = scaled_grid(c, 6.0, 0.01);
  const TimeGrid tgrid = physical(grid, c.gamma);
  const auto& ratios = c.phi_over_gamma;
  for (double r : ratios) require(r > 0.0, "--phi-over-gamma values must be positive");

  std::vector<std::pair<double, double>> points;
  for (double t : tgrid.times()) points.emplace_back(t, t);
  std::vector<CpfPoints> cols;
  MeasurementTriple specs = presets::computational_triple(2);
  for (double r : ratios) {
    Dynamics dyn(presets::depolarizing(c.gamma, r * c.gamma));
    const CpfRequest req = presets::reference_cpf(dyn.model(), Scheme::Deterministic);
    cols.push_back(cpf_points(dyn, req, points, Execution::Parallel, c.jobs));
  }

  std::string s = header(c, " phi_over_gamma=" + join(ratios) + grid_echo(grid) + " scheme=d");
  s += "t";
  for (double r : ratios)
    for (double y : specs.present.outcomes())
      s += ",cpf[phi/gamma=" + format_number(r) + "|y=" + outcome_label(y) + "]";
  s += "\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s += format_number(grid[i]);
    for (const auto& col : cols)
      for (const auto& v : col.values[i]) s += "," + cell(v);
    s += "\n";
  }
  return s;
}

std::string cmd_fig2(const RunConfig& c) {
  require_rates(c);
  require(!c.omega_over_gamma.empty(), "--omega-over-gamma list is empty");
  const TimeGrid grid = scaled_grid(c, 10.0, 0.005);
  const TimeGrid tgrid = physical(grid, c.gamma);
  const auto& omegas = c.omega_over_gamma;
  for (double w : omegas) require(w >= 0.0, "--omega-over-gamma values must be non-negative");
  const double phi = phi_of(c);

  std::vector<std::vector<double>> d(omegas.size());
  for_each_index(
      omegas.size(),
      [&](std::size_t k) {
        const auto w = depolarizing::coherent_w(c.gamma, phi, omegas[k] * c.gamma, tgrid);
        for (double x : w) d[k].push_back(depolarizing::td_factor_from_w(x));
      },
      Execution::Parallel, c.jobs);

  std::string s = header(c, " phi=" + format_number(phi) + " omega_over_gamma=" + join(omegas) +
                                grid_echo(grid));
  s += "t";
  for (double w : omegas) s += ",d[omega/gamma=" + format_number(w) + "]";
  for (double w : omegas) s += ",revival[omega/gamma=" + format_number(w) + "]";
  s += "\n";
  std::vector<std::vector<bool>> flags;
  for (const auto& col : d) flags.push_back(revival_flags(col));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s += format_number(grid[i]);
    for (const auto& col : d) s += "," + format_number(col[i]);
    for (const auto& f : flags) s += f[i] ? ",1" : ",0";
    s += "\n";
  }
  return s;
}

std::string cmd_cpf(const RunConfig& c) {
  require_rates(c);
  const Scheme scheme = scheme_of(c);
  const BipartiteModel model = resolve_model(c);
  const TimeGrid grid = scaled_grid(c, 2.0, 0.25);
  const TimeGrid tgrid = physical(grid, c.gamma);
  std::vector<double> taus;
  if (c.tau) {
    require(*c.tau >= 0.0, "--tau must be non-negative");
    taus.push_back(*c.tau / c.gamma);
  } else {
    taus = tgrid.times();
  }
  Dynamics dyn(model);
  const CpfRequest req = presets::reference_cpf(model, scheme);
  const CpfGrid g = cpf_grid(dyn, req, tgrid.times(), taus, Execution::Parallel, c.jobs);

  std::string s = header(c, " model=" + c.model + " class=" + to_string(model.kind()) + grid_echo(grid) +
                                " scheme=" + to_string(scheme));
  s += "t,tau";
  for (double y : req.specs.present.outcomes()) s += ",cpf[y=" + outcome_label(y) + "]";
  s += "\n";
  for (std::size_t i = 0; i < g.ts.size(); ++i)
    for (std::size_t j = 0; j < g.taus.size(); ++j) {
      s += format_number(g.ts[i] * c.gamma) + "," + format_number(g.taus[j] * c.gamma);
      for (const auto& v : g.at(i, j)) s += "," + cell(v);
      s += "\n";
    }
  return s;
}

std::string cmd_td(const RunConfig& c) {
  require_rates(c);
  const BipartiteModel model = resolve_model(c);
  const TimeGrid grid = scaled_grid(c, 6.0, 0.01);
  const Index ds = model.layout().ds;
  Dynamics dyn(model);
  const TdTrace td = td_series(dyn, DensityMatrix::basis_state(ds, 0).matrix(),
                               DensityMatrix::basis_state(ds, ds - 1).matrix(),
                               model.initial_environment().matrix(), physical(grid, c.gamma), true);
  std::string s = header(c, " model=" + c.model + " class=" + to_string(model.kind()) + grid_echo(grid));
  s += "t,d,revival,env_distance,corr_rho,corr_sigma\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s += format_number(grid[i]) + "," + format_number(td.distances[i]) + (td.revivals[i] ? ",1" : ",0");
    s += "," + format_number(td.bounds->env_distance[i]) + "," + format_number(td.bounds->corr_rho[i]) +
         "," + format_number(td.bounds->corr_sigma[i]) + "\n";
  }
  return s;
}

std::string cmd_bound(const RunConfig& c, bool& violated) {
  require_rates(c);
  const BipartiteModel model = resolve_model(c);
  const TimeGrid grid = scaled_grid(c, 3.0, 0.5);
  const TimeGrid tgrid = physical(grid, c.gamma);
  std::vector<double> taus = c.tau ? std::vector<double>{*c.tau / c.gamma} : tgrid.times();
  const Index ds = model.layout().ds;
  const Matrix rho = DensityMatrix::basis_state(ds, 0).matrix();
  const Matrix sigma = presets::uniform_superposition(ds);
  const Matrix env0 = model.initial_environment().matrix();
  Dynamics dyn(model);

  const std::size_t nt = tgrid.size();
  std::vector<BoundTerms> terms(nt * taus.size());
  for_each_index(
      terms.size(),
      [&](std::size_t k) {
        terms[k] = td_bound_terms(dyn, rho, sigma, env0, tgrid[k / taus.size()], taus[k % taus.size()]);
      },
      Execution::Parallel, c.jobs);

  violated = false;
  std::string s = header(c, " model=" + c.model + " class=" + to_string(model.kind()) + grid_echo(grid));
  s += "t,tau,increment,env_distance,corr_rho,corr_sigma,slack\n";
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& b = terms[k];
    violated = violated || b.slack < kSlackFloor;
    s += format_number(tgrid[k / taus.size()] * c.gamma) + "," + format_number(taus[k % taus.size()] * c.gamma) +
         "," + format_number(b.increment) + "," + format_number(b.env_distance) + "," +
         format_number(b.corr_rho) + "," + format_number(b.corr_sigma) + "," + format_number(b.slack) + "\n";
  }
  return s;
}

std::string cmd_check_bystander(const RunConfig& c) {
  require_rates(c);
  const BipartiteModel model = resolve_model(c);
  const BystanderCheck r = check_casual_bystander(model);
  std::string s = header(c, " model=" + c.model);
  s += "model,class,casual_bystander,residual\n";
  s += c.model + "," + to_string(model.kind()) + "," + (r.casual ? "true" : "false") + "," +
       format_number(r.residual) + "\n";
  return s;
}

std::string cmd_validate(const RunConfig& c, bool& failed) {
  validation::Options opt{c.seed, c.jobs};
  std::vector<validation::CriterionResult> results;
  if (c.criterion) {
    require(*c.criterion >= 1 && *c.criterion <= validation::kCriterionCount,
            "--criterion must be in 1..10");
    results.push_back(validation::run_criterion(*c.criterion, opt));
  } else {
    results = validation::run_all(opt);
  }
  std::string s;
  int passed = 0;
  for (const auto& r : results) {
    s += validation::format_line(r) + "\n";
    passed += r.passed ? 1 : 0;
  }
  failed = passed != static_cast<int>(results.size());
  s += std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria passed\n";
  return s;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    std::string text;
    int code = kOk;
    bool flag = false;
    if (c.command == "fig1a") {
      text = cmd_fig1a(c);
    } else if (c.command == "fig1b") {
      text = cmd_fig1b(c);
    } else if (c.command == "fig2") {
      text = cmd_fig2(c);
    } else if (c.command == "cpf") {
      text = cmd_cpf(c);
    } else if (c.command == "td") {
      text = cmd_td(c);
    } else if (c.command == "bound") {
      text = cmd_bound(c, flag);
      if (flag) code = kValidationFailure;
    } else if (c.command == "check-bystander") {
      text = cmd_check_bystander(c);
    } else if (c.command == "validate") {
      text = cmd_validate(c, flag);
      if (flag) code = kValidationFailure;
    } else {
      throw ConfigError("unknown command \"" + c.command + "\"");
    }
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw ConfigError("cannot write " + c.out);
      f << text;
    }
    return code;
  } catch (const NumericError& e) {
    err << "qflow: numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const Error& e) {
    err << "qflow: " << e.what() << "\n";
    return kConfigError;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qflow: trace-distance and CPF non-Markovianity diagnostics"};
  app.set_version_flag("--version", QFLOW_VERSION);
  RunConfig c;
  std::string scheme = "d";
  double phi = 0.0;
  app.add_option("command", c.command, "fig1a | fig1b | fig2 | cpf | td | bound | check-bystander | validate")
      ->required()
      ->check(CLI::IsMember({"fig1a", "fig1b", "fig2", "cpf", "td", "bound", "check-bystander", "validate"}));
  app.add_option("--gamma", c.gamma, "decay rate gamma (time unit 1/gamma)");
  auto* phi_opt = app.add_option("--phi", phi, "return rate phi (default: gamma)");
  app.add_option("--omega", c.omega, "environment Hamiltonian frequency");
  app.add_option("--phi-over-gamma", c.phi_over_gamma, "comma-separated phi/gamma list")->delimiter(',');
  app.add_option("--omega-over-gamma", c.omega_over_gamma, "comma-separated omega/gamma list")->delimiter(',');
  app.add_option("--tmax", c.tmax, "grid end, units of 1/gamma");
  app.add_option("--step", c.step, "grid step, units of 1/gamma");
  app.add_option("--tau", c.tau, "fixed tau for cpf/bound");
  app.add_option("--scheme", scheme, "d (deterministic) or r (random)")->check(CLI::IsMember({"d", "r"}));
  app.add_option("--model", c.model, "preset name or qflow-model/1 file");
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--seed", c.seed, "seed for random presets");
  app.add_option("--jobs", c.jobs, "worker threads (0 = OpenMP default)")->envname("QFLOW_JOBS");
  app.add_option("--criterion", c.criterion, "validate: run a single criterion 1..10");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  if (*phi_opt) c.phi = phi;
  c.scheme = scheme.front();
  return run(c, out, err);
}

}  // namespace qflow::cli
