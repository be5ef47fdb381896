// Copyright 2026 The cubicplan Authors
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

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cubicplan/commands.hpp"

int main(int argc, char ** argv)
{
  CLI::App app{"Plans and verifies modified cubic trajectories on Riemannian manifolds."};
  app.require_subcommand(1);
  app.fallthrough();

  cubicplan::CommandOptions opts;
  double step = 0.0;
  std::uint64_t seed = 0;
  std::string trajectory;
  double t1 = 0.0;

  app.add_option("--config", opts.config, "scenario JSON file")->required();
  app.add_option("--out", opts.out, "output directory")->capture_default_str();
  auto * step_opt = app.add_option("--step", step, "integrator step h");
  auto * seed_opt = app.add_option("--seed", seed, "random seed");

  app.add_subcommand("plan", "solve the boundary value problem");
  auto * verify = app.add_subcommand("verify", "optimality verdict for a trajectory");
  auto * traj_opt = verify->add_option("--trajectory", trajectory, "trajectory CSV to verify");
  auto * scan = app.add_subcommand("scan", "biconjugate points from t1");
  auto * t1_opt = scan->add_option("--t1", t1, "base time of the scan");
  auto * scan_traj = scan->add_option("--trajectory", trajectory, "trajectory CSV to scan");
  app.add_subcommand("sweep", "continuation in the potential strength");
  auto * oracle = app.add_subcommand("oracle-compare", "compare with direct discrete minimisation");
  auto * oracle_traj = oracle->add_option("--trajectory", trajectory, "trajectory CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cubicplan::kExitConfig;
  }
  if (*step_opt) {opts.step = step;}
  if (*seed_opt) {opts.seed = seed;}
  if (*traj_opt || *scan_traj || *oracle_traj) {opts.trajectory = trajectory;}
  if (*t1_opt) {opts.t1 = t1;}

  const std::string command = app.get_subcommands().front()->get_name();
  return cubicplan::run_command(command, opts, std::cout, std::cerr);
}
