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

#ifndef CUBICPLAN__SCENARIO_HPP_
#define CUBICPLAN__SCENARIO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "cubicplan/bvp.hpp"
#include "cubicplan/index.hpp"

namespace cubicplan
{

/// A planning problem read from a JSON config (see docs/config.md).
struct Scenario
{
  std::string manifold;
  nlohmann::json potential_config;
  ChartPtr chart;
  PotentialPtr potential;
  BoundaryData boundary;
  double step = 0.0;
  SolverOptions solver;
  int seeds = 1;
  VerdictOptions verify;
  bool check_uniqueness = true;
  double scan_t1 = 0.0;
  std::vector<double> sweep_lambda;
  int oracle_N = 400;
  std::uint64_t seed = 7;

  /// Applies a step override and recomputes the solver step count.
  void set_step(double h);
};

/// Parses config text; relative file references resolve against base_dir.
/// Throws ConfigError with the line and column of syntax errors.
Scenario parse_scenario(const std::string & text, const std::string & base_dir = ".");
Scenario load_scenario(const std::string & path);

}  // namespace cubicplan

#endif  // CUBICPLAN__SCENARIO_HPP_
