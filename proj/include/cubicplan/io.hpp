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

#ifndef CUBICPLAN__IO_HPP_
#define CUBICPLAN__IO_HPP_

#include <string>
#include <vector>

#include "json.hpp"

#include "cubicplan/bvp.hpp"
#include "cubicplan/index.hpp"
#include "cubicplan/jacobi.hpp"
#include "cubicplan/oracle.hpp"

namespace cubicplan
{

/// Columns t, q0.., v0.., a0.., j0.. with a header row and 17 significant
/// digits.
std::string trajectory_csv(const Trajectory & traj);
Trajectory parse_trajectory_csv(const std::string & text);
Trajectory read_trajectory_csv(const std::string & path);

std::string read_text_file(const std::string & path);
void write_text_file(const std::string & path, const std::string & text);

/// 17 significant digits, which reads back to the same double.
std::string format_double(double x);

nlohmann::json to_json(const Vec & v);
nlohmann::json to_json(const BoundaryData & b);
nlohmann::json to_json(const ShootingResult & r);
nlohmann::json to_json(const BiconjugateReport & r);
nlohmann::json to_json(const IndexReport & r);
nlohmann::json to_json(const OptimalityReport & r);
nlohmann::json to_json(const OracleComparison & c);
nlohmann::json to_json(const UniquenessReport & u);

/// lambda, y.., z.., J, residual.
std::string sweep_csv(const std::vector<double> & lambdas, const std::vector<ShootingResult> & rs);

}  // namespace cubicplan

#endif  // CUBICPLAN__IO_HPP_
