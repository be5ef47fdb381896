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

#ifndef CUBICPLAN__BVP_HPP_
#define CUBICPLAN__BVP_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cubicplan/dynamics.hpp"

namespace cubicplan
{

/// Endpoint positions and velocities on [a, b].
struct BoundaryData
{
  Vec q_a;
  Vec v_a;
  Vec q_b;
  Vec v_b;
  double a = 0.0;
  double b = 1.0;

  double duration() const {return b - a;}
  /// Largest absolute boundary component.
  double scale() const;
  void validate(const ManifoldChart & chart) const;
};

struct SolverOptions
{
  int steps = 2000;
  int max_iterations = 50;
  double tolerance = 1e-8;
  double fd_step = 1e-5;
  int max_backtracks = 20;
  double singular_ratio = 1e-12;
};

struct ShootingResult
{
  Vec y;
  Vec z;
  Trajectory trajectory;
  double residual = 0.0;
  double jacobian_condition = 0.0;
  int iterations = 0;
  double action = 0.0;
  std::vector<double> residual_history;
};

using Seed = std::pair<Vec, Vec>;

/// (q(t), q'(t)) of the modified cubic through (p, v) with initial covariant
/// acceleration y and jerk z; `steps` RK4 steps over [0, t].
std::pair<Vec, Vec> biexp(
  const ManifoldChart & chart, const Potential & potential, const Vec & p, const Vec & v,
  const Vec & y, const Vec & z, double t, int steps = 2000);

/// Central-difference Jacobian of biexp in (y, z); columns y_1..y_n, z_1..z_n.
Mat biexp_jacobian(
  const ManifoldChart & chart, const Potential & potential, const Vec & p, const Vec & v,
  const Vec & y, const Vec & z, double t, int steps = 2000, double relative_step = 1e-5);

/// Initial acceleration and jerk of the flat Hermite cubic through the data.
Seed hermite_seed(const BoundaryData & boundary);

/// Damped Newton shooting on (y, z).
ShootingResult solve_bvp(
  const ManifoldChart & chart, const Potential & potential, const BoundaryData & boundary,
  const std::optional<Seed> & seed = std::nullopt, const SolverOptions & options = {});

using PotentialFamily = std::function<PotentialPtr(double)>;

/// Solves at every lambda in order, warm-starting from the previous solution.
std::vector<ShootingResult> continuation_sweep(
  const ManifoldChart & chart, const PotentialFamily & family, const BoundaryData & boundary,
  const std::vector<double> & lambdas, const SolverOptions & options = {});

/// lambda * target.
std::vector<ShootingResult> continuation_sweep(
  const ManifoldChart & chart, const PotentialPtr & target, const BoundaryData & boundary,
  const std::vector<double> & lambdas, const SolverOptions & options = {});

/// Solves from the Hermite seed and `count - 1` random perturbations of it,
/// returns the distinct solutions ordered by action.
std::vector<ShootingResult> multi_seed_solve(
  const ManifoldChart & chart, const Potential & potential, const BoundaryData & boundary,
  int count, std::uint64_t seed, const SolverOptions & options = {});

}  // namespace cubicplan

#endif  // CUBICPLAN__BVP_HPP_
