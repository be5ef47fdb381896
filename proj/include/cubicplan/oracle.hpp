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

#ifndef CUBICPLAN__ORACLE_HPP_
#define CUBICPLAN__ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubicplan/bvp.hpp"

namespace cubicplan
{

/// Chart points q_0..q_N on a uniform grid over [a, b]. q_0 and q_N are the
/// boundary positions; q_1 and q_{N-1} are determined by the boundary
/// velocities through second-order one-sided differences.
class DiscretePath
{
public:
  DiscretePath(const BoundaryData & boundary, int N);

  /// Path through the given interior nodes q_2..q_{N-2}.
  DiscretePath(const BoundaryData & boundary, int N, const std::vector<Vec> & free_nodes);

  int N() const {return N_;}
  double step() const {return (boundary_.b - boundary_.a) / N_;}
  double time(int k) const {return boundary_.a + k * step();}
  const BoundaryData & boundary() const {return boundary_;}
  const std::vector<Vec> & nodes() const {return nodes_;}

  /// The free nodes q_2..q_{N-2} stacked into one vector.
  Vec free_vector() const;
  void set_free_vector(const Vec & x);

  /// Samples of a trajectory (interpolated when grids differ).
  static DiscretePath from_curve(
    const ManifoldChart & chart, const Trajectory & traj, const BoundaryData & boundary, int N);
  /// Flat Hermite cubic in chart coordinates.
  static DiscretePath hermite(const BoundaryData & boundary, int N);

private:
  void eliminate();

  BoundaryData boundary_;
  int N_;
  std::vector<Vec> nodes_;
};

double discrete_action(
  const ManifoldChart & chart, const Potential & potential, const DiscretePath & path);

/// Gradient of discrete_action with respect to the free nodes.
Vec discrete_action_gradient(
  const ManifoldChart & chart, const Potential & potential, const DiscretePath & path);

struct MinimizeOptions
{
  double gradient_tolerance = 1e-7;
  int max_iterations = 100000;
};

struct DiscreteMinimum
{
  DiscretePath path;
  double action = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
};

class DiscreteNonConvergence : public NonConvergenceError
{
public:
  DiscreteNonConvergence(const std::string & what, DiscreteMinimum best)
  : NonConvergenceError(what, Vec(), Vec(), best.gradient_norm), best_(std::move(best)) {}
  const DiscreteMinimum & best() const {return best_;}

private:
  DiscreteMinimum best_;
};

/// Preconditioned nonlinear conjugate gradients with a monotone line search.
/// The preconditioner is the Hessian of the flat, potential-free discrete
/// action, so the iteration uses no curvature information.
DiscreteMinimum minimize_discrete(
  const ManifoldChart & chart, const Potential & potential, const BoundaryData & boundary,
  int N, const std::optional<DiscretePath> & seed = std::nullopt,
  const MinimizeOptions & options = {});

struct OracleComparison
{
  int N = 0;
  double sup_distance = 0.0;
  double action_discrete = 0.0;
  double action_shooting = 0.0;
  double action_gap = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;
};

OracleComparison compare_with_shooting(
  const ManifoldChart & chart, const Potential & potential, const BoundaryData & boundary,
  const Trajectory & shooting, int N, const MinimizeOptions & options = {});

struct SubIntervalCheck
{
  double a = 0.0;
  double b = 0.0;
  double deviation = 0.0;
  bool converged = false;
};

struct UniquenessReport
{
  std::vector<SubIntervalCheck> restrictions;
  double tangent_time = 0.0;
  double tangent_deviation = 0.0;
  bool restriction_ok = false;
  bool tangent_ok = false;
  bool inconclusive = false;
};

struct UniquenessOptions
{
  int subintervals = 5;
  std::uint64_t seed = 7;
  double restriction_tolerance = 1e-6;
  double tangent_tolerance = 1e-7;
};

/// Re-solves random grid-aligned sub-intervals and re-integrates from the
/// full jet at a random interior node in both directions.
UniquenessReport check_uniqueness_props(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const UniquenessOptions & options = {});

}  // namespace cubicplan

#endif  // CUBICPLAN__ORACLE_HPP_
