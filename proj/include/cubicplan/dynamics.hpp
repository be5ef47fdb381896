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

#ifndef CUBICPLAN__DYNAMICS_HPP_
#define CUBICPLAN__DYNAMICS_HPP_

#include <string>
#include <vector>

#include "cubicplan/geometry.hpp"
#include "cubicplan/potentials.hpp"

namespace cubicplan
{

/// Point of a curve with its velocity and covariant acceleration and jerk.
struct CurveState
{
  double t = 0.0;
  Vec q;
  Vec v;
  Vec a;
  Vec j;
};

/// Coordinate time derivatives of the components of a CurveState.
struct StateDerivative
{
  Vec dq;
  Vec dv;
  Vec da;
  Vec dj;
};

struct Trajectory
{
  std::vector<CurveState> states;
  double step = 0.0;
  std::string chart_id;
  std::string potential_id;

  std::size_t size() const {return states.size();}
  double start_time() const {return states.front().t;}
  double end_time() const {return states.back().t;}
  const CurveState & front() const {return states.front();}
  const CurveState & back() const {return states.back();}

  /// Samples with coordinate velocity and acceleration, for interpolation.
  SampledCurve sampled(const ManifoldChart & chart) const;
};

StateDerivative ode_rhs(
  const ManifoldChart & chart, const Potential & potential, const CurveState & state);

/// Classical RK4 with the step rounded down so that it divides T.
Trajectory integrate_ivp(
  const ManifoldChart & chart, const Potential & potential, const CurveState & initial,
  double T, double h);

Trajectory integrate_steps(
  const ManifoldChart & chart, const Potential & potential, const CurveState & initial,
  double T, int steps);

/// Composite Simpson rule over uniform samples; the last three intervals use
/// the 3/8 rule when the interval count is odd.
double simpson(const std::vector<double> & f, double h);

double action(const ManifoldChart & chart, const Potential & potential, const Trajectory & traj);

/// Action of a curve known only through its samples. Velocity and
/// acceleration are recovered by fourth-order finite differences.
double sampled_action(
  const ManifoldChart & chart, const Potential & potential, const std::vector<Vec> & points,
  double step);

class AdmissibleField;

/// Central difference of J along the variation exp_q(s W), s = +-1e-5 / |W|.
double first_variation(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const AdmissibleField & W);

/// J of the curve t -> exp_q(t)(W(t)), node by node.
double varied_action(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const std::vector<Vec> & W);

/// Covariant residual D^3q'/dt^3 + R(a, v)v + grad V at every node, with the
/// derivative of j taken by finite differences of the samples.
std::vector<Vec> cubic_residual(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj);

}  // namespace cubicplan

#endif  // CUBICPLAN__DYNAMICS_HPP_
