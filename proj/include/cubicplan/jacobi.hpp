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

#ifndef CUBICPLAN__JACOBI_HPP_
#define CUBICPLAN__JACOBI_HPP_

#include <string>
#include <vector>

#include "cubicplan/dynamics.hpp"
#include "cubicplan/fields.hpp"

namespace cubicplan
{

struct JacobiState
{
  double t = 0.0;
  Vec X;
  Vec dX;
  Vec d2X;
  Vec d3X;
};

/// Matrices of the linear operator F(X, q') = F0 X + F1 DX + F2 D^2X at one
/// curve state.
struct FCoefficients
{
  Mat F0;
  Mat F1;
  Mat F2;
};

FCoefficients f_coefficients(const ManifoldChart & chart, const CurveState & state);

/// F(X, q') term by term, with the second covariant derivative of R taken
/// along the curve.
Vec f_operator(
  const ManifoldChart & chart, const CurveState & state, const Vec & X, const Vec & dX,
  const Vec & d2X);

/// Covariant derivatives (D X, D^2 X, D^3 X, D^4 X) of a Jacobi state.
JacobiState jacobi_rhs(
  const ManifoldChart & chart, const Potential & potential, const CurveState & state,
  const JacobiState & field);

/// Propagates bi-Jacobi fields started at trajectory node `node` with the
/// given jets, forward to the last node (or backward to the first when
/// backward is set). Field k sample i sits at node `node + i` (or
/// `node - i`).
std::vector<FieldSamples> propagate_jacobi(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  std::size_t node, const std::vector<JacobiState> & initial, bool backward = false);

FieldSamples propagate_jacobi(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj,
  const JacobiState & initial);

struct BiconjugatePoint
{
  double t = 0.0;
  double sigma_min = 0.0;
  double sigma_ratio = 0.0;
  Vec d2X;
  Vec d3X;
  double witness_residual = 0.0;
};

struct BiconjugateReport
{
  double t1 = 0.0;
  double resolution = 0.0;
  double threshold = 1e-8;
  std::vector<BiconjugatePoint> points;
  std::vector<std::string> warnings;
};

struct ScanOptions
{
  double threshold = 1e-8;
  double time_tolerance = 1e-6;
  bool backward = true;
};

/// Boundary matrix at every node after t1: columns (X, DX) of the 2n fields
/// with X = DX = 0 and one unit jet at t1, scaled by elapsed time and
/// expressed in an orthonormal frame.
BiconjugateReport biconjugate_scan(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj, double t1,
  const ScanOptions & options = {});

struct NegativeDirection
{
  double delta = 0.0;
  double epsilon = 0.0;
  double value = 0.0;
  double i_xx = 0.0;
  double i_xy = 0.0;
  double i_yx = 0.0;
  double i_yy = 0.0;
  /// U_eps sampled on the piecewise grid used for quadrature.
  std::vector<double> times;
  std::vector<Vec> U;
};

/// Builds U = X + eps Y with I(U, U) < 0 from the bi-Jacobi field witnessing
/// that t1 and t2 are biconjugate. Searches delta and eps on geometric grids
/// unless both are given positive.
NegativeDirection negative_direction(
  const ManifoldChart & chart, const Potential & potential, const Trajectory & traj, double t1,
  double t2, double delta = -1.0, double epsilon = -1.0);

}  // namespace cubicplan

#endif  // CUBICPLAN__JACOBI_HPP_
