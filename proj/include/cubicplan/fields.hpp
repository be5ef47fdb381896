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

#ifndef CUBICPLAN__FIELDS_HPP_
#define CUBICPLAN__FIELDS_HPP_

#include <functional>
#include <vector>

#include "cubicplan/dynamics.hpp"

namespace cubicplan
{

/// A vector field along a trajectory, sampled on its grid together with its
/// first three covariant derivatives (d3X may be left empty).
struct FieldSamples
{
  double t0 = 0.0;
  double step = 0.0;
  std::vector<Vec> X;
  std::vector<Vec> dX;
  std::vector<Vec> d2X;
  std::vector<Vec> d3X;

  std::size_t size() const {return X.size();}
  FieldSamples & operator+=(const FieldSamples & o);
  FieldSamples & operator*=(double s);
};

FieldSamples operator+(FieldSamples a, const FieldSamples & b);
FieldSamples operator*(double s, FieldSamples a);

/// A field vanishing to first order at both ends of its trajectory.
class AdmissibleField
{
public:
  /// Throws ContractError when X or DX misses zero at an end by more than
  /// tolerance (default 1e-12 * max(1, sup |X|)).
  explicit AdmissibleField(FieldSamples samples, double tolerance = -1.0);

  const FieldSamples & samples() const {return samples_;}
  std::size_t size() const {return samples_.size();}

private:
  FieldSamples samples_;
};

/// Scalar profile with its first three derivatives at t.
using Profile = std::function<Eigen::Vector4d(double)>;

/// sum_i c_i(t) e_i(t) for an orthonormal parallel frame e. The coefficient
/// function returns one row per derivative order (0..3) and one column per
/// frame vector.
FieldSamples frame_field(
  const Trajectory & traj, const std::vector<Mat> & frame,
  const std::function<Eigen::Matrix<double, 4, Eigen::Dynamic>(double)> & coefficients);

/// profile(t) * e_k(t).
FieldSamples profile_field(
  const Trajectory & traj, const std::vector<Mat> & frame, int k, const Profile & profile);

/// sum over frame vectors of polynomial bumps (t - t0)^2 (t1 - t)^2 p_k(t) with
/// p_k given by random coefficients: a smooth admissible test field.
FieldSamples random_admissible_field(
  const Trajectory & traj, const std::vector<Mat> & frame, const std::vector<double> & coeffs,
  int degree);

/// Orthonormal parallel frame along the trajectory nodes.
std::vector<Mat> trajectory_frame(const ManifoldChart & chart, const Trajectory & traj);

}  // namespace cubicplan

#endif  // CUBICPLAN__FIELDS_HPP_
