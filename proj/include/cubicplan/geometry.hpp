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

#ifndef CUBICPLAN__GEOMETRY_HPP_
#define CUBICPLAN__GEOMETRY_HPP_

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cubicplan/errors.hpp"
#include "cubicplan/linalg.hpp"

namespace cubicplan
{

enum class CurvatureKind { flat, constant_curvature, lie_group_so3, generic_numeric };

const char * to_string(CurvatureKind kind);

/// A complete Riemannian manifold seen through a single coordinate chart.
///
/// Tensor conventions:
///   christoffel(x)(k, i, j)            = Gamma^k_ij
///   riemann(x)(l, i, j, k)             = R^l_ijk, with R(d_i, d_j) d_k = R^l_ijk d_l
///   nabla_riemann(x)(m, l, i, j, k)    = (nabla_m R)^l_ijk
///   nabla2_riemann(x)(p, m, l, i, j, k) = (nabla_p nabla R)_m^l_ijk
/// and R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
///
/// Implementations are immutable after construction and safe to share
/// across threads.
class ManifoldChart
{
public:
  virtual ~ManifoldChart() = default;

  virtual int dim() const = 0;
  virtual const std::string & id() const = 0;
  virtual CurvatureKind kind() const = 0;
  virtual bool contains(const Vec & x) const = 0;

  virtual Mat metric(const Vec & x) const = 0;
  virtual CoordTensor christoffel(const Vec & x) const = 0;
  virtual CoordTensor riemann(const Vec & x) const = 0;

  /// Zero for the locally symmetric kinds.
  virtual CoordTensor nabla_riemann(const Vec & x) const;
  virtual CoordTensor nabla2_riemann(const Vec & x) const;

  /// True when nabla R vanishes identically, so callers may skip it.
  virtual bool parallel_curvature() const {return true;}

  /// Riemannian distance. The default solves for the logarithm by shooting.
  virtual double distance(const Vec & x, const Vec & y) const;

  void require_inside(const Vec & x, std::string_view what) const;
};

using ChartPtr = std::shared_ptr<const ManifoldChart>;

// --- analytic charts -------------------------------------------------------

ChartPtr make_euclidean(int n);
/// Unit sphere in stereographic coordinates from the south pole; the north
/// pole sits at the origin. Domain: |x| <= max_radius.
ChartPtr make_sphere2(double max_radius = 4.0);
/// Poincare disk model of the hyperbolic plane, |x| <= max_radius.
ChartPtr make_hyperbolic2(double max_radius = 0.95);
/// SO(3) with the bi-invariant metric in exponential (axis-angle)
/// coordinates; the metric is normalised so |omega| is the rotation angle.
ChartPtr make_so3(double max_angle = 3.141592653589793 - 0.2);

using MetricFunction = std::function<Mat(const Vec &)>;

/// Finite-difference chart around a user metric function.
ChartPtr make_numeric_chart(
  std::string id, int dim, MetricFunction metric,
  std::function<bool(const Vec &)> domain, double relative_step = 1e-4);

/// Parses "euclidean:<n>", "sphere2", "hyperbolic2", "so3", "numeric:<file>".
ChartPtr make_chart(const std::string & spec);

/// Metric families understood by numeric metric-spec files.
ChartPtr make_numeric_chart_from_json_text(const std::string & text, const std::string & id);

// --- SO(3) helpers ---------------------------------------------------------

Eigen::Matrix3d so3_rotation(const Eigen::Vector3d & omega);
Eigen::Vector3d so3_log(const Eigen::Matrix3d & rotation);
/// Right Jacobian: body angular velocity = so3_right_jacobian(omega) * omega_dot.
Eigen::Matrix3d so3_right_jacobian(const Eigen::Vector3d & omega);

// --- tensor contractions ---------------------------------------------------

/// Gamma^k_ij u^i w^j.
Vec contract_christoffel(const CoordTensor & gamma, const Vec & u, const Vec & w);
/// R(X,Y)Z.
Vec contract_riemann(const CoordTensor & r, const Vec & x, const Vec & y, const Vec & z);
/// (nabla_W R)(X,Y)Z.
Vec contract_nabla_riemann(
  const CoordTensor & dr, const Vec & w, const Vec & x, const Vec & y, const Vec & z);
/// (nabla^2_{W1,W2} R)(X,Y)Z.
Vec contract_nabla2_riemann(
  const CoordTensor & d2r, const Vec & w1, const Vec & w2, const Vec & x, const Vec & y,
  const Vec & z);

// --- pointwise operations --------------------------------------------------

double inner(const ManifoldChart & chart, const Vec & x, const Vec & u, const Vec & w);
double norm(const ManifoldChart & chart, const Vec & x, const Vec & u);

Vec curvature_endo(
  const ManifoldChart & chart, const Vec & x, const Vec & X, const Vec & Y, const Vec & Z);
Vec nabla_R(
  const ManifoldChart & chart, const Vec & x, const Vec & W, const Vec & X, const Vec & Y,
  const Vec & Z);
/// (nabla^2_{W,W} R)(X,Y)Z.
Vec nabla2_R(
  const ManifoldChart & chart, const Vec & x, const Vec & W, const Vec & X, const Vec & Y,
  const Vec & Z);

/// Endpoint of the geodesic through x with initial velocity v, by RK4 on the
/// geodesic equation. steps <= 0 picks a step count from |v|.
Vec exp_map(const ManifoldChart & chart, const Vec & x, const Vec & v, int steps = 0);

/// Inverse of exp_map near x by Newton shooting; throws OutOfRangeError when
/// y is not reachable from the coordinate-difference seed.
Vec log_map(const ManifoldChart & chart, const Vec & x, const Vec & y);

double distance(const ManifoldChart & chart, const Vec & x, const Vec & y);

/// A curve known at uniform samples, with coordinate velocity and
/// acceleration, so that it can be interpolated to quintic Hermite accuracy.
struct SampledCurve
{
  double t0 = 0.0;
  double step = 0.0;
  std::vector<Vec> position;
  std::vector<Vec> velocity;
  std::vector<Vec> acceleration;

  std::size_t size() const {return position.size();}
  /// Position and coordinate velocity at t by quintic Hermite interpolation.
  std::pair<Vec, Vec> interpolate(double t) const;
};

/// Transports v (given at the first sample) along the curve, returning the
/// field at every sample.
std::vector<Vec> parallel_transport(
  const ManifoldChart & chart, const SampledCurve & curve, const Vec & v);

/// Transports an orthonormal frame of T_{q(t0)}Q (Gram-Schmidt in the metric,
/// starting from the coordinate basis). Columns are the frame vectors.
std::vector<Mat> parallel_frame(const ManifoldChart & chart, const SampledCurve & curve);

/// Orthonormalises the columns of basis with respect to g.
Mat orthonormalize(const Mat & g, const Mat & basis);

}  // namespace cubicplan

#endif  // CUBICPLAN__GEOMETRY_HPP_
