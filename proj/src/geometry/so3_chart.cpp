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

#include <cmath>

#include <Eigen/Geometry>

#include "cubicplan/geometry.hpp"
#include "geometry/constant_curvature.hpp"

namespace cubicplan
{

namespace
{

Eigen::Matrix3d hat(const Eigen::Vector3d & w)
{
  Eigen::Matrix3d m;
  m << 0.0, -w.z(), w.y(),
    w.z(), 0.0, -w.x(),
    -w.y(), w.x(), 0.0;
  return m;
}

// The metric in exponential coordinates is g = f I + h w w^T with
// f = 2(1 - cos t)/t^2 and h = (1 - f)/t^2, t = |w|. Series below 0.5.
struct MetricCoefficients
{
  double f;
  double h;
  double df_over_t;
  double dh_over_t;
};

MetricCoefficients metric_coefficients(double t)
{
  MetricCoefficients c{};
  if (t < 0.5) {
    const double t2 = t * t;
    c.f = 1.0 + t2 * (-1.0 / 12 + t2 * (1.0 / 360 + t2 * (-1.0 / 20160 + t2 * (1.0 / 1814400 +
      t2 * (-1.0 / 239500800)))));
    c.h = 1.0 / 12 + t2 * (-1.0 / 360 + t2 * (1.0 / 20160 + t2 * (-1.0 / 1814400 +
      t2 * (1.0 / 239500800 + t2 * (-1.0 / 43589145600.0)))));
    c.df_over_t = -1.0 / 6 + t2 * (1.0 / 90 + t2 * (-1.0 / 3360 + t2 * (1.0 / 226800 +
      t2 * (-1.0 / 23950080 + t2 * (1.0 / 3632428800.0)))));
    c.dh_over_t = -1.0 / 180 + t2 * (1.0 / 5040 + t2 * (-1.0 / 302400 + t2 * (1.0 / 29937600 +
      t2 * (-1.0 / 4358914560.0 + t2 * (1.0 / 871782912000.0)))));
    return c;
  }
  const double s = std::sin(t);
  const double cs = std::cos(t);
  const double t2 = t * t;
  c.f = 2.0 * (1.0 - cs) / t2;
  c.h = (1.0 - c.f) / t2;
  c.df_over_t = 2.0 * s / (t2 * t) - 4.0 * (1.0 - cs) / (t2 * t2);
  c.dh_over_t = -c.df_over_t / t2 - 2.0 * (1.0 - c.f) / (t2 * t2);
  return c;
}

class So3Chart final : public ManifoldChart
{
public:
  explicit So3Chart(double max_angle)
  : max_angle_(max_angle), id_("so3") {}

  int dim() const override {return 3;}
  const std::string & id() const override {return id_;}
  CurvatureKind kind() const override {return CurvatureKind::lie_group_so3;}
  bool contains(const Vec & x) const override
  {
    return x.size() == 3 && x.allFinite() && x.norm() <= max_angle_;
  }

  Mat metric(const Vec & x) const override
  {
    require_inside(x, "metric");
    const MetricCoefficients c = metric_coefficients(x.norm());
    return c.f * Mat::Identity(3, 3) + c.h * x * x.transpose();
  }

  CoordTensor christoffel(const Vec & x) const override
  {
    require_inside(x, "christoffel");
    const MetricCoefficients c = metric_coefficients(x.norm());
    // dg(k, i, j) = d_k g_ij
    CoordTensor dg(3, 3);
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          double v = c.dh_over_t * x[k] * x[i] * x[j];
          if (i == j) {v += c.df_over_t * x[k];}
          if (i == k) {v += c.h * x[j];}
          if (j == k) {v += c.h * x[i];}
          dg(k, i, j) = v;
        }
      }
    }
    const Mat ginv = (c.f * Mat::Identity(3, 3) + c.h * x * x.transpose()).inverse();
    CoordTensor gamma(3, 3);
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          double v = 0.0;
          for (int l = 0; l < 3; ++l) {
            v += ginv(k, l) * (dg(i, l, j) + dg(j, l, i) - dg(l, i, j));
          }
          gamma(k, i, j) = 0.5 * v;
        }
      }
    }
    return gamma;
  }

  // Bi-invariant metric: R(X,Y)Z = -1/4 [[X,Y],Z], a space form of curvature 1/4
  // once |omega| is the rotation angle.
  CoordTensor riemann(const Vec & x) const override
  {
    return constant_curvature_riemann(metric(x), 0.25);
  }

  double distance(const Vec & x, const Vec & y) const override
  {
    require_inside(x, "distance");
    require_inside(y, "distance");
    const Eigen::Quaterniond qx(Eigen::AngleAxisd(so3_rotation(x)));
    const Eigen::Quaterniond qy(Eigen::AngleAxisd(so3_rotation(y)));
    const Eigen::Quaterniond rel = qx.conjugate() * qy;
    return 2.0 * std::atan2(rel.vec().norm(), std::abs(rel.w()));
  }

private:
  double max_angle_;
  std::string id_;
};

}  // namespace

Eigen::Matrix3d so3_rotation(const Eigen::Vector3d & omega)
{
  const double t = omega.norm();
  if (t < 1e-12) {return Eigen::Matrix3d::Identity() + hat(omega);}
  return Eigen::AngleAxisd(t, omega / t).toRotationMatrix();
}

Eigen::Vector3d so3_log(const Eigen::Matrix3d & rotation)
{
  const Eigen::AngleAxisd aa(rotation);
  return aa.angle() * aa.axis();
}

Eigen::Matrix3d so3_right_jacobian(const Eigen::Vector3d & omega)
{
  const double t = omega.norm();
  const Eigen::Matrix3d w = hat(omega);
  double a;
  double b;
  if (t < 1e-4) {
    a = 0.5 - t * t / 24.0;
    b = 1.0 / 6.0 - t * t / 120.0;
  } else {
    a = (1.0 - std::cos(t)) / (t * t);
    b = (t - std::sin(t)) / (t * t * t);
  }
  return Eigen::Matrix3d::Identity() - a * w + b * w * w;
}

ChartPtr make_so3(double max_angle)
{
  return std::make_shared<So3Chart>(max_angle);
}

}  // namespace cubicplan
