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
#include <fstream>
#include <sstream>

#include "cubicplan/geometry.hpp"
#include "geometry/constant_curvature.hpp"

namespace cubicplan
{

CoordTensor constant_curvature_riemann(const Mat & g, double kappa)
{
  const int n = static_cast<int>(g.rows());
  CoordTensor r(n, 4);
  if (kappa == 0.0) {return r;}
  // R(X,Y)Z = kappa (<Y,Z> X - <X,Z> Y)
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          double v = 0.0;
          if (l == i) {v += g(j, k);}
          if (l == j) {v -= g(i, k);}
          r(l, i, j, k) = kappa * v;
        }
      }
    }
  }
  return r;
}

namespace
{

class EuclideanChart final : public ManifoldChart
{
public:
  explicit EuclideanChart(int n)
  : n_(n), id_("euclidean:" + std::to_string(n)) {}

  int dim() const override {return n_;}
  const std::string & id() const override {return id_;}
  CurvatureKind kind() const override {return CurvatureKind::flat;}
  bool contains(const Vec & x) const override
  {
    return x.size() == n_ && x.allFinite();
  }
  Mat metric(const Vec & x) const override
  {
    require_inside(x, "metric");
    return Mat::Identity(n_, n_);
  }
  CoordTensor christoffel(const Vec & x) const override
  {
    require_inside(x, "christoffel");
    return CoordTensor(n_, 3);
  }
  CoordTensor riemann(const Vec & x) const override
  {
    require_inside(x, "riemann");
    return CoordTensor(n_, 4);
  }
  double distance(const Vec & x, const Vec & y) const override
  {
    require_inside(x, "distance");
    require_inside(y, "distance");
    return (x - y).norm();
  }

private:
  int n_;
  std::string id_;
};

/// g = exp(2 phi) I on a disk of coordinates, constant curvature kappa.
class ConformalDiskChart : public ManifoldChart
{
public:
  ConformalDiskChart(std::string id, double kappa, double max_radius)
  : id_(std::move(id)), kappa_(kappa), max_radius_(max_radius) {}

  int dim() const override {return 2;}
  const std::string & id() const override {return id_;}
  CurvatureKind kind() const override {return CurvatureKind::constant_curvature;}
  bool contains(const Vec & x) const override
  {
    return x.size() == 2 && x.allFinite() && x.norm() <= max_radius_;
  }
  double kappa() const {return kappa_;}

  Mat metric(const Vec & x) const override
  {
    require_inside(x, "metric");
    const double s = scale(x);
    return s * s * Mat::Identity(2, 2);
  }

  CoordTensor christoffel(const Vec & x) const override
  {
    require_inside(x, "christoffel");
    const Vec dphi = grad_log_scale(x);
    CoordTensor gamma(2, 3);
    for (int k = 0; k < 2; ++k) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          double v = 0.0;
          if (i == k) {v += dphi[j];}
          if (j == k) {v += dphi[i];}
          if (i == j) {v -= dphi[k];}
          gamma(k, i, j) = v;
        }
      }
    }
    return gamma;
  }

  CoordTensor riemann(const Vec & x) const override
  {
    return constant_curvature_riemann(metric(x), kappa_);
  }

protected:
  /// exp(phi)
  virtual double scale(const Vec & x) const = 0;
  /// grad phi
  virtual Vec grad_log_scale(const Vec & x) const = 0;

private:
  std::string id_;
  double kappa_;
  double max_radius_;
};

class StereographicSphereChart final : public ConformalDiskChart
{
public:
  explicit StereographicSphereChart(double max_radius)
  : ConformalDiskChart("sphere2", 1.0, max_radius) {}

  double distance(const Vec & x, const Vec & y) const override
  {
    require_inside(x, "distance");
    require_inside(y, "distance");
    const Eigen::Vector3d p = embed(x);
    const Eigen::Vector3d q = embed(y);
    return 2.0 * std::atan2((p - q).norm(), (p + q).norm());
  }

  static Eigen::Vector3d embed(const Vec & x)
  {
    const double r2 = x.squaredNorm();
    return Eigen::Vector3d(2.0 * x[0], 2.0 * x[1], 1.0 - r2) / (1.0 + r2);
  }

protected:
  double scale(const Vec & x) const override {return 2.0 / (1.0 + x.squaredNorm());}
  Vec grad_log_scale(const Vec & x) const override
  {
    return -2.0 * x / (1.0 + x.squaredNorm());
  }
};

class PoincareDiskChart final : public ConformalDiskChart
{
public:
  explicit PoincareDiskChart(double max_radius)
  : ConformalDiskChart("hyperbolic2", -1.0, max_radius)
  {
    if (!(max_radius < 1.0)) {
      throw ContractError("hyperbolic2: max_radius must be below 1");
    }
  }

  double distance(const Vec & x, const Vec & y) const override
  {
    require_inside(x, "distance");
    require_inside(y, "distance");
    const double denom = std::sqrt((1.0 - x.squaredNorm()) * (1.0 - y.squaredNorm()));
    return 2.0 * std::asinh((x - y).norm() / denom);
  }

protected:
  double scale(const Vec & x) const override {return 2.0 / (1.0 - x.squaredNorm());}
  Vec grad_log_scale(const Vec & x) const override
  {
    return 2.0 * x / (1.0 - x.squaredNorm());
  }
};

std::string read_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ContractError("cannot open metric spec file '" + path + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

ChartPtr make_euclidean(int n)
{
  if (n < 1) {throw ContractError("euclidean chart needs n >= 1");}
  return std::make_shared<EuclideanChart>(n);
}

ChartPtr make_sphere2(double max_radius)
{
  return std::make_shared<StereographicSphereChart>(max_radius);
}

ChartPtr make_hyperbolic2(double max_radius)
{
  return std::make_shared<PoincareDiskChart>(max_radius);
}

ChartPtr make_chart(const std::string & spec)
{
  if (spec.rfind("euclidean:", 0) == 0) {
    const std::string tail = spec.substr(10);
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(tail, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != tail.size() || tail.empty()) {
      throw ContractError("bad manifold string '" + spec + "'");
    }
    return make_euclidean(n);
  }
  if (spec == "sphere2") {return make_sphere2();}
  if (spec == "hyperbolic2") {return make_hyperbolic2();}
  if (spec == "so3") {return make_so3();}
  if (spec.rfind("numeric:", 0) == 0) {
    const std::string path = spec.substr(8);
    return make_numeric_chart_from_json_text(read_file(path), spec);
  }
  throw ContractError("unknown manifold string '" + spec + "'");
}

}  // namespace cubicplan
