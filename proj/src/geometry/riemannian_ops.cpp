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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cubicplan/geometry.hpp"

namespace cubicplan
{

namespace
{

struct GeodesicState
{
  Vec x;
  Vec v;
};

GeodesicState geodesic_rhs(const ManifoldChart & chart, const GeodesicState & s)
{
  return {s.v, -contract_christoffel(chart.christoffel(s.x), s.v, s.v)};
}

}  // namespace

Vec exp_map(const ManifoldChart & chart, const Vec & x, const Vec & v, int steps)
{
  chart.require_inside(x, "exp_map");
  if (v.size() != chart.dim() || !v.allFinite()) {
    throw ContractError("exp_map: tangent vector has the wrong size or is not finite");
  }
  if (v.isZero(0.0)) {return x;}
  if (steps <= 0) {
    steps = 32 + static_cast<int>(std::ceil(1000.0 * norm(chart, x, v)));
  }
  const double h = 1.0 / steps;
  GeodesicState s{x, v};
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    try {
      const GeodesicState k1 = geodesic_rhs(chart, s);
      const GeodesicState k2 =
        geodesic_rhs(chart, {s.x + 0.5 * h * k1.x, s.v + 0.5 * h * k1.v});
      const GeodesicState k3 =
        geodesic_rhs(chart, {s.x + 0.5 * h * k2.x, s.v + 0.5 * h * k2.v});
      const GeodesicState k4 = geodesic_rhs(chart, {s.x + h * k3.x, s.v + h * k3.v});
      s.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
      s.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    } catch (const DomainError &) {
      throw ChartEscapeError("exp_map: geodesic left the chart domain", t);
    }
    if (!chart.contains(s.x)) {
      std::ostringstream os;
      os << "exp_map: geodesic left the chart domain at t=" << t + h;
      throw ChartEscapeError(os.str(), t + h);
    }
  }
  return s.x;
}

Vec log_map(const ManifoldChart & chart, const Vec & x, const Vec & y)
{
  chart.require_inside(x, "log_map");
  chart.require_inside(y, "log_map");
  const int n = chart.dim();
  const double tol = 1e-13 * (1.0 + y.norm());
  Vec v = y - x;
  auto residual = [&](const Vec & w) -> Vec {
      return exp_map(chart, x, w) - y;
    };
  Vec r;
  try {
    r = residual(v);
  } catch (const DomainError &) {
    throw OutOfRangeError("log_map: target outside the reachable region");
  }
  for (int it = 0; it < 60 && r.norm() > tol; ++it) {
    Mat jac(n, n);
    const double hstep = 1e-6 * (1.0 + v.norm());
    try {
      for (int c = 0; c < n; ++c) {
        Vec vp = v;
        Vec vm = v;
        vp[c] += hstep;
        vm[c] -= hstep;
        jac.col(c) = (residual(vp) - residual(vm)) / (2.0 * hstep);
      }
    } catch (const DomainError &) {
      throw OutOfRangeError("log_map: shooting left the chart");
    }
    const Vec dv = jac.colPivHouseholderQr().solve(-r);
    double lambda = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      try {
        const Vec trial = v + lambda * dv;
        const Vec rt = residual(trial);
        if (rt.norm() < r.norm()) {
          v = trial;
          r = rt;
          accepted = true;
          break;
        }
      } catch (const DomainError &) {
      }
      lambda *= 0.5;
    }
    if (!accepted) {break;}
  }
  if (!(r.norm() <= 1e-10 * (1.0 + y.norm()))) {
    throw OutOfRangeError("log_map: point outside the injectivity region of the base point");
  }
  return v;
}

double distance(const ManifoldChart & chart, const Vec & x, const Vec & y)
{
  return chart.distance(x, y);
}

std::pair<Vec, Vec> SampledCurve::interpolate(double t) const
{
  if (position.empty()) {throw ContractError("SampledCurve: no samples");}
  const double u = (t - t0) / step;
  const auto last = static_cast<long>(position.size()) - 1;
  if (u < -1e-9 || u > static_cast<double>(last) + 1e-9) {
    throw ContractError("SampledCurve: time outside the sampled range");
  }
  if (last == 0) {return {position[0], velocity[0]};}
  long k = static_cast<long>(std::floor(u));
  k = std::clamp(k, 0L, last - 1);
  const double s = u - static_cast<double>(k);
  const double h = step;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double s4 = s3 * s;
  const double s5 = s4 * s;
  const double h0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
  const double h1 = s - 6 * s3 + 8 * s4 - 3 * s5;
  const double h2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
  const double h3 = 0.5 * s3 - s4 + 0.5 * s5;
  const double h4 = -4 * s3 + 7 * s4 - 3 * s5;
  const double h5 = 10 * s3 - 15 * s4 + 6 * s5;
  const double d0 = -30 * s2 + 60 * s3 - 30 * s4;
  const double d1 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
  const double d2 = s - 4.5 * s2 + 6 * s3 - 2.5 * s4;
  const double d3 = 1.5 * s2 - 4 * s3 + 2.5 * s4;
  const double d4 = -12 * s2 + 28 * s3 - 15 * s4;
  const double d5 = 30 * s2 - 60 * s3 + 30 * s4;
  const auto i = static_cast<std::size_t>(k);
  const Vec & p0 = position[i];
  const Vec & p1 = position[i + 1];
  const Vec & v0 = velocity[i];
  const Vec & v1 = velocity[i + 1];
  const Vec & a0 = acceleration[i];
  const Vec & a1 = acceleration[i + 1];
  Vec p = h0 * p0 + h1 * h * v0 + h2 * h * h * a0 + h3 * h * h * a1 + h4 * h * v1 + h5 * p1;
  Vec v = (d0 * p0 + d1 * h * v0 + d2 * h * h * a0 + d3 * h * h * a1 + d4 * h * v1 + d5 * p1) /
    h;
  return {std::move(p), std::move(v)};
}

namespace
{

// Transports the columns of `start` along the curve with RK4; mid-step curve
// values come from the Hermite interpolant.
std::vector<Mat> transport_columns(
  const ManifoldChart & chart, const SampledCurve & curve, const Mat & start)
{
  std::vector<Mat> out;
  out.reserve(curve.size());
  out.push_back(start);
  if (curve.size() < 2) {return out;}
  Mat p = start;
  const double h = curve.step;
  auto rhs = [&](const Vec & x, const Vec & v, const Mat & cols) {
      const CoordTensor gamma = chart.christoffel(x);
      Mat d(cols.rows(), cols.cols());
      for (int c = 0; c < cols.cols(); ++c) {
        d.col(c) = -contract_christoffel(gamma, v, cols.col(c));
      }
      return d;
    };
  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    const double t = curve.t0 + static_cast<double>(k) * h;
    const auto [xm, vm] = curve.interpolate(t + 0.5 * h);
    const Mat k1 = rhs(curve.position[k], curve.velocity[k], p);
    const Mat k2 = rhs(xm, vm, p + 0.5 * h * k1);
    const Mat k3 = rhs(xm, vm, p + 0.5 * h * k2);
    const Mat k4 = rhs(curve.position[k + 1], curve.velocity[k + 1], p + h * k3);
    p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<Vec> parallel_transport(
  const ManifoldChart & chart, const SampledCurve & curve, const Vec & v)
{
  if (curve.size() == 0) {throw ContractError("parallel_transport: empty curve");}
  for (const Vec & x : curve.position) {
    if (!chart.contains(x)) {
      throw DomainError("parallel_transport: curve leaves the chart domain");
    }
  }
  const std::vector<Mat> cols = transport_columns(chart, curve, v);
  std::vector<Vec> out;
  out.reserve(cols.size());
  for (const Mat & c : cols) {out.emplace_back(c.col(0));}
  return out;
}

std::vector<Mat> parallel_frame(const ManifoldChart & chart, const SampledCurve & curve)
{
  if (curve.size() == 0) {throw ContractError("parallel_frame: empty curve");}
  const int n = chart.dim();
  const Mat e0 = orthonormalize(chart.metric(curve.position[0]), Mat::Identity(n, n));
  return transport_columns(chart, curve, e0);
}

}  // namespace cubicplan
