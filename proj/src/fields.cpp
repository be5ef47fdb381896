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

#include "cubicplan/fields.hpp"

#include <cmath>
#include <utility>

namespace cubicplan
{

namespace
{

void add_scaled(std::vector<Vec> & a, const std::vector<Vec> & b, double s)
{
  if (b.empty()) {
    a.clear();
    return;
  }
  if (a.size() != b.size()) {throw ContractError("field grid mismatch");}
  for (std::size_t i = 0; i < a.size(); ++i) {a[i] += s * b[i];}
}

}  // namespace

FieldSamples & FieldSamples::operator+=(const FieldSamples & o)
{
  add_scaled(X, o.X, 1.0);
  add_scaled(dX, o.dX, 1.0);
  add_scaled(d2X, o.d2X, 1.0);
  if (!d3X.empty()) {add_scaled(d3X, o.d3X, 1.0);}
  return *this;
}

FieldSamples & FieldSamples::operator*=(double s)
{
  for (auto * jet : {&X, &dX, &d2X, &d3X}) {
    for (auto & v : *jet) {v *= s;}
  }
  return *this;
}

FieldSamples operator+(FieldSamples a, const FieldSamples & b)
{
  a += b;
  return a;
}

FieldSamples operator*(double s, FieldSamples a)
{
  a *= s;
  return a;
}

AdmissibleField::AdmissibleField(FieldSamples samples, double tolerance)
: samples_(std::move(samples))
{
  const auto & s = samples_;
  if (s.X.size() < 2 || s.dX.size() != s.X.size() || s.d2X.size() != s.X.size()) {
    throw ContractError("admissible field needs X, DX and D^2X on at least two nodes");
  }
  if (tolerance < 0.0) {
    double sup = 0.0;
    for (const auto & x : s.X) {sup = std::max(sup, x.cwiseAbs().maxCoeff());}
    tolerance = 1e-12 * std::max(1.0, sup);
  }
  const double worst = std::max(
    {s.X.front().cwiseAbs().maxCoeff(), s.X.back().cwiseAbs().maxCoeff(),
      s.dX.front().cwiseAbs().maxCoeff(), s.dX.back().cwiseAbs().maxCoeff()});
  if (!(worst <= tolerance)) {
    throw ContractError(
            "field does not vanish to first order at the endpoints (defect " +
            std::to_string(worst) + ")");
  }
}

FieldSamples frame_field(
  const Trajectory & traj, const std::vector<Mat> & frame,
  const std::function<Eigen::Matrix<double, 4, Eigen::Dynamic>(double)> & coefficients)
{
  if (frame.size() != traj.size()) {throw ContractError("frame grid mismatch");}
  FieldSamples f;
  f.t0 = traj.start_time();
  f.step = traj.step;
  const std::size_t m = traj.size();
  f.X.resize(m);
  f.dX.resize(m);
  f.d2X.resize(m);
  f.d3X.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Matrix<double, 4, Eigen::Dynamic> c = coefficients(traj.states[i].t);
    f.X[i] = frame[i] * c.row(0).transpose();
    f.dX[i] = frame[i] * c.row(1).transpose();
    f.d2X[i] = frame[i] * c.row(2).transpose();
    f.d3X[i] = frame[i] * c.row(3).transpose();
  }
  return f;
}

FieldSamples profile_field(
  const Trajectory & traj, const std::vector<Mat> & frame, int k, const Profile & profile)
{
  const int n = static_cast<int>(frame.front().cols());
  return frame_field(
    traj, frame, [&](double t) {
      Eigen::Matrix<double, 4, Eigen::Dynamic> c = Eigen::MatrixXd::Zero(4, n);
      c.col(k) = profile(t);
      return c;
    });
}

FieldSamples random_admissible_field(
  const Trajectory & traj, const std::vector<Mat> & frame, const std::vector<double> & coeffs,
  int degree)
{
  const int n = static_cast<int>(frame.front().cols());
  if (static_cast<int>(coeffs.size()) != n * (degree + 1)) {
    throw ContractError("random_admissible_field: coefficient count mismatch");
  }
  const double t0 = traj.start_time();
  const double len = traj.end_time() - t0;
  // Polynomial coefficients in s = (t - t0) / len, lowest order first.
  std::vector<std::vector<double>> polys(n);
  for (int k = 0; k < n; ++k) {
    std::vector<double> p(degree + 5, 0.0);
    const double bump[5] = {0.0, 0.0, 1.0, -2.0, 1.0};
    for (int d = 0; d <= degree; ++d) {
      for (int b = 0; b < 5; ++b) {p[d + b] += coeffs[k * (degree + 1) + d] * bump[b];}
    }
    polys[k] = std::move(p);
  }
  return frame_field(
    traj, frame, [&](double t) {
      const double s = (t - t0) / len;
      Eigen::Matrix<double, 4, Eigen::Dynamic> c = Eigen::MatrixXd::Zero(4, n);
      for (int k = 0; k < n; ++k) {
        const auto & p = polys[k];
        for (int order = 0; order < 4; ++order) {
          double acc = 0.0;
          for (int e = static_cast<int>(p.size()) - 1; e >= order; --e) {
            double fall = 1.0;
            for (int r = 0; r < order; ++r) {fall *= e - r;}
            acc = acc * s + fall * p[e];
          }
          c(order, k) = acc / std::pow(len, order);
        }
      }
      return c;
    });
}

std::vector<Mat> trajectory_frame(const ManifoldChart & chart, const Trajectory & traj)
{
  return parallel_frame(chart, traj.sampled(chart));
}

}  // namespace cubicplan
